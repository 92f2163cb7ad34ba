"""Formal pointed homotopy types built from a small atom catalogue.

Atoms are spheres, Moore spaces and three exotic complexes; expressions are
trees of wedges, suspensions and smash products. :func:`normalize` rewrites
an expression to a sorted flat wedge of atoms.

Grammar accepted by :func:`parse`::

    expr   := smash ('v' smash)*
    smash  := unary ('^' unary)*
    unary  := 'Sus(' expr ')' | '(' expr ')' | atom
    atom   := 'S'n | 'P'n'('m')' | 'SCP3' | 'CA1' | 'CIA('r')'
            | 'OPQ:'label'['d1,d2,...']' | '*'

``*`` is the one-point space (the empty wedge).
"""

from __future__ import annotations

import enum
import math
import random
import re
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable, Sequence, Union

from .abelian import ChainComplex, FgAbGroup, IntMatrix, homology, localize_away_2, prime_power_parts
from .errors import NoNormalForm, SpaceParseError

__all__ = [
    "Localization",
    "Sphere",
    "Moore",
    "SigmaCP3",
    "ConeAlpha1",
    "ConeIotaAlpha1",
    "OpaqueCell",
    "Wedge",
    "Suspension",
    "Smash",
    "POINT",
    "parse",
    "to_text",
    "normalize",
    "homology_of",
    "connectivity",
    "dimension",
    "GradedGroup",
    "wedge",
    "suspend",
    "desuspend",
    "atoms_of",
    "RULES",
]


class Localization(str, enum.Enum):
    INTEGRAL = "integral"
    AWAY_FROM_2 = "away-from-2"


# --------------------------------------------------------------------- atoms


class Atom:
    """Base for catalogue atoms; subclasses define ``cells`` and ``sort_key``."""

    cells: tuple[int, ...] = ()

    @property
    def dimension(self) -> int:
        return max(self.cells)

    @property
    def connectivity(self) -> int:
        return min(self.cells) - 1

    def chain_complex(self) -> ChainComplex:
        """Reduced cellular chain complex (basepoint cell dropped)."""
        ranks = [0] * (self.dimension + 1)
        for c in self.cells:
            ranks[c] += 1
        return ChainComplex(tuple(ranks), self._boundaries(ranks))

    def _boundaries(self, ranks):
        return {}


@dataclass(frozen=True)
class Sphere(Atom):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"sphere dimension must be >= 1, got {self.n}")

    @property
    def cells(self):
        return (self.n,)

    def sort_key(self):
        return (0, self.n)

    def __str__(self):
        return f"S{self.n}"


@dataclass(frozen=True)
class Moore(Atom):
    """``P^n(m)``: cells in dimensions n - 1 and n, ``H_{n-1} = Z/m``."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"Moore space P^{self.n} needs n >= 2")
        if self.m < 2:
            raise ValueError(f"Moore space modulus must be >= 2, got {self.m}")

    @property
    def cells(self):
        return (self.n - 1, self.n)

    def _boundaries(self, ranks):
        return {self.n: IntMatrix.from_rows([[self.m]])}

    def sort_key(self):
        return (1, self.n, self.m)

    def __str__(self):
        return f"P{self.n}({self.m})"


@dataclass(frozen=True)
class SigmaCP3(Atom):
    cells = (3, 5, 7)

    def sort_key(self):
        return (2,)

    def __str__(self):
        return "SCP3"


@dataclass(frozen=True)
class ConeAlpha1(Atom):
    """Mapping cone of the order-3 class ``S^6 -> S^3``."""

    cells = (3, 7)

    def sort_key(self):
        return (3,)

    def __str__(self):
        return "CA1"


@dataclass(frozen=True)
class ConeIotaAlpha1(Atom):
    """Mapping cone of ``S^6 -> S^3 -> P^4(3^r)``; cells 3, 4, 7."""

    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("ConeIotaAlpha1 needs r >= 1")

    cells = (3, 4, 7)

    def _boundaries(self, ranks):
        return {4: IntMatrix.from_rows([[3**self.r]])}

    def sort_key(self):
        return (4, self.r)

    def __str__(self):
        return f"CIA({self.r})"


@dataclass(frozen=True)
class OpaqueCell(Atom):
    """A named complex known only through its cell dimensions."""

    label: str
    cell_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(sorted(int(d) for d in self.cell_dims))
        if not dims or dims[0] < 1:
            raise ValueError("OpaqueCell needs positive cell dimensions")
        object.__setattr__(self, "cell_dims", dims)

    @property
    def cells(self):
        return self.cell_dims

    def sort_key(self):
        return (5, self.label, self.cell_dims)

    def __str__(self):
        return f"OPQ:{self.label}[{','.join(map(str, self.cell_dims))}]"


ATOM_TYPES = (Sphere, Moore, SigmaCP3, ConeAlpha1, ConeIotaAlpha1, OpaqueCell)


# --------------------------------------------------------------------- nodes


@dataclass(frozen=True)
class Wedge:
    summands: tuple = ()
    loc: Localization = field(default=Localization.INTEGRAL, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Suspension:
    child: object

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Smash:
    left: object
    right: object

    def __str__(self):
        return to_text(self)


SpaceExpr = Union[Atom, Wedge, Suspension, Smash]
POINT = Wedge(())


def wedge(*parts: SpaceExpr, loc: Localization = Localization.INTEGRAL) -> Wedge:
    return Wedge(tuple(parts), loc)


def suspend(x: SpaceExpr, times: int = 1) -> SpaceExpr:
    for _ in range(times):
        x = Suspension(x)
    return x


def desuspend(x: SpaceExpr) -> SpaceExpr:
    """Name a space whose suspension is ``x``; only for visibly suspended ones."""
    if isinstance(x, Suspension):
        return x.child
    if isinstance(x, Sphere) and x.n >= 2:
        return Sphere(x.n - 1)
    if isinstance(x, Moore) and x.n >= 3:
        return Moore(x.n - 1, x.m)
    raise ValueError(f"{to_text(x)} is not a catalogued suspension")


def atoms_of(x: SpaceExpr) -> list:
    """Atoms of a canonical wedge (or of a bare atom)."""
    if isinstance(x, Atom):
        return [x]
    if isinstance(x, Wedge) and all(isinstance(s, Atom) for s in x.summands):
        return list(x.summands)
    raise ValueError(f"{to_text(x)} is not a wedge of atoms")


# --------------------------------------------------------------------- printing


def to_text(x: SpaceExpr) -> str:
    if isinstance(x, Atom):
        return str(x)
    if isinstance(x, Wedge):
        if not x.summands:
            return "*"
        return " v ".join(_wrap(s, 1) for s in x.summands)
    if isinstance(x, Suspension):
        return f"Sus({to_text(x.child)})"
    if isinstance(x, Smash):
        # smash is parsed left-associatively
        return f"{_wrap(x.left, 2)} ^ {_wrap(x.right, 3)}"
    raise TypeError(f"not a space expression: {x!r}")


def _wrap(x, level):
    while isinstance(x, Wedge) and len(x.summands) == 1:
        x = x.summands[0]
    text = to_text(x)
    if isinstance(x, Wedge) and len(x.summands) > 1:
        return f"({text})"
    if isinstance(x, Smash) and level >= 3:
        return f"({text})"
    return text


# --------------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<opq>OPQ:(?P<label>[^\[\s]+)\[(?P<dims>[^\]]*)\])"
    r"|(?P<sus>Sus\()"
    r"|(?P<cia>CIA\(\s*(?P<r>-?\d+)\s*\))"
    r"|(?P<scp3>SCP3)"
    r"|(?P<ca1>CA1)"
    r"|(?P<moore>P(?P<pn>\d+)\(\s*(?P<pm>-?\d+)\s*\))"
    r"|(?P<sphere>S(?P<sn>\d+))"
    r"|(?P<op>[v^()*])"
    r"|(?P<word>[A-Za-z_][A-Za-z0-9_]*)"
    r")"
)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise SpaceParseError(f"unexpected character {text[start]!r}", start)
        start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        out.append((m, start))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        m, pos = self.take()
        if m is None or m.group("op") != op:
            raise SpaceParseError(f"expected {op!r}", pos)

    def parse(self):
        out = self.expr()
        m, pos = self.peek()
        if m is not None:
            raise SpaceParseError(f"unexpected token {m.group(0).strip()!r}", pos)
        return out

    def expr(self):
        parts = [self.smash()]
        while self._at_op("v"):
            self.take()
            parts.append(self.smash())
        return parts[0] if len(parts) == 1 else Wedge(tuple(parts))

    def smash(self):
        left = self.unary()
        while self._at_op("^"):
            self.take()
            left = Smash(left, self.unary())
        return left

    def _at_op(self, op):
        m, _ = self.peek()
        return m is not None and m.group("op") == op

    def unary(self):
        m, pos = self.take()
        if m is None:
            raise SpaceParseError("unexpected end of input", pos)
        try:
            if m.group("sus"):
                inner = self.expr()
                self.expect_op(")")
                return Suspension(inner)
            if m.group("op") == "(":
                inner = self.expr()
                self.expect_op(")")
                return inner
            if m.group("op") == "*":
                return POINT
            if m.group("sphere"):
                return Sphere(int(m.group("sn")))
            if m.group("moore"):
                return Moore(int(m.group("pn")), int(m.group("pm")))
            if m.group("scp3"):
                return SigmaCP3()
            if m.group("ca1"):
                return ConeAlpha1()
            if m.group("cia"):
                return ConeIotaAlpha1(int(m.group("r")))
            if m.group("opq"):
                dims = [d.strip() for d in m.group("dims").split(",") if d.strip()]
                return OpaqueCell(m.group("label"), tuple(int(d) for d in dims))
        except ValueError as exc:
            raise SpaceParseError(str(exc), pos) from None
        if m.group("word"):
            raise SpaceParseError(f"unknown atom name {m.group('word')!r}", pos)
        raise SpaceParseError(f"unexpected token {m.group(0).strip()!r}", pos)


def parse(text: str) -> SpaceExpr:
    """Parse the ASCII space grammar; raises :class:`SpaceParseError`."""
    return _Parser(text).parse()


# --------------------------------------------------------------------- shape


def connectivity(x: SpaceExpr) -> float:
    """Largest c with the expression c-connected; ``inf`` for a point.

    Smash products use the lower bound ``conn(X) + conn(Y) + 1``.
    """
    if isinstance(x, Atom):
        return x.connectivity
    if isinstance(x, Wedge):
        return min((connectivity(s) for s in x.summands), default=math.inf)
    if isinstance(x, Suspension):
        return connectivity(x.child) + 1
    if isinstance(x, Smash):
        return connectivity(x.left) + connectivity(x.right) + 1
    raise TypeError(x)


def dimension(x: SpaceExpr) -> int:
    if isinstance(x, Atom):
        return x.dimension
    if isinstance(x, Wedge):
        return max((dimension(s) for s in x.summands), default=0)
    if isinstance(x, Suspension):
        return dimension(x.child) + 1
    if isinstance(x, Smash):
        return dimension(x.left) + dimension(x.right)
    raise TypeError(x)


# --------------------------------------------------------------------- rewriting


@dataclass(frozen=True)
class Rule:
    name: str
    apply: Callable
    away_only: bool = False
    citation: str = ""


def _is_point(x):
    return isinstance(x, Wedge) and not x.summands


def _prime_power(m):
    parts = prime_power_parts(m)
    return parts[0] if len(parts) == 1 else None


def _r_flatten(x, opts):
    if not isinstance(x, Wedge):
        return None
    if any(isinstance(s, Wedge) for s in x.summands):
        flat = []
        for s in x.summands:
            flat.extend(s.summands if isinstance(s, Wedge) else [s])
        return Wedge(tuple(flat))
    if len(x.summands) == 1:
        return x.summands[0]
    return None


def _r_sus_wedge(x, opts):
    if isinstance(x, Suspension) and isinstance(x.child, Wedge):
        return Wedge(tuple(Suspension(s) for s in x.child.summands))
    return None


def _r_sus_atom(x, opts):
    if not isinstance(x, Suspension):
        return None
    c = x.child
    if isinstance(c, Sphere):
        return Sphere(c.n + 1)
    if isinstance(c, Moore):
        return Moore(c.n + 1, c.m)
    if isinstance(c, OpaqueCell):
        return OpaqueCell(f"Sus{c.label}", tuple(d + 1 for d in c.cell_dims))
    return None


def _r_sus_smash(x, opts):
    if isinstance(x, Suspension) and isinstance(x.child, Smash):
        return Smash(Suspension(x.child.left), x.child.right)
    return None


def _r_smash_wedge(x, opts):
    if not isinstance(x, Smash):
        return None
    if isinstance(x.left, Wedge):
        return Wedge(tuple(Smash(s, x.right) for s in x.left.summands))
    if isinstance(x.right, Wedge):
        return Wedge(tuple(Smash(x.left, s) for s in x.right.summands))
    return None


def _r_smash_sphere(x, opts):
    if not isinstance(x, Smash):
        return None
    for s, other in ((x.left, x.right), (x.right, x.left)):
        if isinstance(s, Sphere):
            if isinstance(other, Sphere):
                return Sphere(s.n + other.n)
            if isinstance(other, Moore):
                return Moore(other.n + s.n, other.m)
            return suspend(other, s.n)
    return None


def _r_moore_split(x, opts):
    if isinstance(x, Moore) and x.n >= 3 and _prime_power(x.m) is None:
        return Wedge(tuple(Moore(x.n, p**r) for p, r in prime_power_parts(x.m)))
    return None


def _r_moore_drop_2(x, opts):
    if isinstance(x, Moore) and x.n >= 3 and x.m % 2 == 0:
        odd = x.m
        while odd % 2 == 0:
            odd //= 2
        return POINT if odd == 1 else Moore(x.n, odd)
    return None


def _r_moore_coprime(x, opts):
    if isinstance(x, Smash) and isinstance(x.left, Moore) and isinstance(x.right, Moore):
        if gcd(x.left.m, x.right.m) == 1:
            return POINT
    return None


def _r_moore_moore(x, opts):
    if not (isinstance(x, Smash) and isinstance(x.left, Moore) and isinstance(x.right, Moore)):
        return None
    a, b = x.left, x.right
    pa, pb = _prime_power(a.m), _prime_power(b.m)
    if pa is None or pb is None or pa[0] != pb[0] or pa[0] == 2:
        return None
    # one factor must be a suspension of a Moore space
    if max(a.n, b.n) < 3:
        return None
    t = min(pa[1], pb[1])
    q = pa[0] ** t
    return Wedge((Moore(a.n + b.n - 1, q), Moore(a.n + b.n, q)))


def _r_cp3(x, opts):
    if opts.get("split_cp3") and isinstance(x, SigmaCP3):
        return Wedge((ConeAlpha1(), Sphere(5)))
    return None


RULES: tuple[Rule, ...] = (
    Rule("flatten-wedge", _r_flatten),
    Rule("suspend-wedge", _r_sus_wedge),
    Rule("suspend-atom", _r_sus_atom),
    Rule("suspend-smash", _r_sus_smash),
    Rule("smash-wedge", _r_smash_wedge),
    Rule("smash-sphere", _r_smash_sphere),
    Rule("moore-split", _r_moore_split),
    Rule("moore-drop-2", _r_moore_drop_2, away_only=True),
    Rule("moore-coprime", _r_moore_coprime),
    Rule(
        "moore-moore",
        _r_moore_moore,
        away_only=True,
        citation="Sus P3(p^r) ^ P3(p^r) = P6(p^r) v P7(p^r) at odd p",
    ),
    Rule("sigma-cp3", _r_cp3, away_only=True, citation="SCP3 = CA1 v S5 away from 2"),
)


def _rewrite(x, rules, opts):
    if isinstance(x, Wedge):
        x = Wedge(tuple(_rewrite(s, rules, opts) for s in x.summands))
    elif isinstance(x, Suspension):
        x = Suspension(_rewrite(x.child, rules, opts))
    elif isinstance(x, Smash):
        x = Smash(_rewrite(x.left, rules, opts), _rewrite(x.right, rules, opts))
    for rule in rules:
        out = rule.apply(x, opts)
        if out is not None:
            return _rewrite(out, rules, opts)
    return x


def _stuck_subterm(x):
    if isinstance(x, Atom):
        return None
    if isinstance(x, Wedge):
        for s in x.summands:
            found = _stuck_subterm(s)
            if found is not None:
                return found
        return None
    for child in (x.child,) if isinstance(x, Suspension) else (x.left, x.right):
        found = _stuck_subterm(child)
        if found is not None:
            return found
    return x


def normalize(
    x: SpaceExpr,
    loc: Localization = Localization.AWAY_FROM_2,
    *,
    split_cp3: bool = False,
    rng: random.Random | None = None,
) -> Wedge:
    """Rewrite ``x`` to a flat wedge of atoms sorted by atom kind and parameters.

    Rules tagged away-from-2 only run when ``loc`` says so. ``split_cp3``
    additionally replaces ``SCP3`` with ``CA1 v S5``. Passing ``rng`` shuffles
    the rule order (the result must not depend on it).
    """
    loc = Localization(loc)
    rules = [r for r in RULES if loc is Localization.AWAY_FROM_2 or not r.away_only]
    if rng is not None:
        rng.shuffle(rules)
    out = _rewrite(x, rules, {"split_cp3": split_cp3})
    # a single atom or a point can come back unwrapped
    out = out if isinstance(out, Wedge) else Wedge((out,))
    stuck = _stuck_subterm(out)
    if stuck is not None:
        raise NoNormalForm(to_text(stuck), f"no {loc.value} rule applies")
    return Wedge(tuple(sorted(out.summands, key=lambda a: a.sort_key())), loc)


# --------------------------------------------------------------------- homology


@dataclass(frozen=True)
class GradedGroup:
    """Reduced homology by degree; ``exact`` is False for opaque upper bounds."""

    groups: tuple[FgAbGroup, ...]
    exact: bool = True
    note: str = ""

    def __post_init__(self):
        groups = list(self.groups)
        while groups and groups[-1].is_trivial:
            groups.pop()
        object.__setattr__(self, "groups", tuple(groups))

    def __getitem__(self, n: int) -> FgAbGroup:
        if 0 <= n < len(self.groups):
            return self.groups[n]
        return FgAbGroup()

    def __len__(self):
        return len(self.groups)

    def __add__(self, other: "GradedGroup") -> "GradedGroup":
        top = max(len(self), len(other))
        return GradedGroup(
            tuple(self[n] + other[n] for n in range(top)),
            self.exact and other.exact,
            "; ".join(x for x in (self.note, other.note) if x),
        )

    def __eq__(self, other):
        if not isinstance(other, GradedGroup):
            return NotImplemented
        return self.groups == other.groups

    def __hash__(self):
        return hash(self.groups)

    def shift(self, k: int) -> "GradedGroup":
        if k >= 0:
            return GradedGroup((FgAbGroup(),) * k + self.groups, self.exact, self.note)
        return GradedGroup(self.groups[-k:], self.exact, self.note)

    def localized(self) -> "GradedGroup":
        return GradedGroup(tuple(localize_away_2(g) for g in self.groups), self.exact, self.note)


def _atom_homology(a: Atom) -> GradedGroup:
    groups = homology(a.chain_complex())
    if isinstance(a, OpaqueCell):
        return GradedGroup(tuple(groups), False, f"homology of {a} known only additively")
    return GradedGroup(tuple(groups))


def homology_of(x: SpaceExpr, loc: Localization | None = None) -> GradedGroup:
    """Reduced homology of ``x`` after normalization, localized per ``loc``."""
    if loc is None:
        loc = x.loc if isinstance(x, Wedge) else Localization.AWAY_FROM_2
    loc = Localization(loc)
    out = GradedGroup(())
    for a in normalize(x, loc).summands:
        out = out + _atom_homology(a)
    return out.localized() if loc is Localization.AWAY_FROM_2 else out
