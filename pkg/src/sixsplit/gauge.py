"""Gauge groups over the manifold as formal products of mapping spaces.

Factors are symbolic: ``G``, ``Omega^k G``, ``Omega^k G{m} = Map*(P^k(m), G)``,
``Map*(X, G)`` for a named complex X, and opaque gauge groups over a base
complex. Homotopy groups are only computed for ``SU(n)`` in its stable range.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterable

from .abelian import FgAbGroup, localize_away_2, tensor_tor_mod, uct_duals
from .cohomology import GroupOrExtension
from .errors import NotComputable, UnsupportedBundle
from .spaces import (
    ConeIotaAlpha1,
    Localization,
    Moore,
    SigmaCP3,
    Sphere,
    Wedge,
    to_text,
)
from .splitter import ManifoldInvariants, homology_table, skeleton_data, split_suspension

__all__ = [
    "LieAtom",
    "Loop",
    "MooreLoop",
    "MapStar",
    "OpaqueGauge",
    "FactorProduct",
    "classify_su_bundles",
    "gauge_trivial",
    "gauge_su",
    "apply_wedge_rule",
    "pi_factor",
    "pi_factors",
    "factor_for_atom",
]

CITE_T13 = "Theorem 1.3"
CITE_L51 = "Lemma 5.1: Map(X,G) ~ G x Map*(A,G) x Map*(B,G)"
CITE_L52 = "Lemma 5.2: [A,BSU(n)] = H^4(A) x H^6(A) for n >= 3"
CITE_T58 = "Theorem 5.8"
CITE_L510 = "Lemma 5.10: G_{0,g}(S4 v A,G) ~ G_g(A,G) x Omega^4 G"
CITE_BOTT = "stable range of SU(n): pi_i = Z for odd 3 <= i <= 2n-1, else 0"


@dataclass(frozen=True)
class LieAtom:
    G: str
    citation: str = field(default="", compare=False)

    def sort_key(self):
        return (0, self.G)

    def __str__(self):
        return self.G


@dataclass(frozen=True)
class OpaqueGauge:
    """Gauge group of the bundle with Chern data ``(c2, c3)`` over ``base``."""

    base: object
    G: str
    c2: int = 0
    c3: int = 0
    citation: str = field(default="", compare=False)

    def sort_key(self):
        return (1, to_text(self.base) if not isinstance(self.base, str) else self.base, self.G)

    def __str__(self):
        base = self.base if isinstance(self.base, str) else to_text(self.base)
        return f"G_(c2={self.c2},c3={self.c3})({base}, {self.G})"


@dataclass(frozen=True)
class Loop:
    k: int
    G: str
    citation: str = field(default="", compare=False)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"Loop needs k >= 1, got {self.k}")

    def sort_key(self):
        return (2, self.k, 0, self.G)

    def __str__(self):
        return f"Omega^{self.k} {self.G}"


@dataclass(frozen=True)
class MooreLoop:
    """``Omega^k G{m} = Map*(P^k(m), G)``."""

    k: int
    m: int
    G: str
    citation: str = field(default="", compare=False)

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"MooreLoop needs m >= 2, got {self.m}")

    def sort_key(self):
        return (2, self.k, self.m, self.G)

    def __str__(self):
        return f"Omega^{self.k} {self.G}{{{self.m}}}"


@dataclass(frozen=True)
class MapStar:
    X: str
    G: str
    citation: str = field(default="", compare=False)

    def sort_key(self):
        return (3, self.X, self.G)

    def __str__(self):
        return f"Map*({self.X}, {self.G})"


Factor = LieAtom | OpaqueGauge | Loop | MooreLoop | MapStar


@dataclass(frozen=True)
class FactorProduct:
    factors: tuple = ()
    loc: Localization = Localization.AWAY_FROM_2
    case: str = ""

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors, key=lambda f: f.sort_key())))

    def __str__(self):
        return " x ".join(str(f) for f in self.factors) if self.factors else "*"

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "product": str(self),
            "factors": [
                {"factor": str(f), "kind": type(f).__name__, "citation": f.citation} for f in self.factors
            ],
        }


def classify_su_bundles(inv: ManifoldInvariants, n: int) -> tuple[FgAbGroup, FgAbGroup]:
    """``(H^4(M), H^6(M))``, which index SU(n)-bundles by ``(c2, c3)``."""
    if n < 3:
        raise UnsupportedBundle(f"SU({n}) bundles are classified here only for n >= 3", CITE_L52)
    h = homology_table(inv)
    h4 = uct_duals(h[4])[0] + uct_duals(h[3])[1]
    h6 = uct_duals(h[6])[0] + uct_duals(h[5])[1]
    return localize_away_2(h4), localize_away_2(h6)


def factor_for_atom(atom, G: str, citation: str = ""):
    """The mapping-space factor ``Map*(A, G)`` for a summand ``Sigma A``."""
    if isinstance(atom, Sphere):
        return Loop(atom.n - 1, G, citation)
    if isinstance(atom, Moore):
        return MooreLoop(atom.n - 1, atom.m, G, citation)
    if isinstance(atom, SigmaCP3):
        return MapStar("CP3", G, citation)
    if isinstance(atom, ConeIotaAlpha1):
        return MapStar(f"C_(iota o alpha1)(3^{atom.r})", G, citation)
    raise NotComputable(f"no mapping-space factor for summand {atom}", (str(atom),))


def gauge_trivial(inv: ManifoldInvariants, G: str) -> FactorProduct:
    """Gauge group of the trivial G-bundle: one factor per summand of Sigma M."""
    cite = f"{CITE_T13}, case {inv.case}; {CITE_L51}"
    factors = [LieAtom(G, cite)]
    factors += [factor_for_atom(a, G, cite) for a in split_suspension(inv).summands]
    return FactorProduct(tuple(factors), case=inv.case)


def _su(n: int) -> str:
    return f"SU({n})"


def gauge_su(inv: ManifoldInvariants, n: int, c3: int, c2=0, refine: bool = True) -> FactorProduct:
    """Gauge group of the SU(n)-bundle with ``c2 = 0`` and ``c3 = c3``.

    With ``refine`` the four-spheres split off ``C_j`` are turned into
    ``Omega^4 SU(n)`` factors, one at a time.
    """
    if n < 3:
        raise UnsupportedBundle(f"SU({n}) bundles need n >= 3", CITE_L52)
    if any(int(x) != 0 for x in (c2 if isinstance(c2, Iterable) else [c2])):
        raise UnsupportedBundle("only bundles with vanishing second Chern class are treated", CITE_T58)
    G = _su(n)
    sk = skeleton_data(inv)
    cite = f"{CITE_T58}, case {inv.case}"
    factors = [OpaqueGauge(sk.C_j, G, 0, int(c3), f"{cite}; " + "; ".join(sk.citations))]
    factors += [factor_for_atom(Sphere(a.n + 1) if isinstance(a, Sphere) else Moore(a.n + 1, a.m), G, cite)
                for a in sk.Y.summands]
    prod = FactorProduct(tuple(factors), case=inv.case)
    return apply_wedge_rule(prod) if refine else prod


def apply_wedge_rule(prod: FactorProduct) -> FactorProduct:
    """Split every ``S4`` summand off opaque gauge bases, one loop factor each."""
    out = []
    for f in prod.factors:
        if isinstance(f, OpaqueGauge) and isinstance(f.base, Wedge):
            spheres = [a for a in f.base.summands if a == Sphere(4)]
            if spheres:
                rest = Wedge(tuple(a for a in f.base.summands if a != Sphere(4)), f.base.loc)
                out.append(replace(f, base=rest))
                out.extend(Loop(4, f.G, CITE_L510) for _ in spheres)
                continue
        out.append(f)
    return FactorProduct(tuple(out), prod.loc, prod.case)


_SU = re.compile(r"^SU\((\d+)\)$")


def _su_rank(G: str) -> int | None:
    m = _SU.match(G.replace(" ", ""))
    return int(m.group(1)) if m else None


def _pi_su(j: int) -> FgAbGroup:
    return FgAbGroup.free(1) if j % 2 == 1 and j >= 3 else FgAbGroup()


def pi_factor(f, i: int) -> GroupOrExtension:
    """``pi_i`` of one factor, or NotComputable naming it."""
    if i < 0:
        raise ValueError("degree must be non-negative")
    if isinstance(f, (OpaqueGauge, MapStar)):
        raise NotComputable(f"pi_{i}({f}) is not computable from catalogued data", (str(f),))
    n = _su_rank(f.G)
    if n is None:
        raise NotComputable(f"homotopy of {f.G} is not catalogued (only SU(n))", (str(f),))
    k = 0 if isinstance(f, LieAtom) else f.k
    top = i + k
    if top > 2 * n - 1:
        raise NotComputable(
            f"pi_{i}({f}) needs pi_{top}({f.G}), outside the stable range 2n-1 = {2 * n - 1}", (str(f),)
        )
    if isinstance(f, MooreLoop):
        sub, _ = tensor_tor_mod(_pi_su(top), f.m)
        _, quot = tensor_tor_mod(_pi_su(top - 1), f.m)
        return GroupOrExtension.extension(sub, quot, CITE_BOTT).localized()
    return GroupOrExtension.exact(_pi_su(top), CITE_BOTT)


def pi_factors(prod: FactorProduct, i: int) -> GroupOrExtension:
    """``pi_i`` of a product is the direct sum over its factors."""
    blocked = [str(f) for f in prod.factors if isinstance(f, (OpaqueGauge, MapStar))]
    if blocked:
        raise NotComputable(
            f"pi_{i} is not computable from catalogued data for: {', '.join(blocked)}", blocked
        )
    total = GroupOrExtension.exact(FgAbGroup())
    for f in prod.factors:
        total = total + pi_factor(f, i)
    return GroupOrExtension(total.sub, total.quot, total.resolved, False, CITE_BOTT)
