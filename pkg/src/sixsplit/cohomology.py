"""Reduced generalized cohomology of the manifold through its splitting.

A theory is described by its coefficient groups ``h~^k(S^0)`` (optionally
periodic). Spheres are read off by the suspension axiom, Moore spaces and
the exotic cones through their defining cofibrations. Whenever an exact
sequence leaves a choice open the answer says so instead of picking one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .abelian import FgAbGroup, localize_away_2, tensor_tor_mod
from .errors import TheoryError
from .spaces import (
    Atom,
    ConeAlpha1,
    ConeIotaAlpha1,
    Moore,
    OpaqueCell,
    SigmaCP3,
    Sphere,
)
from .splitter import ManifoldInvariants, split_suspension

__all__ = [
    "GroupOrExtension",
    "TheoryDescriptor",
    "HZ",
    "HZmod",
    "KU",
    "theory_from_name",
    "evaluate_atom",
    "evaluate_manifold",
    "manifold_contributions",
    "desuspended_name",
    "theorem_terms",
    "Contribution",
]

CITE_WEDGE = "Theorem 1.2: wedge axiom applied to the splitting of Sigma M"


@dataclass(frozen=True)
class GroupOrExtension:
    """An extension ``0 -> sub -> E -> quot -> 0``.

    ``resolved`` holds ``E`` when the sequence determines it. An
    ``underdetermined`` value means even ``sub``/``quot`` are not known.
    """

    sub: FgAbGroup = field(default_factory=FgAbGroup)
    quot: FgAbGroup = field(default_factory=FgAbGroup)
    resolved: FgAbGroup | None = None
    underdetermined: bool = False
    note: str = ""

    @classmethod
    def exact(cls, g: FgAbGroup, note: str = "") -> "GroupOrExtension":
        return cls(g, FgAbGroup(), g, False, note)

    @classmethod
    def extension(cls, sub: FgAbGroup, quot: FgAbGroup, note: str = "") -> "GroupOrExtension":
        # determined when one end vanishes or the quotient is free (it splits)
        if sub.is_trivial or quot.is_trivial or quot.is_free:
            return cls(sub, quot, sub + quot, False, note)
        return cls(sub, quot, None, False, note)

    @classmethod
    def unknown(cls, note: str) -> "GroupOrExtension":
        return cls(FgAbGroup(), FgAbGroup(), None, True, note)

    @property
    def is_exact(self) -> bool:
        return self.resolved is not None

    def __add__(self, other: "GroupOrExtension") -> "GroupOrExtension":
        note = "; ".join(n for n in (self.note, other.note) if n)
        if self.underdetermined or other.underdetermined:
            return GroupOrExtension.unknown(note)
        if self.is_exact and other.is_exact:
            return GroupOrExtension(
                self.sub + other.sub, self.quot + other.quot, self.resolved + other.resolved, False, note
            )
        return GroupOrExtension(self.sub + other.sub, self.quot + other.quot, None, False, note)

    def localized(self) -> "GroupOrExtension":
        if self.underdetermined:
            return self
        res = None if self.resolved is None else localize_away_2(self.resolved)
        sub, quot = localize_away_2(self.sub), localize_away_2(self.quot)
        if res is None and (sub.is_trivial or quot.is_trivial or quot.is_free):
            res = sub + quot
        return GroupOrExtension(sub, quot, res, False, self.note)

    def __str__(self):
        if self.underdetermined:
            return f"underdetermined ({self.note})" if self.note else "underdetermined"
        if self.is_exact:
            return str(self.resolved)
        return f"extension of {self.quot} by {self.sub}"

    def to_json(self) -> dict:
        out = {"status": "exact" if self.is_exact else ("underdetermined" if self.underdetermined else "extension")}
        if self.is_exact:
            out["group"] = self.resolved.to_json()
        elif not self.underdetermined:
            out["sub"] = self.sub.to_json()
            out["quot"] = self.quot.to_json()
        out["text"] = str(self)
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class TheoryDescriptor:
    name: str
    coefficients: Mapping[int, FgAbGroup]
    period: int | None = None
    atom_overrides: Mapping[tuple[str, int], GroupOrExtension] = field(default_factory=dict)

    def coefficient(self, k: int) -> FgAbGroup:
        if self.period:
            k %= self.period
        return self.coefficients.get(k, FgAbGroup())


HZ = TheoryDescriptor("HZ", {0: FgAbGroup.free(1)})
KU = TheoryDescriptor("KU", {0: FgAbGroup.free(1), 1: FgAbGroup()}, period=2)


def HZmod(q: int) -> TheoryDescriptor:
    if q < 2:
        raise TheoryError(f"HZmod needs q >= 2, got {q}")
    return TheoryDescriptor(f"HZmod:{q}", {0: FgAbGroup.cyclic(q)})


def theory_from_name(name: str) -> TheoryDescriptor:
    if name == "HZ":
        return HZ
    if name == "KU":
        return KU
    if name.startswith("HZmod:"):
        try:
            q = int(name.split(":", 1)[1])
        except ValueError:
            raise TheoryError(f"bad modulus in theory name {name!r}") from None
        return HZmod(q)
    raise TheoryError(f"unknown theory {name!r}; expected HZ, HZmod:<q> or KU")


def _sphere(th: TheoryDescriptor, k: int, n: int) -> FgAbGroup:
    return th.coefficient(n - k)


def _moore(th: TheoryDescriptor, k: int, m: int, n: int) -> GroupOrExtension:
    coker, _ = tensor_tor_mod(th.coefficient(n - k), m)
    _, ker = tensor_tor_mod(th.coefficient(n - k + 1), m)
    return GroupOrExtension.extension(coker, ker, f"cofibration S{k-1} -> S{k-1} -> P{k}({m})")


def _alpha1_forced_zero(source: FgAbGroup, target: FgAbGroup) -> bool:
    """Is every homomorphism induced by an order-3 map ``source -> target`` zero?

    Such a map ``f`` satisfies ``3 f = 0``, so its image lies in the
    3-torsion of the target, and it kills ``3 * source``.
    """
    if source.is_trivial or target.is_trivial:
        return True
    if not target.has_torsion_at(3):
        return True
    return source.is_finite and not source.has_torsion_at(3)


def _cone(th, label, base_n, base, top_dim, n):
    """``h~^n`` of the cone on an order-3 map ``S^(top_dim - 1) -> base``.

    ``base`` evaluates ``h~^k`` of the base space (as a GroupOrExtension).
    """
    override = th.atom_overrides.get((label, n))
    if override is not None:
        return override
    src = top_dim - 1
    lower_b, lower_s = base(n - 1), _sphere(th, src, n - 1)
    upper_b, upper_s = base(n), _sphere(th, src, n)
    if not (lower_b.is_exact and upper_b.is_exact):
        return GroupOrExtension.unknown(f"{label}: cohomology of the base is an unresolved extension")
    for g, h in ((lower_b.resolved, lower_s), (upper_b.resolved, upper_s)):
        if not _alpha1_forced_zero(g, h):
            return GroupOrExtension.unknown(
                f"{label}: connecting map {g} -> {h} is not forced to vanish; supply an override"
            )
    return GroupOrExtension.extension(
        lower_s, upper_b.resolved, f"cofibration S{src} -> {base_n} -> {label}"
    )


def evaluate_atom(th: TheoryDescriptor, x: Atom, n: int) -> GroupOrExtension:
    """Integral ``h~^n`` of a catalogue atom (SCP3 is evaluated away from 2)."""
    if isinstance(x, Sphere):
        return GroupOrExtension.exact(_sphere(th, x.n, n))
    if isinstance(x, Moore):
        return _moore(th, x.n, x.m, n)
    if isinstance(x, ConeAlpha1):
        return _cone(th, "CA1", "S3", lambda k: GroupOrExtension.exact(_sphere(th, 3, k)), 7, n)
    if isinstance(x, ConeIotaAlpha1):
        m = 3**x.r
        return _cone(th, str(x), f"P4({m})", lambda k: _moore(th, 4, m, k), 7, n)
    if isinstance(x, SigmaCP3):
        out = evaluate_atom(th, ConeAlpha1(), n) + evaluate_atom(th, Sphere(5), n)
        return GroupOrExtension(
            out.sub, out.quot, out.resolved, out.underdetermined, "SCP3 ~ CA1 v S5 away from 2"
        ).localized()
    if isinstance(x, OpaqueCell):
        override = th.atom_overrides.get((str(x), n))
        if override is not None:
            return override
        return GroupOrExtension.unknown(f"{x} is opaque")
    raise TheoryError(f"not a catalogue atom: {x!r}")


def desuspended_name(x: Atom) -> str:
    """Name of the space whose suspension is the atom, as in the theorem display."""
    if isinstance(x, Sphere):
        return f"S{x.n - 1}"
    if isinstance(x, Moore):
        return f"P{x.n - 1}({x.m})"
    if isinstance(x, SigmaCP3):
        return "CP3"
    if isinstance(x, ConeIotaAlpha1):
        return f"C_(iota o alpha1)(3^{x.r})"
    if isinstance(x, ConeAlpha1):
        return "C_(alpha1) desuspended"
    return f"desuspension of {x}"


@dataclass
class Contribution:
    atom: Atom
    name: str
    value: GroupOrExtension

    def to_json(self):
        return {"atom": str(self.atom), "term": f"h^n({self.name})", "value": self.value.to_json()}


def manifold_contributions(th: TheoryDescriptor, inv: ManifoldInvariants, n: int) -> list[Contribution]:
    """One entry per wedge summand of Sigma M, named by its desuspension."""
    out = []
    for atom in split_suspension(inv).summands:
        out.append(Contribution(atom, desuspended_name(atom), evaluate_atom(th, atom, n + 1).localized()))
    return out


def evaluate_manifold(th: TheoryDescriptor, inv: ManifoldInvariants, n: int) -> GroupOrExtension:
    """``h~^n(M)`` away from 2, summed over the splitting of ``Sigma M``."""
    total = GroupOrExtension.exact(FgAbGroup())
    for c in manifold_contributions(th, inv, n):
        total = total + c.value
    return GroupOrExtension(total.sub, total.quot, total.resolved, total.underdetermined, "").localized()


def theorem_terms(inv: ManifoldInvariants) -> list[str]:
    """The summand list ``h^n(...)`` of the cohomology decomposition for ``inv``."""
    return [f"h^n({desuspended_name(a)})" for a in split_suspension(inv).summands]
