"""Suspension splitting of a simply connected closed 6-manifold.

Input is the homology data ``H_2 = Z^b + T``, ``H_3 = Z^(2d) + T`` together
with a descriptor of how the mod-3 power operation ``P^1`` acts on
``H^2(M; Z/3)``. The output is a canonical wedge of catalogue atoms for
``Sigma M`` localized away from 2, plus the skeleton data used by the gauge
group decompositions.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from sympy import isprime

from .abelian import FgAbGroup
from .errors import InvariantError
from .spaces import (
    ConeIotaAlpha1,
    Localization,
    Moore,
    OpaqueCell,
    SigmaCP3,
    Sphere,
    Wedge,
    homology_of,
    normalize,
)

__all__ = [
    "P1Action",
    "ManifoldInvariants",
    "SkeletonData",
    "SplitReport",
    "validate",
    "homology_table",
    "reduced_homology",
    "split_suspension",
    "splitting_report",
    "skeleton_data",
    "complement_cells",
    "check_homology",
    "suspension_of_y_included",
]

CITE_TABLE = "table (1.1)"
CITE_ODD = "Section 4: the p_j may be taken odd after localization away from 2"
CITE_THM_A = "Theorem 1.1, P^1 trivial"
CITE_THM_B = "Theorem 1.1, P^1 non-trivial (SCP3 branch)"
CITE_THM_C = "Theorem 1.1, P^1 non-trivial (C_{iota o alpha1} branch)"
CITE_CBAR = "Lemma 4.7: relabel so that r_1 <= ... <= r_cbar"
CITE_REMARK = "Remark 1.1: P^1 trivial iff p1(M) divisible by 3"
CITE_Y = "Lemma 5.6"
CITE_CJ = "Lemma 5.9"

TRIVIAL, FREE, TORSION = "trivial", "free", "torsion"
CASES = {TRIVIAL: "A", FREE: "B", TORSION: "C"}


@dataclass(frozen=True)
class P1Action:
    """How ``P^1: H^2(M;Z/3) -> H^6(M;Z/3)`` acts.

    ``indices`` name 3-torsion summands (positions in the canonical torsion
    list) on which the action is non-trivial.
    """

    kind: str = TRIVIAL
    indices: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in CASES:
            raise InvariantError(f"unknown P^1 action type {self.kind!r}")
        object.__setattr__(self, "indices", tuple(sorted(set(self.indices))))


@dataclass(frozen=True)
class ManifoldInvariants:
    b: int
    d: int
    torsion: tuple[tuple[int, int], ...] = ()
    p1_action: P1Action = field(default_factory=P1Action)
    p1_mod_3: int | None = None
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def c(self) -> int:
        return len(self.torsion)

    @property
    def case(self) -> str:
        return CASES[self.p1_action.kind]

    @property
    def torsion_group(self) -> FgAbGroup:
        return FgAbGroup(0, self.torsion)

    @property
    def cbar(self) -> int | None:
        """Index of the 3-torsion summand absorbed into the exotic cone (case C)."""
        if self.p1_action.kind != TORSION:
            return None
        # the largest exponent; ties broken by the first canonical position
        return max(self.p1_action.indices, key=lambda j: (self.torsion[j][1], -j))

    def to_document(self) -> dict:
        doc = {
            "b": self.b,
            "d": self.d,
            "torsion": [{"p": p, "r": r} for p, r in self.torsion],
            "p1_action": {"type": self.p1_action.kind, "indices": list(self.p1_action.indices)},
        }
        if self.p1_mod_3 is not None:
            doc["p1_mod_3"] = self.p1_mod_3
        return doc


def _pair(entry) -> tuple[int, int]:
    if isinstance(entry, Mapping):
        return int(entry["p"]), int(entry["r"])
    p, r = entry
    return int(p), int(r)


def _raw_action(raw) -> tuple[str | None, list[int]]:
    if raw is None:
        return None, []
    if isinstance(raw, P1Action):
        return raw.kind, list(raw.indices)
    if isinstance(raw, str):
        return raw, []
    return raw.get("type"), list(raw.get("indices", []))


def validate(raw: Mapping | ManifoldInvariants) -> ManifoldInvariants:
    """Check raw invariants and put them in canonical form.

    ``raw`` uses the document layout: ``b``, ``d``, ``torsion`` (list of
    ``{p, r}``), ``p1_action`` (``{type, indices}``, indices 0-based into the
    given torsion list) and optionally ``p1_mod_3``. 2-primary torsion is
    dropped with a warning and the torsion list is sorted by ``(p, r)``.
    """
    if isinstance(raw, ManifoldInvariants):
        raw = raw.to_document()
    warnings = []
    b, d = int(raw.get("b", 0)), int(raw.get("d", 0))
    if b < 0 or d < 0:
        raise InvariantError(f"b and d must be non-negative, got b={b}, d={d}", CITE_TABLE)

    entries = []
    for pos, entry in enumerate(raw.get("torsion", []) or []):
        p, r = _pair(entry)
        if not isprime(p):
            raise InvariantError(f"torsion summand {pos}: {p} is not prime", CITE_TABLE)
        if r < 1:
            raise InvariantError(f"torsion summand {pos}: exponent must be >= 1, got {r}", CITE_TABLE)
        if p == 2:
            warnings.append(f"dropped 2-primary summand Z/{2**r} (position {pos})")
            continue
        entries.append((p, r, pos))
    entries.sort()
    remap = {pos: i for i, (_, _, pos) in enumerate(entries)}
    torsion = tuple((p, r) for p, r, _ in entries)

    kind, indices = _raw_action(raw.get("p1_action"))
    p1_mod_3 = raw.get("p1_mod_3")
    if p1_mod_3 is not None:
        p1_mod_3 = int(p1_mod_3)
        if p1_mod_3 not in (0, 1, 2):
            raise InvariantError(f"p1_mod_3 must be 0, 1 or 2, got {p1_mod_3}", CITE_REMARK)
        if kind is None:
            if p1_mod_3 != 0:
                raise InvariantError(
                    "p1 is not divisible by 3 so P^1 is non-trivial; "
                    "p1_action must say whether it is free or torsion",
                    CITE_REMARK,
                )
            kind = TRIVIAL
        elif (kind == TRIVIAL) != (p1_mod_3 == 0):
            raise InvariantError(
                f"p1_action {kind!r} contradicts p1 = {p1_mod_3} mod 3", CITE_REMARK
            )
    if kind is None:
        raise InvariantError("missing p1_action (or p1_mod_3)", CITE_THM_A)
    if kind not in CASES:
        raise InvariantError(f"unknown P^1 action type {kind!r}", CITE_THM_A)

    has_3 = any(p == 3 for p, _ in torsion)
    if kind != TRIVIAL and b == 0 and not has_3:
        raise InvariantError(
            "P^1 cannot be non-trivial: H^2(M; Z/3) = 0 (b = 0 and no 3-torsion)", CITE_THM_A
        )
    if kind == TRIVIAL and indices:
        raise InvariantError("trivial P^1 action cannot cite torsion indices", CITE_THM_A)

    cited = []
    for i in indices:
        i = int(i)
        if i not in remap:
            if 0 <= i < len(raw.get("torsion", []) or []):
                raise InvariantError(
                    f"P^1 index {i} cites a 2-primary summand; it must cite 3-torsion", CITE_THM_C
                )
            raise InvariantError(f"P^1 index {i} is out of range", CITE_THM_C)
        j = remap[i]
        if torsion[j][0] != 3:
            raise InvariantError(
                f"P^1 index {i} cites Z/{torsion[j][0] ** torsion[j][1]}; it must cite 3-torsion",
                CITE_THM_C,
            )
        cited.append(j)

    if kind == FREE:
        if b < 1:
            raise InvariantError("P^1 non-trivial on the free part needs b >= 1", CITE_THM_B)
        if cited:
            warnings.append(
                "P^1 is non-trivial on both the free part and 3-torsion; "
                "using the SCP3 branch (case B)"
            )
    if kind == TORSION and not cited:
        raise InvariantError("torsion P^1 action must cite at least one 3-torsion index", CITE_THM_C)

    return ManifoldInvariants(b, d, torsion, P1Action(kind, tuple(cited)), p1_mod_3, tuple(warnings))


def homology_table(inv: ManifoldInvariants) -> list[FgAbGroup]:
    """Unreduced ``H_0 .. H_6`` of M."""
    t = inv.torsion_group
    return [
        FgAbGroup.free(1),
        FgAbGroup(),
        FgAbGroup.free(inv.b) + t,
        FgAbGroup.free(2 * inv.d) + t,
        FgAbGroup.free(inv.b),
        FgAbGroup(),
        FgAbGroup.free(1),
    ]


def reduced_homology(inv: ManifoldInvariants) -> list[FgAbGroup]:
    return [FgAbGroup()] + homology_table(inv)[1:]


def _summands(inv: ManifoldInvariants) -> list[tuple[object, str]]:
    case = inv.case
    cite = {"A": CITE_THM_A, "B": CITE_THM_B, "C": CITE_THM_C}[case]
    out = []
    nb = inv.b - 1 if case == "B" else inv.b
    for _ in range(nb):
        out.append((Sphere(3), cite + ": S3 v S5 per free class of H_2"))
        out.append((Sphere(5), cite + ": S3 v S5 per free class of H_2"))
    for _ in range(2 * inv.d):
        out.append((Sphere(4), cite + ": S4 per free class of H_3"))
    cbar = inv.cbar
    for j, (p, r) in enumerate(inv.torsion):
        if j != cbar:
            out.append((Moore(4, p**r), cite + ": P4 per torsion summand"))
        out.append((Moore(5, p**r), cite + ": P5 per torsion summand"))
    if case == "A":
        out.append((Sphere(7), cite + ": top cell"))
    elif case == "B":
        out.append((SigmaCP3(), cite))
    else:
        out.append((ConeIotaAlpha1(inv.torsion[cbar][1]), f"{cite}; {CITE_CBAR}"))
    return out


def split_suspension(inv: ManifoldInvariants) -> Wedge:
    """Canonical wedge decomposition of ``Sigma M`` away from 2."""
    return normalize(Wedge(tuple(a for a, _ in _summands(inv))), Localization.AWAY_FROM_2)


@dataclass
class SplitReport:
    case: str
    space: Wedge
    summands: list[tuple[object, str]]
    warnings: list[str]
    citations: list[str]
    homology: list[FgAbGroup]

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "space": str(self.space),
            "summands": [{"atom": str(a), "citation": c} for a, c in self.summands],
            "homology": [g.to_json() for g in self.homology],
            "warnings": list(self.warnings),
            "citations": list(self.citations),
        }


def splitting_report(inv: ManifoldInvariants) -> SplitReport:
    summands = sorted(_summands(inv), key=lambda ac: ac[0].sort_key())
    cites = [{"A": CITE_THM_A, "B": CITE_THM_B, "C": CITE_THM_C}[inv.case]]
    if inv.case == "C":
        cites.append(CITE_CBAR)
    if any(w.startswith("dropped") for w in inv.warnings):
        cites.append(CITE_ODD)
    return SplitReport(
        inv.case, split_suspension(inv), summands, list(inv.warnings), cites, homology_table(inv)
    )


# ------------------------------------------------------------------ skeleton data


@dataclass(frozen=True)
class SkeletonData:
    X: Wedge
    Y: Wedge
    C_j: Wedge
    note: str = ""
    citations: tuple[str, ...] = ()

    @property
    def cj_resolved(self) -> bool:
        return not any(isinstance(a, OpaqueCell) and a.label == "C_j" for a in self.C_j.summands)


def _sorted_wedge(atoms) -> Wedge:
    return Wedge(tuple(sorted(atoms, key=lambda a: a.sort_key())), Localization.AWAY_FROM_2)


def complement_cells(inv: ManifoldInvariants) -> tuple[int, ...]:
    """Cell dimensions of ``C_j`` read off the summands of Sigma M not in Sigma Y."""
    rest = Counter(split_suspension(inv).summands)
    rest.subtract(Counter(_suspended_y(inv)))
    cells = []
    for atom, k in rest.items():
        cells.extend(c - 1 for c in atom.cells for _ in range(k))
    return tuple(sorted(cells))


def _y_atoms(inv: ManifoldInvariants) -> list:
    nb = inv.b - 1 if inv.case == "B" else inv.b
    atoms = [Sphere(2)] * nb
    atoms += [Moore(3, p**r) for j, (p, r) in enumerate(inv.torsion) if j != inv.cbar]
    atoms += [Sphere(3)] * (2 * inv.d)
    return atoms


def _suspended_y(inv):
    return [Sphere(a.n + 1) if isinstance(a, Sphere) else Moore(a.n + 1, a.m) for a in _y_atoms(inv)]


def _cyclic_modulus(torsion) -> int | None:
    primes = [p for p, _ in torsion]
    if len(set(primes)) != len(primes):
        return None
    return math.prod(p**r for p, r in torsion)


def skeleton_data(inv: ManifoldInvariants) -> SkeletonData:
    """X, the source Y of the map with a stable left inverse, and ``C_j``."""
    X = _sorted_wedge([Sphere(2)] * inv.b + [Moore(3, p**r) for p, r in inv.torsion])
    Y = _sorted_wedge(_y_atoms(inv))
    cites = [CITE_Y + f", case {inv.case}"]
    m = _cyclic_modulus(inv.torsion)
    note = ""
    if inv.c == 0 and inv.case == "A":
        cj = [Sphere(4)] * inv.b + [Sphere(6)]
    elif inv.c == 0 and inv.case == "B":
        cj = [Sphere(4)] * (inv.b - 1) + [OpaqueCell("C'", (2, 4, 6))]
    elif m is not None and inv.case == "A" and inv.b >= 1:
        cj = [Sphere(4)] * (inv.b - 1) + [OpaqueCell(f"C''({m})", (3, 4, 4, 6))]
    else:
        cj = [OpaqueCell("C_j", complement_cells(inv))]
        if inv.case != "A":
            note = f"{CITE_CJ} covers T = 0 only when P^1 acts non-trivially"
        elif m is None:
            note = f"{CITE_CJ} needs T = 0 or T cyclic"
        else:
            note = f"{CITE_CJ} splits off b - 1 four-spheres, which needs b >= 1"
    if note:
        cites.append(note)
    else:
        cites.append(CITE_CJ)
    return SkeletonData(X, Y, _sorted_wedge(cj), note, tuple(cites))


def suspension_of_y_included(inv: ManifoldInvariants) -> bool:
    """Sigma Y is a wedge summand of Sigma M, at the level of atom multisets."""
    whole = Counter(split_suspension(inv).summands)
    return not (Counter(_suspended_y(inv)) - whole)


def check_homology(inv: ManifoldInvariants) -> bool:
    """``H~_(n+1)(Sigma M)`` agrees with ``H~_n(M)`` away from 2, for every n."""
    from .abelian import localize_away_2

    h = homology_of(split_suspension(inv))
    table = reduced_homology(inv)
    return all(h[n + 1] == localize_away_2(table[n]) for n in range(len(table))) and len(h) <= 8
