"""Catalogued odd-primary homotopy groups of atoms.

The table is data: every answer carries the citation it came from, and a
query the table does not cover raises :class:`NotCatalogued` instead of
guessing. Two general facts back the table: groups below the connectivity
vanish, and the first non-vanishing group is the Hurewicz image.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FgAbGroup, localize_away_2, prime_power_parts
from .errors import NotCatalogued
from .spaces import Atom, Localization, Moore, OpaqueCell, Sphere, _atom_homology

__all__ = ["DecoratedGroup", "pi", "table_entries"]


@dataclass(frozen=True)
class DecoratedGroup:
    """A group presented as a sum of cyclic pieces with generator labels.

    ``orders[i]`` is the order of the summand generated by ``generators[i]``
    (0 for an infinite cyclic summand).
    """

    generators: tuple[str, ...] = ()
    orders: tuple[int, ...] = ()
    citation: str = ""

    @property
    def group(self) -> FgAbGroup:
        return FgAbGroup.from_invariant_factors(self.orders)

    def __str__(self):
        if not self.orders:
            return "0"
        return " + ".join("Z" if o == 0 else f"Z/{o}" for o in self.orders)

    def to_json(self):
        return {
            "group": self.group.to_json(),
            "text": str(self),
            "generators": [
                {"label": g, "order": o} for g, o in zip(self.generators, self.orders)
            ],
            "citation": self.citation,
        }


LEMMA_MOORE_ZERO = "Lemma 2.2: pi_n(P^n(p^r)) and pi_n(P^(n-1)(p^r)) are trivial for n >= 4"
LEMMA_PI6_P4 = "Lemma 3.1: pi_6(P^4(p^r))"
CITE_ALPHA1 = "Theorem 1.1: alpha_1 is the order 3 map generating the odd part of pi_6(S^3)"
CITE_PI6_P7 = "Section 3: pi_6(P^7(p^r)) = Z/p^r, generated by the bottom cell"
CITE_STEM1 = "pi_(n+1)(S^n) = Z/2 for n >= 3, trivial away from 2"
CITE_PI6_S4 = "pi_6(S^4) = Z/2, trivial away from 2"
CITE_PI6_S5 = "pi_6(S^5) = Z/2, trivial away from 2"
CITE_CONN = "pi_k vanishes at or below the connectivity"
CITE_HUREWICZ = "Hurewicz: first non-vanishing homotopy group equals homology"


def _odd_prime_power(m: int):
    parts = prime_power_parts(m)
    if len(parts) == 1 and parts[0][0] != 2:
        return parts[0]
    return None


def _zero(cite):
    return DecoratedGroup((), (), cite)


def _lookup(x: Atom, n: int) -> DecoratedGroup | None:
    conn = x.connectivity
    if n <= conn:
        return _zero(CITE_CONN)
    if isinstance(x, Sphere):
        k = x.n
        if n == k + 1 and k >= 3:
            return _zero(CITE_STEM1)
        if (k, n) == (3, 6):
            return DecoratedGroup(("alpha1",), (3,), CITE_ALPHA1)
        if (k, n) == (4, 6):
            return _zero(CITE_PI6_S4)
        if (k, n) == (5, 6):
            return _zero(CITE_PI6_S5)
    elif isinstance(x, Moore) and _odd_prime_power(x.m):
        pp = _odd_prime_power(x.m)
        p, r = pp
        if n >= 4 and x.n in (n, n - 1):
            return _zero(LEMMA_MOORE_ZERO)
        if (x.n, n) == (4, 6):
            if p == 3:
                return DecoratedGroup(("wh(1,1)∘phi", "iota∘alpha1"), (3**r, 3), LEMMA_PI6_P4)
            return DecoratedGroup(("wh(1,1)∘phi",), (p**r,), LEMMA_PI6_P4)
        if (x.n, n) == (7, 6):
            return DecoratedGroup(("jmath",), (p**r,), CITE_PI6_P7)
    return _hurewicz(x, n)


def _hurewicz(x: Atom, n: int) -> DecoratedGroup | None:
    conn = x.connectivity
    if n != conn + 1 or conn < 1 or isinstance(x, OpaqueCell):
        return None
    h = localize_away_2(_atom_homology(x)[n])
    label = f"iota{n}" if isinstance(x, Sphere) else f"bottom cell of {x}"
    return DecoratedGroup((label,) * len(h.summands()), tuple(h.summands()), CITE_HUREWICZ)


def pi(x: Atom, n: int, loc: Localization = Localization.AWAY_FROM_2) -> DecoratedGroup:
    """``pi_n(x)`` localized away from 2, straight from the table."""
    if Localization(loc) is not Localization.AWAY_FROM_2:
        raise NotCatalogued("only odd-primary (away-from-2) homotopy groups are catalogued")
    if not isinstance(x, Atom):
        raise NotCatalogued(f"pi_{n} of non-atom {x}; use pi_wedge")
    out = _lookup(x, n)
    if out is None:
        raise NotCatalogued(f"pi_{n}({x}) is not catalogued")
    return out


def table_entries():
    """The explicit table rows, with sample parameters, for display."""
    rows = [
        ("S^n", "n", "Z", CITE_HUREWICZ),
        ("S^n, n>=3", "n+1", "0", CITE_STEM1),
        ("S^3", "6", "Z/3 <alpha1>", CITE_ALPHA1),
        ("S^4", "6", "0", CITE_PI6_S4),
        ("S^5", "6", "0", CITE_PI6_S5),
        ("P^n(p^r), n>=4", "n", "0", LEMMA_MOORE_ZERO),
        ("P^(n-1)(p^r), n>=4", "n", "0", LEMMA_MOORE_ZERO),
        ("P^4(p^r), p>3", "6", "Z/p^r <wh(1,1)∘phi>", LEMMA_PI6_P4),
        ("P^4(3^r)", "6", "Z/3^r + Z/3 <wh(1,1)∘phi, iota∘alpha1>", LEMMA_PI6_P4),
        ("P^7(p^r)", "6", "Z/p^r <jmath>", CITE_PI6_P7),
        ("P^6(p^r)", "6", "0", LEMMA_MOORE_ZERO),
        ("any atom X", "k <= conn(X)", "0", CITE_CONN),
        ("any atom X", "conn(X)+1", "H_(conn+1)(X)", CITE_HUREWICZ),
    ]
    return [dict(zip(("space", "degree", "group", "citation"), r)) for r in rows]
