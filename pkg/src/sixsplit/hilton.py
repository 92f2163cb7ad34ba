"""Hilton-Milnor decomposition of homotopy groups of a wedge of suspensions.

For ``X = S(A_1) v ... v S(A_k)`` the group ``pi_n(X)`` is the direct sum,
over basic products ``w`` (Lyndon words in the letters), of
``pi_n(S(A_1^(a_1) ^ ... ^ A_k^(a_k)))`` where ``a_i`` counts letter ``i``
in ``w``. Words whose smash is at least n-connected contribute nothing and
are never materialized.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import reduce
from typing import Iterator, Sequence

from .abelian import FgAbGroup
from .errors import HiltonMilnorError, NotCatalogued
from .homotopy_tables import DecoratedGroup, pi
from .spaces import (
    Atom,
    Localization,
    Smash,
    Suspension,
    Wedge,
    atoms_of,
    connectivity,
    desuspend,
    normalize,
    parse,
    to_text,
)

__all__ = ["BasicProduct", "lyndon_words", "basic_products", "pi_wedge", "PiWedge"]


def lyndon_words(alphabet_size: int, max_length: int) -> Iterator[tuple[int, ...]]:
    """Duval's algorithm: Lyndon words of length <= max_length, lexicographic."""
    if alphabet_size <= 0 or max_length <= 0:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < max_length:
            w.append(w[-m])
        while w and w[-1] == alphabet_size - 1:
            w.pop()


@dataclass(frozen=True)
class BasicProduct:
    word: tuple[int, ...]
    smash: object
    normalized: Wedge

    @property
    def weight(self) -> int:
        return len(self.word)

    def label(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            return "".join(chr(ord("a") + i) if i < 26 else f"<{i}>" for i in self.word)
        if len(self.word) == 1:
            return names[self.word[0]]
        return "[" + ", ".join(names[i] for i in self.word) + "]"


def _word_smash(word, desusp):
    counts = Counter(word)
    factors = [desusp[i] for i in sorted(counts) for _ in range(counts[i])]
    return Suspension(reduce(Smash, factors))


def _letters(x) -> list:
    if isinstance(x, str):
        x = parse(x)
    if isinstance(x, Wedge):
        return list(x.summands)
    return [x]


def basic_products(letters, degree_cutoff: int, loc=Localization.AWAY_FROM_2) -> list[BasicProduct]:
    """Basic products whose smash has connectivity below ``degree_cutoff``.

    Letters are taken in the given order; each must be a visible suspension.
    """
    letters = list(letters)
    desusp = []
    for x in letters:
        try:
            desusp.append(desuspend(x))
        except ValueError:
            raise HiltonMilnorError(f"letter {to_text(x)} is not a suspension") from None
    if not letters:
        return []
    base = [connectivity(d) for d in desusp]
    # a word of length L has connectivity >= L*min(base) + L
    step = min(base) + 1
    max_len = 1
    while (max_len + 1) * step < degree_cutoff:
        max_len += 1
    out = []
    for word in lyndon_words(len(letters), max_len):
        smash = _word_smash(word, desusp)
        if connectivity(smash) >= degree_cutoff:
            continue
        out.append(BasicProduct(word, smash, normalize(smash, loc)))
    return out


@dataclass(frozen=True)
class PiWedge:
    degree: int
    summands: tuple[tuple[BasicProduct, DecoratedGroup], ...]
    letter_names: tuple[str, ...]

    @property
    def group(self) -> FgAbGroup:
        return sum((g.group for _, g in self.summands), FgAbGroup())


def _pi_space(x: Wedge, n: int, loc) -> DecoratedGroup:
    atoms = atoms_of(x)
    if not atoms:
        return DecoratedGroup((), (), "point")
    if len(atoms) == 1:
        return pi(atoms[0], n, loc)
    inner = pi_wedge(x, n, loc)
    gens, orders = [], []
    for bp, g in inner.summands:
        gens.extend(f"{bp.label(inner.letter_names)}:{label}" for label in g.generators)
        orders.extend(g.orders)
    return DecoratedGroup(tuple(gens), tuple(orders), "Hilton-Milnor")


def pi_wedge(x, n: int, loc=Localization.AWAY_FROM_2) -> PiWedge:
    """``pi_n`` of a wedge with per-basic-product provenance."""
    letters = _letters(x)
    names = tuple(to_text(a) for a in letters)
    if len(letters) == 1 and isinstance(letters[0], Atom):
        word = BasicProduct((0,), letters[0], Wedge((letters[0],)))
        return PiWedge(n, ((word, pi(letters[0], n, loc)),), names)
    summands = []
    for bp in basic_products(letters, n, loc):
        try:
            group = _pi_space(bp.normalized, n, loc)
        except NotCatalogued as exc:
            raise NotCatalogued(
                f"basic product {bp.label(names)} with smash {to_text(bp.normalized)}: {exc}"
            ) from None
        summands.append((bp, group))
    return PiWedge(n, tuple(summands), names)
