"""Exact arithmetic for finitely generated abelian groups and integer matrices.

Everything here works over Python ints, so entries never overflow while a
matrix is being reduced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, Sequence

from sympy import factorint, isprime

from .errors import ChainComplexError

__all__ = [
    "FgAbGroup",
    "IntMatrix",
    "ChainComplex",
    "smith_normal_form",
    "homology",
    "unimodular_reduce",
    "uct_duals",
    "localize_away_2",
    "tensor_tor_mod",
    "prime_power_parts",
]


def prime_power_parts(m: int) -> list[tuple[int, int]]:
    """Return ``[(p, r), ...]`` with ``m = prod p**r``; empty for m = 1."""
    if m < 1:
        raise ValueError(f"expected a positive integer, got {m}")
    return sorted(factorint(m).items())


@dataclass(frozen=True)
class FgAbGroup:
    """``Z^free_rank`` plus a sorted list of cyclic prime-power summands."""

    free_rank: int = 0
    torsion: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        parts = []
        for p, r in self.torsion:
            if r < 0:
                raise ValueError(f"negative exponent in Z/{p}^{r}")
            if r == 0:
                continue
            if not isprime(p):
                raise ValueError(f"{p} is not a prime")
            parts.append((int(p), int(r)))
        object.__setattr__(self, "torsion", tuple(sorted(parts)))

    @classmethod
    def free(cls, rank: int = 1) -> "FgAbGroup":
        return cls(rank)

    @classmethod
    def cyclic(cls, m: int) -> "FgAbGroup":
        """``Z/m``; ``m = 0`` gives ``Z`` and ``m = 1`` the trivial group."""
        if m == 0:
            return cls(1)
        return cls(0, tuple(prime_power_parts(abs(m))))

    @classmethod
    def from_invariant_factors(cls, factors: Iterable[int]) -> "FgAbGroup":
        out = cls()
        for d in factors:
            out = out + cls.cyclic(d)
        return out

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls()

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def __mul__(self, k: int) -> "FgAbGroup":
        return FgAbGroup(self.free_rank * k, self.torsion * k)

    __rmul__ = __mul__

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int:
        """Order of the torsion subgroup."""
        out = 1
        for p, r in self.torsion:
            out *= p**r
        return out

    def torsion_part(self) -> "FgAbGroup":
        return FgAbGroup(0, self.torsion)

    def primary_part(self, p: int) -> "FgAbGroup":
        return FgAbGroup(0, tuple(t for t in self.torsion if t[0] == p))

    def has_torsion_at(self, p: int) -> bool:
        return any(q == p for q, _ in self.torsion)

    def invariant_factors(self) -> list[int]:
        """Divisibility-chained factors ``d_1 | d_2 | ...`` (free part as 0s)."""
        by_prime: dict[int, list[int]] = {}
        for p, r in self.torsion:
            by_prime.setdefault(p, []).append(p**r)
        width = max((len(v) for v in by_prime.values()), default=0)
        factors = [1] * width
        for powers in by_prime.values():
            powers = sorted(powers)
            for i, q in enumerate(powers):
                factors[width - len(powers) + i] *= q
        return factors + [0] * self.free_rank

    def min_generators(self) -> int:
        return len(self.invariant_factors())

    def summands(self) -> list[int]:
        """Orders of the cyclic summands in canonical order, ``0`` meaning Z."""
        return [0] * self.free_rank + [p**r for p, r in self.torsion]

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{p**r}" for p, r in self.torsion)
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "torsion": [[p, r] for p, r in self.torsion],
            "text": str(self),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FgAbGroup":
        return cls(int(data["free_rank"]), tuple((int(p), int(r)) for p, r in data["torsion"]))


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        entries = tuple(int(x) for x in self.entries)
        if not entries and self.rows * self.cols:
            entries = (0,) * (self.rows * self.cols)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(entries)}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def diagonal(cls, rows: int, cols: int, diag: Sequence[int]) -> "IntMatrix":
        data = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            data[i][i] = d
        return cls.from_rows(data, cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        a, b = self.to_rows(), other.to_rows()
        out = [
            [sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(out, other.cols)

    def transpose(self) -> "IntMatrix":
        rows = self.to_rows()
        return IntMatrix.from_rows([[rows[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def diagonal_entries(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def det(self) -> int:
        """Fraction-free Bareiss determinant."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def rank(self) -> int:
        _, d, _ = smith_normal_form(self)
        return sum(1 for x in d.diagonal_entries() if x)


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return unimodular ``U``, ``V`` and diagonal ``D`` with ``U @ A @ V == D``.

    The diagonal is non-negative and each entry divides the next.
    """
    m, n = a.rows, a.cols
    d = a.to_rows()
    u = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()

    def row_addmul(i, j, q):  # row_i -= q * row_j
        if q:
            d[i] = [x - q * y for x, y in zip(d[i], d[j])]
            u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_addmul(i, j, q):  # col_i -= q * col_j
        if q:
            for row in d:
                row[i] -= q * row[j]
            for row in v:
                row[i] -= q * row[j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            pivots = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
            if not pivots:
                break
            _, pi, pj = min(pivots)
            swap_rows(t, pi)
            swap_cols(t, pj)
            dirty = False
            for i in range(t + 1, m):
                row_addmul(i, t, d[i][t] // d[t][t])
                dirty |= d[i][t] != 0
            for j in range(t + 1, n):
                col_addmul(j, t, d[t][j] // d[t][t])
                dirty |= d[t][j] != 0
            if dirty:
                continue
            p = d[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_addmul(t, bad, -1)
        if t < m and t < n and d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        if not any(d[i][j] for i in range(t, m) for j in range(t, n)):
            break

    return (
        IntMatrix.from_rows(u, m),
        IntMatrix.from_rows(d, n),
        IntMatrix.from_rows(v, n),
    )


@dataclass(frozen=True)
class ChainComplex:
    """Free chain complex; ``boundaries[k]`` maps degree k to degree k - 1.

    Missing boundaries are zero maps.
    """

    ranks: tuple[int, ...]
    boundaries: Mapping[int, IntMatrix] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        if any(r < 0 for r in self.ranks):
            raise ChainComplexError("ranks must be non-negative")
        fixed = {}
        for k, mat in dict(self.boundaries).items():
            if not 1 <= k < len(self.ranks):
                raise ChainComplexError(f"boundary index {k} out of range")
            expected = (self.ranks[k - 1], self.ranks[k])
            if mat.shape != expected:
                raise ChainComplexError(f"boundary[{k}] has shape {mat.shape}, expected {expected}")
            fixed[k] = mat
        object.__setattr__(self, "boundaries", fixed)

    def boundary(self, k: int) -> IntMatrix:
        if k in self.boundaries:
            return self.boundaries[k]
        rows = self.ranks[k - 1] if 1 <= k <= len(self.ranks) else 0
        cols = self.ranks[k] if 0 <= k < len(self.ranks) else 0
        return IntMatrix.zeros(rows, cols)

    def check(self) -> None:
        for k in range(2, len(self.ranks)):
            if not (self.boundary(k - 1) @ self.boundary(k)).is_zero():
                raise ChainComplexError(f"boundary[{k - 1}] @ boundary[{k}] is not zero")


def homology(c: ChainComplex) -> list[FgAbGroup]:
    """``H_k = ker d_k / im d_{k+1}`` for every degree of ``c``."""
    c.check()
    out = []
    for k, rank in enumerate(c.ranks):
        kernel = rank - c.boundary(k).rank() if k else rank
        _, d, _ = smith_normal_form(c.boundary(k + 1))
        diag = [x for x in d.diagonal_entries() if x]
        group = FgAbGroup(kernel - len(diag))
        for x in diag:
            group = group + FgAbGroup.cyclic(x)
        out.append(group)
    return out


def _bezout(x: int, y: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s*x + t*y == g == gcd(x, y) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    a, b = x, y
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _clear_vector(a: Sequence[int]) -> tuple[int, list[list[int]]]:
    """Column operations taking ``a`` to ``(gcd(a), 0, ..., 0)`` exactly."""
    n = len(a)
    p = IntMatrix.identity(n).to_rows()
    vec = list(a)
    for i in range(1, n):
        x, y = vec[0], vec[i]
        if y == 0:
            continue
        g, s, t = _bezout(x, y)
        # columns (0, i) <- (0, i) @ [[s, -y/g], [t, x/g]], determinant 1
        for row in p:
            c0, ci = row[0], row[i]
            row[0], row[i] = c0 * s + ci * t, -c0 * (y // g) + ci * (x // g)
        vec[0], vec[i] = g, 0
    if vec[0] < 0:
        vec[0] = -vec[0]
        for row in p:
            row[0] = -row[0]
    return vec[0], p


def _invert_unimodular(p: list[list[int]]) -> list[list[int]]:
    """Exact inverse of a determinant +-1 integer matrix via the adjugate."""
    n = len(p)
    mat = IntMatrix.from_rows(p, n)
    det = mat.det()
    if det not in (1, -1):
        raise ValueError("matrix is not unimodular")
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(p) if k != i]
            cof = IntMatrix.from_rows(minor, n - 1).det() if n > 1 else 1
            inv[j][i] = (-1) ** (i + j) * cof * det
    return inv


def unimodular_reduce(a: Sequence[int], m: int = 0) -> tuple[int, IntMatrix]:
    """Find ``P`` in ``GL_l(Z)`` pushing ``a`` onto its first coordinate mod ``m``.

    ``m = 0`` means no modulus. Returns ``(a_prime, P)`` where
    ``a_prime = gcd(a)`` when ``m = 0`` and ``gcd(m, a)`` otherwise, and
    ``a @ P`` is ``(a_prime, 0, ..., 0)`` modulo ``m``.

    For a single entry ``GL_1(Z) = {1, -1}``, so with ``m >= 2`` the first
    coordinate of ``a @ P`` is only a unit multiple of ``a_prime`` mod ``m``.
    """
    a = [int(x) for x in a]
    if not a:
        raise ValueError("unimodular_reduce needs a vector of length >= 1")
    if m < 0:
        raise ValueError("modulus must be >= 0")
    g, p_a = _clear_vector(a)
    if m == 0:
        return g, IntMatrix.from_rows(p_a, len(a))
    a_prime = gcd(m, g)
    if len(a) == 1 or g == 0 or a_prime == m:
        return a_prime, IntMatrix.from_rows(p_a, len(a))
    # pick a target (x, lcm(g, m), 0, ...) of content g with x = a_prime mod m
    lcm = g * m // a_prime
    x = next(a_prime + m * s for s in range(g + 1) if (a_prime + m * s) % g == 0)
    target = [x, lcm] + [0] * (len(a) - 2)
    g2, p_t = _clear_vector(target)
    assert g2 == g
    p = IntMatrix.from_rows(p_a, len(a)) @ IntMatrix.from_rows(_invert_unimodular(p_t), len(a))
    return a_prime, p


def uct_duals(g: FgAbGroup) -> tuple[FgAbGroup, FgAbGroup]:
    """``(Hom(G, Z), Ext(G, Z))``."""
    return FgAbGroup(g.free_rank), g.torsion_part()


def localize_away_2(g: FgAbGroup) -> FgAbGroup:
    return FgAbGroup(g.free_rank, tuple(t for t in g.torsion if t[0] != 2))


def tensor_tor_mod(g: FgAbGroup, m: int) -> tuple[FgAbGroup, FgAbGroup]:
    """``(G (x) Z/m, Tor(G, Z/m))`` summand by summand."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    tensor = FgAbGroup.cyclic(m) * g.free_rank
    tor = FgAbGroup()
    for p, r in g.torsion:
        piece = FgAbGroup.cyclic(gcd(p**r, m))
        tensor = tensor + piece
        tor = tor + piece
    return tensor, tor
