"""Plucker coordinates of [diag(a) | B] and sign combinatorics on n-subsets.

Bases are the sorted n-subsets of {1, ..., 2n} in lexicographic order; the
first n columns carry diag(a), columns n+1..2n carry B.  Every maximal minor
factors through the block structure as

    p_S = eps(S) * prod_{i in A-part} a_i * det(B[rows, cols]),

with rows the growth indices NOT hit by the A-part, cols the B-part shifted
down by n, and eps(S) the parity of the concatenation (A-part, rows).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from .model import ParameterPoint, SignPattern
from .ratlin import det, submatrix

SIGN_CHARS = {1: "+", -1: "-", 0: "?"}


@lru_cache(maxsize=None)
def bases(n: int) -> tuple[tuple[int, ...], ...]:
    """All sorted n-subsets of {1..2n}, lexicographic; index = rank."""
    return tuple(combinations(range(1, 2 * n + 1), n))


@lru_cache(maxsize=None)
def _rank_of(n: int) -> dict:
    return {S: r for r, S in enumerate(bases(n))}


def rank(n: int, elements) -> int:
    S = tuple(elements)
    r = _rank_of(n).get(S)
    if r is None:
        raise ValueError(f"{S} is not a sorted n-subset of 1..{2 * n}")
    return r


def unrank(n: int, r: int) -> tuple[int, ...]:
    table = bases(n)
    if not 0 <= r < len(table):
        raise ValueError(f"rank {r} out of range for n={n}")
    return table[r]


def inversions(seq) -> int:
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def _split(S, n):
    """A-part (as growth indices), B-part columns, and uncovered rows."""
    apart = tuple(e for e in S if e <= n)
    cols = tuple(e - n for e in S if e > n)
    inside = set(apart)
    rows = tuple(i for i in range(1, n + 1) if i not in inside)
    return apart, cols, rows


@lru_cache(maxsize=None)
def _block_sign(n: int, apart: tuple[int, ...]) -> int:
    """Parity of the row-to-column matching; depends only on the A-part."""
    inside = set(apart)
    rows = tuple(i for i in range(1, n + 1) if i not in inside)
    return -1 if inversions(apart + rows) % 2 else 1


@dataclass(frozen=True)
class PluckerVector:
    """Exact maximal minors of [diag(a) | B], indexed by basis rank."""

    n: int
    p: tuple

    def at(self, S) -> Fraction:
        return self.p[rank(self.n, S)]

    def sign_vector(self) -> tuple[int, ...]:
        return tuple(0 if v == 0 else (1 if v > 0 else -1) for v in self.p)

    def zero_ranks(self) -> tuple[int, ...]:
        return tuple(r for r, v in enumerate(self.p) if v == 0)


def plucker_coordinate(point: ParameterPoint, S) -> Fraction:
    n = point.n
    apart, cols, rows = _split(tuple(S), n)
    coeff = Fraction(1)
    for i in apart:
        coeff *= point.a[i - 1]
    minor = det(submatrix(point.B, [r - 1 for r in rows], [c - 1 for c in cols]))
    return _block_sign(n, apart) * coeff * minor


def plucker_vector(point: ParameterPoint) -> PluckerVector:
    return PluckerVector(point.n, tuple(plucker_coordinate(point, S) for S in bases(point.n)))


def minor_sign_under_pattern(rows, cols, b_signs) -> int:
    """Sign of det(B[rows, cols]) forced by the signs of B alone.

    rows and cols are 1-based index tuples of equal size k.  Enumerates the
    k! monomials of the Leibniz expansion; entries are nonzero by assumption,
    so the determinant sign is pinned exactly when all monomials agree.
    Returns +1, -1, or 0 for open.
    """
    k = len(rows)
    if k != len(cols):
        raise ValueError("minor needs equally many rows and columns")
    seen = 0
    for tau in permutations(range(k)):
        s = -1 if inversions(tau) % 2 else 1
        for i in range(k):
            s *= b_signs[rows[i] - 1][cols[tau[i]] - 1]
        if seen == 0:
            seen = s
        elif seen != s:
            return 0
    return seen


@dataclass(frozen=True)
class PartialChirotope:
    """Plucker signs pinned by a sign pattern; 0 marks an open basis.

    Only sorted bases are stored.  The orientation is fixed by the top
    coordinate: chi at basis (1..n) equals the product of the growth signs.
    """

    n: int
    chi: tuple[int, ...]

    def to_string(self) -> str:
        return "".join(SIGN_CHARS[s] for s in self.chi)

    @classmethod
    def from_string(cls, n: int, text: str) -> "PartialChirotope":
        decode = {"+": 1, "-": -1, "?": 0}
        if len(text) != len(bases(n)) or any(c not in decode for c in text):
            raise ValueError("chirotope string must cover every basis with + - ?")
        return cls(n, tuple(decode[c] for c in text))

    def sign_at(self, S) -> int:
        return self.chi[rank(self.n, S)]

    def with_sign(self, r: int, s: int) -> "PartialChirotope":
        chi = list(self.chi)
        chi[r] = s
        return PartialChirotope(self.n, tuple(chi))

    def known_count(self) -> int:
        return sum(1 for s in self.chi if s != 0)

    def unknown_ranks(self) -> tuple[int, ...]:
        return tuple(r for r, s in enumerate(self.chi) if s == 0)

    def to_json(self) -> dict:
        return {
            "".join(str(e) for e in S): SIGN_CHARS[s]
            for S, s in zip(bases(self.n), self.chi)
        }


def partial_chirotope(sp: SignPattern, trivial_only: bool = False) -> PartialChirotope:
    """Signs of all Plucker coordinates that sigma forces.

    Default rule: a basis gets a sign whenever all Leibniz monomials of its
    B-block minor agree (combined with the A-part signs and the matching
    parity).  With trivial_only, only the bases whose B-part has at most one
    column are assigned; these are exactly the n^2 + 1 always-known ones.
    """
    n = sp.n
    chi = []
    for S in bases(n):
        apart, cols, rows = _split(S, n)
        if trivial_only and len(cols) > 1:
            chi.append(0)
            continue
        s = minor_sign_under_pattern(rows, cols, sp.b_signs)
        if s != 0:
            s *= _block_sign(n, apart)
            for i in apart:
                s *= sp.a_signs[i - 1]
        chi.append(s)
    return PartialChirotope(n, tuple(chi))


@dataclass(frozen=True)
class GPRelation:
    """One three-term relation p_Sab p_Scd - p_Sac p_Sbd + p_Sad p_Sbc = 0.

    S is an (n-2)-subset, quad the four remaining elements a<b<c<d, and
    pairs holds the three products as basis-rank pairs in that order.  The
    identity holds verbatim on sorted bases: re-sorting both factors of a
    product flips an even number of transpositions in total.
    """

    S: tuple[int, ...]
    quad: tuple[int, ...]
    pairs: tuple

    def flat_ranks(self) -> tuple[int, ...]:
        (i1, i2), (i3, i4), (i5, i6) = self.pairs
        return (i1, i2, i3, i4, i5, i6)


@lru_cache(maxsize=None)
def enumerate_gp_relations(n: int) -> tuple[GPRelation, ...]:
    """All (S, quad) three-term relations, in lexicographic order."""
    if n < 2:
        raise ValueError("relations need n >= 2")
    universe = range(1, 2 * n + 1)
    out = []
    for S in combinations(universe, n - 2):
        rest = [e for e in universe if e not in S]
        for quad in combinations(rest, 4):
            a, b, c, d = quad
            pairings = ((a, b, c, d), (a, c, b, d), (a, d, b, c))
            pairs = tuple(
                (rank(n, tuple(sorted(S + (x, y)))), rank(n, tuple(sorted(S + (z, w)))))
                for x, y, z, w in pairings
            )
            out.append(GPRelation(S, quad, pairs))
    return tuple(out)


def verify_gp(pv: PluckerVector) -> bool:
    """Exact residual check of every three-term relation."""
    for rel in enumerate_gp_relations(pv.n):
        (i1, i2), (i3, i4), (i5, i6) = rel.pairs
        if pv.p[i1] * pv.p[i2] - pv.p[i3] * pv.p[i4] + pv.p[i5] * pv.p[i6] != 0:
            return False
    return True
