"""Sign patterns, interaction networks, and concrete parameter points.

A community of n species is described by a growth-rate vector a and an
interaction matrix B.  The qualitative object of study is the sign pattern
sigma in {+,-}^(n+n^2): the signs of a followed by the signs of B row-major.
Signs are stored as the integers +1/-1; diagonal entries of B are positive
unless explicitly overridden.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

_SEPARATORS = set(" ,|/;\t\r\n")


class PatternError(ValueError):
    """Malformed sign pattern, network, or parameter point."""


def _sign_char(s: int) -> str:
    return "+" if s > 0 else "-"


@dataclass(frozen=True)
class SignPattern:
    """Qualitative community type: signs of (a, B) for n species."""

    n: int
    a_signs: tuple[int, ...]
    b_signs: tuple[tuple[int, ...], ...]

    def flat(self) -> tuple[int, ...]:
        return self.a_signs + tuple(s for row in self.b_signs for s in row)

    def text(self) -> str:
        """Flat '+'/'-' encoding: a-block, then B row-major."""
        return "".join(_sign_char(s) for s in self.flat())

    def __str__(self) -> str:
        rows = "/".join("".join(_sign_char(s) for s in row) for row in self.b_signs)
        return "".join(_sign_char(s) for s in self.a_signs) + " " + rows

    def sigma_product(self) -> int:
        """Product of the growth-rate signs; orients the top coordinate."""
        p = 1
        for s in self.a_signs:
            p *= s
        return p

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a": [_sign_char(s) for s in self.a_signs],
            "B": [[_sign_char(s) for s in row] for row in self.b_signs],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "SignPattern":
        n = int(payload["n"])
        text = "".join(payload["a"]) + "".join("".join(row) for row in payload["B"])
        sp = parse_sign_pattern(text, allow_any_diagonal=True)
        if sp.n != n:
            raise PatternError(f"declared n={n} but pattern has n={sp.n}")
        return sp


def parse_sign_pattern(text: str, allow_any_diagonal: bool = False) -> SignPattern:
    """Parse a flat sign string of length n + n^2 (separators ignored).

    The first n characters are the signs of a, the rest the signs of B in
    row-major order.  A '-' on the diagonal of B is rejected unless
    allow_any_diagonal is set.
    """
    stripped = [c for c in text if c not in _SEPARATORS]
    bad = [c for c in stripped if c not in "+-"]
    if bad:
        raise PatternError(f"illegal character {bad[0]!r} in sign pattern")
    span = len(stripped)
    # span = n + n^2 has the unique positive root n = (-1 + sqrt(1+4*span))/2
    n = int((math.isqrt(1 + 4 * span) - 1) // 2)
    if n < 1 or n + n * n != span:
        raise PatternError(f"length {span} is not of the form n + n^2")
    signs = [1 if c == "+" else -1 for c in stripped]
    a = tuple(signs[:n])
    b = tuple(tuple(signs[n + i * n : n + (i + 1) * n]) for i in range(n))
    if not allow_any_diagonal:
        for i in range(n):
            if b[i][i] < 0:
                raise PatternError(
                    f"negative diagonal sign b[{i + 1}][{i + 1}]; "
                    "pass allow_any_diagonal=True to accept it"
                )
    return SignPattern(n, a, b)


@dataclass(frozen=True)
class EcologicalNetwork:
    """Interaction graph: growth sign per species, one edge type per pair.

    Edge values, keyed by the pair (i, j) with i < j (0-based):
      "competition"        both b_ij and b_ji positive
      "mutualism"          both negative
      "predation:p>q"      p predates q, so b_pq < 0 and b_qp > 0
    """

    n: int
    growth: tuple[int, ...]
    edges: dict

    def edge_signs(self, i: int, j: int) -> tuple[int, int]:
        """Signs (b_ij, b_ji) for the unordered pair {i, j}."""
        key = (i, j) if i < j else (j, i)
        kind = self.edges.get(key)
        if kind is None:
            raise PatternError(f"no interaction declared for pair {key}")
        if kind == "competition":
            sij, sji = 1, 1
        elif kind == "mutualism":
            sij, sji = -1, -1
        elif kind.startswith("predation:"):
            pred, _, prey = kind.removeprefix("predation:").partition(">")
            p, q = int(pred), int(prey)
            if {p, q} != {key[0], key[1]}:
                raise PatternError(f"predation endpoints {p}>{q} do not match pair {key}")
            sij = -1 if p == key[0] else 1
            sji = -sij
        else:
            raise PatternError(f"unknown interaction type {kind!r}")
        return (sij, sji) if i < j else (sji, sij)


def network_to_sign_pattern(net: EcologicalNetwork) -> SignPattern:
    """Compile a network to its sign pattern (diagonal always positive)."""
    n = net.n
    if len(net.growth) != n or any(s not in (1, -1) for s in net.growth):
        raise PatternError("growth must give +1/-1 for each of the n species")
    b = [[1] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            b[i][j], b[j][i] = net.edge_signs(i, j)
    return SignPattern(n, tuple(net.growth), tuple(tuple(row) for row in b))


def apply_permutation(sp: SignPattern, pi: tuple[int, ...]) -> SignPattern:
    """Relabel species: entry i of the result is entry pi[i] of the input."""
    n = sp.n
    a = tuple(sp.a_signs[pi[i]] for i in range(n))
    b = tuple(tuple(sp.b_signs[pi[i]][pi[j]] for j in range(n)) for i in range(n))
    return SignPattern(n, a, b)


def canonicalize(sp: SignPattern) -> tuple[SignPattern, tuple[int, ...]]:
    """Lexicographic minimum of the pattern over all n! relabelings.

    Returns the canonical pattern and one permutation realizing it.  Brute
    force over n! is intentional; the working scale is n <= 6.
    """
    best = None
    best_pi = None
    for pi in permutations(range(sp.n)):
        cand = apply_permutation(sp, pi)
        key = cand.text()
        if best is None or key < best.text():
            best, best_pi = cand, pi
    return best, best_pi


@dataclass(frozen=True)
class ParameterPoint:
    """Concrete (a, B) with exact rational entries."""

    n: int
    a: tuple
    B: tuple

    @classmethod
    def from_decimals(cls, a, B) -> "ParameterPoint":
        """Build from decimal inputs (int, float, str, or Fraction), exactly.

        Floats go through their shortest decimal repr, so table-style values
        like 0.056 become the exact rational 56/1000.
        """
        av = tuple(_to_fraction(v) for v in a)
        bv = tuple(tuple(_to_fraction(v) for v in row) for row in B)
        n = len(av)
        if len(bv) != n or any(len(row) != n for row in bv):
            raise PatternError("B must be n x n with n = len(a)")
        return cls(n, av, bv)

    def sign_pattern(self) -> SignPattern:
        """Extract sigma; every entry must be nonzero."""
        entries = list(self.a) + [x for row in self.B for x in row]
        if any(v == 0 for v in entries):
            raise PatternError("zero entry has no sign")
        a = tuple(1 if v > 0 else -1 for v in self.a)
        b = tuple(tuple(1 if v > 0 else -1 for v in row) for row in self.B)
        return SignPattern(self.n, a, b)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a": [str(v) for v in self.a],
            "B": [[str(v) for v in row] for row in self.B],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "ParameterPoint":
        return cls.from_decimals(payload["a"], payload["B"])


def _to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(str(v))
    if isinstance(v, str):
        return Fraction(v)
    raise PatternError(f"cannot convert {type(v).__name__} to an exact rational")


def sample_point(
    sp: SignPattern,
    log_magnitude_range: tuple[float, float] = (0.01, 100.0),
    seed: int = 0,
) -> ParameterPoint:
    """Draw a sigma-consistent point, deterministic per seed.

    Magnitudes are log-uniform in the given range, quantized to 4 significant
    digits and stored as exact rationals, so sampled points can feed the exact
    verification path directly.
    """
    lo, hi = log_magnitude_range
    if not (0 < lo <= hi):
        raise PatternError("magnitude range bounds must be positive")
    rng = random.Random(seed)

    def draw(sign: int) -> Fraction:
        u = rng.uniform(math.log10(lo), math.log10(hi))
        mag = Fraction(f"{10.0 ** u:.4g}")
        return sign * mag

    a = tuple(draw(s) for s in sp.a_signs)
    b = tuple(tuple(draw(s) for s in row) for row in sp.b_signs)
    return ParameterPoint(sp.n, a, b)
