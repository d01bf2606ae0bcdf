"""Exact feasibility and stability verification for concrete parameters.

A point (a, B) admits coexistence when the equilibrium B^-1 a is strictly
positive and the community matrix -diag(x*) B is Hurwitz stable.  Everything
here runs in exact rational arithmetic; verdicts sit on strict inequalities,
so any vanishing determinant or component counts as outside the stratum.
The only float code is the advisory eigenvalue cross-check at the bottom.

Scaling note: all stability tests are applied to det(lambda I + diag(x~) B)
with x~ = adj(B) a.  Under feasibility x~ is a positive multiple of x*, and
positive scaling preserves the Hurwitz verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .ratlin import det, mat_vec, submatrix


@dataclass(frozen=True)
class FeasibilityReport:
    x_tilde: list
    detB: Fraction
    feasible: bool


@dataclass(frozen=True)
class CharPolyCoeffs:
    """Coefficients (c_0, ..., c_{n-1}) of det(lambda I + diag(x) B); c_n = 1."""

    n: int
    c: tuple


@dataclass(frozen=True)
class HurwitzReport:
    H: list
    stable: bool
    coeffs: CharPolyCoeffs


@dataclass(frozen=True)
class StratumReport:
    feasible_stable: bool
    feasibility: FeasibilityReport
    hurwitz: HurwitzReport | None  # None when the point is not feasible


def adjugate(B) -> list[list[Fraction]]:
    """Cofactor transpose; adj(B) B = det(B) I, defined for singular B too."""
    n = len(B)
    if n == 1:
        return [[Fraction(1)]]
    idx = list(range(n))
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows = idx[:j] + idx[j + 1 :]
            cols = idx[:i] + idx[i + 1 :]
            cof = det(submatrix(B, rows, cols))
            out[i][j] = -cof if (i + j) % 2 else cof
    return out


def feasibility_check(a, B) -> FeasibilityReport:
    """Strict test of adj(B) a > 0 together with det B > 0."""
    n = len(B)
    if len(a) != n:
        raise ValueError("dimension mismatch between a and B")
    x_tilde = mat_vec(adjugate(B), a)
    d = det(B)
    feasible = d > 0 and all(v > 0 for v in x_tilde)
    return FeasibilityReport(x_tilde, d, feasible)


def char_poly_coeffs(x, B) -> CharPolyCoeffs:
    """Coefficients of det(lambda I + diag(x) B) for strictly positive x.

    c_i collects the principal minors of order n - i, each weighted by the
    product of the matching x entries.
    """
    n = len(B)
    if any(v <= 0 for v in x):
        raise ValueError("weights x must be strictly positive")
    c = []
    for i in range(n):
        total = Fraction(0)
        for K in combinations(range(n), n - i):
            w = Fraction(1)
            for k in K:
                w *= x[k]
            total += w * det(submatrix(B, list(K), list(K)))
        c.append(total)
    return CharPolyCoeffs(n, tuple(c))


def hurwitz_determinants(coeffs: CharPolyCoeffs) -> HurwitzReport:
    """The n Hurwitz determinants; stable iff all are strictly positive.

    H_k is the k x k determinant with entry (i, j) = c_{n-2j+i} (1-indexed),
    reading c_n = 1 and c outside [0, n] as 0.
    """
    n = coeffs.n

    def c_at(m: int) -> Fraction:
        if m == n:
            return Fraction(1)
        if 0 <= m < n:
            return coeffs.c[m]
        return Fraction(0)

    H = []
    stable = True
    for k in range(1, n + 1):
        m = [[c_at(n - 2 * j + i) for j in range(1, k + 1)] for i in range(1, k + 1)]
        hk = det(m)
        H.append(hk)
        if hk <= 0:
            stable = False
    return HurwitzReport(H, stable, coeffs)


def is_feasible_stable(a, B) -> StratumReport:
    """Full exact stratum membership: feasibility, then Hurwitz at x~."""
    feas = feasibility_check(a, B)
    if not feas.feasible:
        return StratumReport(False, feas, None)
    hur = hurwitz_determinants(char_poly_coeffs(feas.x_tilde, B))
    return StratumReport(hur.stable, feas, hur)


def eigen_stability_check(a, B, margin: float = 1e-9):
    """Float cross-check: eigenvalues of -diag(B^-1 a) B all below -margin.

    Advisory only; returns None instead of a verdict when B is too close to
    singular for the float solve to mean anything.
    """
    Bf = np.asarray(B, dtype=float)
    af = np.asarray(a, dtype=float)
    if np.linalg.cond(Bf) > 1e12:
        return None
    x = np.linalg.solve(Bf, af)
    lam = np.linalg.eigvals(-np.diag(x) @ Bf)
    return bool(np.max(lam.real) < -margin)
