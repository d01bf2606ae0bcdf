"""Sampling-based realizability evidence for sign patterns.

A witness is an exact rational point (a, B) lying in the feasible-stable
set of its sign pattern, together with the chirotope it realizes.  Absence
of a witness after any trial budget proves nothing; impossibility
certificates live in the completion search.
"""

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .grassmann import plucker_vector
from .model import ParameterPoint, SignPattern, sample_point
from .ratlin import mat_vec
from .stability import FeasibilityReport, HurwitzReport, is_feasible_stable


class SignMismatchError(ValueError):
    """A point's entries disagree with the pattern they were checked against."""


# trial t under seed s samples with derived seed s * _SEED_STRIDE + t, so
# trials are independently seeded and could be evaluated in any order
_SEED_STRIDE = 1_000_003


@dataclass(frozen=True)
class WitnessReport:
    """Exact certificate tying a concrete point to its sign pattern."""

    pattern: SignPattern
    point: ParameterPoint
    feasibility: FeasibilityReport
    hurwitz: HurwitzReport | None
    chirotope: str
    trials_used: int

    @property
    def feasible_stable(self) -> bool:
        return (
            self.feasibility.feasible
            and self.hurwitz is not None
            and self.hurwitz.stable
        )

    def equilibrium(self) -> tuple:
        """Coordinates of x* = adj(B) a / det B; needs det B nonzero."""
        d = self.feasibility.detB
        return tuple(v / d for v in self.feasibility.x_tilde)

    def to_json(self) -> dict:
        payload = {
            "pattern": self.pattern.text(),
            "point": self.point.to_json(),
            "feasibility": {
                "x_tilde": [str(v) for v in self.feasibility.x_tilde],
                "det_B": str(self.feasibility.detB),
                "feasible": self.feasibility.feasible,
            },
            "hurwitz": None,
            "chirotope": self.chirotope,
            "trials_used": self.trials_used,
            "feasible_stable": self.feasible_stable,
        }
        if self.hurwitz is not None:
            payload["hurwitz"] = {
                "H": [str(v) for v in self.hurwitz.H],
                "stable": self.hurwitz.stable,
            }
        return payload


def linear_infeasibility(sp: SignPattern) -> int | None:
    """Index of a row refuting feasibility outright, or None.

    Any positive equilibrium satisfies a_i = sum_j b_ij x*_j with every
    x*_j > 0, so a single-signed row of B forces a_i onto that sign.  A
    pattern violating this admits no feasible point at all, whatever the
    completion count says: the minor-sign relaxation cannot express this
    kind of linear dependence.  Rows with mixed signs certify nothing.
    """
    for i, row in enumerate(sp.b_signs):
        if all(s > 0 for s in row) and sp.a_signs[i] < 0:
            return i
        if all(s < 0 for s in row) and sp.a_signs[i] > 0:
            return i
    return None


def chirotope_of_point(point: ParameterPoint) -> str:
    """Signs of every maximal minor of [diag(a) | B], in basis-rank order.

    Zero coordinates are flagged with '0' (a degenerate value), which is
    distinct from the '?' (unknown) of partial-chirotope strings.
    """
    return "".join(
        "0" if v == 0 else ("+" if v > 0 else "-")
        for v in plucker_vector(point).p
    )


def _entry_names(n: int) -> list[str]:
    return [f"a{i + 1}" for i in range(n)] + [
        f"b{i + 1}{j + 1}" for i in range(n) for j in range(n)
    ]


def verify_point(
    point: ParameterPoint, expected: SignPattern | None = None
) -> WitnessReport:
    """Exact stratum-membership check with chirotope extraction.

    With `expected`, every entry must be nonzero and carry the expected
    sign; the report's pattern is then `expected` itself.  Without it, the
    pattern is read off the point, so all entries must be nonzero anyway.
    """
    if expected is None:
        sp = point.sign_pattern()
    else:
        values = list(point.a) + [v for row in point.B for v in row]
        for v, s, name in zip(values, expected.flat(), _entry_names(point.n)):
            if v * s <= 0:
                want = "+" if s > 0 else "-"
                raise SignMismatchError(f"entry {name} = {v} is not {want}")
        sp = expected
    stratum = is_feasible_stable(point.a, point.B)
    return WitnessReport(
        sp, point, stratum.feasibility, stratum.hurwitz,
        chirotope_of_point(point), 0,
    )


def _draw_magnitude(rng: random.Random, lo: float, hi: float) -> Fraction:
    # same quantization as the direct sampler: log-uniform magnitude cut to
    # 4 significant decimal digits, stored exactly
    u = rng.uniform(math.log10(lo), math.log10(hi))
    return Fraction(f"{10.0 ** u:.4g}")


def _fixed_equilibrium_point(sp, magnitude_range, seed) -> ParameterPoint | None:
    lo, hi = magnitude_range
    rng = random.Random(seed)
    x = [_draw_magnitude(rng, lo, hi) for _ in range(sp.n)]
    B = tuple(
        tuple(s * _draw_magnitude(rng, lo, hi) for s in row)
        for row in sp.b_signs
    )
    a = mat_vec(B, x)
    for v, s in zip(a, sp.a_signs):
        if v * s <= 0:
            return None
    return ParameterPoint(sp.n, tuple(a), B)


def find_witness(
    sp: SignPattern,
    trials: int = 10_000,
    seed: int = 0,
    fixed_equilibrium: bool = False,
    magnitude_range: tuple[float, float] = (0.01, 100.0),
) -> WitnessReport | None:
    """First sampled point realizing sp as feasible-stable, or None.

    Direct mode draws (a, B) sigma-consistently with log-uniform magnitudes.
    Fixed-equilibrium mode instead draws x* > 0 and a sigma-consistent B,
    sets a = B x* exactly, and keeps the point only when a lands on the
    required growth signs; feasibility is then automatic whenever
    det B > 0, which makes rare patterns far easier to hit.  Witnesses must
    realize a zero-free chirotope.  Deterministic per (seed, mode, range).
    """
    if trials <= 0:
        raise ValueError("trials must be positive")
    for t in range(trials):
        trial_seed = seed * _SEED_STRIDE + t
        if fixed_equilibrium:
            point = _fixed_equilibrium_point(sp, magnitude_range, trial_seed)
            if point is None:
                continue
        else:
            point = sample_point(sp, magnitude_range, trial_seed)
        stratum = is_feasible_stable(point.a, point.B)
        if not stratum.feasible_stable:
            continue
        chi = chirotope_of_point(point)
        if "0" in chi:
            continue
        return WitnessReport(
            sp, point, stratum.feasibility, stratum.hurwitz, chi, t + 1
        )
    return None


def witness_csv(entries) -> str:
    """CSV text for a witness sweep, one (pattern, verdict, trials) row each.

    entries: iterable of (SignPattern, WitnessReport or None); a None report
    leaves the trials column empty.
    """
    lines = ["pattern,verdict,trials_used"]
    for sp, report in entries:
        if report is None:
            lines.append(f"{sp.text()},none,")
        else:
            lines.append(f"{sp.text()},witness,{report.trials_used}")
    return "\n".join(lines) + "\n"
