"""Completion search over partial chirotopes.

Combines three ingredients into one exhaustive DFS:

  * three-term relations, used both as consistency checks and as unit
    inference rules (two known products of equal sign force the third);
  * feasibility constraints, one per species, each a signed sum of basis
    coordinates that must be positive;
  * stability constraints, one per characteristic coefficient, with the
    same one-positive-term relaxation semantics.

The search core lives in _speedups (compiled) with _search as a drop-in
pure-Python fallback; both expose search() and propagate() over the same
flat tables and are required to return identical results and statistics.
"""

from __future__ import annotations

import os
from array import array
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from time import perf_counter

from .grassmann import (
    SIGN_CHARS,
    PartialChirotope,
    bases,
    enumerate_gp_relations,
    inversions,
    partial_chirotope,
    rank,
)
from .model import SignPattern


def _load_engine(name: str | None = None):
    name = name or os.environ.get("LVCOEX_ENGINE")
    if name not in (None, "compiled", "pure-python"):
        raise ValueError(f"unknown engine {name!r}")
    if name != "pure-python":
        try:
            from . import _speedups

            return _speedups
        except ImportError:
            if name == "compiled":
                raise
    from . import _search

    return _search


_engine = _load_engine()


def engine_name() -> str:
    """Which search core is active: 'compiled' or 'pure-python'."""
    return _engine.NAME


def available_engines() -> dict:
    """All importable search cores, keyed by name."""
    from . import _search

    out = {_search.NAME: _search}
    try:
        from . import _speedups

        out[_speedups.NAME] = _speedups
    except ImportError:
        pass
    return out


@dataclass(frozen=True)
class SignConstraint:
    """A sum of signed basis coordinates required to be strictly positive.

    terms is a tuple of (basis rank, eps) with eps in {-1, +1}; the realized
    sum is  sum(eps * p_rank).  Over unknown magnitudes the constraint is
    satisfiable iff some term can be positive, which is the semantics used
    throughout the search.
    """

    kind: str  # "feasibility", "stability", or "orientation"
    index: int
    terms: tuple


def orientation_constraint(n: int) -> SignConstraint:
    """Chart normalization: the coordinate at basis (n+1..2n) is positive.

    Feasibility and stability constraints are derived in the affine chart
    where this minor (det B) is positive, and feasibility itself implies
    det B > 0, so the search pins its sign up front.  Kept separate from
    the check toggles: it stays active when they are disabled, which is
    what makes relaxed completion counts comparable across sign patterns.
    """
    top = tuple(range(n + 1, 2 * n + 1))
    return SignConstraint("orientation", 0, ((rank(n, top), 1),))


def build_feasibility_constraints(n: int) -> tuple[SignConstraint, ...]:
    """Positivity of every entry of the scaled equilibrium.

    Component i expands by Laplace into n coordinates sharing the column
    set (n+1..2n) minus n+i, with a single alternating sign per component.
    """
    out = []
    tail = tuple(range(n + 1, 2 * n + 1))
    for i in range(1, n + 1):
        cols = tuple(e for e in tail if e != n + i)
        eps = 1 if i % 2 == 1 else -1
        terms = tuple(
            (rank(n, tuple(sorted((j,) + cols))), eps) for j in range(1, n + 1)
        )
        out.append(SignConstraint("feasibility", i, terms))
    return tuple(out)


def build_stability_constraints(sp: SignPattern) -> tuple[SignConstraint, ...]:
    """Positivity of every characteristic coefficient, in basis coordinates.

    Coefficient i sums, over the size-(n-i) principal minors indexed by K,
    the coordinate at basis (K^c, n+K) weighed by the parity of that split
    and by the growth signs on K and on all of 1..n.  Positive coefficients
    are necessary for stability and already decide it for n <= 2; Hurwitz
    minors beyond them involve magnitudes and stay out of the sign search.
    """
    n = sp.n
    sigma_all = 1
    for s in sp.a_signs:
        sigma_all *= s
    out = []
    for i in range(n):
        terms = []
        for K in combinations(range(1, n + 1), n - i):
            kc = tuple(e for e in range(1, n + 1) if e not in K)
            basis = kc + tuple(n + k for k in K)
            eps = -1 if inversions(kc + K) % 2 else 1
            for k in K:
                eps *= sp.a_signs[k - 1]
            eps *= sigma_all
            terms.append((rank(n, basis), eps))
        out.append(SignConstraint("stability", i, tuple(terms)))
    return tuple(out)


def constraint_status(con: SignConstraint, chi) -> tuple:
    """Evaluate a constraint against a partial sign state.

    Returns ("possible",), ("violated",) when every term is known and
    negative, or ("forces", rank, sign) when exactly one term is open and
    the rest are negative.
    """
    signs = chi.chi if isinstance(chi, PartialChirotope) else chi
    open_at = None
    open_count = 0
    for r, eps in con.terms:
        s = signs[r]
        if s == 0:
            open_count += 1
            open_at = (r, eps)
        elif s * eps > 0:
            return ("possible",)
    if open_count == 0:
        return ("violated",)
    if open_count == 1:
        return ("forces", open_at[0], open_at[1])
    return ("possible",)


def three_term_status(signs) -> tuple:
    """Unit-step semantics of one relation given its six factor signs.

    signs holds the chirotope values (in {-1, 0, +1}) at the six slots of
    p0*p1 - p2*p3 + p4*p5 = 0.  Returns ("conflict",) when all three term
    signs are known and equal, ("assign", slot, sign) when the two known
    terms agree and the open term has exactly one open factor, otherwise
    ("none",).
    """
    t0 = signs[0] * signs[1]
    t1 = -signs[2] * signs[3]
    t2 = signs[4] * signs[5]
    open_terms = (t0 == 0) + (t1 == 0) + (t2 == 0)
    if open_terms == 0:
        if t0 == t1 == t2:
            return ("conflict",)
        return ("none",)
    if open_terms != 1:
        return ("none",)
    if t0 == 0:
        known, other, sa, sb, coeff = t1, t2, 0, 1, 1
    elif t1 == 0:
        known, other, sa, sb, coeff = t0, t2, 2, 3, -1
    else:
        known, other, sa, sb, coeff = t0, t1, 4, 5, 1
    if known != other:
        return ("none",)
    target = -known
    if signs[sa] != 0 and signs[sb] == 0:
        return ("assign", sb, target * coeff * signs[sa])
    if signs[sb] != 0 and signs[sa] == 0:
        return ("assign", sa, target * coeff * signs[sb])
    return ("none",)


@lru_cache(maxsize=None)
def _relation_table(n: int):
    flat = []
    adjacency = [[] for _ in bases(n)]
    for idx, relation in enumerate(enumerate_gp_relations(n)):
        ranks = relation.flat_ranks()
        flat.extend(ranks)
        for slot, r in enumerate(ranks):
            adjacency[r].append((idx, slot))
    return array("i", flat), tuple(tuple(a) for a in adjacency)


def _flatten_constraints(constraints):
    ptr = array("i", [0])
    ranks = array("i")
    eps = array("b")
    for con in constraints:
        for r, e in con.terms:
            ranks.append(r)
            eps.append(e)
        ptr.append(len(ranks))
    return ptr, ranks, eps


def propagate_basis(chi: PartialChirotope, S) -> tuple:
    """One-basis inference: what the relations through S say right now.

    S may be a basis tuple or a rank.  Scans every relation containing the
    basis and applies the unit step with the basis as the open factor.
    Returns ("inferred", sign), ("conflict",) when two relations force
    opposite signs, or ("none",).
    """
    n = chi.n
    u = S if isinstance(S, int) else rank(n, S)
    if chi.chi[u] != 0:
        return ("none",)
    flat, adjacency = _relation_table(n)
    relations = enumerate_gp_relations(n)
    forced = 0
    for idx, slot in adjacency[u]:
        signs = [chi.chi[r] for r in relations[idx].flat_ranks()]
        status = three_term_status(signs)
        if status[0] == "assign" and status[1] == slot:
            if forced == 0:
                forced = status[2]
            elif forced != status[2]:
                return ("conflict",)
    if forced != 0:
        return ("inferred", forced)
    return ("none",)


def propagate_fixpoint(
    chi: PartialChirotope, relations=None, constraints=None
) -> tuple[PartialChirotope, bool, int]:
    """Close a sign state under unit inference from relations and constraints.

    relations defaults to every three-term relation of the right size; pass
    an explicit (possibly empty) iterable to restrict them.  Returns
    (closed state, conflict, inferences).  On conflict the returned state
    is the partial progress at the point of detection.  The closure itself
    is order independent; the inference count reflects the fixed sweep
    order of the engine.
    """
    if relations is None:
        flat, _ = _relation_table(chi.n)
    else:
        flat = array("i", [r for relation in relations for r in relation.flat_ranks()])
    ptr, ranks, eps = _flatten_constraints(constraints or ())
    state = list(chi.chi)
    ok, inferred = _engine.propagate(state, flat, ptr, ranks, eps)
    return PartialChirotope(chi.n, tuple(state)), not ok, inferred


_HEURISTICS = {"most-constrained": 0, "lowest-rank": 1}


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the completion search.

    trivial_init starts from only the bases whose sign is a single
    monomial, instead of the full monomial-agreement closure; it widens the
    initial unknown set without changing which total chirotopes satisfy
    the checks that remain enabled.  normalize_chart keeps the det-B
    orientation pinned even when both check families are off; see
    orientation_constraint.
    """

    enable_feasibility: bool = True
    enable_stability: bool = True
    branch_heuristic: str = "most-constrained"
    max_nodes: int = 1_000_000
    collect_all: bool = True
    trivial_init: bool = False
    normalize_chart: bool = True

    def __post_init__(self):
        if self.branch_heuristic not in _HEURISTICS:
            raise ValueError(f"unknown branch heuristic {self.branch_heuristic!r}")
        if self.max_nodes < 1:
            raise ValueError("max_nodes must be positive")


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    inferences: int
    conflicts: int
    wall_time_s: float
    engine: str


@dataclass(frozen=True)
class CompletionSet:
    """Every total chirotope compatible with a sign pattern.

    completions are +/- strings over the ranked bases, in discovery order
    (the DFS tries + before -).  A search that exhausted its node budget
    sets limit_hit and must not be read as an impossibility proof.
    """

    pattern: SignPattern
    completions: tuple
    stats: SearchStats
    limit_hit: bool
    config: SearchConfig

    @property
    def count(self) -> int:
        return len(self.completions)

    @property
    def verdict(self) -> str:
        if self.limit_hit:
            return "resource-limit"
        return "possible" if self.completions else "impossible"

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern.text(),
            "count": self.count,
            "completions": list(self.completions),
            "stats": {
                "nodes": self.stats.nodes,
                "inferences": self.stats.inferences,
                "conflicts": self.stats.conflicts,
                "wall_time_s": self.stats.wall_time_s,
                "engine": self.stats.engine,
            },
            "verdict": self.verdict,
        }


_BYTE_CHARS = {0x01: "+", 0xFF: "-"}


def search_arguments(sp: SignPattern, cfg: SearchConfig) -> tuple:
    """The exact engine-call arguments complete() would use.

    Plumbing for the engine parity tests and the benchmark, which drive
    both search cores directly on identical inputs.
    """
    chi0 = partial_chirotope(sp, trivial_only=cfg.trivial_init)
    flat, _ = _relation_table(sp.n)
    cons = []
    if cfg.normalize_chart:
        cons.append(orientation_constraint(sp.n))
    if cfg.enable_feasibility:
        cons.extend(build_feasibility_constraints(sp.n))
    if cfg.enable_stability:
        cons.extend(build_stability_constraints(sp))
    ptr, ranks, eps = _flatten_constraints(cons)
    return (
        len(chi0.chi),
        chi0.chi,
        flat,
        ptr,
        ranks,
        eps,
        _HEURISTICS[cfg.branch_heuristic],
        cfg.max_nodes,
        cfg.collect_all,
    )


def complete(sp: SignPattern, cfg: SearchConfig | None = None) -> CompletionSet:
    """Enumerate all chirotope completions of sp under the enabled checks."""
    cfg = cfg or SearchConfig()
    args = search_arguments(sp, cfg)
    t0 = perf_counter()
    raw, nodes, inferences, conflicts, limit_hit = _engine.search(*args)
    wall = perf_counter() - t0
    completions = tuple("".join(_BYTE_CHARS[b] for b in chunk) for chunk in raw)
    stats = SearchStats(nodes, inferences, conflicts, wall, _engine.NAME)
    return CompletionSet(sp, completions, stats, limit_hit, cfg)


def certify_impossible(sp: SignPattern, cfg: SearchConfig | None = None) -> CompletionSet:
    """Exhaustive search with every check enabled; read the verdict field.

    "impossible" is a proof that no chirotope matches the pattern as given
    (no relabeling is applied); "possible" only means the sign relaxation
    has a solution, not that a realizing parameter point exists.
    """
    base = cfg or SearchConfig()
    if not (base.enable_feasibility and base.enable_stability and base.collect_all):
        raise ValueError("certification requires all checks and full collection")
    return complete(sp, base)
