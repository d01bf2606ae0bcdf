"""Pure-Python sign-completion engine: propagation sweeps plus DFS branching.

Reference implementation of the search core.  The compiled twin in
_speedups.pyx mirrors this file statement for statement; both must produce
identical completions, in identical order, with identical node, inference,
and conflict counts.  Any change here must be transliterated there.

Data layout (shared with the compiled twin):
  chi       flat sign state, one int per basis rank: -1, 0 (open), +1
  rel       flat relation table, 6 basis ranks per relation; the encoded
            identity is  p0*p1 - p2*p3 + p4*p5 = 0
  con_*     flattened constraints: con_ptr[c]..con_ptr[c+1] index the term
            arrays; each term contributes eps * p_rank to a sum required > 0

Term semantics over nonzero reals: a relation is satisfiable iff its three
term signs are not all equal; a constraint iff some term is positive.
Inference happens only through unit steps, so the closure is order
independent even though the sweep order is fixed for reproducible stats.
"""

from __future__ import annotations

NAME = "pure-python"


def propagate(chi, rel, con_ptr, con_rank, con_eps):
    """Sweep relations and constraints to a fixpoint; mutates chi.

    Returns (ok, inferences); ok is False on the first violated relation or
    constraint.
    """
    n_rel = len(rel) // 6
    n_con = len(con_ptr) - 1
    inferred = 0
    changed = True
    while changed:
        changed = False
        for r in range(n_rel):
            base = 6 * r
            b0 = rel[base]
            b1 = rel[base + 1]
            b2 = rel[base + 2]
            b3 = rel[base + 3]
            b4 = rel[base + 4]
            b5 = rel[base + 5]
            t0 = chi[b0] * chi[b1]
            t1 = -chi[b2] * chi[b3]
            t2 = chi[b4] * chi[b5]
            open_terms = (t0 == 0) + (t1 == 0) + (t2 == 0)
            if open_terms == 0:
                if t0 == t1 and t1 == t2:
                    return False, inferred
                continue
            if open_terms != 1:
                continue
            if t0 == 0:
                known, other, ua, ub, coeff = t1, t2, b0, b1, 1
            elif t1 == 0:
                known, other, ua, ub, coeff = t0, t2, b2, b3, -1
            else:
                known, other, ua, ub, coeff = t0, t1, b4, b5, 1
            if known != other:
                continue
            # the open term must take the opposite sign of the agreeing pair
            target = -known
            if chi[ua] != 0 and chi[ub] == 0:
                chi[ub] = target * coeff * chi[ua]
                inferred += 1
                changed = True
            elif chi[ub] != 0 and chi[ua] == 0:
                chi[ua] = target * coeff * chi[ub]
                inferred += 1
                changed = True
            # both factors open: only the product is pinned, nothing to assign
        for c in range(n_con):
            lo = con_ptr[c]
            hi = con_ptr[c + 1]
            open_at = -1
            open_count = 0
            positive = False
            for t in range(lo, hi):
                s = chi[con_rank[t]]
                if s == 0:
                    open_count += 1
                    open_at = t
                elif s * con_eps[t] > 0:
                    positive = True
                    break
            if positive:
                continue
            if open_count == 0:
                return False, inferred
            if open_count == 1:
                chi[con_rank[open_at]] = con_eps[open_at]
                inferred += 1
                changed = True
    return True, inferred


def pick_branch(chi, rel, con_ptr, con_rank, con_eps, heuristic, scores):
    """Choose the open basis to branch on; -1 when chi is complete.

    heuristic 0 (most-constrained): count relations holding the basis with
    at least 4 known entries, plus constraints where it is the single open
    term; ties go to the lowest rank.  heuristic 1: lowest open rank.
    """
    n = len(chi)
    first_open = -1
    for i in range(n):
        if chi[i] == 0:
            first_open = i
            break
    if first_open < 0 or heuristic == 1:
        return first_open
    for i in range(n):
        scores[i] = 0
    n_rel = len(rel) // 6
    for r in range(n_rel):
        base = 6 * r
        known = 0
        for t in range(6):
            if chi[rel[base + t]] != 0:
                known += 1
        if 4 <= known < 6:
            for t in range(6):
                b = rel[base + t]
                if chi[b] == 0:
                    scores[b] += 1
    n_con = len(con_ptr) - 1
    for c in range(n_con):
        lo = con_ptr[c]
        hi = con_ptr[c + 1]
        open_at = -1
        open_count = 0
        for t in range(lo, hi):
            if chi[con_rank[t]] == 0:
                open_count += 1
                open_at = t
                if open_count > 1:
                    break
        if open_count == 1:
            scores[con_rank[open_at]] += 1
    best = first_open
    best_score = scores[first_open]
    for i in range(first_open + 1, n):
        if chi[i] == 0 and scores[i] > best_score:
            best = i
            best_score = scores[i]
    return best


def search(n_bases, chi0, rel, con_ptr, con_rank, con_eps, heuristic, max_nodes, collect_all):
    """Depth-first completion search from the initial sign state chi0.

    Branches try + before -, so the completion order is deterministic.
    Returns (completions, nodes, inferences, conflicts, limit_hit) with each
    completion encoded as length-n_bases bytes of 0x01 / 0xff.
    """
    completions = []
    nodes = 0
    inferences = 0
    conflicts = 0
    limit_hit = False
    scores = [0] * n_bases
    stack = [list(chi0)]
    while stack:
        if nodes >= max_nodes:
            limit_hit = True
            break
        chi = stack.pop()
        nodes += 1
        ok, inf = propagate(chi, rel, con_ptr, con_rank, con_eps)
        inferences += inf
        if not ok:
            conflicts += 1
            continue
        u = pick_branch(chi, rel, con_ptr, con_rank, con_eps, heuristic, scores)
        if u < 0:
            completions.append(bytes((v & 0xFF) for v in chi))
            if not collect_all:
                break
            continue
        lower = list(chi)
        lower[u] = -1
        chi[u] = 1
        stack.append(lower)  # explored second
        stack.append(chi)  # explored first
    return completions, nodes, inferences, conflicts, limit_hit
