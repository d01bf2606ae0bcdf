# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sign-completion engine.

Statement-for-statement twin of _search.py with C-typed inner loops; see
that module for the data layout and semantics.  Both engines must return
identical completions, in identical order, with identical node, inference,
and conflict counts -- the parity suite enforces this, so any behavioral
change must land in both files.
"""

from array import array

NAME = "compiled"


cdef int _propagate(signed char[::1] chi, int[::1] rel, int[::1] con_ptr,
                    int[::1] con_rank, signed char[::1] con_eps,
                    long long *inferred):
    cdef int n_rel = rel.shape[0] // 6
    cdef int n_con = con_ptr.shape[0] - 1
    cdef int changed = 1
    cdef int r, c, t, base, lo, hi
    cdef int b0, b1, b2, b3, b4, b5
    cdef int t0, t1, t2, open_terms
    cdef int known, other, ua, ub, coeff, target
    cdef int open_at, open_count, positive, s
    while changed:
        changed = 0
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
                    return 0
                continue
            if open_terms != 1:
                continue
            if t0 == 0:
                known = t1
                other = t2
                ua = b0
                ub = b1
                coeff = 1
            elif t1 == 0:
                known = t0
                other = t2
                ua = b2
                ub = b3
                coeff = -1
            else:
                known = t0
                other = t1
                ua = b4
                ub = b5
                coeff = 1
            if known != other:
                continue
            # the open term must take the opposite sign of the agreeing pair
            target = -known
            if chi[ua] != 0 and chi[ub] == 0:
                chi[ub] = <signed char> (target * coeff * chi[ua])
                inferred[0] += 1
                changed = 1
            elif chi[ub] != 0 and chi[ua] == 0:
                chi[ua] = <signed char> (target * coeff * chi[ub])
                inferred[0] += 1
                changed = 1
            # both factors open: only the product is pinned, nothing to assign
        for c in range(n_con):
            lo = con_ptr[c]
            hi = con_ptr[c + 1]
            open_at = -1
            open_count = 0
            positive = 0
            for t in range(lo, hi):
                s = chi[con_rank[t]]
                if s == 0:
                    open_count += 1
                    open_at = t
                elif s * con_eps[t] > 0:
                    positive = 1
                    break
            if positive:
                continue
            if open_count == 0:
                return 0
            if open_count == 1:
                chi[con_rank[open_at]] = con_eps[open_at]
                inferred[0] += 1
                changed = 1
    return 1


cdef int _pick_branch(signed char[::1] chi, int[::1] rel, int[::1] con_ptr,
                      int[::1] con_rank, int heuristic, int[::1] scores):
    cdef int n = chi.shape[0]
    cdef int n_rel = rel.shape[0] // 6
    cdef int n_con = con_ptr.shape[0] - 1
    cdef int first_open = -1
    cdef int i, r, c, t, base, b, lo, hi
    cdef int known, open_at, open_count
    cdef int best, best_score
    for i in range(n):
        if chi[i] == 0:
            first_open = i
            break
    if first_open < 0 or heuristic == 1:
        return first_open
    for i in range(n):
        scores[i] = 0
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


def propagate(chi, rel, con_ptr, con_rank, con_eps):
    """Sweep relations and constraints to a fixpoint; mutates chi.

    Returns (ok, inferences); ok is False on the first violated relation or
    constraint.
    """
    state = array("b", chi)
    rel_a = array("i", rel)
    ptr_a = array("i", con_ptr)
    rank_a = array("i", con_rank)
    eps_a = array("b", con_eps)
    cdef long long inferred = 0
    cdef int ok = _propagate(state, rel_a, ptr_a, rank_a, eps_a, &inferred)
    for i, v in enumerate(state):
        chi[i] = v
    return ok != 0, inferred


def search(n_bases, chi0, rel, con_ptr, con_rank, con_eps, heuristic, max_nodes, collect_all):
    """Depth-first completion search from the initial sign state chi0.

    Branches try + before -, so the completion order is deterministic.
    Returns (completions, nodes, inferences, conflicts, limit_hit) with each
    completion encoded as length-n_bases bytes of 0x01 / 0xff.
    """
    rel_a = array("i", rel)
    ptr_a = array("i", con_ptr)
    rank_a = array("i", con_rank)
    eps_a = array("b", con_eps)
    scores_a = array("i", [0] * n_bases)
    cdef int[::1] rel_v = rel_a
    cdef int[::1] ptr_v = ptr_a
    cdef int[::1] rank_v = rank_a
    cdef signed char[::1] eps_v = eps_a
    cdef int[::1] scores_v = scores_a
    cdef signed char[::1] chi_v
    cdef long long nodes = 0, inferences = 0, conflicts = 0
    cdef long long budget = max_nodes
    cdef int heur = heuristic
    cdef int ok, u
    cdef int limit_hit = 0
    completions = []
    stack = [array("b", chi0)]
    while stack:
        if nodes >= budget:
            limit_hit = 1
            break
        cur = stack.pop()
        nodes += 1
        chi_v = cur
        ok = _propagate(chi_v, rel_v, ptr_v, rank_v, eps_v, &inferences)
        if not ok:
            conflicts += 1
            continue
        u = _pick_branch(chi_v, rel_v, ptr_v, rank_v, heur, scores_v)
        if u < 0:
            completions.append(cur.tobytes())
            if not collect_all:
                break
            continue
        lower = cur[:]
        lower[u] = -1
        chi_v[u] = 1
        stack.append(lower)  # explored second
        stack.append(cur)  # explored first
    return completions, nodes, inferences, conflicts, limit_hit != 0
