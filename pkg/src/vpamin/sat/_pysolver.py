"""Pure-Python CDCL kernel (fallback for the compiled ``_csolver``).

The search is DPLL with two watched literals, extended with first-UIP
clause learning, activity-based branching, phase saving and Luby restarts.
The compiled kernel implements the same algorithm step for step, so both
return the same model for the same input.

Literals use the internal encoding ``2 * var + sign`` with 0-based vars.
"""

from __future__ import annotations

VAR_DECAY = 0.95
RESTART_BASE = 100


def luby(i: int) -> int:
    """i-th element (0-based) of the Luby sequence 1 1 2 1 1 2 4 ..."""
    size, seq = 1, 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i = i % size
    return 1 << seq


def solve(num_vars: int, clauses: list[list[int]]) -> tuple[list[bool] | None, dict]:
    """Solve a CNF given as DIMACS-style integer clauses.

    Returns ``(model, stats)`` where ``model[v - 1]`` is the value of
    variable ``v``, or ``None`` when the formula is unsatisfiable.
    """
    n = num_vars
    assign = [-1] * n          # -1 unassigned, 0 false, 1 true
    level = [0] * n
    reason = [-1] * n
    activity = [0.0] * n
    phase = [0] * n
    seen = [0] * n
    watches: list[list[int]] = [[] for _ in range(2 * n)]
    store: list[list[int]] = []
    trail: list[int] = []
    trail_lim: list[int] = []
    stats = {"decisions": 0, "conflicts": 0, "propagations": 0}
    var_inc = 1.0

    def value(lit: int) -> int:
        a = assign[lit >> 1]
        return -1 if a < 0 else a ^ (lit & 1)

    def enqueue(lit: int, why: int) -> None:
        v = lit >> 1
        assign[v] = 1 - (lit & 1)
        level[v] = len(trail_lim)
        reason[v] = why
        trail.append(lit)

    units: list[int] = []
    for raw in clauses:
        lits = []
        taut = False
        for x in raw:
            lit = 2 * (abs(x) - 1) + (x < 0)
            if lit ^ 1 in lits:
                taut = True
                break
            if lit not in lits:
                lits.append(lit)
        if taut:
            continue
        if not lits:
            return None, stats
        if len(lits) == 1:
            units.append(lits[0])
            continue
        ci = len(store)
        store.append(lits)
        watches[lits[0] ^ 1].append(ci)
        watches[lits[1] ^ 1].append(ci)
    for lit in units:
        val = value(lit)
        if val == 0:
            return None, stats
        if val < 0:
            enqueue(lit, -1)

    qhead = 0

    def propagate() -> int:
        nonlocal qhead
        while qhead < len(trail):
            p = trail[qhead]
            qhead += 1
            stats["propagations"] += 1
            false_lit = p ^ 1
            ws = watches[p]
            i = j = 0
            end = len(ws)
            while i < end:
                ci = ws[i]
                i += 1
                c = store[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], false_lit
                first = c[0]
                if value(first) == 1:
                    ws[j] = ci
                    j += 1
                    continue
                moved = False
                for k in range(2, len(c)):
                    if value(c[k]) != 0:
                        c[1], c[k] = c[k], false_lit
                        watches[c[1] ^ 1].append(ci)
                        moved = True
                        break
                if moved:
                    continue
                ws[j] = ci
                j += 1
                if value(first) == 0:
                    while i < end:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    del ws[j:]
                    qhead = len(trail)
                    return ci
                enqueue(first, ci)
            del ws[j:]
        return -1

    def cancel_until(lvl: int) -> None:
        nonlocal qhead
        if len(trail_lim) > lvl:
            stop = trail_lim[lvl]
            for idx in range(len(trail) - 1, stop - 1, -1):
                v = trail[idx] >> 1
                phase[v] = assign[v]
                assign[v] = -1
                reason[v] = -1
            del trail[stop:]
            del trail_lim[lvl:]
            qhead = len(trail)

    def bump(v: int) -> None:
        nonlocal var_inc
        activity[v] += var_inc
        if activity[v] > 1e100:
            for u in range(n):
                activity[u] *= 1e-100
            var_inc *= 1e-100

    def analyze(confl: int) -> tuple[list[int], int]:
        learnt = [-1]
        path = 0
        p = -1
        idx = len(trail) - 1
        cur = len(trail_lim)
        while True:
            c = store[confl]
            for k in range(0 if p < 0 else 1, len(c)):
                q = c[k]
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    bump(v)
                    seen[v] = 1
                    if level[v] >= cur:
                        path += 1
                    else:
                        learnt.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            confl = reason[p >> 1]
            seen[p >> 1] = 0
            path -= 1
            if path == 0:
                break
        learnt[0] = p ^ 1
        back = 0
        if len(learnt) > 1:
            best = 1
            for k in range(2, len(learnt)):
                if level[learnt[k] >> 1] > level[learnt[best] >> 1]:
                    best = k
            learnt[1], learnt[best] = learnt[best], learnt[1]
            back = level[learnt[1] >> 1]
        for q in learnt:
            seen[q >> 1] = 0
        return learnt, back

    if propagate() >= 0:
        return None, stats
    restarts = 0
    budget = RESTART_BASE * luby(0)
    since_restart = 0
    while True:
        confl = propagate()
        if confl >= 0:
            stats["conflicts"] += 1
            since_restart += 1
            if not trail_lim:
                return None, stats
            learnt, back = analyze(confl)
            cancel_until(back)
            if len(learnt) == 1:
                enqueue(learnt[0], -1)
            else:
                ci = len(store)
                store.append(learnt)
                watches[learnt[0] ^ 1].append(ci)
                watches[learnt[1] ^ 1].append(ci)
                enqueue(learnt[0], ci)
            var_inc /= VAR_DECAY
            continue
        if since_restart >= budget:
            restarts += 1
            since_restart = 0
            budget = RESTART_BASE * luby(restarts)
            cancel_until(0)
            continue
        best_v = -1
        best_a = -1.0
        for v in range(n):
            if assign[v] < 0 and activity[v] > best_a:
                best_v, best_a = v, activity[v]
        if best_v < 0:
            stats["restarts"] = restarts
            return [a == 1 for a in assign], stats
        stats["decisions"] += 1
        trail_lim.append(len(trail))
        enqueue(2 * best_v + (0 if phase[best_v] == 1 else 1), -1)
