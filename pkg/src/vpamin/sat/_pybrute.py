"""Pure-Python exhaustive immersion search (fallback for ``_cbrute``).

Transition tables are enumerated digit by digit (state-major, symbol-minor);
a digit is ``-1`` for an undefined edge or a target state. Only tables in
discovery order are generated: an edge may point to a state met so far or
to the next fresh one, and a state reached by no edge when its turn comes
is counted as met and becomes a root. Every graph has such a numbering with
the first target's initial at state 0. A minimum immersion has no state
unreachable from all initials, so at most one root per slot is allowed.
Before a subtree is entered, every slot is checked against the edges fixed
so far; a subtree is skipped only when some slot already fails for every
admissible initial state, which no completion of the table can repair.

The per-slot check is a language-equivalence test: the product of the
sub-DFA (with the implicit sink ``k``) and the minimal complete target is
explored, final states are forced to the states reached by accepted words,
and any pair contradicting that choice is a failure.
"""

from __future__ import annotations

FAIL, OK, UNDECIDED = 0, 1, 2


class _Target:
    __slots__ = ("delta", "init", "final", "dead", "size")

    def __init__(self, delta, init, final, dead):
        self.delta = delta
        self.init = init
        self.final = final
        self.dead = dead
        self.size = len(final)


def _check(graph, k, nsym, tgt, start, seen, fin):
    size = tgt.size
    for i in range(len(seen)):
        seen[i] = 0
    for i in range(k):
        fin[i] = -1
    stack = [(start, tgt.init)]
    seen[start * size + tgt.init] = 1
    undecided = False
    delta, final, dead = tgt.delta, tgt.final, tgt.dead
    while stack:
        x, s = stack.pop()
        if x == k:
            if s != dead:
                return FAIL
            continue
        f = final[s]
        if fin[x] < 0:
            fin[x] = f
        elif fin[x] != f:
            return FAIL
        base = x * nsym
        for a in range(nsym):
            e = graph[base + a]
            if e == -2:
                undecided = True
                continue
            y = k if e == -1 else e
            t = delta[s * nsym + a]
            idx = y * size + t
            if not seen[idx]:
                seen[idx] = 1
                stack.append((y, t))
    return UNDECIDED if undecided else OK


def search(k: int, nsym: int, targets: list[tuple[list[int], int, list[int], int]]):
    """Find a size-``k`` immersion; return ``(table, inits, nodes)`` or ``(None, None, nodes)``.

    Only immersions whose states are all reachable from some initial are
    searched, so a miss at ``k`` is exact only once every smaller size has
    missed too. Callers scan sizes upward.

    ``targets`` holds ``(delta, initial, final_flags, dead)`` per language,
    with ``delta[s * nsym + a]`` the successor and ``dead = -1`` when the
    target has no dead state.
    """
    tgts = [_Target(*t) for t in targets]
    total = k * nsym
    graph = [-2] * total
    seens = [[0] * ((k + 1) * t.size) for t in tgts]
    fin = [-1] * k
    nodes = 0

    def viable(d):
        for j, t in enumerate(tgts):
            starts = (0,) if j == 0 else range(k)
            if all(_check(graph, k, nsym, t, u, seens[j], fin) == FAIL for u in starts):
                return False
        return True

    def rec(d, met, roots):
        nonlocal nodes
        nodes += 1
        if not viable(d):
            return None
        if d == total:
            inits = [0]
            for j, t in enumerate(tgts[1:], 1):
                inits.append(next(u for u in range(k)
                                  if _check(graph, k, nsym, t, u, seens[j], fin) == OK))
            return list(graph), inits
        if d % nsym == 0 and d // nsym == met:
            met += 1
            roots += 1
            if roots > len(tgts):
                return None
        for val in range(-1, min(met + 1, k)):
            graph[d] = val
            found = rec(d + 1, max(met, val + 1), roots)
            if found is not None:
                return found
        graph[d] = -2
        return None

    found = rec(0, 1, 1)
    if found is None:
        return None, None, nodes
    return found[0], found[1], nodes
