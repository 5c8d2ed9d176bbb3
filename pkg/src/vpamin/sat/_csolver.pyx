# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled CDCL kernel. Mirrors ``_pysolver`` step for step."""

from libcpp.vector cimport vector

cdef double VAR_DECAY = 0.95
cdef int RESTART_BASE = 100


cdef long luby(long i) nogil:
    cdef long size = 1, seq = 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i = i % size
    return 1 << seq


cdef class _Core:
    cdef int n
    cdef vector[int] assign, level, reason, phase, seen
    cdef vector[double] activity
    cdef vector[vector[int]] watches
    cdef vector[vector[int]] store
    cdef vector[int] trail, trail_lim, learnt
    cdef long qhead
    cdef double var_inc
    cdef long decisions, conflicts, propagations, restarts

    def __cinit__(self, int n):
        self.n = n
        self.assign.assign(n, -1)
        self.level.assign(n, 0)
        self.reason.assign(n, -1)
        self.phase.assign(n, 0)
        self.seen.assign(n, 0)
        self.activity.assign(n, 0.0)
        self.watches.resize(2 * n)
        self.qhead = 0
        self.var_inc = 1.0
        self.decisions = 0
        self.conflicts = 0
        self.propagations = 0
        self.restarts = 0

    cdef inline int value(self, int lit) nogil:
        cdef int a = self.assign[lit >> 1]
        if a < 0:
            return -1
        return a ^ (lit & 1)

    cdef inline void enqueue(self, int lit, int why) nogil:
        cdef int v = lit >> 1
        self.assign[v] = 1 - (lit & 1)
        self.level[v] = <int>self.trail_lim.size()
        self.reason[v] = why
        self.trail.push_back(lit)

    cdef int add_clause(self, vector[int]& lits) nogil:
        cdef int ci = <int>self.store.size()
        self.store.push_back(lits)
        self.watches[lits[0] ^ 1].push_back(ci)
        self.watches[lits[1] ^ 1].push_back(ci)
        return ci

    cdef int propagate(self) nogil:
        cdef int p, false_lit, ci, first, k, tmp
        cdef size_t i, j, end
        cdef bint moved
        while self.qhead < <long>self.trail.size():
            p = self.trail[self.qhead]
            self.qhead += 1
            self.propagations += 1
            false_lit = p ^ 1
            i = 0
            j = 0
            end = self.watches[p].size()
            while i < end:
                ci = self.watches[p][i]
                i += 1
                if self.store[ci][0] == false_lit:
                    self.store[ci][0] = self.store[ci][1]
                    self.store[ci][1] = false_lit
                first = self.store[ci][0]
                if self.value(first) == 1:
                    self.watches[p][j] = ci
                    j += 1
                    continue
                moved = False
                for k in range(2, <int>self.store[ci].size()):
                    if self.value(self.store[ci][k]) != 0:
                        tmp = self.store[ci][k]
                        self.store[ci][1] = tmp
                        self.store[ci][k] = false_lit
                        self.watches[tmp ^ 1].push_back(ci)
                        moved = True
                        break
                if moved:
                    continue
                self.watches[p][j] = ci
                j += 1
                if self.value(first) == 0:
                    while i < end:
                        self.watches[p][j] = self.watches[p][i]
                        j += 1
                        i += 1
                    self.watches[p].resize(j)
                    self.qhead = <long>self.trail.size()
                    return ci
                self.enqueue(first, ci)
            self.watches[p].resize(j)
        return -1

    cdef void cancel_until(self, int lvl) nogil:
        cdef int stop, idx, v
        if <int>self.trail_lim.size() > lvl:
            stop = self.trail_lim[lvl]
            idx = <int>self.trail.size() - 1
            while idx >= stop:
                v = self.trail[idx] >> 1
                self.phase[v] = self.assign[v]
                self.assign[v] = -1
                self.reason[v] = -1
                idx -= 1
            self.trail.resize(stop)
            self.trail_lim.resize(lvl)
            self.qhead = <long>self.trail.size()

    cdef void bump(self, int v) nogil:
        cdef int u
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for u in range(self.n):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100

    cdef int analyze(self, int confl) nogil:
        # fills self.learnt, returns the backjump level
        cdef int path = 0, p = -1, q, v, k, best, start, cur
        cdef long idx = <long>self.trail.size() - 1
        cur = <int>self.trail_lim.size()
        self.learnt.clear()
        self.learnt.push_back(-1)
        while True:
            start = 0 if p < 0 else 1
            for k in range(start, <int>self.store[confl].size()):
                q = self.store[confl][k]
                v = q >> 1
                if not self.seen[v] and self.level[v] > 0:
                    self.bump(v)
                    self.seen[v] = 1
                    if self.level[v] >= cur:
                        path += 1
                    else:
                        self.learnt.push_back(q)
            while not self.seen[self.trail[idx] >> 1]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            confl = self.reason[p >> 1]
            self.seen[p >> 1] = 0
            path -= 1
            if path == 0:
                break
        self.learnt[0] = p ^ 1
        cdef int back = 0
        if self.learnt.size() > 1:
            best = 1
            for k in range(2, <int>self.learnt.size()):
                if self.level[self.learnt[k] >> 1] > self.level[self.learnt[best] >> 1]:
                    best = k
            q = self.learnt[1]
            self.learnt[1] = self.learnt[best]
            self.learnt[best] = q
            back = self.level[self.learnt[1] >> 1]
        for k in range(<int>self.learnt.size()):
            self.seen[self.learnt[k] >> 1] = 0
        return back

    cdef int search(self) nogil:
        # 1 sat, 0 unsat
        cdef int confl, back, ci, v, best_v
        cdef double best_a
        cdef long budget, since_restart = 0
        if self.propagate() >= 0:
            return 0
        budget = RESTART_BASE * luby(0)
        while True:
            confl = self.propagate()
            if confl >= 0:
                self.conflicts += 1
                since_restart += 1
                if self.trail_lim.size() == 0:
                    return 0
                back = self.analyze(confl)
                self.cancel_until(back)
                if self.learnt.size() == 1:
                    self.enqueue(self.learnt[0], -1)
                else:
                    ci = self.add_clause(self.learnt)
                    self.enqueue(self.learnt[0], ci)
                self.var_inc /= VAR_DECAY
                continue
            if since_restart >= budget:
                self.restarts += 1
                since_restart = 0
                budget = RESTART_BASE * luby(self.restarts)
                self.cancel_until(0)
                continue
            best_v = -1
            best_a = -1.0
            for v in range(self.n):
                if self.assign[v] < 0 and self.activity[v] > best_a:
                    best_v = v
                    best_a = self.activity[v]
            if best_v < 0:
                return 1
            self.decisions += 1
            self.trail_lim.push_back(<int>self.trail.size())
            self.enqueue(2 * best_v + (0 if self.phase[best_v] == 1 else 1), -1)


def solve(int num_vars, clauses):
    """Solve a CNF given as DIMACS-style integer clauses; see ``_pysolver.solve``."""
    cdef _Core core = _Core(num_vars)
    cdef vector[int] lits
    cdef vector[int] units
    cdef int lit, x, val, result
    cdef bint taut
    stats = {"decisions": 0, "conflicts": 0, "propagations": 0}
    for raw in clauses:
        lits.clear()
        taut = False
        for x in raw:
            lit = 2 * (abs(x) - 1) + (1 if x < 0 else 0)
            if _contains(lits, lit ^ 1):
                taut = True
                break
            if not _contains(lits, lit):
                lits.push_back(lit)
        if taut:
            continue
        if lits.size() == 0:
            return None, stats
        if lits.size() == 1:
            units.push_back(lits[0])
            continue
        core.add_clause(lits)
    for lit in units:
        val = core.value(lit)
        if val == 0:
            return None, stats
        if val < 0:
            core.enqueue(lit, -1)
    with nogil:
        result = core.search()
    stats["decisions"] = core.decisions
    stats["conflicts"] = core.conflicts
    stats["propagations"] = core.propagations
    if result == 0:
        return None, stats
    stats["restarts"] = core.restarts
    return [core.assign[v] == 1 for v in range(num_vars)], stats


cdef bint _contains(vector[int]& v, int x):
    cdef size_t i
    for i in range(v.size()):
        if v[i] == x:
            return True
    return False
