# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled exhaustive immersion search. Mirrors ``_pybrute`` step for step."""

from libcpp.vector cimport vector

cdef int FAIL = 0, OK = 1, UNDECIDED = 2


cdef struct _Target:
    int init
    int dead
    int size


cdef class _Search:
    cdef int k, nsym, total, ntg
    cdef vector[int] graph, fin, stack
    cdef vector[_Target] tgts
    cdef vector[vector[int]] delta, final, seen
    cdef vector[int] result_graph, result_inits
    cdef long nodes

    def __cinit__(self, int k, int nsym, targets):
        cdef _Target t
        self.k = k
        self.nsym = nsym
        self.total = k * nsym
        self.ntg = len(targets)
        self.graph.assign(self.total, -2)
        self.fin.assign(k, -1)
        self.nodes = 0
        for d, init, fl, dead in targets:
            t.init = init
            t.dead = dead
            t.size = len(fl)
            self.tgts.push_back(t)
            self.delta.push_back(d)
            self.final.push_back(fl)
            self.seen.push_back(vector[int]((k + 1) * t.size, 0))

    cdef int check(self, int j, int start) nogil:
        cdef int size = self.tgts[j].size
        cdef int dead = self.tgts[j].dead
        cdef int x, s, f, a, e, y, t, idx, base
        cdef bint undecided = False
        cdef size_t i
        for i in range(self.seen[j].size()):
            self.seen[j][i] = 0
        for x in range(self.k):
            self.fin[x] = -1
        self.stack.clear()
        self.stack.push_back(start)
        self.stack.push_back(self.tgts[j].init)
        self.seen[j][start * size + self.tgts[j].init] = 1
        while self.stack.size() > 0:
            s = self.stack.back()
            self.stack.pop_back()
            x = self.stack.back()
            self.stack.pop_back()
            if x == self.k:
                if s != dead:
                    return FAIL
                continue
            f = self.final[j][s]
            if self.fin[x] < 0:
                self.fin[x] = f
            elif self.fin[x] != f:
                return FAIL
            base = x * self.nsym
            for a in range(self.nsym):
                e = self.graph[base + a]
                if e == -2:
                    undecided = True
                    continue
                y = self.k if e == -1 else e
                t = self.delta[j][s * self.nsym + a]
                idx = y * size + t
                if not self.seen[j][idx]:
                    self.seen[j][idx] = 1
                    self.stack.push_back(y)
                    self.stack.push_back(t)
        return UNDECIDED if undecided else OK

    cdef bint viable(self) nogil:
        cdef int j, u
        cdef bint all_fail
        for j in range(self.ntg):
            if j == 0:
                if self.check(0, 0) == FAIL:
                    return False
                continue
            all_fail = True
            for u in range(self.k):
                if self.check(j, u) != FAIL:
                    all_fail = False
                    break
            if all_fail:
                return False
        return True

    cdef bint rec(self, int d, int met, int roots) nogil:
        cdef int val, j, u, top
        self.nodes += 1
        if not self.viable():
            return False
        if d == self.total:
            self.result_graph = self.graph
            self.result_inits.clear()
            self.result_inits.push_back(0)
            for j in range(1, self.ntg):
                for u in range(self.k):
                    if self.check(j, u) == OK:
                        self.result_inits.push_back(u)
                        break
            return True
        if d % self.nsym == 0 and d // self.nsym == met:
            met += 1
            roots += 1
            if roots > self.ntg:
                return False
        top = met + 1 if met < self.k else self.k
        for val in range(-1, top):
            self.graph[d] = val
            if self.rec(d + 1, met if met > val + 1 else val + 1, roots):
                return True
        self.graph[d] = -2
        return False

    cdef bint run(self) nogil:
        return self.rec(0, 1, 1)


def search(int k, int nsym, targets):
    """Same contract as ``_pybrute.search``."""
    cdef _Search s = _Search(k, nsym, targets)
    cdef bint found
    with nogil:
        found = s.run()
    if not found:
        return None, None, s.nodes
    return list(s.result_graph), list(s.result_inits), s.nodes
