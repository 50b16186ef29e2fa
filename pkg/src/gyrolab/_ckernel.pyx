# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twin of :mod:`gyrolab._pykernel`.

Same branching order, same forcing rules, same node accounting: both
kernels return identical leaves and node counts for identical input.
"""

from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_ctzll(unsigned long long)

cdef enum:
    MAXN = 32


cdef class _Search:
    cdef int n
    cdef int rows[MAXN][MAXN]
    cdef bint known[MAXN]
    cdef uint64_t colmask[MAXN]
    cdef int trail[MAXN]
    cdef int ntrail
    cdef int queue[MAXN]
    cdef int nqueue
    cdef uint64_t full
    cdef long long nodes
    cdef long long budget
    cdef bint exhausted
    cdef list leaves

    def __cinit__(self, int n, long long budget):
        cdef int i
        self.n = n
        self.budget = budget
        self.nodes = 0
        self.exhausted = False
        self.ntrail = 0
        self.nqueue = 0
        self.leaves = []
        self.full = ((<uint64_t>1) << n) - 1 if n < 64 else <uint64_t>(-1)
        for i in range(MAXN):
            self.known[i] = False
            self.colmask[i] = 0

    cdef bint assign(self, int z, int* p):
        cdef int c
        cdef int n = self.n
        if self.known[z]:
            for c in range(n):
                if self.rows[z][c] != p[c]:
                    return False
            return True
        for c in range(n):
            if (self.colmask[c] >> p[c]) & 1:
                return False
        for c in range(n):
            self.colmask[c] |= (<uint64_t>1) << p[c]
            self.rows[z][c] = p[c]
        self.known[z] = True
        self.trail[self.ntrail] = z
        self.ntrail += 1
        self.queue[self.nqueue] = z
        self.nqueue += 1
        return True

    cdef bint close(self):
        cdef int z, x, c
        cdef int n = self.n
        cdef int tmp[MAXN]
        cdef int* p
        cdef int* q
        while self.nqueue > 0:
            self.nqueue -= 1
            z = self.queue[self.nqueue]
            p = &self.rows[z][0]
            for c in range(n):
                tmp[p[c]] = c
            if not self.assign(tmp[0], tmp):
                return False
            for x in range(n):
                if not self.known[x]:
                    continue
                q = &self.rows[x][0]
                for c in range(n):
                    tmp[c] = q[p[q[c]]]
                if not self.assign(tmp[0], tmp):
                    return False
                if x != z:
                    for c in range(n):
                        tmp[c] = p[q[p[c]]]
                    if not self.assign(tmp[0], tmp):
                        return False
        return True

    cdef void undo(self, int mark):
        cdef int z, c
        while self.ntrail > mark:
            self.ntrail -= 1
            z = self.trail[self.ntrail]
            for c in range(self.n):
                self.colmask[c] &= ~((<uint64_t>1) << self.rows[z][c])
            self.known[z] = False

    cdef void leaf(self):
        cdef int a, c
        cdef int n = self.n
        buf = bytearray(n * n)
        for a in range(n):
            for c in range(n):
                buf[a * n + c] = self.rows[a][c]
        self.leaves.append(bytes(buf))

    cdef void dfs(self):
        cdef int a = -1
        cdef int i
        cdef int perm[MAXN]
        for i in range(self.n):
            if not self.known[i]:
                a = i
                break
        if a < 0:
            self.leaf()
            return
        perm[0] = a
        self.fill(perm, a, 1, (<uint64_t>1) << a)

    cdef void fill(self, int* perm, int a, int c, uint64_t used):
        cdef uint64_t free, low
        cdef int mark
        if c == self.n:
            self.nodes += 1
            if self.nodes > self.budget:
                self.exhausted = True
                return
            mark = self.ntrail
            self.nqueue = 0
            if self.assign(a, perm) and self.close():
                self.dfs()
            self.undo(mark)
            return
        free = ~(self.colmask[c] | used) & self.full
        while free:
            low = free & (~free + 1)
            perm[c] = __builtin_ctzll(low)
            self.fill(perm, a, c + 1, used | low)
            if self.exhausted:
                return
            free ^= low

    cdef bint load(self, prefix):
        cdef int z, c
        cdef int tmp[MAXN]
        self.nqueue = 0
        for z, row in enumerate(prefix):
            if row is None:
                continue
            for c in range(self.n):
                tmp[c] = row[c]
            if not self.assign(z, tmp):
                return False
        return self.close()


def search_subtree(int n, prefix, long long budget):
    """Enumerate all closed completions of ``prefix``; see the Python kernel."""
    if n > MAXN:
        raise ValueError(f"compiled kernel supports order <= {MAXN}")
    s = _Search(n, budget)
    if not s.load(prefix):
        return [], 0, False
    s.dfs()
    return s.leaves, s.nodes, bool(s.exhausted)
