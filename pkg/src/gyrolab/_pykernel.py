"""Pure-Python backtracking kernel for the gyrogroup table search.

Rows of the table are left translations. A node of the search fixes one
whole row; every fixed row is pushed through two forcing rules that hold in
any gyrogroup:

* left inverse: the row of the inverse of ``z`` is the inverse permutation;
* left Bol: ``L_x L_z L_x`` is the row of ``x + (z + x)``.

A forced row that clashes with a fixed row, or repeats a value in a column,
kills the branch. Leaves are complete Latin squares; the caller validates the
remaining gyrogroup axioms.
"""

from __future__ import annotations


class _State:
    __slots__ = ("n", "rows", "colmask", "nodes", "budget", "exhausted", "leaves")

    def __init__(self, n: int, budget: int):
        self.n = n
        self.rows: list[list[int] | None] = [None] * n
        self.colmask = [0] * n
        self.nodes = 0
        self.budget = budget
        self.exhausted = False
        self.leaves: list[bytes] = []

    def assign(self, z, perm, trail, queue):
        row = self.rows[z]
        if row is not None:
            return row == perm
        colmask = self.colmask
        for c in range(self.n):
            if colmask[c] >> perm[c] & 1:
                return False
        for c in range(self.n):
            colmask[c] |= 1 << perm[c]
        self.rows[z] = perm
        trail.append(z)
        queue.append(z)
        return True

    def close(self, queue, trail):
        n = self.n
        rows = self.rows
        rng = range(n)
        while queue:
            z = queue.pop()
            p = rows[z]
            inv = [0] * n
            for c in rng:
                inv[p[c]] = c
            if not self.assign(inv[0], inv, trail, queue):
                return False
            for x in rng:
                q = rows[x]
                if q is None:
                    continue
                r = [q[p[q[c]]] for c in rng]
                if not self.assign(r[0], r, trail, queue):
                    return False
                if x != z:
                    r = [p[q[p[c]]] for c in rng]
                    if not self.assign(r[0], r, trail, queue):
                        return False
        return True

    def undo(self, trail, mark):
        colmask = self.colmask
        while len(trail) > mark:
            z = trail.pop()
            row = self.rows[z]
            for c in range(self.n):
                colmask[c] &= ~(1 << row[c])
            self.rows[z] = None

    def candidates(self, a):
        """Yield every permutation usable as row ``a`` against the fixed rows."""
        n = self.n
        colmask = self.colmask
        perm = [0] * n
        perm[0] = a
        used = 1 << a

        def fill(c, used):
            if c == n:
                yield list(perm)
                return
            free = ~(colmask[c] | used) & ((1 << n) - 1)
            while free:
                low = free & -free
                perm[c] = low.bit_length() - 1
                yield from fill(c + 1, used | low)
                free ^= low

        yield from fill(1, used)

    def dfs(self):
        rows = self.rows
        a = next((i for i in range(self.n) if rows[i] is None), -1)
        if a < 0:
            self.leaves.append(bytes(v for row in rows for v in row))
            return
        trail: list[int] = []
        for perm in self.candidates(a):
            self.nodes += 1
            if self.nodes > self.budget:
                self.exhausted = True
                return
            queue: list[int] = []
            if self.assign(a, perm, trail, queue) and self.close(queue, trail):
                self.dfs()
                if self.exhausted:
                    return
            self.undo(trail, 0)


def load_prefix(n, prefix, budget):
    """Build a closed state from ``prefix`` (row or None per element), or None."""
    state = _State(n, budget)
    trail: list[int] = []
    queue: list[int] = []
    for z, row in enumerate(prefix):
        if row is not None and not state.assign(z, list(row), trail, queue):
            return None
    if not state.close(queue, trail):
        return None
    return state


def search_subtree(n, prefix, budget):
    """Enumerate all closed completions of ``prefix``.

    Returns ``(leaves, nodes, exhausted)`` where each leaf is the row-major
    table as ``bytes``.
    """
    state = load_prefix(n, prefix, budget)
    if state is None:
        return [], 0, False
    state.dfs()
    return state.leaves, state.nodes, state.exhausted


def expand_prefix(n, prefix):
    """Branch once on the first free row of a closed ``prefix``.

    Returns the list of closed child prefixes (each a tuple of rows or None)
    and the number of candidate rows tried.
    """
    state = load_prefix(n, prefix, 1 << 62)
    if state is None:
        return [], 0
    a = next((i for i in range(n) if state.rows[i] is None), -1)
    if a < 0:
        return [tuple(tuple(r) for r in state.rows)], 0
    children = []
    tried = 0
    trail: list[int] = []
    for perm in state.candidates(a):
        tried += 1
        queue: list[int] = []
        if state.assign(a, perm, trail, queue) and state.close(queue, trail):
            children.append(tuple(None if r is None else tuple(r) for r in state.rows))
        state.undo(trail, 0)
    return children, tried
