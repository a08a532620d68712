"""Pure-Python hot kernels.

Graphs are passed as ``(rows, n)`` where ``rows[v]`` is the neighbor bitmask
of vertex ``v``.  ``turanlab._ckernels`` implements the same functions with
the same tie-breaking, so both backends return identical results.
"""

from __future__ import annotations


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# canonical labeling
# ---------------------------------------------------------------------------


def _refine(rows, cells):
    """Equitable refinement of an ordered partition given as a list of masks.

    Every cell is split by the vector of neighbor counts into the current
    cells; the pieces are ordered by that vector.  Repeats until stable.
    """
    while True:
        out = []
        split = False
        for c in cells:
            if c & (c - 1) == 0:
                out.append(c)
                continue
            groups: dict[tuple, int] = {}
            for v in _bits(c):
                row = rows[v]
                sig = tuple((row & d).bit_count() for d in cells)
                groups[sig] = groups.get(sig, 0) | (1 << v)
            if len(groups) == 1:
                out.append(c)
            else:
                split = True
                out.extend(groups[sig] for sig in sorted(groups))
        if not split:
            return out
        cells = out


def _certificate(rows, lab):
    # Column j holds x[lab[i], lab[j]] for i < j, i = 0 in the high bit: tuple
    # order equals graph6 bit-string order.
    cols = []
    for j in range(1, len(lab)):
        r = rows[lab[j]]
        col = 0
        for i in range(j):
            col = (col << 1) | ((r >> lab[i]) & 1)
        cols.append(col)
    return tuple(cols)


class _Search:
    def __init__(self, rows, n):
        self.rows = rows
        self.n = n
        self.first_lab = None
        self.first_cert = None
        self.first_path = None
        self.best_lab = None
        self.best_cert = None
        self.best_path = None
        self.gens: list[tuple[int, ...]] = []
        self.group_order = 1

    def _leaf(self, cells, path):
        lab = [c.bit_length() - 1 for c in cells]
        cert = _certificate(self.rows, lab)
        if self.first_lab is None:
            self.first_lab = self.best_lab = lab
            self.first_cert = self.best_cert = cert
            self.first_path = self.best_path = list(path)
            return len(path)
        if cert == self.first_cert:
            self._add_gen(self.first_lab, lab)
            return _common_prefix(path, self.first_path)
        if cert == self.best_cert:
            self._add_gen(self.best_lab, lab)
            return _common_prefix(path, self.best_path)
        if cert < self.best_cert:
            self.best_lab = lab
            self.best_cert = cert
            self.best_path = list(path)
        return len(path)

    def _add_gen(self, src, dst):
        g = [0] * self.n
        for a, b in zip(src, dst):
            g[a] = b
        self.gens.append(tuple(g))

    def visit(self, cells, path):
        if len(cells) == self.n:
            return self._leaf(cells, path)
        depth = len(path)
        first_node = self.first_lab is None
        idx = next(i for i, c in enumerate(cells) if c & (c - 1))
        target = cells[idx]

        # union-find over generators fixing the current path pointwise
        uf = list(range(self.n))
        absorbed = 0

        def find(x):
            while uf[x] != x:
                uf[x] = uf[uf[x]]
                x = uf[x]
            return x

        def absorb():
            nonlocal absorbed
            for g in self.gens[absorbed:]:
                if all(g[p] == p for p in path):
                    for i in range(self.n):
                        a, b = find(i), find(g[i])
                        if a != b:
                            uf[max(a, b)] = min(a, b)
            absorbed = len(self.gens)

        explored: list[int] = []
        for v in _bits(target):
            if explored:
                absorb()
                rv = find(v)
                if any(find(u) == rv for u in explored):
                    continue
            explored.append(v)
            child = cells[:idx] + [1 << v, target ^ (1 << v)] + cells[idx + 1:]
            r = self.visit(_refine(self.rows, child), path + [v])
            if r < depth:
                return r
        if first_node:
            absorb()
            root = find(explored[0])
            self.group_order *= sum(1 for u in _bits(target) if find(u) == root)
        return depth


def _common_prefix(a, b):
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def canonical_labeling(rows, n):
    """Return ``(lab, group_order)``.

    ``lab[i]`` is the vertex placed at canonical position ``i``; relabeling by
    it gives the lexicographically smallest graph6 bit string reachable in the
    refinement tree.  ``group_order`` is ``|Aut(G)|``.
    """
    rows = list(rows)
    search = _Search(rows, n)
    search.visit(_refine(rows, [(1 << n) - 1]), [])
    return list(search.best_lab), search.group_order


# ---------------------------------------------------------------------------
# cycles
# ---------------------------------------------------------------------------


def count_cycles(rows, n, k):
    """Number of k-cycles: paths anchored at their minimum vertex, each cycle seen twice."""
    full = (1 << n) - 1
    total = 0
    for s in range(n - k + 1):
        allowed = full & ~((1 << (s + 1)) - 1)
        close = rows[s] & allowed
        if close.bit_count() < 2:
            continue
        total += _paths_closing(rows, s, close, allowed, k)
    return total // 2


def _paths_closing(rows, s, close, allowed, k):
    # path currently has 1 vertex (s); extend to k-1 vertices, then count closers
    total = 0
    stack = [(s, 1 << s, 1)]
    while stack:
        cur, visited, length = stack.pop()
        if length == k - 1:
            total += (rows[cur] & close & ~visited).bit_count()
            continue
        for w in _bits(rows[cur] & allowed & ~visited):
            stack.append((w, visited | (1 << w), length + 1))
    return total


def _twin_lower(rows, n):
    # lower[v]: twins of v with smaller index (same open or same closed neighborhood)
    lower = [0] * n
    for v in range(n):
        rv = rows[v]
        cv = rv | (1 << v)
        m = 0
        for u in range(v):
            if rows[u] == rv or (rows[u] | (1 << u)) == cv:
                m |= 1 << u
        lower[v] = m
    return lower


def has_cycle(rows, n, k):
    """True iff the graph contains a k-cycle.

    Twins are interchangeable, so the search only ever steps onto the
    lowest-index unvisited member of a twin class, and a start vertex that
    lies on no k-cycle is deleted together with its twin class.
    """
    if k > n:
        return False
    lower = _twin_lower(rows, n)
    live = (1 << n) - 1
    for s in range(n):
        if not (live >> s) & 1 or lower[s]:
            continue
        if _cycle_from(rows, lower, live, s, k):
            return True
        cls = 1 << s
        for u in range(s + 1, n):
            if (lower[u] >> s) & 1:
                cls |= 1 << u
        live &= ~cls
    return False


def _cycle_from(rows, lower, live, s, k):
    close = rows[s] & live
    if close.bit_count() < 2:
        return False
    stack = [(s, 1 << s, 1)]
    while stack:
        cur, visited, length = stack.pop()
        cand = rows[cur] & live & ~visited
        if length == k - 1:
            for w in _bits(cand & close):
                if not lower[w] & ~visited:
                    return True
            continue
        for w in _bits(cand):
            if not lower[w] & ~visited:
                stack.append((w, visited | (1 << w), length + 1))
    return False


def has_cycle_through(rows, n, v, k):
    """True iff some k-cycle passes through vertex ``v``."""
    if k > n:
        return False
    close = rows[v]
    if close.bit_count() < 2:
        return False
    stack = [(v, 1 << v, 1)]
    while stack:
        cur, visited, length = stack.pop()
        cand = rows[cur] & ~visited
        if length == k - 1:
            if cand & close:
                return True
            continue
        for w in _bits(cand):
            stack.append((w, visited | (1 << w), length + 1))
    return False
