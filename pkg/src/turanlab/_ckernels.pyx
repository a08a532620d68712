# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same contract and tie-breaking as ``_pykernels``."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcmp, memcpy

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

ctypedef unsigned char u8

cdef enum:
    MAXN = 64


cdef inline int popc(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef inline int ctz(uint64_t x) noexcept nogil:
    return __builtin_ctzll(x)


cdef inline uint64_t bit(int v) noexcept nogil:
    return (<uint64_t>1) << v


cdef inline uint64_t full_mask(int n) noexcept nogil:
    if n >= 64:
        return ~(<uint64_t>0)
    return (bit(n)) - 1


cdef int load_rows(object rows, int n, uint64_t* adj) except -1:
    cdef int v
    if n < 0 or n > MAXN:
        raise ValueError("vertex count out of kernel range")
    for v in range(n):
        adj[v] = <uint64_t>rows[v]
    return 0


# ---------------------------------------------------------------------------
# canonical labeling
# ---------------------------------------------------------------------------

cdef int refine(const uint64_t* adj, int n, uint64_t* cells, int nc) noexcept nogil:
    cdef u8 sig[MAXN][MAXN]
    cdef uint64_t out[MAXN]
    cdef int verts[MAXN]
    cdef int nout, j, k, t, q, v, w, changed
    cdef uint64_t c, m, g
    while True:
        for v in range(n):
            for j in range(nc):
                sig[v][j] = <u8>popc(adj[v] & cells[j])
        nout = 0
        changed = 0
        for j in range(nc):
            c = cells[j]
            if (c & (c - 1)) == 0:
                out[nout] = c
                nout += 1
                continue
            k = 0
            m = c
            while m:
                verts[k] = ctz(m)
                k += 1
                m &= m - 1
            # insertion sort by signature, stable on vertex index
            for t in range(1, k):
                w = verts[t]
                q = t - 1
                while q >= 0 and memcmp(sig[verts[q]], sig[w], nc) > 0:
                    verts[q + 1] = verts[q]
                    q -= 1
                verts[q + 1] = w
            g = bit(verts[0])
            for t in range(1, k):
                if memcmp(sig[verts[t]], sig[verts[t - 1]], nc) != 0:
                    out[nout] = g
                    nout += 1
                    g = 0
                    changed = 1
                g |= bit(verts[t])
            out[nout] = g
            nout += 1
        memcpy(cells, out, nout * sizeof(uint64_t))
        nc = nout
        if not changed:
            return nc


cdef void certificate(const uint64_t* adj, const int* lab, int n, uint64_t* cert) noexcept nogil:
    cdef int i, j
    cdef uint64_t r, col
    for j in range(1, n):
        r = adj[lab[j]]
        col = 0
        for i in range(j):
            col = (col << 1) | ((r >> lab[i]) & 1)
        cert[j - 1] = col


cdef int cert_cmp(const uint64_t* a, const uint64_t* b, int m) noexcept nogil:
    cdef int i
    for i in range(m):
        if a[i] < b[i]:
            return -1
        if a[i] > b[i]:
            return 1
    return 0


cdef inline int uf_find(int* uf, int x) noexcept nogil:
    while uf[x] != x:
        uf[x] = uf[uf[x]]
        x = uf[x]
    return x


cdef class _Search:
    cdef int n
    cdef uint64_t adj[MAXN]
    cdef uint64_t cells[MAXN + 1][MAXN]
    cdef int path[MAXN]
    cdef int first_lab[MAXN]
    cdef int best_lab[MAXN]
    cdef int first_path[MAXN]
    cdef int best_path[MAXN]
    cdef int first_len, best_len
    cdef uint64_t first_cert[MAXN]
    cdef uint64_t best_cert[MAXN]
    cdef uint64_t cert[MAXN]
    cdef bint have_first
    cdef u8* gens
    cdef int ngens, capgens
    cdef object group_order

    def __cinit__(self):
        self.gens = NULL
        self.ngens = 0
        self.capgens = 0
        self.have_first = False
        self.group_order = 1

    def __dealloc__(self):
        if self.gens != NULL:
            free(self.gens)

    cdef int add_gen(self, const int* src, const int* dst) except -1:
        cdef int i
        cdef u8* g
        if self.ngens == self.capgens:
            self.capgens = 16 if self.capgens == 0 else 2 * self.capgens
            g = <u8*>realloc(self.gens, self.capgens * MAXN)
            if g == NULL:
                raise MemoryError()
            self.gens = g
        g = self.gens + self.ngens * MAXN
        for i in range(self.n):
            g[src[i]] = <u8>dst[i]
        self.ngens += 1
        return 0

    cdef int absorb(self, int* uf, int absorbed, int depth) noexcept nogil:
        cdef int gi, i, p, a, b, ok
        cdef u8* g
        for gi in range(absorbed, self.ngens):
            g = self.gens + gi * MAXN
            ok = 1
            for p in range(depth):
                if g[self.path[p]] != self.path[p]:
                    ok = 0
                    break
            if not ok:
                continue
            for i in range(self.n):
                a = uf_find(uf, i)
                b = uf_find(uf, g[i])
                if a != b:
                    if a < b:
                        uf[b] = a
                    else:
                        uf[a] = b
        return self.ngens

    cdef int leaf(self, int depth) except -2:
        cdef int lab[MAXN]
        cdef int i, k, c
        cdef int m = self.n - 1
        for i in range(self.n):
            lab[i] = ctz(self.cells[depth][i])
        certificate(self.adj, lab, self.n, self.cert)
        if not self.have_first:
            self.have_first = True
            memcpy(self.first_lab, lab, self.n * sizeof(int))
            memcpy(self.best_lab, lab, self.n * sizeof(int))
            memcpy(self.first_cert, self.cert, m * sizeof(uint64_t))
            memcpy(self.best_cert, self.cert, m * sizeof(uint64_t))
            memcpy(self.first_path, self.path, depth * sizeof(int))
            memcpy(self.best_path, self.path, depth * sizeof(int))
            self.first_len = depth
            self.best_len = depth
            return depth
        if cert_cmp(self.cert, self.first_cert, m) == 0:
            self.add_gen(self.first_lab, lab)
            k = 0
            while k < depth and k < self.first_len and self.path[k] == self.first_path[k]:
                k += 1
            return k
        c = cert_cmp(self.cert, self.best_cert, m)
        if c == 0:
            self.add_gen(self.best_lab, lab)
            k = 0
            while k < depth and k < self.best_len and self.path[k] == self.best_path[k]:
                k += 1
            return k
        if c < 0:
            memcpy(self.best_lab, lab, self.n * sizeof(int))
            memcpy(self.best_cert, self.cert, m * sizeof(uint64_t))
            memcpy(self.best_path, self.path, depth * sizeof(int))
            self.best_len = depth
        return depth

    cdef int visit(self, int depth, int nc) except -2:
        cdef int uf[MAXN]
        cdef int explored[MAXN]
        cdef int nexp = 0
        cdef int absorbed = 0
        cdef int idx, i, v, r, rv, skip, cnc, root, size
        cdef uint64_t target, m
        cdef bint first_node
        cdef uint64_t* cur = self.cells[depth]
        cdef uint64_t* child
        if nc == self.n:
            return self.leaf(depth)
        first_node = not self.have_first
        idx = 0
        while (cur[idx] & (cur[idx] - 1)) == 0:
            idx += 1
        target = cur[idx]
        for i in range(self.n):
            uf[i] = i
        m = target
        while m:
            v = ctz(m)
            m &= m - 1
            if nexp:
                absorbed = self.absorb(uf, absorbed, depth)
                rv = uf_find(uf, v)
                skip = 0
                for i in range(nexp):
                    if uf_find(uf, explored[i]) == rv:
                        skip = 1
                        break
                if skip:
                    continue
            explored[nexp] = v
            nexp += 1
            child = self.cells[depth + 1]
            memcpy(child, cur, idx * sizeof(uint64_t))
            child[idx] = bit(v)
            child[idx + 1] = target ^ bit(v)
            memcpy(child + idx + 2, cur + idx + 1, (nc - idx - 1) * sizeof(uint64_t))
            cnc = refine(self.adj, self.n, child, nc + 1)
            self.path[depth] = v
            r = self.visit(depth + 1, cnc)
            if r < depth:
                return r
        if first_node:
            absorbed = self.absorb(uf, absorbed, depth)
            root = uf_find(uf, explored[0])
            size = 0
            m = target
            while m:
                v = ctz(m)
                m &= m - 1
                if uf_find(uf, v) == root:
                    size += 1
            self.group_order *= size
        return depth


def canonical_labeling(rows, int n):
    """Return ``(lab, group_order)``; see ``_pykernels.canonical_labeling``."""
    cdef _Search s = _Search()
    cdef int nc, i
    s.n = n
    load_rows(rows, n, s.adj)
    s.cells[0][0] = full_mask(n)
    nc = refine(s.adj, n, s.cells[0], 1)
    s.visit(0, nc)
    return [s.best_lab[i] for i in range(n)], s.group_order


# ---------------------------------------------------------------------------
# cycles
# ---------------------------------------------------------------------------

def count_cycles(rows, int n, int k):
    """Number of k-cycles (paths anchored at their minimum vertex, halved)."""
    cdef uint64_t adj[MAXN]
    cdef uint64_t cand[MAXN]
    cdef uint64_t vis[MAXN]
    cdef int pathv[MAXN]
    cdef int s, length, w
    cdef uint64_t allowed, close, full
    cdef unsigned long long total = 0
    load_rows(rows, n, adj)
    full = full_mask(n)
    with nogil:
        for s in range(n - k + 1):
            allowed = full & ~(bit(s + 1) - 1) if s + 1 < 64 else 0
            close = adj[s] & allowed
            if popc(close) < 2:
                continue
            # explicit DFS; level L holds the path's L-th vertex (1-based length L+1)
            pathv[0] = s
            vis[0] = bit(s)
            length = 1
            if length == k - 1:
                total += popc(adj[s] & close & ~vis[0])
                continue
            cand[0] = adj[s] & allowed & ~vis[0]
            while length > 0:
                if cand[length - 1] == 0:
                    length -= 1
                    continue
                w = ctz(cand[length - 1])
                cand[length - 1] &= cand[length - 1] - 1
                pathv[length] = w
                vis[length] = vis[length - 1] | bit(w)
                if length + 1 == k - 1:
                    total += popc(adj[w] & close & ~vis[length])
                    continue
                cand[length] = adj[w] & allowed & ~vis[length]
                length += 1
    return int(total // 2)


cdef void twin_lower(const uint64_t* adj, int n, uint64_t* lower) noexcept nogil:
    cdef int u, v
    cdef uint64_t rv, cv, m
    for v in range(n):
        rv = adj[v]
        cv = rv | bit(v)
        m = 0
        for u in range(v):
            if adj[u] == rv or (adj[u] | bit(u)) == cv:
                m |= bit(u)
        lower[v] = m


cdef inline uint64_t admissible(uint64_t cand, const uint64_t* lower, uint64_t visited) noexcept nogil:
    cdef uint64_t out = 0
    cdef uint64_t m = cand
    cdef int w
    while m:
        w = ctz(m)
        m &= m - 1
        if (lower[w] & ~visited) == 0:
            out |= bit(w)
    return out


cdef bint cycle_from(const uint64_t* adj, const uint64_t* lower, uint64_t live, int s, int k) noexcept nogil:
    cdef uint64_t cand[MAXN]
    cdef uint64_t vis[MAXN]
    cdef int length, w
    cdef uint64_t close = adj[s] & live
    if popc(close) < 2:
        return False
    vis[0] = bit(s)
    length = 1
    if length == k - 1:
        return admissible(close & ~vis[0], lower, vis[0]) != 0
    cand[0] = admissible(adj[s] & live & ~vis[0], lower, vis[0])
    while length > 0:
        if cand[length - 1] == 0:
            length -= 1
            continue
        w = ctz(cand[length - 1])
        cand[length - 1] &= cand[length - 1] - 1
        vis[length] = vis[length - 1] | bit(w)
        if length + 1 == k - 1:
            if admissible(adj[w] & close & ~vis[length], lower, vis[length]):
                return True
            continue
        cand[length] = admissible(adj[w] & live & ~vis[length], lower, vis[length])
        length += 1
    return False


def has_cycle(rows, int n, int k):
    """True iff a k-cycle exists (twin-class symmetry breaking)."""
    cdef uint64_t adj[MAXN]
    cdef uint64_t lower[MAXN]
    cdef uint64_t live, cls
    cdef int s, u
    cdef bint found = False
    if k > n:
        return False
    load_rows(rows, n, adj)
    with nogil:
        twin_lower(adj, n, lower)
        live = full_mask(n)
        for s in range(n):
            if not ((live >> s) & 1) or lower[s]:
                continue
            if cycle_from(adj, lower, live, s, k):
                found = True
                break
            cls = bit(s)
            for u in range(s + 1, n):
                if (lower[u] >> s) & 1:
                    cls |= bit(u)
            live &= ~cls
    return found


def has_cycle_through(rows, int n, int v, int k):
    """True iff some k-cycle passes through vertex ``v``."""
    cdef uint64_t adj[MAXN]
    cdef uint64_t cand[MAXN]
    cdef uint64_t vis[MAXN]
    cdef uint64_t close
    cdef int length, w
    cdef bint found = False
    if k > n:
        return False
    load_rows(rows, n, adj)
    close = adj[v]
    if popc(close) < 2:
        return False
    with nogil:
        vis[0] = bit(v)
        length = 1
        if length == k - 1:
            found = (close & ~vis[0]) != 0
        else:
            cand[0] = adj[v] & ~vis[0]
            while length > 0:
                if cand[length - 1] == 0:
                    length -= 1
                    continue
                w = ctz(cand[length - 1])
                cand[length - 1] &= cand[length - 1] - 1
                vis[length] = vis[length - 1] | bit(w)
                if length + 1 == k - 1:
                    if adj[w] & close & ~vis[length]:
                        found = True
                        break
                    continue
                cand[length] = adj[w] & ~vis[length]
                length += 1
    return found
