"""Simple undirected graphs on at most 64 vertices, stored as bitmask rows.

Row ``adj[v]`` is the neighbor set of ``v``.  Graphs are immutable; every
edit returns a new value.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from turanlab import graph6, kernels

MAX_VERTICES = 64


class GraphError(ValueError):
    """Invalid vertex count, vertex index or edge."""


class NotBipartiteError(ValueError):
    """Raised by :func:`bipartition_of`; ``witness`` is an odd cycle as a vertex list."""

    def __init__(self, witness: list[int]):
        super().__init__(f"not bipartite: odd cycle {witness}")
        self.witness = witness


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            if self.n > MAX_VERTICES:
                raise GraphError(f"vertex cap exceeded: n={self.n} > {MAX_VERTICES}")
            raise GraphError(f"vertex count must be at least 1, got {self.n}")
        if len(self.adj) != self.n:
            raise GraphError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {v} has bits beyond vertex {self.n - 1}")
            if (row >> v) & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in bits(row):
                if not (self.adj[u] >> v) & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if not 1 <= n <= MAX_VERTICES:
            new_graph(n)  # raises the matching error
        rows = [0] * n
        for u, v in edges:
            _check_edge(n, u, v)
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees())

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def closed_neighborhood(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def with_edge(self, u: int, v: int) -> Graph:
        return add_edge(self, u, v)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            m = 0
            for u in bits(row):
                m |= 1 << perm[u]
            rows[perm[v]] = m
        return Graph(self.n, tuple(rows))

    def delete_vertex(self, v: int) -> Graph:
        return induced_subgraph(self, self.vertex_mask & ~(1 << v))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, g6={to_graph6(self)!r})"


def _check_edge(n: int, u: int, v: int) -> None:
    if not (0 <= u < n and 0 <= v < n):
        raise GraphError(f"vertex out of range: edge ({u}, {v}) with n={n}")
    if u == v:
        raise GraphError(f"loop at vertex {u}")


def new_graph(n: int) -> Graph:
    """Edgeless graph on ``n`` vertices, 1 <= n <= 64."""
    if n > MAX_VERTICES:
        raise GraphError(f"vertex cap exceeded: n={n} > {MAX_VERTICES}")
    if n < 1:
        raise GraphError(f"vertex count must be at least 1, got {n}")
    return Graph(n, (0,) * n)


def add_edge(g: Graph, u: int, v: int) -> Graph:
    _check_edge(g.n, u, v)
    if (g.adj[u] >> v) & 1:
        return g
    rows = list(g.adj)
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    return Graph(g.n, tuple(rows))


def induced_subgraph(g: Graph, vertex_set: int) -> Graph:
    """G[S] with the vertices of ``S`` (a bitmask) relabeled 0..|S|-1 in index order."""
    if vertex_set <= 0 or vertex_set & ~g.vertex_mask:
        raise GraphError("vertex set must be a nonempty subset of the vertices")
    keep = list(bits(vertex_set))
    rows = []
    for v in keep:
        row = g.adj[v] & vertex_set
        m = 0
        for i, u in enumerate(keep):
            if (row >> u) & 1:
                m |= 1 << i
        rows.append(m)
    return Graph(len(keep), tuple(rows))


# ---------------------------------------------------------------------------
# bipartiteness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bipartition:
    left: int
    right: int

    def sizes(self) -> tuple[int, int]:
        return self.left.bit_count(), self.right.bit_count()


def _two_color(g: Graph):
    color = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in bits(g.adj[u]):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return None, _odd_cycle(parent, u, w)
    return color, None


def _odd_cycle(parent: list[int], u: int, w: int) -> list[int]:
    up = [u]
    while parent[up[-1]] >= 0:
        up.append(parent[up[-1]])
    wp = [w]
    while parent[wp[-1]] >= 0:
        wp.append(parent[wp[-1]])
    # drop the shared tail above the lowest common ancestor
    while len(up) > 1 and len(wp) > 1 and up[-2] == wp[-2]:
        up.pop()
        wp.pop()
    return up + wp[-2::-1]


def bipartition_of(g: Graph) -> Bipartition:
    """BFS 2-coloring; the lowest vertex of each component goes left.

    Raises :class:`NotBipartiteError` carrying an odd cycle otherwise.
    """
    color, witness = _two_color(g)
    if color is None:
        raise NotBipartiteError(witness)
    left = mask_of(v for v in range(g.n) if color[v] == 0)
    return Bipartition(left, g.vertex_mask & ~left)


def is_bipartite(g: Graph) -> bool:
    return _two_color(g)[0] is not None


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """graph6 bytes of the canonically relabeled graph; equal iff isomorphic."""

    data: bytes

    def __str__(self) -> str:
        return self.data.decode("ascii")

    def graph(self) -> Graph:
        return from_graph6(self.data)


def canonical_labeling(g: Graph) -> list[int]:
    """``lab[i]`` is the vertex that receives canonical label ``i``."""
    lab, _ = kernels.canonical_labeling(g.adj, g.n)
    return lab


def canonical_relabel(g: Graph) -> Graph:
    lab = canonical_labeling(g)
    perm = [0] * g.n
    for i, v in enumerate(lab):
        perm[v] = i
    return g.relabel(perm)


def canonical_form(g: Graph) -> CanonicalForm:
    return CanonicalForm(to_graph6(canonical_relabel(g)).encode("ascii"))


def form_from_labeling(g: Graph, lab: Sequence[int]) -> CanonicalForm:
    pos = [0] * g.n
    for i, v in enumerate(lab):
        pos[v] = i
    return CanonicalForm(to_graph6(g.relabel(pos)).encode("ascii"))


def automorphism_count(g: Graph) -> int:
    return kernels.canonical_labeling(g.adj, g.n)[1]


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.num_edges() != b.num_edges():
        return False
    if sorted(a.degrees()) != sorted(b.degrees()):
        return False
    return canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------


def to_graph6(g: Graph) -> str:
    return graph6.encode(g.n, g.adj)


def from_graph6(text: str | bytes) -> Graph:
    n, rows = graph6.decode(text)
    return Graph(n, tuple(rows))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        if line.strip():
            yield from_graph6(line)
