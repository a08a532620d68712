"""Exact subgraph-copy counters and forbidden-subgraph tests.

A *copy* of H in G is a subgraph of G isomorphic to H: not induced and not
labeled.  So K_{3,3} holds six 6-cycles and K_4 holds three 4-cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from turanlab import kernels
from turanlab.graph import Graph, automorphism_count, bits, from_graph6, to_graph6

GENERIC_PATTERN_CAP = 10
GENERIC_HOST_CAP = 16


class ScaleError(ValueError):
    """Input is beyond the size the oracle counter accepts."""


class HypothesisError(ValueError):
    """A graph fails a precondition; ``vertices`` locates the offending subgraph."""

    def __init__(self, message: str, vertices: list[int]):
        super().__init__(f"{message}: vertices {vertices}")
        self.vertices = vertices


# ---------------------------------------------------------------------------
# patterns
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cycle:
    k: int

    def __post_init__(self):
        if not 3 <= self.k <= 64:
            raise ValueError(f"cycle length must be in 3..64, got {self.k}")

    @property
    def order(self) -> int:
        return self.k

    def graph(self) -> Graph:
        return Graph.from_edges(self.k, [(i, (i + 1) % self.k) for i in range(self.k)])

    def __str__(self) -> str:
        return f"cycle:{self.k}"


@dataclass(frozen=True)
class CompleteBipartite:
    """K_{s,t}; stored with s <= t."""

    s: int
    t: int

    def __post_init__(self):
        if self.s < 1 or self.t < 1:
            raise ValueError("complete bipartite sides must be positive")
        if self.s > self.t:
            s, t = self.t, self.s
            object.__setattr__(self, "s", s)
            object.__setattr__(self, "t", t)
        if self.s + self.t > 64:
            raise ValueError("complete bipartite pattern exceeds 64 vertices")

    @property
    def order(self) -> int:
        return self.s + self.t

    def graph(self) -> Graph:
        s, t = self.s, self.t
        return Graph.from_edges(s + t, [(a, s + b) for a in range(s) for b in range(t)])

    def __str__(self) -> str:
        return f"biclique:{self.s},{self.t}"


@dataclass(frozen=True)
class Explicit:
    pattern: Graph

    def __post_init__(self):
        if self.pattern.n > GENERIC_PATTERN_CAP:
            raise ValueError(f"explicit patterns are limited to {GENERIC_PATTERN_CAP} vertices")

    @property
    def order(self) -> int:
        return self.pattern.n

    def graph(self) -> Graph:
        return self.pattern

    def __str__(self) -> str:
        return f"g6:{to_graph6(self.pattern)}"


Pattern = Cycle | CompleteBipartite | Explicit


def parse_pattern(text: str) -> Pattern:
    """``cycle:K``, ``biclique:S,T`` (alias ``kst:S,T``), ``clique:K`` or ``g6:<graph6>``."""
    kind, sep, arg = text.partition(":")
    if not sep:
        raise ValueError(f"pattern {text!r} must look like kind:args")
    kind = kind.strip().lower()
    try:
        if kind == "cycle":
            return Cycle(int(arg))
        if kind in ("biclique", "kst"):
            s, t = (int(x) for x in arg.replace(":", ",").split(","))
            return CompleteBipartite(s, t)
        if kind == "clique":
            k = int(arg)
            return Explicit(Graph.from_edges(k, combinations(range(k), 2)))
        if kind == "g6":
            return Explicit(from_graph6(arg))
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad pattern {text!r}: {exc}") from None
    raise ValueError(f"unknown pattern kind {kind!r}")


@dataclass(frozen=True)
class CountResult:
    pattern: Pattern
    host_n: int
    copies: int

    def to_dict(self) -> dict:
        return {"pattern": str(self.pattern), "n": self.host_n, "copies": self.copies}


# ---------------------------------------------------------------------------
# cycles
# ---------------------------------------------------------------------------


def count_cycles(g: Graph, k: int) -> int:
    if not 3 <= k <= g.n:
        raise ValueError(f"cycle length {k} out of range 3..{g.n}")
    return kernels.count_cycles(g.adj, g.n, k)


def has_cycle(g: Graph, k: int) -> bool:
    if not 3 <= k <= 64:
        raise ValueError(f"cycle length {k} out of range 3..64")
    return kernels.has_cycle(g.adj, g.n, k)


def find_cycle(g: Graph, k: int) -> list[int] | None:
    """Vertices of some k-cycle in traversal order, or None."""
    if k > g.n:
        return None
    adj = g.adj
    for s in range(g.n):
        stack = [(s, [s], 1 << s)]
        while stack:
            cur, path, seen = stack.pop()
            if len(path) == k:
                if (adj[cur] >> s) & 1:
                    return path
                continue
            # larger-than-start only: the minimum vertex anchors the cycle
            for w in bits(adj[cur] & ~seen & ~((1 << (s + 1)) - 1)):
                stack.append((w, path + [w], seen | (1 << w)))
    return None


# ---------------------------------------------------------------------------
# complete bipartite subgraphs
# ---------------------------------------------------------------------------


def _biclique_sides(g: Graph, s: int, t: int):
    """Yield (A mask, common-neighborhood mask) for every s-set A with |common| >= t."""
    adj = g.adj
    n = g.n
    stack = [(0, -1, g.vertex_mask, 0)]
    while stack:
        chosen, last, common, size = stack.pop()
        if size == s:
            yield chosen, common
            continue
        for v in range(last + 1, n - (s - size) + 1):
            c = common & adj[v]
            if c.bit_count() >= t:
                stack.append((chosen | (1 << v), v, c, size + 1))


def count_complete_bipartite(g: Graph, s: int, t: int) -> int:
    """Copies of K_{s,t}: unordered pairs of disjoint sides, every cross pair adjacent."""
    if not (1 <= s <= t and s + t <= g.n):
        raise ValueError(f"need 1 <= s <= t and s + t <= n, got s={s}, t={t}, n={g.n}")
    total = sum(comb(common.bit_count(), t) for _, common in _biclique_sides(g, s, t))
    return total // 2 if s == t else total


def find_complete_bipartite(g: Graph, s: int, t: int) -> tuple[list[int], list[int]] | None:
    if s > t:
        s, t = t, s
    if s + t > g.n:
        return None
    for a, common in _biclique_sides(g, s, t):
        return list(bits(a)), list(bits(common))[:t]
    return None


# ---------------------------------------------------------------------------
# generic embedding search (the independent oracle)
# ---------------------------------------------------------------------------


def _embedding_plan(h: Graph):
    # connected-first order: next vertex maximizes already-placed neighbors
    order: list[int] = []
    placed = 0
    remaining = set(range(h.n))
    while remaining:
        best = max(
            remaining,
            key=lambda u: ((h.adj[u] & placed).bit_count(), h.degree(u), -u),
        )
        order.append(best)
        placed |= 1 << best
        remaining.remove(best)
    back = []
    for i, u in enumerate(order):
        back.append([j for j in range(i) if h.has_edge(u, order[j])])
    return order, back


def _embeddings(g: Graph, h: Graph, stop_at_first: bool):
    """Count (or find) injective homomorphisms h -> g."""
    order, back = _embedding_plan(h)
    hdeg = [h.degree(u) for u in order]
    gdeg = g.degrees()
    ok_by_deg = {}
    for d in set(hdeg):
        ok_by_deg[d] = sum(1 << v for v in range(g.n) if gdeg[v] >= d)
    last = h.n - 1
    image = [0] * h.n
    total = 0

    def extend(i: int, used: int):
        nonlocal total
        cand = ok_by_deg[hdeg[i]] & ~used
        for j in back[i]:
            cand &= g.adj[image[j]]
        if i == last:
            if stop_at_first:
                if cand:
                    image[i] = (cand & -cand).bit_length() - 1
                    return True
                return False
            total += cand.bit_count()
            return False
        for v in bits(cand):
            image[i] = v
            if extend(i + 1, used | (1 << v)) and stop_at_first:
                return True
        return False

    found = extend(0, 0)
    if stop_at_first:
        return {order[i]: image[i] for i in range(h.n)} if found else None
    return total


def find_embedding(g: Graph, h: Graph) -> dict[int, int] | None:
    """Some injective homomorphism h -> g as a vertex map, or None."""
    if h.n > g.n:
        return None
    return _embeddings(g, h, True)


def count_generic(g: Graph, h: Graph) -> int:
    """Copies of h in g: injective homomorphisms divided by |Aut(h)|."""
    if h.n > GENERIC_PATTERN_CAP:
        raise ScaleError(f"pattern has {h.n} vertices, cap is {GENERIC_PATTERN_CAP}")
    if g.n > GENERIC_HOST_CAP:
        raise ScaleError(f"host has {g.n} vertices, cap is {GENERIC_HOST_CAP}")
    if h.n > g.n:
        return 0
    homs = _embeddings(g, h, False)
    aut = automorphism_count(h)
    q, r = divmod(homs, aut)
    if r:
        raise AssertionError(f"{homs} embeddings not divisible by |Aut|={aut}")
    return q


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def count_copies(g: Graph, pattern: Pattern) -> int:
    """Copies of ``pattern`` in ``g``; 0 when the pattern is larger than the host."""
    if pattern.order > g.n:
        return 0
    match pattern:
        case Cycle(k):
            return count_cycles(g, k)
        case CompleteBipartite(s, t):
            return count_complete_bipartite(g, s, t)
        case Explicit(h):
            return count_generic(g, h)
    raise TypeError(f"not a pattern: {pattern!r}")


def is_free(g: Graph, pattern: Pattern) -> bool:
    if pattern.order > g.n:
        return True
    match pattern:
        case Cycle(k):
            return not has_cycle(g, k)
        case CompleteBipartite(s, t):
            return find_complete_bipartite(g, s, t) is None
        case Explicit(h):
            return find_embedding(g, h) is None
    raise TypeError(f"not a pattern: {pattern!r}")


def is_free_after_adding(g: Graph, v: int, pattern: Pattern) -> bool:
    """Freeness of ``g`` given that ``g - v`` is already pattern-free."""
    if isinstance(pattern, Cycle):
        return not kernels.has_cycle_through(g.adj, g.n, v, pattern.k)
    return is_free(g, pattern)


def witness(g: Graph, pattern: Pattern) -> list[int] | None:
    """Vertex set of one copy of ``pattern``, or None if ``g`` is free of it."""
    if pattern.order > g.n:
        return None
    match pattern:
        case Cycle(k):
            return find_cycle(g, k)
        case CompleteBipartite(s, t):
            found = find_complete_bipartite(g, s, t)
            return None if found is None else sorted(found[0] + found[1])
        case Explicit(h):
            emb = find_embedding(g, h)
            return None if emb is None else sorted(emb.values())
    raise TypeError(f"not a pattern: {pattern!r}")


# ---------------------------------------------------------------------------
# 4-cycles through a vertex
# ---------------------------------------------------------------------------


def c4_incident_to_vertex(g: Graph, v: int) -> int:
    """Number of 4-cycles whose vertex set contains ``v``.

    Each such cycle is v-a-x-b-v for a unique pair {a, b} of neighbors of v
    and a common neighbor x of a and b other than v.
    """
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    nb = list(bits(g.adj[v]))
    skip = ~(1 << v)
    return sum(
        (g.adj[a] & g.adj[b] & skip).bit_count() for a, b in combinations(nb, 2)
    )


K5 = Explicit(Graph.from_edges(5, combinations(range(5), 2)))


@dataclass(frozen=True)
class C4Audit:
    count: int
    bound: Fraction
    holds: bool
    degree: int


def c4_vertex_bound(degree: int, s: int, k5_free: bool = False) -> Fraction:
    """max(c*deg, (s-1)(s+2)/(2(s+1)) * deg) with c = 3, or 2 for K5-free hosts."""
    linear = (2 if k5_free else 3) * degree
    return max(Fraction(linear), Fraction((s - 1) * (s + 2), 2 * (s + 1)) * degree)


def audit_c4_vertex_bound(g: Graph, s: int, v: int, k5_variant: bool = False) -> C4Audit:
    """Compare the 4-cycles through ``v`` with the degree bound for K_{2,s+1}- and C6-free hosts."""
    if s < 2:
        raise ValueError("s must be at least 2")
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    hypotheses = [CompleteBipartite(2, s + 1), Cycle(6)]
    if k5_variant:
        hypotheses.append(K5)
    for pattern in hypotheses:
        found = witness(g, pattern)
        if found is not None:
            raise HypothesisError(f"host contains {pattern}", sorted(found))
    count = c4_incident_to_vertex(g, v)
    degree = g.degree(v)
    bound = c4_vertex_bound(degree, s, k5_variant)
    return C4Audit(count=count, bound=bound, holds=count <= bound, degree=degree)
