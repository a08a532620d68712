"""Isomorph-free exhaustive search for ex(n, H, F) and ex_bip(n, H, F).

Graphs are grown one vertex at a time.  A child is kept only when the new
vertex is the child's canonical deletion vertex (up to isomorphism of the
deleted graph) and it is the first of its isomorphism class among its
siblings; this yields exactly one representative per class.  Forbidden
patterns prune the tree because F-freeness and bipartiteness survive vertex
deletion.
"""

from __future__ import annotations

import time
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from turanlab import kernels
from turanlab.counting import (
    K5,
    CompleteBipartite,
    Cycle,
    Pattern,
    audit_c4_vertex_bound,
    count_copies,
    is_free,
    is_free_after_adding,
)
from turanlab.graph import (
    CanonicalForm,
    Graph,
    form_from_labeling,
    is_bipartite,
    to_graph6,
)

GENERAL_CAP = 12
BIPARTITE_CAP = 14


class CapExceeded(ValueError):
    """Host order above the soft cap without an explicit override."""


@dataclass(frozen=True)
class SearchConfig:
    n: int
    target: Pattern
    forbidden: tuple[Pattern, ...] = ()
    bipartite: bool = False
    worker_count: int = 1
    node_budget: int | None = None
    allow_large: bool = False

    def __post_init__(self):
        object.__setattr__(self, "forbidden", tuple(self.forbidden))
        if self.n < 1:
            raise ValueError("host order must be at least 1")
        cap = BIPARTITE_CAP if self.bipartite else GENERAL_CAP
        if self.n > cap and not self.allow_large:
            mode = "bipartite" if self.bipartite else "general"
            raise CapExceeded(f"cap exceeded: n={self.n} > {cap} in {mode} mode (use --force)")
        if self.n > 64:
            raise CapExceeded("cap exceeded: graphs are limited to 64 vertices")
        if self.target in self.forbidden:
            raise ValueError("target pattern is also forbidden")
        if self.worker_count < 1:
            raise ValueError("worker_count must be positive")
        if self.node_budget is not None and self.node_budget < 1:
            raise ValueError("node_budget must be positive")

    @property
    def mode(self) -> str:
        return "bipartite" if self.bipartite else "general"

    def semantic(self) -> dict:
        """Fields that determine the result (worker count does not)."""
        return {
            "n": self.n,
            "target": str(self.target),
            "forbidden": [str(f) for f in self.forbidden],
            "mode": self.mode,
            "node_budget": self.node_budget,
        }


@dataclass
class SearchResult:
    max_copies: int
    extremal: list[CanonicalForm]
    explored: int
    complete: bool = True
    wall_time: float = 0.0

    @property
    def graph6(self) -> list[str]:
        return [str(f) for f in self.extremal]

    @property
    def lower_bound_only(self) -> bool:
        return not self.complete


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------


@dataclass
class _Node:
    graph: Graph
    form: CanonicalForm


def _labeling(rows, n):
    return kernels.canonical_labeling(rows, n)[0]


def _form(g: Graph) -> CanonicalForm:
    return form_from_labeling(g, _labeling(g.adj, g.n))


def _children(node: _Node, forbidden: Sequence[Pattern], bipartite: bool) -> Iterator[_Node]:
    parent = node.graph
    m = parent.n
    prow = parent.adj
    pdeg = [r.bit_count() for r in prow]
    limit = min(pdeg) + 1 if m else 0
    seen: set[bytes] = set()
    for size in range(0, min(limit, m) + 1):
        for subset in combinations(range(m), size):
            smask = 0
            for u in subset:
                smask |= 1 << u
            if bipartite and any(prow[u] & smask for u in subset):
                continue
            deg = [pdeg[u] + ((smask >> u) & 1) for u in range(m)]
            if size > min(deg):
                continue
            rows = [prow[u] | (1 << m) if (smask >> u) & 1 else prow[u] for u in range(m)]
            rows.append(smask)
            deg.append(size)
            # cheap invariant first: the new vertex must minimize (degree, neighbor-degree sum)
            keys = [(deg[v], sum(deg[u] for u in _iter_bits(rows[v]))) for v in range(m + 1)]
            best = min(keys)
            if keys[m] != best:
                continue
            child = Graph(m + 1, tuple(rows))
            if bipartite and not is_bipartite(child):
                continue
            if not all(is_free_after_adding(child, m, f) for f in forbidden):
                continue
            lab = _labeling(child.adj, m + 1)
            form = form_from_labeling(child, lab)
            if form.data in seen:
                continue
            seen.add(form.data)
            tied = [v for v in range(m + 1) if keys[v] == best]
            if len(tied) > 1:
                # canonical deletion vertex: the tied vertex placed last canonically
                pos = {v: i for i, v in enumerate(lab)}
                w = max(tied, key=pos.__getitem__)
                if w != m and _form(child.delete_vertex(w)) != node.form:
                    continue
            yield _Node(child, form)


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _root() -> _Node:
    g = Graph(1, (0,))
    return _Node(g, _form(g))


def _admissible_root(forbidden, bipartite) -> bool:
    return all(is_free(_root().graph, f) for f in forbidden)


def _walk(node: _Node, n: int, forbidden, bipartite, visit: Callable[[_Node], bool]) -> bool:
    """Depth-first over the subtree of ``node`` up to order ``n``; stops when ``visit`` returns False."""
    if not visit(node):
        return False
    if node.graph.n == n:
        return True
    for child in _children(node, forbidden, bipartite):
        if not _walk(child, n, forbidden, bipartite, visit):
            return False
    return True


def enumerate_all_orders(n: int, forbidden: Sequence[Pattern] = (), bipartite: bool = False) -> Iterator[Graph]:
    """One representative per isomorphism class of F-free graphs of every order 1..n."""
    forbidden = tuple(forbidden)
    if not _admissible_root(forbidden, bipartite):
        return
    stack = [_root()]
    while stack:
        node = stack.pop()
        yield node.graph
        if node.graph.n < n:
            kids = list(_children(node, forbidden, bipartite))
            stack.extend(reversed(kids))


def enumerate_free_graphs(
    n: int,
    forbidden: Sequence[Pattern] = (),
    bipartite: bool = False,
    allow_large: bool = False,
) -> Iterator[Graph]:
    """One representative per isomorphism class of F-free graphs on exactly ``n`` vertices."""
    cap = BIPARTITE_CAP if bipartite else GENERAL_CAP
    if n > cap and not allow_large:
        raise CapExceeded(f"cap exceeded: n={n} > {cap}")
    for g in enumerate_all_orders(n, forbidden, bipartite):
        if g.n == n:
            yield g


# ---------------------------------------------------------------------------
# maximization
# ---------------------------------------------------------------------------


@dataclass
class _Tally:
    best: int = -1
    forms: set = field(default_factory=set)
    explored: int = 0


def _explore_subtrees(roots, cfg: SearchConfig, budget: int | None):
    tally = _Tally()
    complete = True

    def visit(node: _Node) -> bool:
        nonlocal complete
        if budget is not None and tally.explored >= budget:
            complete = False
            return False
        tally.explored += 1
        if node.graph.n == cfg.n:
            c = count_copies(node.graph, cfg.target)
            if c > tally.best:
                tally.best = c
                tally.forms = {node.form.data}
            elif c == tally.best:
                tally.forms.add(node.form.data)
        return True

    for root in roots:
        if not _walk(root, cfg.n, cfg.forbidden, cfg.bipartite, visit):
            break
    return tally.best, sorted(tally.forms), tally.explored, complete


def _worker(payload):
    roots, cfg = payload
    return _explore_subtrees(roots, cfg, None)


def _split_frontier(cfg: SearchConfig, want: int):
    """Expand breadth-first until at least ``want`` subtree roots (or order n) are reached.

    Returns (frontier, nodes above the frontier).
    """
    frontier = [_root()]
    above: list[_Node] = []
    while len(frontier) < want and frontier[0].graph.n < cfg.n:
        above.extend(frontier)
        nxt = []
        for node in frontier:
            nxt.extend(_children(node, cfg.forbidden, cfg.bipartite))
        frontier = nxt
        if not frontier:
            break
    return frontier, above


def search_max(cfg: SearchConfig) -> SearchResult:
    """Exact maximum of the target count over F-free graphs of order n, with every maximizer."""
    start = time.perf_counter()
    if not _admissible_root(cfg.forbidden, cfg.bipartite):
        return SearchResult(0, [], 0, True, time.perf_counter() - start)

    if cfg.worker_count == 1 or cfg.node_budget is not None:
        best, forms, explored, complete = _explore_subtrees([_root()], cfg, cfg.node_budget)
    else:
        frontier, above = _split_frontier(cfg, 4 * cfg.worker_count)
        chunks = [frontier[i :: cfg.worker_count] for i in range(cfg.worker_count)]
        chunks = [c for c in chunks if c]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(_worker, [(c, cfg) for c in chunks]))
        # nodes above the split have order < n: visited, never leaves
        best, merged, explored = -1, set(), len(above)
        for b, f, e, _ in parts:
            explored += e
            if b > best:
                best, merged = b, set(f)
            elif b == best:
                merged.update(f)
        forms = sorted(merged)
        complete = True

    return SearchResult(
        max_copies=max(best, 0),
        extremal=[CanonicalForm(d) for d in forms],
        explored=explored,
        complete=complete,
        wall_time=time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# verification drivers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BipartiteCase:
    """An exact bipartite statement: ex_bip(n, C_{2a}, C_{2a+2}) attained only by K_{a,n-a}."""

    name: str
    side: int
    unique_from: int

    @property
    def target(self) -> Cycle:
        return Cycle(2 * self.side)

    @property
    def forbidden(self) -> Cycle:
        return Cycle(2 * self.side + 2)


BIPARTITE_CASES = {
    "c4c6": BipartiteCase("c4c6", side=2, unique_from=5),
    "c6c8": BipartiteCase("c6c8", side=3, unique_from=7),
}


@dataclass
class FormulaCheck:
    n: int
    formula: int
    max_copies: int
    extremal: list[str]
    explored: int
    unique: bool
    uniqueness_required: bool
    wall_time: float

    @property
    def max_matches(self) -> bool:
        return self.max_copies == self.formula

    @property
    def passed(self) -> bool:
        return self.max_matches and (self.unique or not self.uniqueness_required)


def verify_bipartite_case(case: str, n_values: Sequence[int], worker_count: int = 1) -> list[FormulaCheck]:
    """Run the bipartite search for each n and compare with the closed form and K_{a,n-a}."""
    from turanlab.constructions import (
        BipC4C6,
        BipC6C8,
        formula_value,
        matches_complete_bipartite,
    )

    info = BIPARTITE_CASES[case]
    out = []
    for n in n_values:
        cfg = SearchConfig(
            n=n,
            target=info.target,
            forbidden=(info.forbidden,),
            bipartite=True,
            worker_count=worker_count,
        )
        res = search_max(cfg)
        formula = formula_value(BipC4C6(n) if info.side == 2 else BipC6C8(n))
        unique = len(res.extremal) == 1 and matches_complete_bipartite(res.extremal[0].graph(), info.side)
        out.append(
            FormulaCheck(
                n=n,
                formula=formula,
                max_copies=res.max_copies,
                extremal=res.graph6,
                explored=res.explored,
                unique=unique,
                uniqueness_required=n >= info.unique_from,
                wall_time=res.wall_time,
            )
        )
    return out


@dataclass
class C4BoundSweep:
    s: int
    n_max: int
    graphs: int = 0
    vertices: int = 0
    k5_free_vertices: int = 0
    violations: list = field(default_factory=list)
    max_ratio: Fraction = Fraction(0)
    max_ratio_k5: Fraction = Fraction(0)
    per_order: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations


def c4_bound_sweep(s_values: Sequence[int], n_max: int) -> list[C4BoundSweep]:
    """Audit the 4-cycles-through-a-vertex bound on every qualifying graph of order <= n_max.

    Qualifying graphs are exactly the K_{2,s+1}-free, C6-free classes, which
    the generator enumerates directly by pruning on those patterns.
    """
    if n_max > 8:
        raise CapExceeded(f"cap exceeded: c4 bound sweep limited to n <= 8, got {n_max}")
    out = []
    for s in s_values:
        sweep = C4BoundSweep(s=s, n_max=n_max)
        hyp = (Cycle(6), CompleteBipartite(2, s + 1))
        for g in enumerate_all_orders(n_max, hyp):
            sweep.graphs += 1
            sweep.per_order[g.n] = sweep.per_order.get(g.n, 0) + 1
            k5_free = is_free(g, K5)
            for v in range(g.n):
                variants = (False, True) if k5_free else (False,)
                for variant in variants:
                    a = audit_c4_vertex_bound(g, s, v, variant)
                    if variant:
                        sweep.k5_free_vertices += 1
                    else:
                        sweep.vertices += 1
                    if a.bound:
                        ratio = Fraction(a.count) / a.bound
                        if variant:
                            sweep.max_ratio_k5 = max(sweep.max_ratio_k5, ratio)
                        else:
                            sweep.max_ratio = max(sweep.max_ratio, ratio)
                    if not a.holds:
                        sweep.violations.append(
                            {
                                "graph6": to_graph6(g),
                                "vertex": v,
                                "count": a.count,
                                "bound": str(a.bound),
                                "k5_variant": variant,
                            }
                        )
        out.append(sweep)
    return out
