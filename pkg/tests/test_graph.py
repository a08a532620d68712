from __future__ import annotations

import random
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings
from oracles import atlas, brute_automorphisms, graph_and_perm, graphs, random_graph

from turanlab import kernels
from turanlab.constructions import Clique, KBipartite, build
from turanlab.graph import (
    Graph,
    GraphError,
    NotBipartiteError,
    add_edge,
    automorphism_count,
    bipartition_of,
    canonical_form,
    canonical_labeling,
    canonical_relabel,
    induced_subgraph,
    is_bipartite,
    is_isomorphic,
    mask_of,
    new_graph,
)


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


# construction and editing


def test_new_graph_bounds():
    assert new_graph(1).num_edges() == 0
    assert new_graph(64).n == 64
    with pytest.raises(GraphError, match="vertex cap exceeded"):
        new_graph(65)
    with pytest.raises(GraphError):
        new_graph(0)


def test_add_edge_is_idempotent_and_checked():
    g = add_edge(new_graph(2), 0, 1)
    assert g.num_edges() == 1
    assert add_edge(g, 1, 0).num_edges() == 1
    with pytest.raises(GraphError, match="loop"):
        add_edge(g, 0, 0)
    with pytest.raises(GraphError, match="out of range"):
        add_edge(g, 0, 2)


def test_graph_is_immutable_and_validated():
    g = new_graph(3)
    g2 = g.with_edge(0, 1)
    assert g.num_edges() == 0 and g2.num_edges() == 1
    with pytest.raises(GraphError, match="asymmetric"):
        Graph(2, (0b10, 0))
    with pytest.raises(GraphError, match="loop"):
        Graph(1, (1,))


def test_induced_subgraph_examples():
    k4 = build(Clique(4))
    assert induced_subgraph(k4, 0b0011) == build(Clique(2))
    k23 = build(KBipartite(2, 3))
    assert induced_subgraph(k23, 0b11100).num_edges() == 0
    assert induced_subgraph(cycle(6), 0b111) == path(3)


@given(graphs(1, 9))
def test_induced_on_everything_is_identity(g):
    assert induced_subgraph(g, g.vertex_mask) == g


# bipartiteness


def test_bipartition_examples():
    assert sorted(bipartition_of(build(KBipartite(2, 3))).sizes()) == [2, 3]
    part = bipartition_of(new_graph(4))
    assert part.left == 0b1111 and part.right == 0
    with pytest.raises(NotBipartiteError) as info:
        bipartition_of(cycle(5))
    assert sorted(info.value.witness) == [0, 1, 2, 3, 4]


@given(graphs(1, 10))
def test_bipartition_is_valid_or_witnessed(g):
    try:
        part = bipartition_of(g)
    except NotBipartiteError as exc:
        w = exc.witness
        assert len(w) % 2 == 1
        assert all(g.has_edge(w[i], w[(i + 1) % len(w)]) for i in range(len(w)))
        assert not is_bipartite(g)
        return
    assert part.left & part.right == 0
    assert part.left | part.right == g.vertex_mask
    for side in (part.left, part.right):
        assert all(g.adj[v] & side == 0 for v in range(g.n) if side >> v & 1)


# canonical forms and automorphisms


def test_canonical_form_examples():
    a = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    b = Graph.from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)])
    assert canonical_form(a) == canonical_form(b)
    assert canonical_form(a) != canonical_form(path(4))
    paw = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert len({canonical_form(paw.relabel(p)) for p in permutations(range(4))}) == 1


def test_automorphism_examples():
    assert automorphism_count(cycle(4)) == 8
    assert automorphism_count(build(KBipartite(3, 3))) == 72
    assert automorphism_count(build(Clique(4))) == 24
    assert automorphism_count(new_graph(64)) == factorial(64)


def test_forms_separate_all_classes_up_to_seven():
    classes = atlas(7)
    assert len({canonical_form(g) for g in classes}) == len(classes)


def test_automorphisms_match_brute_force():
    for g in atlas(6):
        assert automorphism_count(g) == brute_automorphisms(g), g


@settings(max_examples=200)
@given(graph_and_perm(1, 12))
def test_relabel_invariance(gp):
    g, perm = gp
    h = g.relabel(perm)
    assert canonical_form(g) == canonical_form(h)
    assert automorphism_count(g) == automorphism_count(h)
    assert is_isomorphic(g, h)


@given(graphs(1, 10))
def test_canonical_relabel_reproduces_form(g):
    assert canonical_form(canonical_relabel(g)) == canonical_form(g)
    lab = canonical_labeling(g)
    assert sorted(lab) == list(range(g.n))


def test_canonical_form_of_large_sparse_graphs():
    rng = random.Random(7)
    for n in (30, 48, 64):
        g = random_graph(rng, n, 0.1)
        perm = list(range(n))
        rng.shuffle(perm)
        assert canonical_form(g) == canonical_form(g.relabel(perm))


def test_strongly_regular_pair_distinguished():
    # 4x4 rook graph and the Shrikhande graph share parameters (16, 6, 2, 2)
    rook = Graph.from_edges(
        16, [(u, v) for u in range(16) for v in range(u + 1, 16) if u // 4 == v // 4 or u % 4 == v % 4]
    )

    def shr(u, v):
        du, dv = divmod(u, 4), divmod(v, 4)
        d = ((du[0] - dv[0]) % 4, (du[1] - dv[1]) % 4)
        return d in {(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)}

    shrikhande = Graph.from_edges(16, [(u, v) for u in range(16) for v in range(u + 1, 16) if shr(u, v)])
    assert sorted(rook.degrees()) == sorted(shrikhande.degrees())
    assert not is_isomorphic(rook, shrikhande)
    assert automorphism_count(rook) == 1152
    assert automorphism_count(shrikhande) == 192


# backends


@pytest.mark.skipif("cython" not in kernels.available_backends(), reason="extension not built")
@given(graphs(1, 11))
def test_backends_agree(g):
    from turanlab import _ckernels, _pykernels

    assert _ckernels.canonical_labeling(g.adj, g.n) == _pykernels.canonical_labeling(g.adj, g.n)
    for k in range(3, min(g.n, 8) + 1):
        assert _ckernels.count_cycles(g.adj, g.n, k) == _pykernels.count_cycles(g.adj, g.n, k)
        assert _ckernels.has_cycle(g.adj, g.n, k) == _pykernels.has_cycle(g.adj, g.n, k)
        for v in range(g.n):
            assert _ckernels.has_cycle_through(g.adj, g.n, v, k) == _pykernels.has_cycle_through(
                g.adj, g.n, v, k
            )


def test_mask_of_round_trip():
    assert mask_of([0, 3, 5]) == 0b101001
