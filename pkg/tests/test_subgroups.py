import json
import random
from dataclasses import replace

import pytest

from conftest import atlas
from oracles import hand_glued
from raagkit.errors import CompleteGraphError, NotInKernelError, UnknownVertexError
from raagkit.graph import DefiningGraph, are_isomorphic, edgeless_graph, is_complete, star
from raagkit.subgroups import (
    GrowthChain,
    glued_graph,
    grow_to,
    kernel_generators,
    rewrite_in_kernel,
    verify_construction,
)
from raagkit.words import CyclicCharacter, character_image, inverse_word, parse_word, words_equal

W = parse_word


def as_hand_labels(g: DefiningGraph):
    """Map library labels u@i back to the oracle's (u, i) tuples."""
    def conv(label):
        if "@" in label:
            u, i = label.rsplit("@", 1)
            return (u, int(i))
        return label
    return {conv(v) for v in g.vertices}, {frozenset(conv(x) for x in e) for e in g.edges}


def test_glued_path(P3):
    g = glued_graph(P3, "a", 2)
    assert g.vertices == ("a", "b", "c@0", "c@1")
    assert set(g.edge_list()) == {("a", "b"), ("b", "c@0"), ("b", "c@1")}


def test_glued_edgeless_is_free_of_rank_four(E2):
    g = glued_graph(E2, "a", 3)
    assert g.vertices == ("a", "b@0", "b@1", "b@2")
    assert not g.edges


def test_glued_complete_is_unchanged(K3):
    for m in (1, 2, 5):
        assert glued_graph(K3, "a", m) == K3


def test_glued_argument_errors(P3):
    with pytest.raises(UnknownVertexError):
        glued_graph(P3, "z", 2)
    with pytest.raises(ValueError):
        glued_graph(P3, "a", 0)


@pytest.mark.parametrize("g", atlas(5))
def test_glued_matches_hand_construction(g):
    for v in g.vertices:
        for m in (1, 2, 3):
            assert as_hand_labels(glued_graph(g, v, m)) == hand_glued(g.vertices, g.edges, v, m)


@pytest.mark.parametrize("g", atlas(4))
def test_index_one_is_isomorphic(g):
    for v in g.vertices:
        assert are_isomorphic(g, glued_graph(g, v, 1)) is not None


def test_kernel_generators_edgeless(E2):
    gc = kernel_generators(E2, "a", 2)
    assert gc.generator_map == {"a": W("a a"), "b@0": W("b"), "b@1": W("a b a^-1")}
    assert gc.index == 2


def test_kernel_generators_path(P3):
    gc = kernel_generators(P3, "a", 2)
    assert gc.generator_map == {"a": W("a^2"), "b": W("b"), "c@0": W("c"), "c@1": W("a c a^-1")}


def test_kernel_generators_index_one(P3):
    gc = kernel_generators(P3, "b", 1)
    assert gc.index == 1
    assert all(img == W(label.split("@")[0]) for label, img in gc.generator_map.items())
    assert gc.degenerate


def test_degenerate_flags(K3, P3):
    assert kernel_generators(K3, "a", 2).warnings
    assert not kernel_generators(P3, "a", 2).warnings


def test_rewrite_examples(E2):
    gc = kernel_generators(E2, "a", 2)
    assert rewrite_in_kernel(gc, W("a b a^-1")) == W("b@1")
    assert rewrite_in_kernel(gc, W("a a")) == W("a")
    with pytest.raises(NotInKernelError):
        rewrite_in_kernel(gc, W("a"))


def test_rewrite_negative_powers(E2):
    gc = kernel_generators(E2, "a", 3)
    out = rewrite_in_kernel(gc, W("a^-1 b a"))
    # a^-3 . (a^2 b a^-2) . a^3
    assert out == W("a^-1 b@2 a")
    assert words_equal(E2, gc.image(out), W("a^-1 b a"))


def test_verify_path(P3):
    report = verify_construction(kernel_generators(P3, "a", 2), samples=100, seed=7)
    assert report.ok
    assert (report.edges_checked, report.nonedges_checked) == (3, 3)
    assert report.kernel_membership == 4 and report.roundtrips == 100


def test_verify_complete(K3):
    gc = kernel_generators(K3, "a", 2)
    report = verify_construction(gc, samples=20, seed=1)
    assert report.ok and gc.glued == K3
    assert report.nonedges_checked == 0


def test_verify_report_json(P3):
    data = json.loads(verify_construction(kernel_generators(P3, "a", 2), 5, 0).to_json())
    assert set(data) == {"edges_checked", "nonedges_checked", "kernel_membership", "roundtrips", "failures"}


def test_verify_catches_added_edge(P3):
    gc = kernel_generators(P3, "a", 2)
    bad = DefiningGraph(gc.glued.vertices, gc.glued.edges | {frozenset(("c@0", "c@1"))})
    report = verify_construction(replace(gc, glued=bad), samples=5, seed=0)
    assert report.failures == [{"kind": "edge", "witness": ["c@0", "c@1"]}]


def test_verify_catches_missing_edge(P3):
    gc = kernel_generators(P3, "a", 2)
    bad = DefiningGraph(gc.glued.vertices, gc.glued.edges - {frozenset(("b", "c@1"))})
    report = verify_construction(replace(gc, glued=bad), samples=5, seed=0)
    assert report.failures == [{"kind": "nonedge", "witness": ["b", "c@1"]}]


def test_verify_catches_bad_generator(P3):
    gc = kernel_generators(P3, "a", 2)
    gens = dict(gc.generator_map, a=W("a"))
    report = verify_construction(replace(gc, generator_map=gens), samples=10, seed=0)
    assert {"kind": "kernel", "witness": ["a"]} in report.failures


def test_verify_is_deterministic(P3):
    gc = kernel_generators(P3, "a", 3)
    assert verify_construction(gc, 30, 11).to_dict() == verify_construction(gc, 30, 11).to_dict()


def test_grow_edgeless(E2):
    chain = grow_to(E2, 5)
    assert chain.vertex_counts() == [2, 3, 5]
    assert chain.total_index == 4


def test_grow_path(P3):
    chain = grow_to(P3, 4)
    assert len(chain.steps) == 1
    assert (chain.steps[0].v, chain.steps[0].m) == ("a", 2)
    assert len(chain.final) == 4 and chain.total_index == 2


def test_grow_complete_fails(K3):
    with pytest.raises(CompleteGraphError):
        grow_to(K3, 4)


def test_grow_no_steps_needed(P3):
    chain = grow_to(P3, 2)
    assert chain.steps == () and chain.final == P3


def substitute(w, images):
    out = []
    for x in w:
        img = images[x.vertex]
        out.extend(img if x.sign > 0 else inverse_word(img))
    return tuple(out)


@pytest.mark.parametrize("g", [g for g in atlas(4) if not is_complete(g)])
def test_growth_chain_composition(g):
    chain = grow_to(g, 10)
    counts = chain.vertex_counts()
    assert all(a < b for a, b in zip(counts, counts[1:]))
    final_images = chain.compose()
    assert set(final_images) == set(chain.final.vertices)
    partial = GrowthChain(g)
    for step in chain.steps:
        before = partial.compose()
        partial = partial.extend(step.v, step.m)
        after = partial.compose()
        chi = CyclicCharacter(step.base, step.v, step.m)
        for label, img in step.generator_map.items():
            assert character_image(chi, img) == 0
            assert words_equal(g, substitute(img, before), after[label])
    assert partial.compose() == final_images


@pytest.mark.parametrize("r", [2, 3, 4])
def test_nielsen_schreier_counts(r):
    g = edgeless_graph(r)
    for m in range(1, 6):
        glued = glued_graph(g, "a", m)
        assert len(glued) == 1 + m * (r - 1) and not glued.edges


def test_random_kernel_round_trips_longer_words(C5):
    gc = kernel_generators(C5, "c", 4)
    rng = random.Random(5)
    for _ in range(200):
        letters = W(" ".join(rng.choice(["a", "b", "c", "d", "e", "a^-1", "c^-1", "e^-1"]) for _ in range(20)))
        r = character_image(gc.character, letters)
        w = letters + W(f"c^{-r}")
        assert words_equal(C5, gc.image(rewrite_in_kernel(gc, w)), w)


def test_star_unchanged_vertex_count_formula(P3):
    for v in P3.vertices:
        for m in range(1, 5):
            s = len(star(P3, v))
            assert len(glued_graph(P3, v, m)) == s + m * (3 - s)
