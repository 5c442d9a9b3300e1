"""Kernels of cyclic characters ``A(G) -> Z/mZ`` as right-angled Artin groups.

For a vertex ``v`` and ``m >= 1`` the kernel of ``v -> 1, other -> 0`` is the
RAAG on ``m`` copies of ``G`` glued along the copies of ``star(v)``.  We use
the Schreier transversal ``1, v, ..., v^(m-1)``, which gives the generators

* ``v``            -> ``v^m``
* ``w`` in link(v) -> ``w``
* ``u@i``          -> ``v^i u v^-i``   for ``u`` outside ``star(v)``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from raagkit.errors import CompleteGraphError, GraphError, NotInKernelError
from raagkit.graph import DefiningGraph, link, splitting_vertex, star
from raagkit.words import (
    CyclicCharacter,
    Letter,
    Word,
    character_image,
    check_word,
    commutator,
    inverse_word,
    is_trivial,
    power,
    words_equal,
)


def copy_label(u: str, i: int) -> str:
    return f"{u}@{i}"


def _check_args(g: DefiningGraph, v: str, m: int) -> None:
    g.index(v)
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"index m must be a positive integer, got {m!r}")


def glued_graph(g: DefiningGraph, v: str, m: int) -> DefiningGraph:
    _check_args(g, v, m)
    st = star(g, v)
    labels: list[str] = []
    # sheet[x] lists the glued labels lying over base vertex x
    sheet: dict[str, list[str]] = {}
    for u in g.vertices:
        if u in st:
            sheet[u] = [u] * m
            labels.append(u)
        else:
            sheet[u] = [copy_label(u, i) for i in range(m)]
            labels.extend(sheet[u])
    if len(set(labels)) != len(labels):
        raise GraphError(f"glued labels collide for vertex {v!r}; base labels must not contain '@<i>' forms")
    edges = set()
    for e in g.edges:
        x, y = tuple(e)
        for i in range(m):
            a, b = sheet[x][i], sheet[y][i]
            edges.add(frozenset((a, b)))
    return DefiningGraph(tuple(labels), frozenset(edges))


@dataclass(frozen=True)
class GluedConstruction:
    base: DefiningGraph
    v: str
    m: int
    glued: DefiningGraph
    generator_map: dict = field(compare=False)
    index: int
    warnings: tuple[str, ...] = ()

    @property
    def character(self) -> CyclicCharacter:
        return CyclicCharacter(self.base, self.v, self.m)

    @property
    def degenerate(self) -> bool:
        return bool(self.warnings)

    def image(self, w: Sequence[Letter]) -> Word:
        """Substitute generator images: a glued-graph word becomes a base word."""
        check_word(self.glued, w)
        out: list[Letter] = []
        for x in w:
            img = self.generator_map[x.vertex]
            out.extend(img if x.sign > 0 else inverse_word(img))
        return tuple(out)

    def summary(self) -> dict:
        return {
            "vertex": self.v,
            "m": self.m,
            "index": self.index,
            "base_vertices": len(self.base),
            "glued_vertices": len(self.glued),
        }


def kernel_generators(g: DefiningGraph, v: str, m: int) -> GluedConstruction:
    glued = glued_graph(g, v, m)
    st = star(g, v)
    lk = link(g, v)
    gens: dict[str, Word] = {}
    for u in g.vertices:
        if u == v:
            gens[u] = power(v, m)
        elif u in lk:
            gens[u] = (Letter(u, 1),)
        else:
            for i in range(m):
                gens[copy_label(u, i)] = power(v, i) + (Letter(u, 1),) + power(v, -i)
    warnings = []
    if m == 1:
        warnings.append("m = 1: trivial character, the subgroup is the whole group")
    if st == set(g.vertices):
        warnings.append(f"star({v}) is the whole graph: gluing does not grow the graph")
    return GluedConstruction(g, v, m, glued, gens, m, tuple(warnings))


def rewrite_in_kernel(gc: GluedConstruction, w: Sequence[Letter]) -> Word:
    """Reidemeister–Schreier rewriting of a kernel word into glued generators.

    Tracks the coset ``v^c`` of the prefix read so far; each letter
    contributes the Schreier generator ``v^c x v^-c'``.
    """
    check_word(gc.base, w)
    if character_image(gc.character, w) != 0:
        raise NotInKernelError("word is not in the kernel: nonzero character image")
    v, m = gc.v, gc.m
    lk = link(gc.base, v)
    c = 0
    out: list[Letter] = []
    for x in w:
        if x.vertex == v:
            if x.sign > 0:
                c += 1
                if c == m:
                    out.append(Letter(v, 1))
                    c = 0
            else:
                if c == 0:
                    out.append(Letter(v, -1))
                    c = m
                c -= 1
        elif x.vertex in lk:
            out.append(x)
        else:
            out.append(Letter(copy_label(x.vertex, c), x.sign))
    assert c == 0
    return tuple(out)


@dataclass
class VerificationReport:
    edges_checked: int = 0
    nonedges_checked: int = 0
    kernel_membership: int = 0
    roundtrips: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "edges_checked": self.edges_checked,
            "nonedges_checked": self.nonedges_checked,
            "kernel_membership": self.kernel_membership,
            "roundtrips": self.roundtrips,
            "failures": self.failures,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def random_kernel_word(gc: GluedConstruction, rng: random.Random, max_length: int = 12) -> Word:
    """A random base word, closed off by a power of ``v`` to land in the kernel."""
    letters = [Letter(rng.choice(gc.base.vertices), rng.choice((1, -1))) for _ in range(rng.randint(0, max_length))]
    r = character_image(gc.character, letters)
    if r:
        fix = power(gc.v, -r) if rng.random() < 0.5 else power(gc.v, gc.m - r)
        cut = rng.randint(0, len(letters))
        letters[cut:cut] = fix
    return tuple(letters)


def verify_construction(gc: GluedConstruction, samples: int = 50, seed: int = 0) -> VerificationReport:
    """Check the glued presentation against the base group.

    E: glued edges give commuting images.  N: glued non-edges give
    non-commuting images.  K: every generator image lies in the kernel.
    R: sampled kernel words survive a rewrite/substitute round trip.
    """
    report = VerificationReport()
    base, glued = gc.base, gc.glued
    for p, q in combinations(glued.vertices, 2):
        comm = commutator(gc.generator_map[p], gc.generator_map[q])
        trivial = is_trivial(base, comm)
        if glued.adjacent(p, q):
            report.edges_checked += 1
            if not trivial:
                report.failures.append({"kind": "edge", "witness": [p, q]})
        else:
            report.nonedges_checked += 1
            if trivial:
                report.failures.append({"kind": "nonedge", "witness": [p, q]})
    chi = gc.character
    for p in glued.vertices:
        report.kernel_membership += 1
        if character_image(chi, gc.generator_map[p]) != 0:
            report.failures.append({"kind": "kernel", "witness": [p]})
    rng = random.Random(seed)
    for _ in range(samples):
        w = random_kernel_word(gc, rng)
        report.roundtrips += 1
        back = gc.image(rewrite_in_kernel(gc, w))
        if not words_equal(base, back, w):
            report.failures.append({"kind": "roundtrip", "witness": [str(x) for x in w]})
    return report


@dataclass(frozen=True)
class GrowthChain:
    original: DefiningGraph
    steps: tuple[GluedConstruction, ...] = ()

    @property
    def final(self) -> DefiningGraph:
        return self.steps[-1].glued if self.steps else self.original

    @property
    def total_index(self) -> int:
        total = 1
        for s in self.steps:
            total *= s.index
        return total

    def vertex_counts(self) -> list[int]:
        return [len(self.original)] + [len(s.glued) for s in self.steps]

    def compose(self) -> dict[str, Word]:
        """Express every final-stage generator as a word in the original group."""
        current = {v: (Letter(v, 1),) for v in self.original.vertices}
        for step in self.steps:
            nxt = {}
            for label, img in step.generator_map.items():
                out: list[Letter] = []
                for x in img:
                    sub = current[x.vertex]
                    out.extend(sub if x.sign > 0 else inverse_word(sub))
                nxt[label] = tuple(out)
            current = nxt
        return current

    def extend(self, v: str, m: int) -> "GrowthChain":
        return GrowthChain(self.original, self.steps + (kernel_generators(self.final, v, m),))


def grow_to(g: DefiningGraph, target: int) -> GrowthChain:
    """Glue with ``m = 2`` at the least splitting vertex until at least ``target`` vertices."""
    if splitting_vertex(g) is None:
        raise CompleteGraphError()
    chain = GrowthChain(g)
    while len(chain.final) < target:
        chain = chain.extend(splitting_vertex(chain.final), 2)
    return chain
