"""Vertex inversions and elementary abelian 2-subgroups of the abstract commensurator.

Inverting one generator of ``A(G)`` is an automorphism of order two; distinct
inversions commute.  Passing to a glued finite-index subgroup with more
vertices gives more of them, and a certificate records the whole chain
together with every check, so it can be re-validated from JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from raagkit.errors import CertificateError, GraphError, RaagError
from raagkit.graph import DefiningGraph, splitting_vertex
from raagkit.subgroups import GrowthChain, grow_to
from raagkit.words import (
    CyclicCharacter,
    Letter,
    Word,
    abelianize,
    character_image,
    check_word,
    commutator,
    is_trivial,
    words_equal,
)

CERTIFICATE_FORMAT = "raagkit.comm-certificate/1"


@dataclass(frozen=True)
class InversionWitness:
    graph: DefiningGraph
    inverted: str

    def __post_init__(self):
        self.graph.index(self.inverted)

    @property
    def matrix(self) -> np.ndarray:
        """Action on the abelianization: diagonal, -1 at the inverted vertex."""
        diag = np.ones(len(self.graph), dtype=np.int64)
        diag[self.graph.index(self.inverted)] = -1
        return np.diag(diag)

    @property
    def diagonal(self) -> list[int]:
        return [int(x) for x in np.diag(self.matrix)]

    def image(self, x: Letter) -> Word:
        if x.vertex == self.inverted:
            return (x.inverse(),)
        return (x,)

    def apply(self, w: Sequence[Letter]) -> Word:
        check_word(self.graph, w)
        return tuple(y for x in w for y in self.image(x))


def inversion_witness(g: DefiningGraph, v: str) -> InversionWitness:
    return InversionWitness(g, v)


def witness_is_automorphism(g: DefiningGraph, w: InversionWitness) -> bool:
    """Every defining relator maps to the identity (the map is an involution, so it is bijective)."""
    if w.graph != g:
        raise GraphError("witness is over a different graph")
    for u, t in g.edge_list():
        relator = commutator((Letter(u, 1),), (Letter(t, 1),))
        if not is_trivial(g, w.apply(relator)):
            return False
    return True


def gf2_rank(vectors: Sequence[int]) -> int:
    """Rank over GF(2) of bitmask-encoded vectors."""
    basis: dict[int, int] = {}  # leading bit -> reduced vector
    for vec in vectors:
        while vec:
            lead = vec.bit_length() - 1
            if lead not in basis:
                basis[lead] = vec
                break
            vec ^= basis[lead]
    return len(basis)


def elementary_abelian_order(witnesses: Sequence[InversionWitness]) -> int:
    """log2 of the order of the group generated by the witnesses' abelianized actions."""
    if not witnesses:
        return 0
    g = witnesses[0].graph
    if any(w.graph != g for w in witnesses):
        raise GraphError("witnesses live over different graphs")
    masks = []
    for w in witnesses:
        mask = 0
        for i, d in enumerate(np.diag(w.matrix)):
            if d == -1:
                mask |= 1 << i
        masks.append(mask)
    return gf2_rank(masks)


def tracked_power(chain: GrowthChain, x: str) -> tuple[int, list[str]]:
    """Smallest power ``x^N`` of an original generator that the chain keeps as a generator.

    Returns ``N`` and the label tracking ``x`` at every stage (original
    graph first, final graph last).
    """
    n = 1
    label = x
    labels = [label]
    for step in chain.steps:
        if label == step.v:
            n *= step.m
        elif label not in step.base.neighbors(step.v):
            label = f"{label}@0"
        labels.append(label)
    return n, labels


def nontriviality_check(g: DefiningGraph, w: InversionWitness, chain: GrowthChain) -> tuple[bool, int]:
    """Exhibit ``x^N`` in the final subgroup of ``chain`` that the witness does not fix.

    ``x`` is the inverted generator and ``N`` the product of the moduli of
    the steps whose distinguished vertex tracks ``x``.  Returns ``(ok, N)``.
    """
    if chain.original != g or w.graph != g:
        raise GraphError("chain, witness and graph do not match")
    n, labels = tracked_power(chain, w.inverted)
    x_n = (Letter(w.inverted, 1),) * n
    ok = n >= 1
    # at stage s, x^N is written as label_s^exponent
    exponent = n
    for step, label in zip(chain.steps, labels):
        stage_word = (Letter(label, 1),) * exponent
        if character_image(CyclicCharacter(step.base, step.v, step.m), stage_word) != 0:
            ok = False
        if label == step.v:
            exponent //= step.m
    if exponent != 1 or labels[-1] not in chain.final:
        ok = False
    elif chain.steps and not words_equal(g, chain.compose()[labels[-1]], x_n):
        ok = False
    vec = np.array(abelianize(g, x_n))
    ok = ok and not np.array_equal(w.matrix @ vec, vec)
    return ok, n


@dataclass
class CommCertificate:
    original: DefiningGraph
    chain: GrowthChain
    witnesses: list[InversionWitness]
    k: int
    group_order_exponent: int
    probe_vertex: str
    checks: list[dict] = field(default_factory=list)
    pairwise_commute: bool = False

    @property
    def final(self) -> DefiningGraph:
        return self.chain.final

    @property
    def ok(self) -> bool:
        return (
            self.pairwise_commute
            and self.group_order_exponent == self.k
            and len(self.witnesses) == self.k <= len(self.final)
            and all(c["automorphism"] and c["order_two"] and c["nontrivial"] for c in self.checks)
        )

    def to_dict(self) -> dict:
        return {
            "format": CERTIFICATE_FORMAT,
            "k": self.k,
            "original": self.original.to_dict(),
            "steps": [s.summary() for s in self.chain.steps],
            "total_index": self.chain.total_index,
            "final": self.final.to_dict(),
            "nontriviality_probe": {"vertex": self.probe_vertex, "m": 2},
            "witnesses": [
                {"inverted": w.inverted, "diagonal": w.diagonal, **c}
                for w, c in zip(self.witnesses, self.checks)
            ],
            "pairwise_commute": self.pairwise_commute,
            "group_order_exponent": self.group_order_exponent,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _check_witnesses(final: DefiningGraph, witnesses, probe_vertex: str):
    """Run every per-witness check plus the pairwise commutation check."""
    identity = np.eye(len(final), dtype=np.int64)
    probe = GrowthChain(final).extend(probe_vertex, 2)
    checks = []
    for w in witnesses:
        nontrivial, n = nontriviality_check(final, w, probe)
        checks.append(
            {
                "automorphism": witness_is_automorphism(final, w),
                "order_two": bool(np.array_equal(w.matrix @ w.matrix, identity)),
                "nontrivial": nontrivial,
                "power": n,
            }
        )
    commute = all(
        np.array_equal(a.matrix @ b.matrix, b.matrix @ a.matrix) for a, b in combinations(witnesses, 2)
    )
    return checks, commute


def main_lemma_certificate(g: DefiningGraph, k: int) -> CommCertificate:
    """Build and check ``k`` commuting inversions on a glued finite-index subgroup of ``A(g)``.

    Raises :class:`CompleteGraphError` if ``g`` is complete (``A(g)`` abelian).
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    chain = grow_to(g, k)
    final = chain.final
    witnesses = [InversionWitness(final, v) for v in sorted(final.vertices)[:k]]
    probe_vertex = splitting_vertex(final)
    checks, commute = _check_witnesses(final, witnesses, probe_vertex)
    cert = CommCertificate(
        original=g,
        chain=chain,
        witnesses=witnesses,
        k=k,
        group_order_exponent=elementary_abelian_order(witnesses),
        probe_vertex=probe_vertex,
        checks=checks,
        pairwise_commute=commute,
    )
    if not cert.ok:
        raise CertificateError(f"certificate checks failed: {cert.to_dict()}")
    return cert


def verify_certificate(data: dict) -> list[str]:
    """Re-validate a serialized certificate from scratch; return a list of problems (empty = valid).

    The recorded final graph and witnesses are re-checked directly, then the
    whole certificate is rebuilt from the original graph and compared field by field.
    """
    problems: list[str] = []
    if not isinstance(data, dict):
        return ["certificate is not a JSON object"]
    if data.get("format") != CERTIFICATE_FORMAT:
        problems.append(f"unknown format {data.get('format')!r}")
    try:
        original = DefiningGraph.from_dict(data["original"])
        final = DefiningGraph.from_dict(data["final"])
        k = data["k"]
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise CertificateError(f"bad k {k!r}")
        recorded = data["witnesses"]
        witnesses = [InversionWitness(final, w["inverted"]) for w in recorded]
        probe_vertex = data["nontriviality_probe"]["vertex"]
        final.index(probe_vertex)
    except (KeyError, TypeError, RaagError) as exc:
        return problems + [f"malformed certificate: {exc}"]

    if len(witnesses) != k:
        problems.append(f"{len(witnesses)} witnesses recorded for k = {k}")
    if len({w.inverted for w in witnesses}) != len(witnesses):
        problems.append("repeated witness")
    for w, rec in zip(witnesses, recorded):
        if rec.get("diagonal") != w.diagonal:
            problems.append(f"witness {w.inverted}: recorded diagonal does not match the inversion")
    checks, commute = _check_witnesses(final, witnesses, probe_vertex)
    for w, c in zip(witnesses, checks):
        if not (c["automorphism"] and c["order_two"] and c["nontrivial"]):
            problems.append(f"witness {w.inverted} fails a check: {c}")
    if not commute:
        problems.append("witnesses do not commute")
    order = elementary_abelian_order(witnesses) if witnesses else 0
    if order != k or data.get("group_order_exponent") != order:
        problems.append(f"group order exponent {data.get('group_order_exponent')!r}, computed {order}, k = {k}")

    try:
        rebuilt = main_lemma_certificate(original, k).to_dict()
    except RaagError as exc:
        return problems + [f"cannot rebuild certificate: {exc}"]
    for key in sorted(set(rebuilt) | set(data)):
        if rebuilt.get(key) != data.get(key):
            problems.append(f"field {key!r} does not match the rebuilt certificate")
    return problems
