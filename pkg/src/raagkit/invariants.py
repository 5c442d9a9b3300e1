"""Commensurability invariants.

On the RAAG side the virtual cohomological dimension and the maximal rank of
a free abelian subgroup both equal the clique number of the defining graph,
and cone vertices split off a free abelian direct factor.  On the mapping
class group side only closed-form values are used (Harer for the vcd,
Birman–Lubotzky–McCarthy for the abelian rank).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from raagkit.graph import DefiningGraph, clique_number, cone_vertices, is_complete


@dataclass(frozen=True)
class RaagInvariants:
    vertex_count: int
    clique_number: int
    vcd: int
    max_abelian_rank: int
    center_rank: int
    is_abelian: bool

    def to_dict(self) -> dict:
        return asdict(self)


def raag_invariants(g: DefiningGraph) -> RaagInvariants:
    omega = clique_number(g)
    return RaagInvariants(
        vertex_count=len(g),
        clique_number=omega,
        vcd=omega,
        max_abelian_rank=omega,
        center_rank=len(cone_vertices(g)),
        is_abelian=is_complete(g),
    )


def center_split(g: DefiningGraph, iterate: bool = False) -> tuple[DefiningGraph, int]:
    """Split ``A(g) = A(g') x Z^n`` along the cone vertices.

    Single pass by default.  With ``iterate=True``, repeat on the remainder
    until it has no cone vertices.
    """
    total = 0
    while True:
        cones = cone_vertices(g)
        if not cones:
            return g, total
        g = g.induced_subgraph(v for v in g.vertices if v not in cones)
        total += len(cones)
        if not iterate:
            return g, total


@dataclass(frozen=True)
class SurfaceType:
    genus: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise ValueError("genus and punctures must be nonnegative")

    def __str__(self) -> str:
        return f"S_{{{self.genus},{self.punctures}}}"


@dataclass(frozen=True)
class McgInvariants:
    surface: SurfaceType
    vcd: int
    max_abelian_rank: int
    ranks_equal: bool
    theorem1_applies: bool
    finite: bool

    def to_dict(self) -> dict:
        return {
            "genus": self.surface.genus,
            "punctures": self.surface.punctures,
            "vcd": self.vcd,
            "max_abelian_rank": self.max_abelian_rank,
            "ranks_equal": self.ranks_equal,
            "theorem1_applies": self.theorem1_applies,
            "finite": self.finite,
        }


def mcg_is_finite(s: SurfaceType) -> bool:
    return s.genus == 0 and s.punctures <= 3


def mcg_vcd(s: SurfaceType) -> int:
    g, n = s.genus, s.punctures
    if g == 0:
        return max(n - 3, 0)
    if n == 0:
        return 1 if g == 1 else 4 * g - 5
    return 4 * g - 4 + n


def mcg_max_abelian_rank(s: SurfaceType) -> int:
    g, n = s.genus, s.punctures
    if mcg_is_finite(s):
        return 0
    if (g, n) == (1, 0):
        return 1
    return 3 * g - 3 + n


def mcg_ranks_equal_predicate(s: SurfaceType) -> bool:
    """The closed-form criterion for vcd = maximal abelian rank, independent of the formulas."""
    return s.genus in (0, 1) or (s.genus, s.punctures) == (2, 0)


def theorem1_applies(s: SurfaceType) -> bool:
    return 3 * s.genus + s.punctures >= 5


def mcg_invariants(s: SurfaceType) -> McgInvariants:
    return McgInvariants(
        surface=s,
        vcd=mcg_vcd(s),
        max_abelian_rank=mcg_max_abelian_rank(s),
        ranks_equal=mcg_ranks_equal_predicate(s),
        theorem1_applies=theorem1_applies(s),
        finite=mcg_is_finite(s),
    )


DIMENSION_VERDICT = "not commensurable with any RAAG: dimension obstruction (vcd ≠ max abelian rank)"
COMM_VERDICT = (
    "not commensurable with any RAAG: Comm obstruction "
    "(Main Lemma; Comm(Mod) has bounded finite subgroups)"
)
EXCEPTION_VERDICT = "exception: commensurable with a RAAG"

_DIMENSION_CITATIONS = (
    "Harer, Theorem 4.1: virtual cohomological dimension of Mod(S_{g,n})",
    "Birman-Lubotzky-McCarthy, Theorem A: maximal rank of free abelian subgroups of Mod(S_{g,n})",
)
_COMM_CITATIONS = (
    "Ivanov, Theorem 5; Korkmaz, Theorem 3: Comm(Mod) ≅ Mod^±",
    "Bell-Margalit, Proposition 7: Comm(Mod(S_{1,2})) ≅ Mod^±(S_{0,5})",
    "Irmak, Theorem 1.2: Comm(Mod(S_{2,0})) ≅ Mod^±(S_{0,6})",
    "Kerckhoff (Nielsen realization): finite subgroups of Mod^±(S) have bounded order",
    "Farb-Margalit primer, Section 3.3: Mod(S_{g,n}) is not virtually abelian",
)


def _comm_detail(s: SurfaceType) -> str:
    if (s.genus, s.punctures) == (1, 2):
        return "Comm(Mod(S_{1,2})) ≅ Mod^±(S_{0,5})"
    if (s.genus, s.punctures) == (2, 0):
        return "Comm(Mod(S_{2,0})) ≅ Mod^±(S_{0,6})"
    return f"Comm(Mod({s})) ≅ Mod^±({s})"


def obstruction_report(s: SurfaceType) -> dict:
    inv = mcg_invariants(s)
    report = {"surface": str(s), **inv.to_dict()}
    if inv.theorem1_applies and not inv.ranks_equal:
        report.update(
            kind="dimension",
            verdict=DIMENSION_VERDICT,
            detail=f"vcd = {inv.vcd} but the maximal free abelian rank is {inv.max_abelian_rank}; "
            "for a RAAG both equal the clique number",
            citations=list(_DIMENSION_CITATIONS),
        )
    elif inv.theorem1_applies:
        report.update(
            kind="comm",
            verdict=COMM_VERDICT,
            detail=f"{_comm_detail(s)} has finite subgroups of bounded order; "
            "Comm of a non-abelian RAAG contains (Z/2Z)^k for every k (see `raagkit certificate`)",
            citations=list(_COMM_CITATIONS),
        )
    elif inv.finite:
        report.update(
            kind="exception",
            verdict=EXCEPTION_VERDICT,
            commensurable_with="finite/trivial",
            detail=f"Mod({s}) is finite, hence abstractly commensurable with the trivial right-angled Artin group",
            citations=[],
        )
    else:
        known = {(1, 0): "Mod(S_{1,0}) ≅ SL_2(Z)", (1, 1): "Mod(S_{1,1}) ≅ SL_2(Z)",
                 (0, 4): "Mod(S_{0,4}) ≅ PSL_2(Z) ⋉ (Z/2Z × Z/2Z)"}
        report.update(
            kind="exception",
            verdict=EXCEPTION_VERDICT,
            commensurable_with="free group F_2",
            detail=f"{known[(s.genus, s.punctures)]} is commensurable with the free group F_2",
            citations=[],
        )
    return report


def format_report(report: dict) -> str:
    lines = [f"Mod({report['surface']}): {report['verdict']}"]
    lines.append(f"  vcd = {report['vcd']}, max abelian rank = {report['max_abelian_rank']}, "
                 f"3g+n >= 5: {'yes' if report['theorem1_applies'] else 'no'}")
    lines.append(f"  {report['detail']}")
    for c in report["citations"]:
        lines.append(f"  - {c}")
    return "\n".join(lines) + "\n"


def compare_raags(g1: DefiningGraph, g2: DefiningGraph) -> dict:
    """One-way test: different clique numbers (vcd) rule out commensurability."""
    c1, c2 = clique_number(g1), clique_number(g2)
    obstructed = c1 != c2
    return {
        "clique_numbers": [c1, c2],
        "verdict": "obstructed" if obstructed else "no obstruction found",
        "reason": f"vcd differs ({c1} vs {c2})" if obstructed else f"vcd agrees ({c1}); no claim of commensurability",
    }


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False)
