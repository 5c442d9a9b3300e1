"""Finite simple graphs used as presentation data for right-angled Artin groups.

A graph ``G`` with vertices ``V`` and edges ``E`` presents the group with one
generator per vertex and one commutator relator per edge.  Vertices are string
labels; their declaration order is kept and used wherever a coordinate order
is needed (abelianization vectors, normal forms).  Wherever a "least" vertex
is asked for, labels are compared lexicographically.

Text format::

    # comment
    vertices a b c
    edge a b
    edge b c
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from raagkit.errors import GraphError, GraphParseError, UnknownVertexError

# '@' is reserved for labels generated by the gluing construction,
# '^' for exponents in the word syntax.
RESERVED_CHARS = "@^"


def _check_label(label: str) -> None:
    if not isinstance(label, str) or not label:
        raise GraphError(f"vertex label must be a nonempty string, got {label!r}")
    if any(ch.isspace() for ch in label):
        raise GraphError(f"vertex label {label!r} contains whitespace")
    if "^" in label:
        raise GraphError(f"vertex label {label!r} contains '^'")


@dataclass(frozen=True)
class DefiningGraph:
    """An immutable finite simple graph.

    ``edges`` is a frozenset of 2-element frozensets.  Construct with
    :meth:`from_edges` when starting from pairs.
    """

    vertices: tuple[str, ...]
    edges: frozenset = frozenset()
    _adj: Mapping[str, frozenset] = field(init=False, repr=False, compare=False)
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vertices = tuple(self.vertices)
        for label in vertices:
            _check_label(label)
        if len(set(vertices)) != len(vertices):
            seen = set()
            dup = next(v for v in vertices if v in seen or seen.add(v))
            raise GraphError(f"duplicate vertex {dup!r}")
        vset = set(vertices)
        adj: dict[str, set] = {v: set() for v in vertices}
        edges = frozenset(frozenset(e) for e in self.edges)
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"loop edge on {sorted(e)[0]!r}")
            u, w = sorted(e)
            for x in (u, w):
                if x not in vset:
                    raise GraphError(f"edge {u}-{w} references undeclared vertex {x!r}")
            adj[u].add(w)
            adj[w].add(u)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_adj", {v: frozenset(n) for v, n in adj.items()})
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(vertices)})

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()) -> "DefiningGraph":
        pairs = []
        for u, w in edges:
            if u == w:
                raise GraphError(f"loop edge on {u!r}")
            pairs.append(frozenset((u, w)))
        return cls(tuple(vertices), frozenset(pairs))

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertexError(v) from None

    def neighbors(self, v: str) -> frozenset:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertexError(v) from None

    def adjacent(self, u: str, w: str) -> bool:
        return w in self.neighbors(u)

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def edge_list(self) -> list[tuple[str, str]]:
        """Edges as pairs, sorted by declaration order of their endpoints."""
        pairs = [tuple(sorted(e, key=self._index.__getitem__)) for e in self.edges]
        return sorted(pairs, key=lambda p: (self._index[p[0]], self._index[p[1]]))

    def induced_subgraph(self, keep: Iterable[str]) -> "DefiningGraph":
        keep = set(keep)
        for v in keep:
            self.index(v)
        verts = tuple(v for v in self.vertices if v in keep)
        return DefiningGraph(verts, frozenset(e for e in self.edges if e <= keep))

    def relabel(self, mapping: Mapping[str, str]) -> "DefiningGraph":
        return DefiningGraph(
            tuple(mapping[v] for v in self.vertices),
            frozenset(frozenset(mapping[x] for x in e) for e in self.edges),
        )

    def to_text(self) -> str:
        lines = ["vertices " + " ".join(self.vertices)]
        lines += [f"edge {u} {w}" for u, w in self.edge_list()]
        return "\n".join(lines) + "\n"

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f'  "{v}";' for v in self.vertices]
        lines += [f'  "{u}" -- "{w}";' for u, w in self.edge_list()]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(p) for p in self.edge_list()]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "DefiningGraph":
        try:
            vertices = data["vertices"]
            edges = data["edges"]
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph record: {exc}") from None
        if not isinstance(vertices, list) or not isinstance(edges, list):
            raise GraphError("malformed graph record: vertices/edges must be lists")
        pairs = []
        for e in edges:
            if not isinstance(e, list) or len(e) != 2:
                raise GraphError(f"malformed edge {e!r}")
            pairs.append(tuple(e))
        if len(set(frozenset(p) for p in pairs)) != len(pairs):
            raise GraphError("duplicate edge in graph record")
        return cls.from_edges(vertices, pairs)


def parse_graph(text: str) -> DefiningGraph:
    """Parse the line-based graph format.  Errors carry the offending line number."""
    vertices: list[str] | None = None
    seen: set[str] = set()
    edges: set[frozenset] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, *args = line.split()
        if keyword == "vertices":
            if vertices is not None:
                raise GraphParseError("second 'vertices' line", lineno)
            vertices = []
            for label in args:
                if label in seen:
                    raise GraphParseError(f"duplicate vertex label {label!r}", lineno)
                if any(ch in label for ch in RESERVED_CHARS):
                    raise GraphParseError(f"vertex label {label!r} uses a reserved character", lineno)
                seen.add(label)
                vertices.append(label)
        elif keyword == "edge":
            if vertices is None:
                raise GraphParseError("'edge' before 'vertices' line", lineno)
            if len(args) != 2:
                raise GraphParseError(f"edge needs exactly two endpoints, got {len(args)}", lineno)
            u, w = args
            for x in (u, w):
                if x not in seen:
                    raise GraphParseError(f"edge references undeclared vertex {x!r}", lineno)
            if u == w:
                raise GraphParseError(f"loop edge on {u!r}", lineno)
            e = frozenset((u, w))
            if e in edges:
                raise GraphParseError(f"duplicate edge {u} {w}", lineno)
            edges.add(e)
        else:
            raise GraphParseError(f"malformed line: {raw!r}", lineno)
    if vertices is None:
        raise GraphParseError("missing 'vertices' line")
    return DefiningGraph(tuple(vertices), frozenset(edges))


def star(g: DefiningGraph, v: str) -> frozenset:
    return g.neighbors(v) | {v}


def link(g: DefiningGraph, v: str) -> frozenset:
    return g.neighbors(v)


def is_complete(g: DefiningGraph) -> bool:
    n = len(g)
    return len(g.edges) == n * (n - 1) // 2


def splitting_vertex(g: DefiningGraph) -> str | None:
    """Least-labeled vertex whose star is not the whole graph, or None if ``g`` is complete."""
    n = len(g)
    candidates = [v for v in g.vertices if g.degree(v) + 1 != n]
    return min(candidates) if candidates else None


def cone_vertices(g: DefiningGraph) -> frozenset:
    n = len(g)
    return frozenset(v for v in g.vertices if g.degree(v) == n - 1)


def maximal_cliques(g: DefiningGraph):
    """Yield the maximal cliques of ``g`` (Bron–Kerbosch with Tomita pivoting)."""
    if not g.vertices:
        return
    adj = {v: set(g.neighbors(v)) for v in g.vertices}

    def expand(r, p, x):
        if not p and not x:
            yield frozenset(r)
            return
        pivot = max(p | x, key=lambda u: (len(adj[u] & p), u))
        for v in sorted(p - adj[pivot]):
            yield from expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    yield from expand(set(), set(g.vertices), set())


def clique_number(g: DefiningGraph) -> int:
    return max((len(c) for c in maximal_cliques(g)), default=0)


def _refine_colors(graphs: list[DefiningGraph]) -> list[dict[str, int]]:
    # 1-dimensional Weisfeiler-Leman, run jointly so colors are comparable
    colors = [{v: g.degree(v) for v in g.vertices} for g in graphs]
    while True:
        sigs = [
            {v: (col[v], tuple(sorted(col[u] for u in g.neighbors(v)))) for v in g.vertices}
            for g, col in zip(graphs, colors)
        ]
        palette = {s: i for i, s in enumerate(sorted({s for sig in sigs for s in sig.values()}))}
        new = [{v: palette[s] for v, s in sig.items()} for sig in sigs]
        if all(len(set(n.values())) == len(set(c.values())) for n, c in zip(new, colors)):
            return new
        colors = new


def are_isomorphic(g1: DefiningGraph, g2: DefiningGraph) -> dict[str, str] | None:
    """Return a vertex bijection ``g1 -> g2`` preserving adjacency, or None.

    Backtracks over ``g1`` vertices in declaration order, trying ``g2``
    candidates of the same refined color in declaration order, so the
    result is deterministic.
    """
    if len(g1) != len(g2) or len(g1.edges) != len(g2.edges):
        return None
    if sorted(map(g1.degree, g1.vertices)) != sorted(map(g2.degree, g2.vertices)):
        return None
    c1, c2 = _refine_colors([g1, g2])
    if sorted(c1.values()) != sorted(c2.values()):
        return None
    order = sorted(g1.vertices, key=lambda v: (sum(1 for u in g1.vertices if c1[u] == c1[v]), g1.index(v)))
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in g2.vertices:
            if w in used or c2[w] != c1[v]:
                continue
            if all(g1.adjacent(v, u) == g2.adjacent(w, mapping[u]) for u in mapping):
                mapping[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    if not extend(0):
        return None
    return {v: mapping[v] for v in g1.vertices}


# Small named graphs, mostly for tests and examples.

def complete_graph(n: int, prefix: str = "") -> DefiningGraph:
    labels = _labels(n, prefix)
    return DefiningGraph.from_edges(labels, combinations(labels, 2))


def edgeless_graph(n: int, prefix: str = "") -> DefiningGraph:
    return DefiningGraph(tuple(_labels(n, prefix)))


def path_graph(n: int, prefix: str = "") -> DefiningGraph:
    labels = _labels(n, prefix)
    return DefiningGraph.from_edges(labels, zip(labels, labels[1:]))


def cycle_graph(n: int, prefix: str = "") -> DefiningGraph:
    labels = _labels(n, prefix)
    pairs = list(zip(labels, labels[1:]))
    if n >= 3:
        pairs.append((labels[-1], labels[0]))
    return DefiningGraph.from_edges(labels, pairs)


def _labels(n: int, prefix: str) -> list[str]:
    if not prefix and n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"{prefix or 'v'}{i}" for i in range(n)]
