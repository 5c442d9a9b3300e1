"""Words in a right-angled Artin group and their canonical normal form.

A word is a tuple of :class:`Letter`.  Words are never reduced implicitly;
reduction happens in :func:`reduce_word` and :func:`normal_form` only.

The normal form works on the heap (dependence poset) of a reduced word: two
letters are dependent when they sit on the same vertex or on non-adjacent
vertices.  Reduced words for the same element differ only by swapping
adjacent commuting letters, so any deterministic linearization of the heap
is canonical.  We emit left-greedily: take the front-movable letter on the
earliest vertex in declaration order, then keep emitting further letters on
that vertex while they are front-movable, so syllables ``x^k`` stay together.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from raagkit.errors import UnknownVertexError, WordParseError
from raagkit.graph import DefiningGraph


class Letter(NamedTuple):
    vertex: str
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.vertex, -self.sign)

    def __str__(self) -> str:
        return self.vertex if self.sign > 0 else f"{self.vertex}^-1"


Word = tuple  # tuple[Letter, ...]

_TOKEN = re.compile(r"^([^\s^]+)(?:\^(-?\d+))?$")


def power(v: str, k: int) -> Word:
    """The word ``v^k`` written out as |k| letters."""
    sign = 1 if k >= 0 else -1
    return (Letter(v, sign),) * abs(k)


def word(*parts) -> Word:
    """Build a word from labels, ``(label, exponent)`` pairs, Letters or words.

    >>> word("a", ("b", -1))
    (Letter(vertex='a', sign=1), Letter(vertex='b', sign=-1))
    """
    out: list[Letter] = []
    for p in parts:
        if isinstance(p, Letter):
            out.append(p)
        elif isinstance(p, str):
            out.append(Letter(p, 1))
        elif isinstance(p, tuple) and len(p) == 2 and isinstance(p[0], str):
            out.extend(power(p[0], p[1]))
        else:
            out.extend(p)
    return tuple(out)


def parse_word(text: str) -> Word:
    """Parse whitespace separated tokens ``x``, ``x^-1`` or ``x^k``."""
    out: list[Letter] = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if m is None:
            raise WordParseError(f"malformed token {tok!r}")
        label, exp = m.group(1), m.group(2)
        out.extend(power(label, int(exp) if exp is not None else 1))
    return tuple(out)


def format_word(w: Sequence[Letter]) -> str:
    return " ".join(map(str, w))


def inverse_word(w: Sequence[Letter]) -> Word:
    return tuple(x.inverse() for x in reversed(w))


def check_word(g: DefiningGraph, w: Iterable[Letter]) -> None:
    for x in w:
        if x.vertex not in g:
            raise UnknownVertexError(x.vertex)
        if x.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {x.sign}")


def reduce_word(g: DefiningGraph, w: Sequence[Letter]) -> Word:
    """Delete cancelling pairs separated only by commuting letters, to a fixed point.

    Letters are appended one at a time to an already reduced prefix.  A new
    letter can only cancel against the last letter on its vertex that can be
    shuffled to the end of the prefix, so one backwards scan per letter is
    enough.
    """
    check_word(g, w)
    out: list[Letter] = []
    for x in w:
        j = _cancelling_index(g, out, x)
        if j is None:
            out.append(x)
        else:
            del out[j]
    return tuple(out)


def _cancelling_index(g: DefiningGraph, prefix: list[Letter], x: Letter) -> int | None:
    for j in range(len(prefix) - 1, -1, -1):
        y = prefix[j]
        if y.vertex == x.vertex:
            return j if y.sign == -x.sign else None
        if not g.adjacent(x.vertex, y.vertex):
            return None
    return None


def normal_form(g: DefiningGraph, w: Sequence[Letter]) -> Word:
    reduced = reduce_word(g, w)
    n = len(reduced)
    later: list[list[int]] = [[] for _ in range(n)]
    waiting = [0] * n
    for j in range(n):
        vj = reduced[j].vertex
        for i in range(j):
            vi = reduced[i].vertex
            if vi == vj or not g.adjacent(vi, vj):
                later[i].append(j)
                waiting[j] += 1
    ready = {i for i in range(n) if waiting[i] == 0}
    out: list[Letter] = []

    def emit(i):
        ready.discard(i)
        out.append(reduced[i])
        for j in later[i]:
            waiting[j] -= 1
            if waiting[j] == 0:
                ready.add(j)

    while ready:
        i = min(ready, key=lambda k: g.index(reduced[k].vertex))
        v = reduced[i].vertex
        emit(i)
        while True:
            # at most one letter per vertex is front-movable at a time
            nxt = next((k for k in ready if reduced[k].vertex == v), None)
            if nxt is None:
                break
            emit(nxt)
    return tuple(out)


def words_equal(g: DefiningGraph, w1: Sequence[Letter], w2: Sequence[Letter]) -> bool:
    return normal_form(g, w1) == normal_form(g, w2)


def is_trivial(g: DefiningGraph, w: Sequence[Letter]) -> bool:
    return not reduce_word(g, w)


def commutator(w1: Sequence[Letter], w2: Sequence[Letter]) -> Word:
    """``w1 w2 w1^-1 w2^-1`` by concatenation, unreduced."""
    return tuple(w1) + tuple(w2) + inverse_word(w1) + inverse_word(w2)


def abelianize(g: DefiningGraph, w: Sequence[Letter]) -> tuple[int, ...]:
    """Exponent-sum vector, coordinates in vertex declaration order."""
    check_word(g, w)
    vec = [0] * len(g)
    for x in w:
        vec[g.index(x.vertex)] += x.sign
    return tuple(vec)


@dataclass(frozen=True)
class CyclicCharacter:
    """The map ``A(G) -> Z/mZ`` sending ``distinguished`` to 1 and all other generators to 0."""

    graph: DefiningGraph
    distinguished: str
    modulus: int

    def __post_init__(self):
        self.graph.index(self.distinguished)
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")


def character_image(chi: CyclicCharacter, w: Sequence[Letter]) -> int:
    check_word(chi.graph, w)
    return sum(x.sign for x in w if x.vertex == chi.distinguished) % chi.modulus
