"""Dehn-twist words: normalization, cyclic reduction, prefixes, blocks.

A word is a finite product of integer powers of twists, stored as
``(curve, exponent)`` syllables in composition order.  Normalization merges
adjacent syllables on the same curve and drops anything that cancels to
exponent zero; it never reorders syllables, so the block structure the user
typed is preserved.  The empty word is legal everywhere and stands for the
identity mapping class.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import MalformedWord, UnknownCurve


@dataclass(frozen=True)
class Syllable:
    """One twist power ``curve^exponent``; the exponent is never zero."""

    curve: str
    exponent: int

    def __post_init__(self):
        if self.exponent == 0:
            raise MalformedWord(f"zero exponent on curve {self.curve!r}")

    def __str__(self) -> str:
        if self.exponent == 1:
            return self.curve
        return f"{self.curve}^{self.exponent}"


@dataclass(frozen=True)
class TwistWord:
    syllables: tuple[Syllable, ...] = ()
    normalized: bool = False

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def curves(self) -> list[str]:
        """Distinct curves in order of first appearance."""
        seen: list[str] = []
        for s in self.syllables:
            if s.curve not in seen:
                seen.append(s.curve)
        return seen

    def pairs(self) -> list[tuple[str, int]]:
        return [(s.curve, s.exponent) for s in self.syllables]

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.syllables) if self.syllables else "<identity>"


def word(items: Iterable[tuple[str, int]]) -> TwistWord:
    """Build a raw (unnormalized) word from ``(curve, exponent)`` pairs."""
    return TwistWord(tuple(Syllable(c, e) for c, e in items))


def parse_word(text: str) -> TwistWord:
    """Parse the CLI word syntax: whitespace-separated ``curve^exp`` tokens.

    An omitted exponent means 1.

    >>> parse_word("a^5 b^-7 a").pairs()
    [('a', 5), ('b', -7), ('a', 1)]
    >>> parse_word("").pairs()
    []
    """
    items: list[tuple[str, int]] = []
    for token in text.split():
        name, sep, exp = token.partition("^")
        if not name:
            raise MalformedWord(f"token {token!r} has no curve name")
        if sep:
            try:
                e = int(exp)
            except ValueError:
                raise MalformedWord(f"bad exponent in token {token!r}") from None
        else:
            e = 1
        if e == 0:
            raise MalformedWord(f"zero exponent in token {token!r}")
        items.append((name, e))
    return word(items)


def normalize(w: TwistWord) -> TwistWord:
    """Merge adjacent same-curve syllables and drop zero exponents.

    The result represents the same mapping class and is idempotent:

    >>> normalize(word([("a", 2), ("a", 3), ("b", 1)])).pairs()
    [('a', 5), ('b', 1)]
    >>> normalize(word([("a", 2), ("a", -2)])).pairs()
    []
    """
    if w.normalized:
        return w
    out: list[Syllable] = []
    for s in w.syllables:
        if out and out[-1].curve == s.curve:
            merged = out[-1].exponent + s.exponent
            out.pop()
            if merged != 0:
                out.append(Syllable(s.curve, merged))
        else:
            out.append(s)
    return TwistWord(tuple(out), normalized=True)


def cyclic_reduce(w: TwistWord) -> TwistWord:
    """Conjugate until the first and last syllables live on distinct curves.

    >>> cyclic_reduce(word([("a", 1), ("b", 2), ("a", 3)])).pairs()
    [('a', 4), ('b', 2)]
    >>> cyclic_reduce(word([("a", 1), ("b", 2), ("b", -2), ("a", -1)])).pairs()
    []
    """
    syl = list(normalize(w).syllables)
    while len(syl) >= 2 and syl[0].curve == syl[-1].curve:
        merged = syl[0].exponent + syl[-1].exponent
        curve = syl[0].curve
        syl = syl[1:-1]
        if merged != 0:
            syl.insert(0, Syllable(curve, merged))
        else:
            # ends cancelled entirely; interior may now expose a new pair
            syl = list(normalize(TwistWord(tuple(syl))).syllables)
    return TwistWord(tuple(syl), normalized=True)


def syllable_prefixes(w: TwistWord) -> list[TwistWord]:
    """All prefixes of the normalized word, identity first.

    >>> [len(p) for p in syllable_prefixes(word([("a", 3), ("b", -4)]))]
    [0, 1, 2]
    """
    syl = normalize(w).syllables
    return [TwistWord(syl[:i], normalized=True) for i in range(len(syl) + 1)]


@dataclass(frozen=True)
class BlockDecomposition:
    """Maximal runs of syllables whose curves share a multicurve.

    ``blocks`` holds ``(multicurve_id, (start, stop))`` with half-open syllable
    ranges over the normalized word; adjacent blocks always carry distinct
    identifiers and the ranges tile the whole word.
    """

    word: TwistWord
    blocks: tuple[tuple[str, tuple[int, int]], ...]

    @property
    def ids(self) -> list[str]:
        return [b[0] for b in self.blocks]

    def syllables_of(self, index: int) -> tuple[Syllable, ...]:
        start, stop = self.blocks[index][1]
        return self.word.syllables[start:stop]

    def __len__(self) -> int:
        return len(self.blocks)


def block_decompose(w: TwistWord, partition: Mapping[str, str]) -> BlockDecomposition:
    """Split the normalized word into maximal same-multicurve blocks.

    ``partition`` maps each curve to its multicurve identifier; a curve the
    partition does not know raises :class:`UnknownCurve`.
    """
    nw = normalize(w)
    blocks: list[tuple[str, tuple[int, int]]] = []
    start = 0
    current: str | None = None
    for i, s in enumerate(nw.syllables):
        if s.curve not in partition:
            raise UnknownCurve(f"curve {s.curve!r} is not in the multicurve partition")
        mc = partition[s.curve]
        if mc != current:
            if current is not None:
                blocks.append((current, (start, i)))
            current, start = mc, i
    if current is not None:
        blocks.append((current, (start, len(nw.syllables))))
    return BlockDecomposition(nw, tuple(blocks))
