"""Valuations, winning conditions, and membership for ultimately periodic words.

A valuation maps a finite color alphabet into an ordered group and extends to
finite words as a homomorphism.  An energy condition accepts an infinite word
when the sequence of its prefix values has an infinite decreasing subsequence;
a union condition accepts when any member does.  Membership is implemented for
ultimately periodic words only: every play induced by finite-state strategies
on a finite arena is of that shape, and there membership is decided by the
sign of the period's value (the prefix is irrelevant because the conditions
are prefix-independent).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import NotationError, UnknownColorError
from .groups import Integers, InverseOrder, LexProduct, LexVectors, OrderedGroup, Ordering
from .notation import parse_element, parse_group

Word = tuple[str, ...]


def as_word(text_or_seq) -> Word:
    """Coerce 'a b c' or an iterable of color names into a word tuple."""
    if isinstance(text_or_seq, str):
        return tuple(text_or_seq.split())
    return tuple(text_or_seq)


@dataclass(frozen=True)
class Valuation:
    """Map from a color alphabet into an ordered group."""

    colors: tuple[str, ...]
    group: OrderedGroup
    mapping: Mapping[str, object]

    def __post_init__(self) -> None:
        if not self.colors:
            raise ValueError("color alphabet must be non-empty")
        if len(set(self.colors)) != len(self.colors):
            raise ValueError("duplicate color")
        if set(self.mapping) != set(self.colors):
            raise ValueError("valuation must assign exactly one image per color")
        for color in self.colors:
            self.group.validate(self.mapping[color])

    def value_of(self, color: str):
        try:
            return self.mapping[color]
        except KeyError:
            raise UnknownColorError(f"unknown color {color!r}") from None

    def val_word(self, word: Sequence[str]):
        """Homomorphic extension; the empty word maps to the identity."""
        value = self.group.identity()
        for color in word:
            value = self.group.compose(value, self.value_of(color))
        return value

    def prefix_sums(self, word: Sequence[str]) -> list:
        """Values of the length-1 ... length-n prefixes."""
        out = []
        value = self.group.identity()
        for color in word:
            value = self.group.compose(value, self.value_of(color))
            out.append(value)
        return out


@dataclass(frozen=True)
class UPWord:
    """Ultimately periodic word: ``prefix . period^omega``."""

    prefix: Word
    period: Word

    def __post_init__(self) -> None:
        if not self.period:
            raise ValueError("period must be non-empty")

    @classmethod
    def make(cls, prefix, period) -> "UPWord":
        return cls(as_word(prefix), as_word(period))


@dataclass(frozen=True)
class EtogCondition:
    """Energy condition over the valuation's ordered group."""

    valuation: Valuation

    @property
    def colors(self) -> tuple[str, ...]:
        return self.valuation.colors

    def up_member(self, word: UPWord) -> bool:
        """Membership of an ultimately periodic word.

        True exactly when the period's value is negative; the prefix is
        validated but ignored (prefix-independence).
        """
        for color in word.prefix:
            self.valuation.value_of(color)
        return self.valuation.group.is_negative(self.valuation.val_word(word.period))


@dataclass(frozen=True)
class UnionCondition:
    """Finite union of energy conditions over one shared color alphabet."""

    members: tuple[EtogCondition, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("union needs at least one member")
        first = self.members[0].colors
        for member in self.members[1:]:
            if set(member.colors) != set(first):
                raise ValueError("union members must share one color alphabet")

    @property
    def colors(self) -> tuple[str, ...]:
        return self.members[0].colors

    def up_member(self, word: UPWord) -> bool:
        return any(member.up_member(word) for member in self.members)


def up_member_oracle(cond: EtogCondition, word: UPWord, horizon: int) -> bool:
    """Brute-force membership check used only as a test oracle.

    Scans the prefix values s_1..s_H of the repeated period (H = ``horizon``
    letters) for a strictly decreasing pair (i, j) with j - i a multiple of
    the period length: such a pair recurs forever and certifies an infinite
    decreasing subsequence, while an unaligned single decrease does not.

    Two prefix indices at distance k periods differ by the value of a chunk of
    k consecutive periods, and that chunk word depends only on (i mod p, k).
    s_j = s_i * value(chunk), so the pair descends exactly when the chunk's
    value is negative (left-invariance of the order, which the order-axiom
    suite checks separately); the scan below therefore walks the distinct
    (offset, gap) chunks instead of materialising every quadratic pair.
    """
    period = word.period
    p = len(period)
    if horizon < 2 * p:
        raise ValueError("horizon must cover at least two full periods")
    group = cond.valuation.group
    identity = group.identity()
    for offset in range(p):
        # smallest 1-based prefix index in this residue class
        first_index = offset if offset >= 1 else p
        max_gap = (horizon - first_index) // p
        if max_gap < 1:
            continue
        shifted = period[offset:] + period[:offset]
        chunk = cond.valuation.val_word(shifted)
        acc = identity
        for _gap in range(1, max_gap + 1):
            acc = group.compose(acc, chunk)
            if group.compare(acc, identity) is Ordering.LESS:
                return True
    return False


def parity_condition(priorities: int) -> EtogCondition:
    """The max-parity condition on colors '1'..'d' as an energy condition.

    Color k maps to the lexicographic vector with (-1)^k in the coordinate
    that ranks priority k (higher priorities in more significant positions),
    so a period is accepted exactly when the highest priority it repeats is
    odd.
    """
    if priorities < 1:
        raise ValueError("need at least one priority")
    group = LexVectors(priorities)
    mapping = {}
    for k in range(1, priorities + 1):
        vec = [0] * priorities
        vec[priorities - k] = (-1) ** k
        mapping[str(k)] = tuple(vec)
    colors = tuple(str(k) for k in range(1, priorities + 1))
    return EtogCondition(Valuation(colors, group, mapping))


def strictify(valuation: Valuation) -> Valuation:
    """Push a valuation into ``group x int`` so non-empty words never map to 0.

    Every color picks up a second coordinate of 1.  Lexicographic order keeps
    the negative-word set unchanged, while any word that used to sit exactly
    on the identity becomes strictly positive.
    """
    group = LexProduct(valuation.group, Integers())
    mapping = {c: (valuation.mapping[c], 1) for c in valuation.colors}
    return Valuation(valuation.colors, group, mapping)


def parse_valuation(text: str) -> Valuation:
    """Parse the line-based valuation format.

    First meaningful line ``group <spec>``, then one ``val <color> = <elem>``
    line per color; ``#`` starts a comment.
    """
    group: OrderedGroup | None = None
    colors: list[str] = []
    mapping: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split(None, 1)
        if tokens[0] == "group":
            if group is not None:
                raise NotationError(f"line {lineno}: duplicate group line")
            if len(tokens) != 2:
                raise NotationError(f"line {lineno}: group line needs a spec")
            group = parse_group(tokens[1])
            continue
        if tokens[0] == "val":
            if group is None:
                raise NotationError(f"line {lineno}: 'group <spec>' must come first")
            rest = tokens[1] if len(tokens) == 2 else ""
            if "=" not in rest:
                raise NotationError(f"line {lineno}: expected 'val <color> = <element>'")
            color_part, literal = rest.split("=", 1)
            color = color_part.strip()
            if not color or " " in color:
                raise NotationError(f"line {lineno}: bad color name {color_part!r}")
            if color in mapping:
                raise NotationError(f"line {lineno}: duplicate color {color!r}")
            colors.append(color)
            mapping[color] = parse_element(group, literal)
            continue
        raise NotationError(f"line {lineno}: unrecognised directive {tokens[0]!r}")
    if group is None:
        raise NotationError("valuation file has no 'group' line")
    if not colors:
        raise NotationError("valuation file defines no colors")
    return Valuation(tuple(colors), group, mapping)


def load_valuation(path: str) -> Valuation:
    with open(path, "r", encoding="ascii") as handle:
        return parse_valuation(handle.read())


def _flatten(cond) -> tuple[EtogCondition, ...]:
    if isinstance(cond, EtogCondition):
        return (cond,)
    return cond.members


def parse_condition(text: str, base_dir: str | None = None):
    """Parse a condition spec string.

    ``etog(<valuation-file>)`` builds an energy condition from the file,
    ``inv-etog(<valuation-file>)`` the same valuation under the inverse order,
    and ``union(<cond>,<cond>)`` the union of two condition specs.  Relative
    file paths resolve against ``base_dir``.
    """
    from .notation import _split_top  # shared bracket-aware splitter

    text = text.strip()
    for head, invert in (("etog(", False), ("inv-etog(", True)):
        if text.startswith(head) and text.endswith(")"):
            path = text[len(head) : -1].strip()
            if base_dir is not None and not os.path.isabs(path):
                path = os.path.join(base_dir, path)
            valuation = load_valuation(path)
            if invert:
                valuation = Valuation(
                    valuation.colors, InverseOrder(valuation.group), valuation.mapping
                )
            return EtogCondition(valuation)
    if text.startswith("union(") and text.endswith(")"):
        parts = _split_top(text[len("union(") : -1], ",")
        if len(parts) != 2:
            raise NotationError("union(...) takes exactly two condition specs")
        left = parse_condition(parts[0], base_dir)
        right = parse_condition(parts[1], base_dir)
        return UnionCondition(_flatten(left) + _flatten(right))
    raise NotationError(f"unrecognised condition spec: {text!r}")


def describe_condition(cond) -> str:
    """Short human-readable description used in CLI reports."""
    if isinstance(cond, EtogCondition):
        from .notation import format_group

        return f"energy condition over {format_group(cond.valuation.group)}"
    return " u ".join(describe_condition(m) for m in cond.members)
