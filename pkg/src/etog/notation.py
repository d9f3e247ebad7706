"""Parsing and formatting of group specs and element literals.

Group spec grammar (ASCII, whitespace-tolerant)::

    int | zlex(<d>) | free(<g1>,<g2>,...) | inv(<spec>) | prod(<spec>,<spec>)

Element literal grammar::

    e                    identity of any group
    3                    integer
    (1,0,-1)             lexicographic vector
    a b^-1 a             free word, space-separated letters
    [<elem>;<elem>]      product pair
"""

from __future__ import annotations

import re

from .errors import NotationError
from .groups import (
    FreeGroup,
    FreeWord,
    Integers,
    InverseOrder,
    LexProduct,
    LexVectors,
    OrderedGroup,
    reduce_word,
)

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def _split_top(text: str, separator: str) -> list[str]:
    """Split on a separator that is not nested inside (), [] pairs."""
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise NotationError(f"unbalanced brackets in {text!r}")
        if ch == separator and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise NotationError(f"unbalanced brackets in {text!r}")
    parts.append("".join(current))
    return parts


def _inner(text: str, head: str) -> str:
    if not text.endswith(")"):
        raise NotationError(f"missing closing parenthesis in {text!r}")
    return text[len(head) : -1]


def parse_group(text: str) -> OrderedGroup:
    """Parse a group spec string into an ordered-group object."""
    text = text.strip()
    if text == "int":
        return Integers()
    if text.startswith("zlex(") and text.endswith(")"):
        body = _inner(text, "zlex(").strip()
        try:
            dim = int(body)
        except ValueError:
            raise NotationError(f"zlex dimension is not an integer: {body!r}") from None
        if dim < 1:
            raise NotationError("zlex dimension must be >= 1")
        return LexVectors(dim)
    if text.startswith("free(") and text.endswith(")"):
        names = [n.strip() for n in _inner(text, "free(").split(",")]
        if names == [""]:
            raise NotationError("free group needs at least one generator")
        for name in names:
            if not _NAME_RE.match(name):
                raise NotationError(f"bad generator name: {name!r}")
            if name == "e":
                raise NotationError("generator name 'e' collides with the identity literal")
        if len(set(names)) != len(names):
            raise NotationError("duplicate generator name")
        return FreeGroup(tuple(names))
    if text.startswith("inv(") and text.endswith(")"):
        return InverseOrder(parse_group(_inner(text, "inv(")))
    if text.startswith("prod(") and text.endswith(")"):
        parts = _split_top(_inner(text, "prod("), ",")
        if len(parts) != 2:
            raise NotationError("prod(...) takes exactly two specs")
        return LexProduct(parse_group(parts[0]), parse_group(parts[1]))
    raise NotationError(f"unrecognised group spec: {text!r}")


def format_group(spec: OrderedGroup) -> str:
    if isinstance(spec, Integers):
        return "int"
    if isinstance(spec, LexVectors):
        return f"zlex({spec.dim})"
    if isinstance(spec, FreeGroup):
        return f"free({','.join(spec.generators)})"
    if isinstance(spec, InverseOrder):
        return f"inv({format_group(spec.inner)})"
    if isinstance(spec, LexProduct):
        return f"prod({format_group(spec.left)},{format_group(spec.right)})"
    raise NotationError(f"unknown spec object: {spec!r}")


def _parse_letter(token: str) -> tuple[str, int]:
    if token.endswith("^-1"):
        return token[:-3], -1
    if token.endswith("^1"):
        return token[:-2], 1
    if "^" in token:
        raise NotationError(f"bad letter exponent in {token!r} (only ^-1 allowed)")
    return token, 1


def parse_element(spec: OrderedGroup, text: str):
    """Parse an element literal under the given spec."""
    text = text.strip()
    if not text:
        raise NotationError("empty element literal")
    if text == "e":
        return spec.identity()
    if isinstance(spec, Integers):
        try:
            return int(text)
        except ValueError:
            raise NotationError(f"not an integer literal: {text!r}") from None
    if isinstance(spec, LexVectors):
        if not (text.startswith("(") and text.endswith(")")):
            raise NotationError(f"vector literal must look like (1,0,-1): {text!r}")
        body = text[1:-1].strip()
        entries = [p.strip() for p in body.split(",")] if body else []
        try:
            values = tuple(int(p) for p in entries)
        except ValueError:
            raise NotationError(f"non-integer vector entry in {text!r}") from None
        if len(values) != spec.dim:
            raise NotationError(
                f"vector has {len(values)} entries, spec needs {spec.dim}"
            )
        return values
    if isinstance(spec, FreeGroup):
        letters = []
        for token in text.split():
            symbol, exponent = _parse_letter(token)
            if symbol == "e":
                raise NotationError("'e' cannot appear inside a word literal")
            letters.append((symbol, exponent))
        try:
            return reduce_word(letters, spec.generators)
        except Exception as exc:
            raise NotationError(str(exc)) from None
    if isinstance(spec, InverseOrder):
        return parse_element(spec.inner, text)
    if isinstance(spec, LexProduct):
        if not (text.startswith("[") and text.endswith("]")):
            raise NotationError(f"product literal must look like [x;y]: {text!r}")
        parts = _split_top(text[1:-1], ";")
        if len(parts) != 2:
            raise NotationError("product literal takes exactly two components")
        return (
            parse_element(spec.left, parts[0]),
            parse_element(spec.right, parts[1]),
        )
    raise NotationError(f"cannot parse element for spec {spec!r}")


def format_element(spec: OrderedGroup, element) -> str:
    spec.validate(element)
    if isinstance(spec, Integers):
        return str(element)
    if isinstance(spec, LexVectors):
        return "(" + ",".join(str(a) for a in element) + ")"
    if isinstance(spec, FreeGroup):
        word: FreeWord = element
        if word.is_identity:
            return "e"
        return " ".join(s if e > 0 else f"{s}^-1" for s, e in word.letters)
    if isinstance(spec, InverseOrder):
        return format_element(spec.inner, element)
    if isinstance(spec, LexProduct):
        return (
            "["
            + format_element(spec.left, element[0])
            + ";"
            + format_element(spec.right, element[1])
            + "]"
        )
    raise NotationError(f"unknown spec object: {spec!r}")
