"""Checkers for the laws the condition layer is built on.

Everything here returns a :class:`CheckResult` (or a list of them) instead of
raising, so the CLI can collect verdicts and the acceptance suite can assert
on them.  All sampling is driven by an explicit ``random.Random`` so runs are
reproducible; every result records the budget it was established under.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .conditions import EtogCondition, UPWord, Valuation, up_member_oracle
from .groups import (
    FreeGroup,
    FreeWord,
    Integers,
    InverseOrder,
    LexProduct,
    LexVectors,
    OrderedGroup,
    Ordering,
    magnus_expand,
    multiply,
)

Word = tuple[str, ...]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    counterexample: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" counterexample: {self.counterexample}" if self.counterexample else ""
        return f"CHECK {self.name} {status} {self.detail}{tail}"


# ---------------------------------------------------------------------------
# word enumeration and sampling helpers


def words_up_to(alphabet: Sequence[str], max_len: int) -> Iterable[Word]:
    """All words over the alphabet with 1 <= length <= max_len."""
    for length in range(1, max_len + 1):
        yield from itertools.product(alphabet, repeat=length)


def random_word(rng: random.Random, alphabet: Sequence[str], max_len: int, min_len: int = 0) -> Word:
    length = rng.randint(min_len, max_len)
    return tuple(rng.choice(alphabet) for _ in range(length))


def random_reduced_word(rng: random.Random, generators: Sequence[str], max_len: int) -> FreeWord:
    """Uniform-ish random reduced word of length <= max_len."""
    length = rng.randint(0, max_len)
    letters: list[tuple[str, int]] = []
    while len(letters) < length:
        candidate = (rng.choice(list(generators)), rng.choice((1, -1)))
        if letters and letters[-1][0] == candidate[0] and letters[-1][1] == -candidate[1]:
            continue
        letters.append(candidate)
    return FreeWord(tuple(letters))


def sample_element(spec: OrderedGroup, rng: random.Random, max_len: int = 6):
    if isinstance(spec, Integers):
        return rng.randint(-9, 9)
    if isinstance(spec, LexVectors):
        return tuple(rng.randint(-4, 4) for _ in range(spec.dim))
    if isinstance(spec, FreeGroup):
        return random_reduced_word(rng, spec.generators, max_len)
    if isinstance(spec, InverseOrder):
        return sample_element(spec.inner, rng, max_len)
    if isinstance(spec, LexProduct):
        return (
            sample_element(spec.left, rng, max_len),
            sample_element(spec.right, rng, max_len),
        )
    raise TypeError(f"no sampler for {spec!r}")


# ---------------------------------------------------------------------------
# the standard test-suite valuations


def standard_valuations() -> dict[str, Valuation]:
    """The fixed valuations every law is exercised against.

    ``int`` and ``zlex2`` use four-letter alphabets; ``free`` maps the five
    colors eps, a, a^-1, b, b^-1 to the like-named elements of the ordered
    free group on a, b, and ``inv-free`` is the same valuation under the
    reversed order.
    """
    free_group = FreeGroup(("a", "b"))
    free_map = {
        "eps": FreeWord(),
        "a": FreeWord((("a", 1),)),
        "a^-1": FreeWord((("a", -1),)),
        "b": FreeWord((("b", 1),)),
        "b^-1": FreeWord((("b", -1),)),
    }
    free_colors = ("eps", "a", "a^-1", "b", "b^-1")
    return {
        "int": Valuation(
            ("x", "y", "z", "w"),
            Integers(),
            {"x": -1, "y": 1, "z": 0, "w": 2},
        ),
        "zlex2": Valuation(
            ("c", "d", "u", "v"),
            LexVectors(2),
            {"c": (0, 1), "d": (-1, 0), "u": (1, -1), "v": (0, 0)},
        ),
        "free": Valuation(free_colors, free_group, free_map),
        "inv-free": Valuation(free_colors, InverseOrder(free_group), free_map),
    }


def negative_word_predicate(valuation: Valuation) -> Callable[[Word], bool]:
    """The predicate 'this word's value is negative', with memoisation."""
    cache: dict[Word, bool] = {}

    def predicate(word: Word) -> bool:
        word = tuple(word)
        hit = cache.get(word)
        if hit is None:
            hit = valuation.group.is_negative(valuation.val_word(word))
            cache[word] = hit
        return hit

    return predicate


# ---------------------------------------------------------------------------
# closure of a word set and its complement under concatenation / cyclic shift


def check_closure(
    predicate: Callable[[Word], bool],
    alphabet: Sequence[str],
    max_len: int,
    name: str = "closure",
) -> CheckResult:
    """Exhaustively verify concatenation and cyclic-shift closure.

    For all non-empty u, v with |u|+|v| <= max_len the set defined by the
    predicate and its complement must both be closed under concatenation, and
    for every word up to max_len the predicate must be constant on its cyclic
    shifts.  Returns the first counterexample if any.
    """
    detail = f"exhaustive up to length {max_len} over {len(alphabet)} colors"
    by_length: list[list[Word]] = [[]]
    table: dict[Word, bool] = {}
    for length in range(1, max_len + 1):
        bucket = list(itertools.product(alphabet, repeat=length))
        by_length.append(bucket)
        for word in bucket:
            table[word] = predicate(word)
    for word, value in table.items():
        for cut in range(1, len(word)):
            shifted = word[cut:] + word[:cut]
            if table[shifted] != value:
                return CheckResult(
                    name,
                    False,
                    detail,
                    f"cyclic shift changes membership: {' '.join(word)} vs {' '.join(shifted)}",
                )
    for len_u in range(1, max_len):
        for len_v in range(1, max_len - len_u + 1):
            for u in by_length[len_u]:
                in_u = table[u]
                for v in by_length[len_v]:
                    joined = table[u + v]
                    if in_u and table[v] and not joined:
                        return CheckResult(
                            name, False, detail,
                            f"set not closed under concatenation: {' '.join(u)} | {' '.join(v)}",
                        )
                    if not in_u and not table[v] and joined:
                        return CheckResult(
                            name, False, detail,
                            f"complement not closed under concatenation: {' '.join(u)} | {' '.join(v)}",
                        )
    return CheckResult(name, True, detail)


def factor_into_blocks(
    predicate: Callable[[Word], bool], word: Sequence[str]
) -> tuple[bool, tuple[int, ...] | None]:
    """Can the word be cut into one or more predicate-satisfying blocks?

    Dynamic programming over cut positions; returns (True, cuts) with the
    witness cut positions 0 = c0 < c1 < ... < ck = len(word), or (False, None).
    """
    word = tuple(word)
    n = len(word)
    if n == 0:
        return False, None
    back: list[int | None] = [None] * (n + 1)
    reachable = [False] * (n + 1)
    reachable[0] = True
    for end in range(1, n + 1):
        for start in range(0, end):
            if reachable[start] and predicate(word[start:end]):
                reachable[end] = True
                back[end] = start
                break
    if not reachable[n]:
        return False, None
    cuts = [n]
    while cuts[-1] != 0:
        cuts.append(back[cuts[-1]])  # type: ignore[arg-type]
    return True, tuple(reversed(cuts))


# ---------------------------------------------------------------------------
# the three mixing laws, restricted to ultimately periodic instances


def check_fairly_mixing(
    member: Callable[[UPWord], bool],
    alphabet: Sequence[str],
    rng: random.Random,
    samples: int = 1000,
    max_len: int = 4,
) -> list[CheckResult]:
    """Sample-based checker for the three mixing laws.

    All instances are ultimately periodic, so membership stays decidable:

    * (A) prefix invariance: gluing a finite prefix never changes membership
      (checked as an equality, which implies the prefix-transfer implication
      in both directions and actually detects prefix-dependent conditions);
    * (B) for S the condition or its complement: if x^omega and alpha both lie
      in S then x.alpha does too;
    * (C) interleavings built from finitely many head blocks followed by an
      alternating tail pair (u, v), so all three interleavings are ultimately
      periodic.

    This is a bounded checker, not a decision procedure: law (C) quantifies
    over arbitrary infinite block sequences which no finite search covers.
    """
    alphabet = list(alphabet)

    def up(prefix_max: int = max_len) -> UPWord:
        return UPWord(
            random_word(rng, alphabet, prefix_max),
            random_word(rng, alphabet, max_len, min_len=1),
        )

    results = []

    hits = 0
    failure = None
    for _ in range(samples):
        x = random_word(rng, alphabet, max_len)
        alpha = up()
        glued = UPWord(x + alpha.prefix, alpha.period)
        hits += 1
        if member(glued) != member(alpha):
            failure = (
                f"prefix {' '.join(x) or '(empty)'} changes membership of "
                f"[{' '.join(alpha.prefix)} | {' '.join(alpha.period)}]"
            )
            break
    results.append(
        CheckResult("fairly-mixing.A", failure is None, f"samples={samples} max-len={max_len}", failure)
    )

    hits = 0
    failure = None
    for _ in range(samples):
        x = random_word(rng, alphabet, max_len, min_len=1)
        alpha = up()
        mx = member(UPWord((), x))
        ma = member(alpha)
        if mx != ma:
            continue
        hits += 1
        if member(UPWord(x + alpha.prefix, alpha.period)) != mx:
            failure = (
                f"x={' '.join(x)} alpha=[{' '.join(alpha.prefix)} | {' '.join(alpha.period)}]"
            )
            break
    results.append(
        CheckResult(
            "fairly-mixing.B",
            failure is None,
            f"samples={samples} hypothesis-hits={hits} max-len={max_len}",
            failure,
        )
    )

    hits = 0
    failure = None
    for _ in range(samples):
        heads = [
            random_word(rng, alphabet, max_len, min_len=1)
            for _ in range(2 * rng.randint(0, 2))
        ]
        u = random_word(rng, alphabet, max_len, min_len=1)
        v = random_word(rng, alphabet, max_len, min_len=1)
        odd_heads = tuple(c for w in heads[0::2] for c in w)
        even_heads = tuple(c for w in heads[1::2] for c in w)
        all_heads = tuple(c for w in heads for c in w)
        odd = UPWord(odd_heads, u)
        even = UPWord(even_heads, v)
        full = UPWord(all_heads, u + v)
        pieces = heads + [u, v]
        for target in (True, False):
            if member(odd) != target or member(even) != target:
                continue
            if any(member(UPWord((), piece)) != target for piece in pieces):
                continue
            hits += 1
            if member(full) != target:
                rendered = [" ".join(w) for w in heads]
                failure = (
                    f"heads={rendered} u={' '.join(u)} v={' '.join(v)} "
                    f"interleavings in S={target} but the merge is not"
                )
                break
        if failure:
            break
    results.append(
        CheckResult(
            "fairly-mixing.C",
            failure is None,
            f"samples={samples} hypothesis-hits={hits} max-len={max_len}",
            failure,
        )
    )
    return results


# ---------------------------------------------------------------------------
# invariant sub-semigroup induced by a valuation


def check_invariant_subsemigroup(
    valuation: Valuation | None = None,
    max_len: int = 4,
    membership: Callable[[FreeWord], bool] | None = None,
    colors: Sequence[str] | None = None,
    name: str = "invariant-subsemigroup",
) -> CheckResult:
    """Check S = {group words with non-negative value} over the color alphabet.

    Enumerates every reduced word over the colors and their formal inverses up
    to ``max_len`` and verifies, exhaustively: closure of S under
    multiplication, closure of S under conjugation by arbitrary enumerated
    words, and that every word or its inverse lies in S.

    With a ``valuation``, membership of a word depends only on its image value
    (the valuation extends to a homomorphism with val(c^-1) = val(c)^-1), so
    the pair scans run over distinct values while counterexamples are reported
    as witness words.  A raw ``membership`` predicate skips that quotient and
    scans words directly.
    """
    if (valuation is None) == (membership is None):
        raise ValueError("pass exactly one of valuation / membership")
    if valuation is not None:
        colors = valuation.colors
    if not colors:
        raise ValueError("need a color alphabet")
    detail = f"exhaustive up to length {max_len} over {len(colors)} colors"

    # reduced words over colors + formal inverses, breadth-first
    words: list[FreeWord] = [FreeWord()]
    frontier: list[FreeWord] = [FreeWord()]
    letters = [(c, 1) for c in colors] + [(c, -1) for c in colors]
    for _ in range(max_len):
        nxt = []
        for word in frontier:
            for letter in letters:
                if word.letters and word.letters[-1] == (letter[0], -letter[1]):
                    continue
                nxt.append(FreeWord(word.letters + (letter,)))
        words.extend(nxt)
        frontier = nxt

    def render(word: FreeWord) -> str:
        if word.is_identity:
            return "e"
        return " ".join(s if e > 0 else f"{s}^-1" for s, e in word.letters)

    if membership is not None:
        in_s = {w: membership(w) for w in words}
        for g in words:
            if not in_s[g] and not in_s.get(g.inverse(), membership(g.inverse())):
                return CheckResult(
                    name, False, detail,
                    f"neither {render(g)} nor its inverse is in the set",
                )
        members = [w for w in words if in_s[w]]
        for x in members:
            for y in members:
                if not membership(multiply(x, y)):
                    return CheckResult(
                        name, False, detail,
                        f"product escapes the set: ({render(x)}) ({render(y)})",
                    )
        for g in words:
            for x in members:
                conj = multiply(multiply(g, x), g.inverse())
                if not membership(conj):
                    return CheckResult(
                        name, False, detail,
                        f"conjugate escapes the set: g={render(g)} x={render(x)}",
                    )
        return CheckResult(name, True, detail)

    group = valuation.group
    identity = group.identity()

    def value_of(word: FreeWord):
        value = identity
        for color, exponent in word.letters:
            image = valuation.value_of(color)
            if exponent < 0:
                image = group.invert(image)
            value = group.compose(value, image)
        return value

    # quotient by image value: membership factors through the homomorphism
    representative: dict[object, FreeWord] = {}
    for word in words:
        value = value_of(word)
        if value not in representative:
            representative[value] = word
    signs = {
        value: group.compare(value, identity) for value in representative
    }
    nonneg = [v for v, s in signs.items() if s is not Ordering.LESS]

    for value, word in representative.items():
        inverse_value = group.invert(value)
        if signs[value] is Ordering.LESS and group.compare(
            inverse_value, identity
        ) is Ordering.LESS:
            return CheckResult(
                name, False, detail,
                f"neither {render(word)} nor its inverse lands in S",
            )
    for v1 in nonneg:
        for v2 in nonneg:
            if group.compare(group.compose(v1, v2), identity) is Ordering.LESS:
                return CheckResult(
                    name, False, detail,
                    "product escapes S: "
                    f"({render(representative[v1])}) ({render(representative[v2])})",
                )
    for gv in representative:
        gv_inv = group.invert(gv)
        for xv in nonneg:
            conj = group.compose(group.compose(gv, xv), gv_inv)
            if group.compare(conj, identity) is Ordering.LESS:
                return CheckResult(
                    name, False, detail,
                    "conjugate escapes S: "
                    f"g={render(representative[gv])} x={render(representative[xv])}",
                )
    return CheckResult(name, True, detail)


# ---------------------------------------------------------------------------
# order axioms


def order_axiom_battery(
    spec: OrderedGroup,
    rng: random.Random,
    samples: int = 10_000,
    max_word_len: int = 6,
) -> list[CheckResult]:
    """Randomised check of the total-order and bi-invariance laws.

    Each sample draws four elements and exercises: result totality plus swap
    consistency, equality exactly on trivial quotients, transitivity on the
    sampled triple, invariance under two-sided translation, and closure of the
    positive cone under products and conjugation.
    """
    identity = spec.identity()
    failures: dict[str, str | None] = {
        "totality": None,
        "antisymmetry-identity": None,
        "transitivity": None,
        "bi-invariance": None,
        "cone-product": None,
        "cone-conjugation": None,
    }

    def note(check: str, message: str) -> None:
        if failures[check] is None:
            failures[check] = message

    for _ in range(samples):
        x = sample_element(spec, rng, max_word_len)
        y = sample_element(spec, rng, max_word_len)
        z = sample_element(spec, rng, max_word_len)
        g = sample_element(spec, rng, max_word_len)

        c_xy = spec.compare(x, y)
        c_yx = spec.compare(y, x)
        if not isinstance(c_xy, Ordering) or c_yx is not c_xy.flipped():
            note("totality", f"compare({x!r},{y!r})={c_xy} but swapped gives {c_yx}")

        trivial = spec.compose(x, spec.invert(y)) == identity
        if (c_xy is Ordering.EQUAL) != trivial:
            note("antisymmetry-identity", f"x={x!r} y={y!r} compare={c_xy}")

        c_yz = spec.compare(y, z)
        c_xz = spec.compare(x, z)
        if c_xy is not Ordering.GREATER and c_yz is not Ordering.GREATER:
            if c_xz is Ordering.GREATER:
                note("transitivity", f"x={x!r} y={y!r} z={z!r}")
        if c_xy is not Ordering.LESS and c_yz is not Ordering.LESS:
            if c_xz is Ordering.LESS:
                note("transitivity", f"x={x!r} y={y!r} z={z!r}")

        low, high = (x, y) if c_xy is not Ordering.GREATER else (y, x)
        translated = spec.compare(
            spec.compose(spec.compose(g, low), z),
            spec.compose(spec.compose(g, high), z),
        )
        if translated is Ordering.GREATER:
            note("bi-invariance", f"low={low!r} high={high!r} g={g!r} h={z!r}")

        if spec.compare(x, identity) is Ordering.GREATER:
            if spec.compare(y, identity) is Ordering.GREATER:
                if spec.compare(spec.compose(x, y), identity) is not Ordering.GREATER:
                    note("cone-product", f"x={x!r} y={y!r}")
            conj = spec.compose(spec.compose(g, x), spec.invert(g))
            if spec.compare(conj, identity) is not Ordering.GREATER:
                note("cone-conjugation", f"x={x!r} g={g!r}")

    detail = f"samples={samples} max-word-len={max_word_len}"
    return [
        CheckResult(f"order-axioms.{check}", message is None, detail, message)
        for check, message in failures.items()
    ]


def magnus_soundness(generators: Sequence[str], max_len: int) -> CheckResult:
    """Every non-identity reduced word of length <= max_len must expose a
    non-zero non-constant coefficient when expanded at its own length."""
    gens = tuple(generators)
    letters = [(g, 1) for g in gens] + [(g, -1) for g in gens]
    frontier: list[FreeWord] = [FreeWord()]
    checked = 0
    for _ in range(max_len):
        nxt = []
        for word in frontier:
            for letter in letters:
                if word.letters and word.letters[-1] == (letter[0], -letter[1]):
                    continue
                grown = FreeWord(word.letters + (letter,))
                nxt.append(grown)
                series = magnus_expand(grown, len(grown.letters))
                checked += 1
                if not any(mono for mono in series.coefficients if mono):
                    return CheckResult(
                        "magnus-soundness",
                        False,
                        f"words up to length {max_len}",
                        f"no usable coefficient for {grown!r}",
                    )
        frontier = nxt
    return CheckResult(
        "magnus-soundness", True, f"all {checked} reduced words up to length {max_len}"
    )


# ---------------------------------------------------------------------------
# aggregated battery (shared by the CLI and the acceptance suite)


def full_check_battery(
    seed: int,
    order_samples: int = 10_000,
    closure_max_len: int = 6,
    fm_samples: int = 1_000,
    subsemigroup_max_len: int = 4,
    per_law_max_period: int = 3,
    inject_fault: bool = False,
) -> list[CheckResult]:
    """Run every law checker at the given budgets.

    ``inject_fault`` swaps two monomials in the free-group comparison scan;
    the battery is expected to fail (bi-invariance in particular), which
    demonstrates that the checks can actually see a broken order.
    """
    rng = random.Random(seed)
    results: list[CheckResult] = []
    suite = standard_valuations()

    free_spec = FreeGroup(("a", "b"), misorder_fault=inject_fault)
    results.extend(order_axiom_battery(free_spec, rng, order_samples))
    for label, spec in (
        ("int", Integers()),
        ("zlex2", LexVectors(2)),
        ("inv-free", InverseOrder(FreeGroup(("a", "b")))),
        ("prod-int-int", LexProduct(Integers(), Integers())),
    ):
        for result in order_axiom_battery(spec, rng, max(order_samples // 10, 100)):
            result.name = f"{result.name}.{label}"
            results.append(result)

    results.append(magnus_soundness(("a", "b"), max_len=5))

    for label, valuation in suite.items():
        predicate = negative_word_predicate(valuation)
        results.append(
            check_closure(
                predicate, valuation.colors, closure_max_len, name=f"closure.{label}"
            )
        )

    for label, valuation in suite.items():
        cond = EtogCondition(valuation)
        mismatch = None
        count = 0
        for period in words_up_to(valuation.colors, per_law_max_period):
            count += 1
            word = UPWord((), period)
            expected = up_member_oracle(cond, word, horizon=50 * len(period))
            if cond.up_member(word) != expected:
                mismatch = " ".join(period)
                break
        results.append(
            CheckResult(
                f"per-law.oracle-equivalence.{label}",
                mismatch is None,
                f"all {count} periods up to length {per_law_max_period}, horizon 50x period",
                mismatch,
            )
        )

    for label, valuation in suite.items():
        cond = EtogCondition(valuation)
        for result in check_fairly_mixing(
            cond.up_member, valuation.colors, rng, samples=fm_samples
        ):
            result.name = f"{result.name}.{label}"
            results.append(result)

    results.append(
        check_invariant_subsemigroup(
            suite["free"], max_len=subsemigroup_max_len, name="invariant-subsemigroup.free"
        )
    )
    return results
