"""Finite arenas, strategies, lasso evaluation and game solving.

Arenas are two-player edge-colored graphs; every node has an outgoing edge so
plays never get stuck.  Strategies are positional (one fixed edge per owned
node) or finite-memory Mealy machines updated on every observed edge.  A play
of two finite-state strategies is eventually periodic, so it is returned as a
lasso (stem + cycle) whose cycle decides membership.

``solve_energy_game`` enumerates positional strategies for both players, which
is exact for single energy conditions: both the condition and its complement
admit positional optimal strategies, so nothing is lost by the restriction.
For unions of energy conditions no such restriction holds (that failure is the
point of the refutation experiment), so ``verify_union_strategy`` only offers
an honestly bounded verdict against all opponent machines up to a given
memory size.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .conditions import UPWord
from .errors import (
    ArenaError,
    DuplicateNodeError,
    MissingOutgoingEdgeError,
    UnknownColorError,
    UnknownEndpointError,
)
from .groups import FreeWord, multiply


class Player(enum.Enum):
    ALICE = "Alice"
    BOB = "Bob"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Edge:
    source: str
    color: str
    target: str
    index: int  # position in the arena's declaration order


@dataclass(frozen=True)
class Arena:
    alice_nodes: tuple[str, ...]
    bob_nodes: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for node in self.alice_nodes + self.bob_nodes:
            if node in seen:
                raise DuplicateNodeError(f"node {node!r} declared twice")
            seen.add(node)
        outgoing: dict[str, list[Edge]] = {node: [] for node in seen}
        for edge in self.edges:
            if edge.source not in seen:
                raise UnknownEndpointError(f"edge source {edge.source!r} not declared")
            if edge.target not in seen:
                raise UnknownEndpointError(f"edge target {edge.target!r} not declared")
            outgoing[edge.source].append(edge)
        for node, edges in outgoing.items():
            if not edges:
                raise MissingOutgoingEdgeError(f"node {node!r} has no outgoing edge")
        object.__setattr__(self, "_outgoing", {n: tuple(es) for n, es in outgoing.items()})

    @property
    def nodes(self) -> tuple[str, ...]:
        return self.alice_nodes + self.bob_nodes

    @property
    def colors(self) -> frozenset[str]:
        return frozenset(edge.color for edge in self.edges)

    def owner(self, node: str) -> Player:
        return Player.ALICE if node in self.alice_nodes else Player.BOB

    def out_edges(self, node: str) -> tuple[Edge, ...]:
        return self._outgoing[node]  # type: ignore[attr-defined]


def parse_arena(text: str, alphabet: Iterable[str] | None = None) -> Arena:
    """Parse the line-based arena format.

    ``node <name> <A|B>`` declares a node, ``edge <src> <color> <dst>`` an
    edge; ``#`` starts a comment.  When ``alphabet`` is given, edge colors
    outside it are rejected.
    """
    known_colors = frozenset(alphabet) if alphabet is not None else None
    alice: list[str] = []
    bob: list[str] = []
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "node":
            if len(tokens) != 3 or tokens[2] not in ("A", "B"):
                raise ArenaError(f"line {lineno}: expected 'node <name> <A|B>'")
            (alice if tokens[2] == "A" else bob).append(tokens[1])
        elif tokens[0] == "edge":
            if len(tokens) != 4:
                raise ArenaError(f"line {lineno}: expected 'edge <src> <color> <dst>'")
            color = tokens[2]
            if known_colors is not None and color not in known_colors:
                raise UnknownColorError(f"line {lineno}: unknown color {color!r}")
            edges.append(Edge(tokens[1], color, tokens[3], len(edges)))
        else:
            raise ArenaError(f"line {lineno}: unrecognised directive {tokens[0]!r}")
    return Arena(tuple(alice), tuple(bob), tuple(edges))


def load_arena(path: str, alphabet: Iterable[str] | None = None) -> Arena:
    with open(path, "r", encoding="ascii") as handle:
        return parse_arena(handle.read(), alphabet)


@dataclass(frozen=True)
class PositionalStrategy:
    """One fixed outgoing edge per owned node."""

    owner: Player
    choice: Mapping[str, Edge]

    def initial_state(self):
        return None

    def move(self, state, node: str) -> Edge:
        edge = self.choice[node]
        if edge.source != node:
            raise ArenaError(f"strategy picks an edge not leaving {node!r}")
        return edge

    def advance(self, state, edge: Edge):
        return None


@dataclass(frozen=True)
class MealyStrategy:
    """Finite-memory strategy: a move per (state, owned node), updated on
    every observed edge (both players' moves drive the update)."""

    owner: Player
    states: tuple
    initial: object
    moves: Mapping[tuple[object, str], Edge]
    updates: Mapping[tuple[object, Edge], object]

    def initial_state(self):
        return self.initial

    def move(self, state, node: str) -> Edge:
        try:
            edge = self.moves[(state, node)]
        except KeyError:
            raise ArenaError(f"no move for state {state!r} at node {node!r}") from None
        if edge.source != node:
            raise ArenaError(f"strategy picks an edge not leaving {node!r}")
        return edge

    def advance(self, state, edge: Edge):
        try:
            return self.updates[(state, edge)]
        except KeyError:
            raise ArenaError(f"no update for state {state!r} on edge {edge.index}") from None


Strategy = PositionalStrategy | MealyStrategy


@dataclass(frozen=True)
class Lasso:
    """Stem plus cycle of an eventually periodic play."""

    stem: tuple[Edge, ...]
    cycle: tuple[Edge, ...]

    @property
    def stem_colors(self) -> tuple[str, ...]:
        return tuple(edge.color for edge in self.stem)

    @property
    def cycle_colors(self) -> tuple[str, ...]:
        return tuple(edge.color for edge in self.cycle)

    def up_word(self) -> UPWord:
        return UPWord(self.stem_colors, self.cycle_colors)


def play_lasso(arena: Arena, start: str, alice: Strategy, bob: Strategy) -> Lasso:
    """Simulate the unique play of a strategy pair until the joint state
    (node, Alice state, Bob state) repeats; deterministic."""
    if start not in arena.nodes:
        raise ArenaError(f"unknown start node {start!r}")
    node = start
    a_state = alice.initial_state()
    b_state = bob.initial_state()
    seen: dict[tuple, int] = {}
    path: list[Edge] = []
    while True:
        joint = (node, a_state, b_state)
        if joint in seen:
            cut = seen[joint]
            return Lasso(tuple(path[:cut]), tuple(path[cut:]))
        seen[joint] = len(path)
        mover = alice if arena.owner(node) is Player.ALICE else bob
        edge = mover.move(a_state if mover is alice else b_state, node)
        a_state = alice.advance(a_state, edge)
        b_state = bob.advance(b_state, edge)
        path.append(edge)
        node = edge.target


def positional_strategies(arena: Arena, owner: Player) -> list[PositionalStrategy]:
    """All positional strategies of one player, in lexicographic order over
    (node declaration order, edge declaration order)."""
    nodes = arena.alice_nodes if owner is Player.ALICE else arena.bob_nodes
    pools = [arena.out_edges(node) for node in nodes]
    strategies = []
    for combo in itertools.product(*pools) if nodes else [()]:
        strategies.append(PositionalStrategy(owner, dict(zip(nodes, combo))))
    return strategies


@dataclass
class Solution:
    winners: dict[str, Player]
    alice_strategy: PositionalStrategy
    bob_strategy: PositionalStrategy


def solve_energy_game(arena: Arena, cond) -> Solution:
    """Exact solver for a single energy condition by positional enumeration.

    Alice wins from a node when some positional strategy of hers defeats every
    positional reply; the returned witnesses are the first strategies in
    enumeration order that win uniformly on their player's whole winning
    region (such uniform witnesses exist because the condition and its
    complement are both positionally determined).
    """
    from .conditions import EtogCondition, UnionCondition

    if isinstance(cond, UnionCondition):
        raise ValueError(
            "union conditions have no exact positional solver; "
            "use verify_union_strategy for a bounded verdict"
        )
    if not isinstance(cond, EtogCondition):
        raise TypeError(f"expected an energy condition, got {type(cond).__name__}")
    missing = arena.colors - set(cond.colors)
    if missing:
        raise UnknownColorError(f"arena colors outside the condition alphabet: {sorted(missing)}")

    sigmas = positional_strategies(arena, Player.ALICE)
    taus = positional_strategies(arena, Player.BOB)
    member_cache: dict[tuple[str, ...], bool] = {}

    def lasso_member(start: str, sigma, tau) -> bool:
        cycle = play_lasso(arena, start, sigma, tau).cycle_colors
        hit = member_cache.get(cycle)
        if hit is None:
            hit = cond.up_member(UPWord((), cycle))
            member_cache[cycle] = hit
        return hit

    wins_by_sigma = []
    for sigma in sigmas:
        wins_by_sigma.append(
            {
                start
                for start in arena.nodes
                if all(lasso_member(start, sigma, tau) for tau in taus)
            }
        )
    alice_region = set().union(*wins_by_sigma) if wins_by_sigma else set()
    wins_by_tau = []
    for tau in taus:
        wins_by_tau.append(
            {
                start
                for start in arena.nodes
                if not any(lasso_member(start, sigma, tau) for sigma in sigmas)
            }
        )
    bob_region = set(arena.nodes) - alice_region

    winners = {
        node: Player.ALICE if node in alice_region else Player.BOB
        for node in arena.nodes
    }
    alice_witness = next(
        (s for s, region in zip(sigmas, wins_by_sigma) if region == alice_region), None
    )
    bob_witness = next(
        (t for t, region in zip(taus, wins_by_tau) if region == bob_region), None
    )
    if alice_witness is None or bob_witness is None:
        # cannot happen for an energy condition; means the condition is not
        # positionally determined after all
        raise RuntimeError("no uniform positional witness exists")
    return Solution(winners, alice_witness, bob_witness)


@dataclass
class UnionVerdict:
    """Outcome of the bounded verification of an Alice strategy.

    ``wins_within_bound`` only speaks about opponents with at most
    ``bob_memory_bound`` states; it is not a proof over all strategies.
    """

    wins_within_bound: bool
    bob_memory_bound: int
    machines_checked: int
    beating_strategy: MealyStrategy | None = None
    beating_lasso: Lasso | None = None


def verify_union_strategy(
    arena: Arena, cond, start: str, alice: Strategy, bob_memory_bound: int
) -> UnionVerdict:
    """Test an Alice strategy against every Bob machine with few states.

    Enumerates Bob Mealy strategies with at most ``bob_memory_bound`` states
    up to extensionality on reachable joint states: decisions are branched
    lazily the first time a (state, node) move or (state, edge) update is
    actually needed, and fresh states are introduced in canonical order, so
    no two enumerated machines behave identically on the induced play.
    Returns the first beating machine in that order, if any.
    """
    if bob_memory_bound < 1:
        raise ValueError("bob_memory_bound must be >= 1")
    if start not in arena.nodes:
        raise ArenaError(f"unknown start node {start!r}")
    missing = arena.colors - set(cond.colors)
    if missing:
        raise UnknownColorError(f"arena colors outside the condition alphabet: {sorted(missing)}")

    moves: dict[tuple[int, str], Edge] = {}
    updates: dict[tuple[int, Edge], int] = {}
    stats = {"machines": 0}

    def complete_machine(used: int) -> MealyStrategy:
        # unreached entries are irrelevant; fill them deterministically
        full_moves = dict(moves)
        full_updates = dict(updates)
        for state in range(used):
            for node in arena.bob_nodes:
                full_moves.setdefault((state, node), arena.out_edges(node)[0])
            for edge in arena.edges:
                full_updates.setdefault((state, edge), state)
        return MealyStrategy(
            Player.BOB, tuple(range(used)), 0, full_moves, full_updates
        )

    def explore(used: int) -> UnionVerdict | None:
        node = start
        a_state = alice.initial_state()
        b_state = 0
        seen: dict[tuple, int] = {}
        path: list[Edge] = []
        while True:
            joint = (node, a_state, b_state)
            if joint in seen:
                stats["machines"] += 1
                cut = seen[joint]
                lasso = Lasso(tuple(path[:cut]), tuple(path[cut:]))
                if not cond.up_member(lasso.up_word()):
                    return UnionVerdict(
                        False,
                        bob_memory_bound,
                        stats["machines"],
                        complete_machine(used),
                        lasso,
                    )
                return None
            seen[joint] = len(path)
            if arena.owner(node) is Player.ALICE:
                edge = alice.move(a_state, node)
            else:
                key = (b_state, node)
                if key not in moves:
                    for option in arena.out_edges(node):
                        moves[key] = option
                        verdict = explore(used)
                        del moves[key]
                        if verdict is not None:
                            return verdict
                    return None
                edge = moves[key]
            update_key = (b_state, edge)
            if update_key not in updates:
                candidates = list(range(used))
                if used < bob_memory_bound:
                    candidates.append(used)  # canonical fresh state
                for target in candidates:
                    updates[update_key] = target
                    verdict = explore(max(used, target + 1))
                    del updates[update_key]
                    if verdict is not None:
                        return verdict
                return None
            b_state = updates[update_key]
            a_state = alice.advance(a_state, edge)
            path.append(edge)
            node = edge.target

    verdict = explore(1)
    if verdict is not None:
        return verdict
    return UnionVerdict(True, bob_memory_bound, stats["machines"])


def alternating_strategy(arena: Arena, node: str) -> MealyStrategy:
    """Two-state Alice strategy that alternates the first two edges of one
    node (her other nodes keep their first declared edge)."""
    options = arena.out_edges(node)
    if len(options) < 2:
        raise ArenaError(f"node {node!r} needs two outgoing edges to alternate")
    moves: dict[tuple[object, str], Edge] = {}
    updates: dict[tuple[object, Edge], object] = {}
    for state, pick in (("first", options[0]), ("second", options[1])):
        moves[(state, node)] = pick
        for other in arena.alice_nodes:
            if other != node:
                moves[(state, other)] = arena.out_edges(other)[0]
        for edge in arena.edges:
            if edge.source == node:
                updates[(state, edge)] = "second" if state == "first" else "first"
            else:
                updates[(state, edge)] = state
    return MealyStrategy(Player.ALICE, ("first", "second"), "first", moves, updates)


@dataclass
class DistinctnessReport:
    paths: int
    passed: bool
    counterexample: str | None = None


def ramsey_distinct_check(depth: int) -> DistinctnessReport:
    """Check the hypothesis feeding the infinite-Ramsey step of the refutation.

    For every sign pattern in {+1,-1}^(2*depth) the partial products
    a^(e1), a^(e1) b^(d1), a^(e1) b^(d1) a^(e2), ... must be pairwise distinct
    non-identity reduced words: alternating generators never cancel, so every
    opponent behaviour against the alternating strategy produces infinitely
    many distinct partial values.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    generators = ("a", "b")
    paths = 0
    for signs in itertools.product((1, -1), repeat=2 * depth):
        paths += 1
        word = FreeWord()
        seen: set[FreeWord] = set()
        for position, sign in enumerate(signs):
            word = multiply(word, FreeWord(((generators[position % 2], sign),)))
            if word.is_identity:
                return DistinctnessReport(paths, False, f"identity at step {position + 1} of {signs}")
            if word in seen:
                return DistinctnessReport(paths, False, f"repeat at step {position + 1} of {signs}")
            seen.add(word)
    return DistinctnessReport(paths, True)
