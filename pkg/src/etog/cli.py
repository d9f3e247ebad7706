"""Command-line front end.

Subcommands: compare, membership, solve, check, counterexample.  Reports are
printed both as human-readable text and, with --machine, as greppable
``CHECK <name> PASS|FAIL <detail>`` lines.  Output is a pure function of the
arguments, input files and seed; the exit code is 0 exactly when every
requested verdict passes.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass, field
from importlib import resources

from . import games, laws
from .conditions import (
    EtogCondition,
    UnionCondition,
    UPWord,
    describe_condition,
    parse_condition,
)
from .errors import EtogError
from .groups import Ordering
from .laws import CheckResult
from .notation import format_element, parse_element, parse_group

DEFAULT_SEED = 0


@dataclass
class RunReport:
    command: str
    inputs: dict[str, str]
    verdicts: list[CheckResult] = field(default_factory=list)
    duration_s: float = 0.0

    @property
    def all_passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def render(self, machine: bool) -> str:
        lines = []
        if not machine:
            lines.append(f"command: {self.command}")
            for key, value in self.inputs.items():
                lines.append(f"  {key}: {value}")
        for verdict in self.verdicts:
            lines.append(verdict.line())
        if not machine:
            lines.append(f"elapsed: {self.duration_s:.2f}s")
        return "\n".join(lines)


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("ETOG_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise EtogError(f"ETOG_SEED is not an integer: {env!r}") from None
    return DEFAULT_SEED


def _data_path(name: str) -> str:
    return str(resources.files("etog").joinpath("data", name))


def shipped_arena_path() -> str:
    return _data_path("refutation_arena.txt")


def shipped_valuation_path() -> str:
    return _data_path("free_valuation.txt")


# ---------------------------------------------------------------------------
# subcommands


def cmd_compare(args) -> int:
    spec = parse_group(args.spec)
    left = parse_element(spec, args.left)
    right = parse_element(spec, args.right)
    print(spec.compare(left, right))
    return 0


def cmd_membership(args) -> int:
    cond = parse_condition(args.cond, base_dir=os.getcwd())
    word = UPWord.make(args.prefix or "", args.period)
    member = cond.up_member(word)
    members = cond.members if isinstance(cond, UnionCondition) else (cond,)
    lines = []
    for i, part in enumerate(members):
        valuation = part.valuation
        value = valuation.val_word(word.period)
        sign = valuation.group.compare(value, valuation.group.identity())
        rendered = format_element(valuation.group, value)
        lines.append(
            f"  member {i}: period value = {rendered}, sign = {sign}, "
            f"member = {part.up_member(word)}"
        )
    verdict = "member" if member else "non-member"
    if args.machine:
        print(f"RESULT membership {verdict}")
    else:
        print(f"condition: {describe_condition(cond)}")
        print(f"period: {' '.join(word.period)}")
        for line in lines:
            print(line)
        print(verdict)
    return 0


def cmd_solve(args) -> int:
    cond = parse_condition(args.cond, base_dir=os.getcwd())
    if isinstance(cond, UnionCondition):
        print(
            "solve handles single energy conditions only; unions of energy\n"
            "conditions need not admit positional winners -- use the\n"
            "'counterexample' command for the bounded union experiment",
            file=sys.stderr,
        )
        return 2
    arena = games.load_arena(args.arena, alphabet=cond.colors)
    solution = games.solve_energy_game(arena, cond)
    for node in arena.nodes:
        print(f"node {node}: {solution.winners[node]}")
    print("witness (Alice):")
    for node, edge in sorted(solution.alice_strategy.choice.items()):
        print(f"  {node} -> {edge.index}")
    print("witness (Bob):")
    for node, edge in sorted(solution.bob_strategy.choice.items()):
        print(f"  {node} -> {edge.index}")
    return 0


def build_refutation_setup():
    """The shipped 3-node arena plus the union of the two mutually inverse
    free-group energy conditions over it."""
    with open(shipped_valuation_path(), "r", encoding="ascii") as handle:
        text = handle.read()
    from .conditions import Valuation, parse_valuation
    from .groups import InverseOrder

    valuation = parse_valuation(text)
    straight = EtogCondition(valuation)
    reverse = EtogCondition(
        Valuation(valuation.colors, InverseOrder(valuation.group), valuation.mapping)
    )
    union = UnionCondition((straight, reverse))
    arena = games.load_arena(shipped_arena_path(), alphabet=valuation.colors)
    return arena, union, valuation


def run_counterexample(bob_memory: int, ramsey_depth: int) -> RunReport:
    """Reproduce the refutation experiment on the shipped arena.

    Both positional strategies of the first player must be beaten within the
    memory bound by an opponent that drives the cycle value back to the
    identity; the alternating two-state strategy must win within the bound;
    and the sign-pattern prefix products must all be distinct.
    """
    started = time.perf_counter()
    arena, union, valuation = build_refutation_setup()
    start = arena.alice_nodes[0]
    identity = valuation.group.identity()
    report = RunReport(
        "counterexample",
        {
            "arena": shipped_arena_path(),
            "valuation": shipped_valuation_path(),
            "bob-memory": str(bob_memory),
            "ramsey-depth": str(ramsey_depth),
        },
    )

    for sigma in games.positional_strategies(arena, games.Player.ALICE):
        picked = sigma.choice[start]
        label = f"positional-{picked.index}"
        verdict = games.verify_union_strategy(arena, union, start, sigma, bob_memory)
        if verdict.wins_within_bound:
            report.verdicts.append(
                CheckResult(
                    f"counterexample.{label}-beaten",
                    False,
                    f"bob-memory={bob_memory}",
                    "no beating opponent found",
                )
            )
            continue
        cycle = verdict.beating_lasso.cycle_colors
        value = valuation.val_word(cycle)
        value_is_identity = valuation.group.compare(value, identity) is Ordering.EQUAL
        report.verdicts.append(
            CheckResult(
                f"counterexample.{label}-beaten",
                value_is_identity,
                f"bob-memory={bob_memory} machines={verdict.machines_checked}",
                None
                if value_is_identity
                else f"beating cycle {' '.join(cycle)} has non-identity value",
            )
        )
        if not report.verdicts[-1].counterexample:
            report.verdicts[-1].detail += (
                f" cycle='{' '.join(cycle)}' cycle-value=identity"
            )

    alternating = games.alternating_strategy(arena, start)
    verdict = games.verify_union_strategy(arena, union, start, alternating, bob_memory)
    detail = f"bob-memory={bob_memory} machines={verdict.machines_checked}"
    report.verdicts.append(
        CheckResult(
            "counterexample.alternating-wins",
            verdict.wins_within_bound,
            detail,
            None
            if verdict.wins_within_bound
            else f"beaten; cycle {' '.join(verdict.beating_lasso.cycle_colors)}",
        )
    )

    distinct = games.ramsey_distinct_check(ramsey_depth)
    report.verdicts.append(
        CheckResult(
            "counterexample.distinct-prefix-products",
            distinct.passed,
            f"depth={ramsey_depth} paths={distinct.paths}",
            distinct.counterexample,
        )
    )
    report.duration_s = time.perf_counter() - started
    return report


def cmd_counterexample(args) -> int:
    report = run_counterexample(args.bob_memory, args.ramsey_depth)
    print(report.render(args.machine))
    if report.all_passed:
        print("union not half-positional (within stated bounds)")
        return 0
    print("experiment did NOT reproduce", file=sys.stderr)
    return 1


def cmd_check(args) -> int:
    seed = _resolve_seed(args)
    started = time.perf_counter()
    results = laws.full_check_battery(
        seed,
        order_samples=args.samples,
        closure_max_len=args.max_len,
        inject_fault=args.inject_fault,
    )
    report = RunReport(
        "check",
        {
            "seed": str(seed),
            "order-samples": str(args.samples),
            "closure-max-len": str(args.max_len),
            "inject-fault": str(args.inject_fault),
        },
        results,
        time.perf_counter() - started,
    )
    print(report.render(args.machine))
    return 0 if report.all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etog",
        description=(
            "energy conditions over totally ordered groups: compare group "
            "elements, decide membership of ultimately periodic words, solve "
            "finite arenas, and reproduce the union counterexample"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="compare two elements under a group spec")
    p.add_argument("spec", help="group spec, e.g. free(a,b) or inv(int)")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("membership", help="ultimately periodic word membership")
    p.add_argument("--cond", required=True, help="etog(<file>) | inv-etog(<file>) | union(..,..)")
    p.add_argument("--prefix", default="", help="finite prefix, space-separated colors")
    p.add_argument("--period", required=True, help="period, space-separated colors")
    p.add_argument("--machine", action="store_true")
    p.set_defaults(handler=cmd_membership)

    p = sub.add_parser("solve", help="solve an arena for a single energy condition")
    p.add_argument("--arena", required=True)
    p.add_argument("--cond", required=True)
    p.add_argument("--machine", action="store_true")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser(
        "counterexample",
        help="reproduce the union-not-half-positional experiment on the shipped arena",
    )
    p.add_argument("--bob-memory", type=int, default=2)
    p.add_argument("--ramsey-depth", type=int, default=3)
    p.add_argument("--machine", action="store_true")
    p.set_defaults(handler=cmd_counterexample)

    p = sub.add_parser("check", help="run the full law battery")
    p.add_argument("--seed", type=int, default=None, help="fallback: ETOG_SEED env var")
    p.add_argument("--samples", type=int, default=10_000, help="order-axiom sample budget")
    p.add_argument("--max-len", type=int, default=6, help="closure word length bound")
    p.add_argument(
        "--inject-fault",
        action="store_true",
        help="deliberately misorder two monomials to demonstrate check sensitivity",
    )
    p.add_argument("--machine", action="store_true")
    p.set_defaults(handler=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except EtogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
