"""Command-line front end for the instance -> automaton -> games pipeline.

Exit codes: 0 on success, 1 on a domain error (bad instance, missing file,
cap exceeded, crosscheck disagreement), 2 on usage errors.  The only
environment knob is PCPGAMES_COLOR=1, which colorizes final verdict lines.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import automata as au
from . import braids as br
from . import engine
from . import matrices as mx
from . import pcp
from . import wordgames as wg
from .domains import build_pipeline, WordGameDomain
from .engine import ATTACKER, DEFENDER

EMIT_CHOICES = ("automaton", "word-game", "pair-game", "matrix-game", "braid3-game", "braid5-game")
REPRESENTATIONS = ("word", "pair", "matrix", "braid3", "braid5")


class CliError(Exception):
    pass


def _color(text: str, code: str) -> str:
    if os.environ.get("PCPGAMES_COLOR") == "1":
        return f"\x1b[{code}m{text}\x1b[0m"
    return text


def _read_instance(path: str) -> pcp.PcpInstance:
    p = Path(path)
    if not p.exists():
        raise CliError(f"instance file not found: {path}")
    return pcp.parse_instance(p.read_text(encoding="utf-8"))


def _write_or_print(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _transformed_automaton(inst: pcp.PcpInstance, reverse_flag: bool, unfold_flag: bool):
    aut = au.build_solution_checker(inst)
    if reverse_flag:
        aut = au.reverse(aut)
    if unfold_flag:
        aut = au.unfold_self_loops(aut)
    return aut


def cmd_build(args: argparse.Namespace) -> int:
    inst = _read_instance(args.instance)
    if args.emit == "automaton":
        aut = _transformed_automaton(inst, args.reverse, args.unfold)
        if args.output is not None and not args.output.endswith(".dot"):
            text = au.export_flat(aut)
        else:
            text = au.export_dot(aut)
        _write_or_print(text, args.output)
        return 0
    aut = _transformed_automaton(inst, args.reverse, args.unfold)
    weighted = wg.build_weighted_word_game(aut)
    if args.emit == "word-game":
        text = wg.dump_weighted_game(weighted)
    elif args.emit == "pair-game":
        text = wg.dump_pair_game(wg.to_pair_game(weighted))
    elif args.emit == "matrix-game":
        text = mx.dump_matrix_game(mx.build_matrix_game(wg.binarize(wg.to_pair_game(weighted))))
    elif args.emit == "braid3-game":
        text = br.dump_braid_game(br.build_braid3_game(wg.binarize_weighted(weighted)))
    elif args.emit == "braid5-game":
        text = br.dump_braid_game(br.build_braid5_game(wg.binarize(wg.to_pair_game(weighted))))
    else:
        raise CliError(f"unknown emission {args.emit!r}")
    _write_or_print(text, args.output)
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    inst = _read_instance(args.instance)
    aut = au.build_solution_checker(inst)
    if args.word is not None:
        w = args.word
        case = None
        for k in range(1, len(w) + 1):
            case = pcp.bad_prefix_case(inst, w[:k])
            if case is not None:
                break
        accepted = au.accepts_within(aut, w, bound=max(len(w), 1))
        if case is not None:
            print(f"accepted (case {case.value})" if accepted else f"REJECTED but case {case.value}")
        else:
            print("rejected (no bad prefix)" if not accepted else "ACCEPTED but no bad prefix")
        agree = (case is not None) == accepted
        if agree:
            print("agreement: ok")
        else:
            print(
                "agreement: MISMATCH between oracle and automaton "
                "(acceptance can lag the first bad prefix at finite length; try a longer word)"
            )
        return 0 if agree else 1
    if args.universality:
        if args.max_len is None:
            raise CliError("--universality needs --max-len")
        verdict = au.bounded_universality(aut, args.max_len)
        if verdict.all_accepted:
            print(f"all words of length {args.max_len} accepted")
        else:
            print(f"counterexample: {verdict.counterexample}")
        return 0
    raise CliError("check needs --word or --universality")


def _domain_from_args(args: argparse.Namespace):
    if getattr(args, "game", None) is not None:
        path = Path(args.game)
        if not path.exists():
            raise CliError(f"game dump not found: {args.game}")
        game = wg.parse_weighted_game(path.read_text(encoding="utf-8"))
        return WordGameDomain(game)
    if getattr(args, "instance", None) is None:
        raise CliError("need --game DUMP or --instance FILE")
    inst = _read_instance(args.instance)
    pipe = build_pipeline(inst, wiring=args.wiring)
    return pipe.domain(args.representation)


def _render_strategy(table: dict[tuple[str, int], int]) -> str:
    lines = [
        f"key={key} rounds={rounds} move={move}"
        for (key, rounds), move in sorted(table.items())
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def _parse_strategy(text: str) -> dict[tuple[str, int], int]:
    import re

    table = {}
    pattern = re.compile(r"^key=(.*) rounds=(\d+) move=(\d+)$")
    for line in text.splitlines():
        if not line.strip():
            continue
        m = pattern.match(line)
        if m is None:
            raise CliError(f"malformed strategy line {line!r}")
        table[(m.group(1), int(m.group(2)))] = int(m.group(3))
    return table


def cmd_solve(args: argparse.Namespace) -> int:
    domain = _domain_from_args(args)
    try:
        result = engine.attacker_wins_within(
            domain, args.rounds, max_nodes=args.max_nodes, jobs=args.jobs
        )
    except engine.ResourceCapExceeded as exc:
        raise CliError(f"{exc} (partial statistics: explored={exc.explored})") from exc
    color = "32" if result.attacker_wins else "36"
    print(_color(result.verdict, color))
    print(f"explored={result.explored} horizon={result.horizon}")
    if args.strategy_out is not None:
        Path(args.strategy_out).write_text(_render_strategy(result.strategy), encoding="utf-8")
        print(f"strategy written to {args.strategy_out}")
    return 0


def _policy_from_spec(spec: str, domain, player: str) -> engine.Policy:
    if spec == "human":
        return engine.human_policy()
    if spec.startswith("random:"):
        return engine.random_policy(int(spec.split(":", 1)[1]))
    if spec.startswith("strategy:"):
        path = Path(spec.split(":", 1)[1])
        if not path.exists():
            raise CliError(f"strategy file not found: {path}")
        return engine.strategy_policy(_parse_strategy(path.read_text(encoding="utf-8")))
    if spec.startswith("script:"):
        body = spec.split(":", 1)[1]
        path = Path(body)
        if path.exists():
            body = path.read_text(encoding="utf-8").strip()
        indices = _script_indices(body, domain, player)
        return engine.scripted_policy(indices)
    raise CliError(f"unknown policy {spec!r} (use human, random:SEED, script:SPEC, strategy:FILE)")


def _script_indices(body: str, domain, player: str) -> list[int]:
    tokens: list[str]
    if "," in body or any(ch.isspace() for ch in body.strip()):
        tokens = body.replace(",", " ").split()
    else:
        tokens = list(body.strip())
    indices = []
    for tok in tokens:
        if tok.isdigit():
            indices.append(int(tok))
            continue
        found = None
        for i in range(domain.move_count(player)):
            if domain.move_label(player, i) == f"word={tok} weight=0":
                found = i
                break
        if found is None:
            raise CliError(f"script token {tok!r} names no move of player {player}")
        indices.append(found)
    return indices


def cmd_play(args: argparse.Namespace) -> int:
    domain = _domain_from_args(args)
    defender = _policy_from_spec(args.defender, domain, DEFENDER)
    attacker = _policy_from_spec(args.attacker, domain, ATTACKER)
    trace = engine.play(domain, defender, attacker, args.rounds, stop_at_target=not args.run_to_end)
    _write_or_print(trace.render(), args.output)
    return 0


def cmd_crosscheck(args: argparse.Namespace) -> int:
    trace_path = Path(args.trace)
    if not trace_path.exists():
        raise CliError(f"trace file not found: {args.trace}")
    trace = engine.parse_trace(trace_path.read_text(encoding="utf-8"))
    inst = _read_instance(args.instance)
    pipe = build_pipeline(inst, wiring=args.wiring)
    report = engine.crosscheck(trace, pipe.crosscheck_domains())
    out = report.render()
    if report.agree:
        out = out.replace("AGREE at all rounds", _color("AGREE at all rounds", "32"))
    else:
        out = _color(out, "31")
    sys.stdout.write(out)
    return 0 if report.agree else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcpgames",
        description="build, check, solve, play, and crosscheck the PCP-to-games reduction chain",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="compile an instance and emit automata or game dumps")
    p_build.add_argument("-i", "--instance", required=True)
    p_build.add_argument("--emit", choices=EMIT_CHOICES, default="automaton")
    p_build.add_argument("--reverse", action="store_true", help="reverse transitions, swap initial/final")
    p_build.add_argument("--unfold", action="store_true", help="unfold self-loops into the 9-state form")
    p_build.add_argument("-o", "--output", default=None)
    p_build.set_defaults(func=cmd_build)

    p_check = sub.add_parser("check", help="prefix classification and bounded universality")
    p_check.add_argument("-i", "--instance", required=True)
    p_check.add_argument("--word", default=None)
    p_check.add_argument("--universality", action="store_true")
    p_check.add_argument("--max-len", type=int, default=None)
    p_check.set_defaults(func=cmd_check)

    p_solve = sub.add_parser("solve", help="bounded-horizon attacker-wins search")
    p_solve.add_argument("--game", default=None, help="weighted word game dump to solve")
    p_solve.add_argument("-i", "--instance", default=None)
    p_solve.add_argument("--representation", choices=REPRESENTATIONS, default="word")
    p_solve.add_argument("--wiring", choices=("forward", "reverse"), default="forward")
    p_solve.add_argument("--rounds", type=int, required=True)
    p_solve.add_argument("--jobs", type=int, default=1)
    p_solve.add_argument("--max-nodes", type=int, default=500_000)
    p_solve.add_argument("--strategy-out", default=None)
    p_solve.set_defaults(func=cmd_solve)

    p_play = sub.add_parser("play", help="play out policies and record a trace")
    p_play.add_argument("--game", default=None)
    p_play.add_argument("-i", "--instance", default=None)
    p_play.add_argument("--representation", choices=REPRESENTATIONS, default="word")
    p_play.add_argument("--wiring", choices=("forward", "reverse"), default="forward")
    p_play.add_argument("--defender", required=True)
    p_play.add_argument("--attacker", required=True)
    p_play.add_argument("--rounds", type=int, required=True)
    p_play.add_argument("--run-to-end", action="store_true", help="do not stop at the first target")
    p_play.add_argument("-o", "--output", default=None)
    p_play.set_defaults(func=cmd_play)

    p_cross = sub.add_parser("crosscheck", help="replay a trace across every representation")
    p_cross.add_argument("--trace", required=True)
    p_cross.add_argument("--instance", required=True)
    p_cross.add_argument("--wiring", choices=("forward", "reverse"), default="forward")
    p_cross.set_defaults(func=cmd_crosscheck)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, pcp.PcpError, au.AutomatonError, br.BraidError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
