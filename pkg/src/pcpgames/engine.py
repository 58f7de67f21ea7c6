"""Bounded-horizon solver for alternating Attacker-Defender reachability games.

A game domain is anything with an initial configuration, indexed move lists
for the two players, a pure ``apply``, a target predicate, and a canonical
string key for configurations.  Rounds alternate Defender then Attacker and
the target is only ever evaluated after an attacker move, so round zero can
never be trivially winning.

The solver computes, for each configuration and remaining-round budget, the
least number of rounds within which the attacker can force a target; the
defender branches are always evaluated exhaustively (no short-circuit), so
verdicts, strategy tables, and explored-node counts are identical whether
sibling branches run sequentially or on a thread pool.
"""

from __future__ import annotations

import random
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Protocol

DEFENDER = "D"
ATTACKER = "A"


class GameDomain(Protocol):
    name: str

    def initial_config(self) -> Any: ...

    def move_count(self, player: str) -> int: ...

    def move_label(self, player: str, index: int) -> str: ...

    def apply(self, config: Any, player: str, index: int) -> Any: ...

    def is_target(self, config: Any) -> bool: ...

    def canonical_key(self, config: Any) -> str: ...


class ResourceCapExceeded(RuntimeError):
    def __init__(self, explored: int, cap: int):
        super().__init__(f"solver explored {explored} nodes, exceeding the cap {cap}")
        self.explored = explored
        self.cap = cap


@dataclass(frozen=True)
class SolveResult:
    attacker_wins: bool
    rounds: int  # least winning horizon, or the survived horizon
    horizon: int
    strategy: dict[tuple[str, int], int]  # attacker table if wins, else defender table
    explored: int

    @property
    def verdict(self) -> str:
        if self.attacker_wins:
            return f"AttackerWinsWithin({self.rounds})"
        return f"DefenderSurvives({self.rounds})"


class _Solver:
    def __init__(self, domain: GameDomain, max_nodes: int, jobs: int):
        self.domain = domain
        self.max_nodes = max_nodes
        self.jobs = max(1, jobs)
        self.memo: dict[tuple[str, int], int | None] = {}
        self.attacker_table: dict[tuple[str, int], int] = {}
        self.defender_table: dict[tuple[str, int], int] = {}

    def value(self, cfg: Any, remaining: int) -> int | None:
        """Least j <= remaining within which Attacker forces a target, else None."""
        key = (self.domain.canonical_key(cfg), remaining)
        if key in self.memo:
            return self.memo[key]
        if len(self.memo) >= self.max_nodes:
            raise ResourceCapExceeded(len(self.memo), self.max_nodes)
        worst = 0
        survival_move: int | None = None
        for d in range(self.domain.move_count(DEFENDER)):
            after_d = self.domain.apply(cfg, DEFENDER, d)
            best: int | None = None
            chosen: int | None = None
            for a in range(self.domain.move_count(ATTACKER)):
                after_a = self.domain.apply(after_d, ATTACKER, a)
                if self.domain.is_target(after_a):
                    best, chosen = 1, a
                    break
                if remaining > 1:
                    sub = self.value(after_a, remaining - 1)
                    if sub is not None and (best is None or sub + 1 < best):
                        best, chosen = sub + 1, a
            if best is None:
                if survival_move is None:
                    survival_move = d
            else:
                self.attacker_table[(self.domain.canonical_key(after_d), remaining)] = chosen
                if survival_move is None:
                    worst = max(worst, best)
        if survival_move is not None:
            self.defender_table[(self.domain.canonical_key(cfg), remaining)] = survival_move
            self.memo[key] = None
            return None
        self.memo[key] = worst
        return worst

    def solve(self, horizon: int) -> SolveResult:
        cfg = self.domain.initial_config()
        if self.jobs == 1 or self.domain.move_count(DEFENDER) <= 1:
            result = self.value(cfg, horizon)
        else:
            result = self._value_parallel(cfg, horizon)
        if result is None:
            return SolveResult(False, horizon, horizon, dict(self.defender_table), len(self.memo))
        return SolveResult(True, result, horizon, dict(self.attacker_table), len(self.memo))

    def _value_parallel(self, cfg: Any, remaining: int) -> int | None:
        """Top-level defender branches on a thread pool; identical outcome by purity."""
        defender_moves = range(self.domain.move_count(DEFENDER))
        children = [self.domain.apply(cfg, DEFENDER, d) for d in defender_moves]

        def branch(after_d: Any) -> tuple[int | None, int | None]:
            best: int | None = None
            chosen: int | None = None
            for a in range(self.domain.move_count(ATTACKER)):
                after_a = self.domain.apply(after_d, ATTACKER, a)
                if self.domain.is_target(after_a):
                    return 1, a
                if remaining > 1:
                    sub = self.value(after_a, remaining - 1)
                    if sub is not None and (best is None or sub + 1 < best):
                        best, chosen = sub + 1, a
            return best, chosen

        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            outcomes = list(pool.map(branch, children))
        worst = 0
        survival_move: int | None = None
        for d, (best, chosen) in enumerate(outcomes):
            if best is None:
                if survival_move is None:
                    survival_move = d
            else:
                self.attacker_table[(self.domain.canonical_key(children[d]), remaining)] = chosen
                if survival_move is None:
                    worst = max(worst, best)
        key = (self.domain.canonical_key(cfg), remaining)
        if survival_move is not None:
            self.defender_table[(self.domain.canonical_key(cfg), remaining)] = survival_move
            self.memo[key] = None
            return None
        self.memo[key] = worst
        return worst


def attacker_wins_within(
    domain: GameDomain, horizon: int, max_nodes: int = 500_000, jobs: int = 1
) -> SolveResult:
    if horizon < 1:
        raise ValueError("horizon must be at least one round")
    return _Solver(domain, max_nodes, jobs).solve(horizon)


def defender_survival_strategy(
    domain: GameDomain, horizon: int, max_nodes: int = 500_000
) -> dict[tuple[str, int], int] | None:
    result = attacker_wins_within(domain, horizon, max_nodes=max_nodes)
    return None if result.attacker_wins else result.strategy


# --- traces and policies ---


@dataclass(frozen=True)
class TraceRecord:
    round: int
    player: str
    move: int
    config: str


@dataclass(frozen=True)
class Trace:
    records: tuple[TraceRecord, ...]

    def render(self) -> str:
        return "".join(
            f"round={r.round} player={r.player} move={r.move} config={r.config}\n"
            for r in self.records
        )


_TRACE_LINE = re.compile(r"^round=(\d+) player=([DA]) move=(\d+) config=(.*)$")


def parse_trace(text: str) -> Trace:
    records = []
    for line in text.splitlines():
        if not line.strip():
            continue
        m = _TRACE_LINE.match(line)
        if m is None:
            raise ValueError(f"malformed trace line {line!r}")
        records.append(TraceRecord(int(m.group(1)), m.group(2), int(m.group(3)), m.group(4)))
    return Trace(tuple(records))


Policy = Callable[[GameDomain, Any, str, int, int], int]
"""(domain, config, player, round, remaining) -> move index."""


def scripted_policy(indices: Iterable[int]) -> Policy:
    script = list(indices)

    def policy(domain: GameDomain, cfg: Any, player: str, rnd: int, remaining: int) -> int:
        if rnd > len(script):
            raise ValueError(f"script for player {player} exhausted at round {rnd}")
        return script[rnd - 1]

    return policy


def random_policy(seed: int) -> Policy:
    rng = random.Random(seed)

    def policy(domain: GameDomain, cfg: Any, player: str, rnd: int, remaining: int) -> int:
        return rng.randrange(domain.move_count(player))

    return policy


def strategy_policy(table: dict[tuple[str, int], int]) -> Policy:
    def policy(domain: GameDomain, cfg: Any, player: str, rnd: int, remaining: int) -> int:
        key = (domain.canonical_key(cfg), remaining)
        if key not in table:
            raise KeyError(f"strategy has no move for key {key!r}")
        return table[key]

    return policy


def human_policy(
    input_fn: Callable[[str], str] | None = None, echo: Callable[[str], None] = print
) -> Policy:
    def policy(domain: GameDomain, cfg: Any, player: str, rnd: int, remaining: int) -> int:
        ask = input_fn if input_fn is not None else input
        echo(f"round {rnd}, player {player}, config {domain.canonical_key(cfg)}")
        for i in range(domain.move_count(player)):
            echo(f"  [{i}] {domain.move_label(player, i)}")
        while True:
            answer = ask(f"{player}> ").strip()
            if answer.isdigit() and int(answer) < domain.move_count(player):
                return int(answer)
            echo(f"enter a move index between 0 and {domain.move_count(player) - 1}")

    return policy


def play(
    domain: GameDomain,
    defender: Policy,
    attacker: Policy,
    rounds: int,
    stop_at_target: bool = True,
) -> Trace:
    """Alternate the two policies for the given number of rounds, recording configs."""
    cfg = domain.initial_config()
    records: list[TraceRecord] = []
    for rnd in range(1, rounds + 1):
        remaining = rounds - rnd + 1
        d = defender(domain, cfg, DEFENDER, rnd, remaining)
        cfg = domain.apply(cfg, DEFENDER, d)
        records.append(TraceRecord(rnd, DEFENDER, d, domain.canonical_key(cfg)))
        a = attacker(domain, cfg, ATTACKER, rnd, remaining)
        cfg = domain.apply(cfg, ATTACKER, a)
        records.append(TraceRecord(rnd, ATTACKER, a, domain.canonical_key(cfg)))
        if stop_at_target and domain.is_target(cfg):
            break
    return Trace(tuple(records))


@dataclass(frozen=True)
class CrosscheckReport:
    agree: bool
    first_divergence: tuple[int, str] | None
    lines: tuple[str, ...]

    def render(self) -> str:
        body = "".join(line + "\n" for line in self.lines)
        if self.agree:
            return body + "AGREE at all rounds\n"
        rnd, player = self.first_divergence  # type: ignore[misc]
        return body + f"DISAGREE at round {rnd} (player {player})\n"


def crosscheck(trace: Trace, domains: list[GameDomain]) -> CrosscheckReport:
    """Replay the move indices of a trace in every domain and compare targets.

    All domains must be derived from the same source game so that the move
    lists are index-aligned; the report asserts target-predicate agreement
    after every recorded move.
    """
    configs = {d.name: d.initial_config() for d in domains}
    lines = []
    for record in trace.records:
        verdicts = {}
        for d in domains:
            if record.move >= d.move_count(record.player):
                raise ValueError(
                    f"move {record.move} out of range for player {record.player} in domain {d.name}"
                )
            configs[d.name] = d.apply(configs[d.name], record.player, record.move)
            verdicts[d.name] = d.is_target(configs[d.name])
        tags = " ".join(f"{name}={'T' if v else 'f'}" for name, v in verdicts.items())
        lines.append(f"round={record.round} player={record.player} {tags}")
        if len(set(verdicts.values())) > 1:
            return CrosscheckReport(False, (record.round, record.player), tuple(lines))
    return CrosscheckReport(True, None, tuple(lines))


def all_defender_scripts(domain: GameDomain, horizon: int) -> Iterable[tuple[int, ...]]:
    import itertools

    return itertools.product(range(domain.move_count(DEFENDER)), repeat=horizon)


def replay_reaches_target(
    domain: GameDomain,
    attacker_table: dict[tuple[str, int], int],
    defender_script: tuple[int, ...],
) -> bool:
    """Drive the attacker strategy against a fixed defender script."""
    cfg = domain.initial_config()
    horizon = len(defender_script)
    for rnd, d in enumerate(defender_script, start=1):
        remaining = horizon - rnd + 1
        cfg = domain.apply(cfg, DEFENDER, d)
        key = (domain.canonical_key(cfg), remaining)
        if key not in attacker_table:
            return False
        cfg = domain.apply(cfg, ATTACKER, attacker_table[key])
        if domain.is_target(cfg):
            return True
    return False
