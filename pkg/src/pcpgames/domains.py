"""Game-domain adapters for the solver plus the full per-instance pipeline.

Every representation derived from one word game keeps its move lists in the
same order, so a move index means the same thing in each domain and traces
replay across representations unchanged.

Braid configurations carry the group-word preimage of the braid alongside
the braid word itself; the preimage is the canonical key and drives the
target predicate (the encodings are injective on everything a play can
reach), while the braid word stays available for the independent braid
oracles that the test suite replays against.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import automata as au
from . import braids as br
from . import freegroup as fg
from . import matrices as mx
from . import wordgames as wg
from .engine import DEFENDER
from .pcp import PcpInstance


@dataclass(frozen=True)
class WordGameDomain:
    game: wg.WeightedWordGame
    name: str = "word"

    def initial_config(self) -> wg.WordConfig:
        return self.game.initial

    def move_count(self, player: str) -> int:
        moves = self.game.defender_moves if player == DEFENDER else self.game.attacker_moves
        return len(moves)

    def move_label(self, player: str, index: int) -> str:
        moves = self.game.defender_moves if player == DEFENDER else self.game.attacker_moves
        return moves[index].render()

    def apply(self, config: wg.WordConfig, player: str, index: int) -> wg.WordConfig:
        moves = self.game.defender_moves if player == DEFENDER else self.game.attacker_moves
        return self.game.apply(config, moves[index])

    def is_target(self, config: wg.WordConfig) -> bool:
        return self.game.is_target(config)

    def canonical_key(self, config: wg.WordConfig) -> str:
        return f"{fg.render(config.word) or 'ε'};{config.counter}"


@dataclass(frozen=True)
class PairGameDomain:
    game: wg.PairWordGame
    name: str = "pair"

    def initial_config(self) -> wg.PairConfig:
        return self.game.initial

    def move_count(self, player: str) -> int:
        moves = self.game.defender_moves if player == DEFENDER else self.game.attacker_moves
        return len(moves)

    def move_label(self, player: str, index: int) -> str:
        moves = self.game.defender_moves if player == DEFENDER else self.game.attacker_moves
        return moves[index].render()

    def apply(self, config: wg.PairConfig, player: str, index: int) -> wg.PairConfig:
        moves = self.game.defender_moves if player == DEFENDER else self.game.attacker_moves
        return self.game.apply(config, moves[index])

    def is_target(self, config: wg.PairConfig) -> bool:
        return self.game.is_target(config)

    def canonical_key(self, config: wg.PairConfig) -> str:
        return f"{fg.render(config.word) or 'ε'};{fg.render(config.counter_word) or 'ε'}"


@dataclass(frozen=True)
class MatrixGameDomain:
    """Product convention: the configuration is the accumulated move product."""

    game: mx.MatrixGame
    name: str = "matrix"

    def initial_config(self) -> mx.IntMatrix:
        if self.game.initial is not None:
            return self.game.initial
        return mx.identity(self.game.dimension)

    def move_count(self, player: str) -> int:
        return len(self.game.defender if player == DEFENDER else self.game.attacker)

    def move_label(self, player: str, index: int) -> str:
        m = (self.game.defender if player == DEFENDER else self.game.attacker)[index]
        return " ".join(str(x) for row in m for x in row)

    def apply(self, config: mx.IntMatrix, player: str, index: int) -> mx.IntMatrix:
        m = (self.game.defender if player == DEFENDER else self.game.attacker)[index]
        return mx.apply_matrix_move(config, m)

    def is_target(self, config: mx.IntMatrix) -> bool:
        return mx.fixes_anchor(config, self.game.anchor)

    def canonical_key(self, config: mx.IntMatrix) -> str:
        return " ".join(str(x) for row in config for x in row)


@dataclass(frozen=True)
class VectorMatrixGameDomain:
    """Vector convention: matrices act on a column configuration vector."""

    game: mx.MatrixGame
    name: str = "robot-matrix"

    def initial_config(self) -> mx.IntVector:
        return self.game.anchor

    def move_count(self, player: str) -> int:
        return len(self.game.defender if player == DEFENDER else self.game.attacker)

    def move_label(self, player: str, index: int) -> str:
        m = (self.game.defender if player == DEFENDER else self.game.attacker)[index]
        return " ".join(str(x) for row in m for x in row)

    def apply(self, config: mx.IntVector, player: str, index: int) -> mx.IntVector:
        m = (self.game.defender if player == DEFENDER else self.game.attacker)[index]
        return mx.mat_vec_mul(m, config)

    def is_target(self, config: mx.IntVector) -> bool:
        return config == self.game.target_vector

    def canonical_key(self, config: mx.IntVector) -> str:
        return " ".join(str(x) for x in config)


@dataclass(frozen=True)
class RobotGameDomain:
    game: mx.RobotGame
    name: str = "robot"

    def initial_config(self) -> mx.IntVector:
        return self.game.initial

    def move_count(self, player: str) -> int:
        return len(self.game.defender if player == DEFENDER else self.game.attacker)

    def move_label(self, player: str, index: int) -> str:
        v = (self.game.defender if player == DEFENDER else self.game.attacker)[index]
        return " ".join(str(x) for x in v)

    def apply(self, config: mx.IntVector, player: str, index: int) -> mx.IntVector:
        v = (self.game.defender if player == DEFENDER else self.game.attacker)[index]
        return tuple(c + dv for c, dv in zip(config, v))

    def is_target(self, config: mx.IntVector) -> bool:
        return config == self.game.target

    def canonical_key(self, config: mx.IntVector) -> str:
        return " ".join(str(x) for x in config)


@dataclass(frozen=True)
class Braid3Config:
    braid: br.BraidWord
    word: fg.GroupWord
    counter: int


@dataclass(frozen=True)
class Braid3GameDomain:
    braid_game: br.BraidGame
    source: wg.WeightedWordGame  # binarized; supplies the preimage bookkeeping
    name: str = "braid3"

    def initial_config(self) -> Braid3Config:
        return Braid3Config(
            self.braid_game.initial_braid, self.source.initial.word, self.source.initial.counter
        )

    def move_count(self, player: str) -> int:
        return len(
            self.braid_game.defender_braids if player == DEFENDER else self.braid_game.attacker_braids
        )

    def move_label(self, player: str, index: int) -> str:
        braids = self.braid_game.defender_braids if player == DEFENDER else self.braid_game.attacker_braids
        return braids[index].render()

    def apply(self, config: Braid3Config, player: str, index: int) -> Braid3Config:
        braids = self.braid_game.defender_braids if player == DEFENDER else self.braid_game.attacker_braids
        moves = self.source.defender_moves if player == DEFENDER else self.source.attacker_moves
        return Braid3Config(
            br.concat(config.braid, braids[index]),
            fg.concat(config.word, moves[index].word),
            config.counter + moves[index].weight,
        )

    def is_target(self, config: Braid3Config) -> bool:
        return fg.is_identity(config.word) and config.counter == 0

    def oracle_is_trivial(self, config: Braid3Config) -> bool:
        """Triviality decided from the braid word alone (Burau-backed)."""
        return br.is_trivial_fast(config.braid)

    def canonical_key(self, config: Braid3Config) -> str:
        return f"{fg.render(config.word) or 'ε'};{config.counter}"


@dataclass(frozen=True)
class Braid5Config:
    braid: br.BraidWord
    word: fg.GroupWord
    counter_word: fg.GroupWord


@dataclass(frozen=True)
class Braid5GameDomain:
    braid_game: br.BraidGame
    source: wg.PairWordGame  # binarized pair game
    name: str = "braid5"

    def initial_config(self) -> Braid5Config:
        return Braid5Config(
            self.braid_game.initial_braid,
            self.source.initial.word,
            self.source.initial.counter_word,
        )

    def move_count(self, player: str) -> int:
        return len(
            self.braid_game.defender_braids if player == DEFENDER else self.braid_game.attacker_braids
        )

    def move_label(self, player: str, index: int) -> str:
        braids = self.braid_game.defender_braids if player == DEFENDER else self.braid_game.attacker_braids
        return braids[index].render()

    def apply(self, config: Braid5Config, player: str, index: int) -> Braid5Config:
        braids = self.braid_game.defender_braids if player == DEFENDER else self.braid_game.attacker_braids
        moves = self.source.defender_moves if player == DEFENDER else self.source.attacker_moves
        return Braid5Config(
            br.concat(config.braid, braids[index]),
            fg.concat(config.word, moves[index].word),
            fg.concat(config.counter_word, moves[index].counter_word),
        )

    def is_target(self, config: Braid5Config) -> bool:
        return fg.is_identity(config.word) and fg.is_identity(config.counter_word)

    def oracle_is_trivial(self, config: Braid5Config) -> bool:
        return br.is_trivial_fast(config.braid)

    def canonical_key(self, config: Braid5Config) -> str:
        return f"{fg.render(config.word) or 'ε'};{fg.render(config.counter_word) or 'ε'}"


@dataclass(frozen=True)
class Pipeline:
    """Every representation of one instance, move lists index-aligned throughout."""

    instance: PcpInstance
    automaton: au.WeightedAutomaton
    game_automaton: au.WeightedAutomaton  # unfolded (reverse by default) automaton
    wiring: str
    weighted_game: wg.WeightedWordGame
    pair_game: wg.PairWordGame
    binary_weighted_game: wg.WeightedWordGame
    binary_pair_game: wg.PairWordGame
    matrix_game: mx.MatrixGame
    braid3_game: br.BraidGame
    braid5_game: br.BraidGame

    def domain(self, representation: str):
        if representation == "word":
            return WordGameDomain(self.weighted_game)
        if representation == "pair":
            return PairGameDomain(self.binary_pair_game)
        if representation == "matrix":
            return MatrixGameDomain(self.matrix_game)
        if representation == "braid3":
            return Braid3GameDomain(self.braid3_game, self.binary_weighted_game)
        if representation == "braid5":
            return Braid5GameDomain(self.braid5_game, self.binary_pair_game)
        raise ValueError(f"unknown representation {representation!r}")

    def crosscheck_domains(self) -> list:
        return [self.domain(r) for r in ("word", "pair", "matrix", "braid3", "braid5")]


def build_pipeline(inst: PcpInstance, wiring: str = "forward") -> Pipeline:
    """Instance -> automaton -> word game -> every downstream representation.

    The default wiring feeds the unfolded forward automaton into the game
    builder (initial word q0, winning states q4/q8), mirroring the move
    construction in the source material.  The reverse wiring is exposed for
    comparison but is not a sound game: the reversed automaton's start state
    has incoming edges (the old accepting self-loops), so a play can bounce
    back to it and synthesize the empty word with zero weight without ever
    touching a final state.  The forward automaton's start state is a
    source, which is what makes the empty-word target honest.
    """
    if wiring not in ("reverse", "forward"):
        raise ValueError(f"wiring must be 'reverse' or 'forward', not {wiring!r}")
    automaton = au.build_solution_checker(inst)
    base = au.reverse(automaton) if wiring == "reverse" else automaton
    unfolded = au.unfold_self_loops(base)
    weighted = wg.build_weighted_word_game(unfolded)
    pair = wg.to_pair_game(weighted)
    binary_pair = wg.binarize(pair)
    binary_weighted = wg.binarize_weighted(weighted)
    return Pipeline(
        instance=inst,
        automaton=automaton,
        game_automaton=unfolded,
        wiring=wiring,
        weighted_game=weighted,
        pair_game=pair,
        binary_weighted_game=binary_weighted,
        binary_pair_game=binary_pair,
        matrix_game=mx.build_matrix_game(binary_pair),
        braid3_game=br.build_braid3_game(binary_weighted),
        braid5_game=br.build_braid5_game(binary_pair),
    )
