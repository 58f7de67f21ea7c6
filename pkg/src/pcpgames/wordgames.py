"""Attacker-Defender games on free-group words built from the unfolded automaton.

The weighted game keeps an integer counter alongside the word; the pair game
re-encodes the counter as a word over the unary symmetric alphabet ``{r}``.
Defender moves are the single domain letters with weight zero.  Attacker
moves encode automaton transitions:

* ``#``                       — the waiting move, weight 0;
* ``ā · q̄_j``                 — a transition out of the initial state reading
                                ``a``, carrying the transition weight;
* ``b̄ · q_i · #̄ · ā · q̄_j``   — a mid-path transition ``q_i --a--> q_j``
                                (one copy per defender letter ``b``, whose
                                inverse cancels the defender's last move);
* ``ā · f · q̄_init``          — the unbraiding moves that turn the pre-final
                                configuration ``q_init·f̄`` into the empty word.

Played against a defender who replays a word, the attacker can cancel the
stored letters newest-first, so reaching the target is following a path of
the given automaton on the reversed stored prefix.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import freegroup as fg
from .automata import WeightedAutomaton, AutomatonError
from .freegroup import GroupWord, RankedAlphabet

HASH = "#"
COUNTER_SYMBOL = fg.COUNTER_SYMBOL
COUNTER_ALPHABET = fg.COUNTER_ALPHABET


@dataclass(frozen=True)
class WeightedMove:
    word: GroupWord
    weight: int

    def render(self) -> str:
        return f"word={fg.render(self.word)} weight={self.weight}"


@dataclass(frozen=True)
class PairMove:
    word: GroupWord
    counter_word: GroupWord

    def render(self) -> str:
        return f"word={fg.render(self.word)} counter={fg.render(self.counter_word)}"


@dataclass(frozen=True)
class WordConfig:
    word: GroupWord
    counter: int


@dataclass(frozen=True)
class PairConfig:
    word: GroupWord
    counter_word: GroupWord


@dataclass(frozen=True)
class WeightedWordGame:
    alphabet: RankedAlphabet
    defender_moves: tuple[WeightedMove, ...]
    attacker_moves: tuple[WeightedMove, ...]
    initial: WordConfig

    def is_target(self, cfg: WordConfig) -> bool:
        return fg.is_identity(cfg.word) and cfg.counter == 0

    def apply(self, cfg: WordConfig, move: WeightedMove) -> WordConfig:
        return WordConfig(fg.concat(cfg.word, move.word), cfg.counter + move.weight)


@dataclass(frozen=True)
class PairWordGame:
    alphabet: RankedAlphabet
    defender_moves: tuple[PairMove, ...]
    attacker_moves: tuple[PairMove, ...]
    initial: PairConfig

    def is_target(self, cfg: PairConfig) -> bool:
        return fg.is_identity(cfg.word) and fg.is_identity(cfg.counter_word)

    def apply(self, cfg: PairConfig, move: PairMove) -> PairConfig:
        return PairConfig(
            fg.concat(cfg.word, move.word),
            fg.concat(cfg.counter_word, move.counter_word),
        )


def game_alphabet(aut: WeightedAutomaton) -> RankedAlphabet:
    """Ranks over the move alphabet: domain letters, then states q0..q8, then #."""
    return RankedAlphabet(tuple(aut.alphabet) + tuple(aut.states) + (HASH,))


def build_weighted_word_game(aut: WeightedAutomaton) -> WeightedWordGame:
    """Compile the unfolded 9-state automaton into the weighted word game."""
    if len(aut.states) != 9:
        raise AutomatonError("the word game is built from the unfolded 9-state automaton")
    alphabet = game_alphabet(aut)
    init = aut.initial
    defender = tuple(WeightedMove(fg.word(a), 0) for a in sorted(aut.alphabet))
    attacker: list[WeightedMove] = [WeightedMove(fg.word(HASH), 0)]
    transitions = aut.sorted_transitions()
    for t in transitions:
        if t.source == init:
            attacker.append(
                WeightedMove(fg.word("~" + t.letter, "~" + t.target), t.weight)
            )
    for b in sorted(aut.alphabet):
        for t in transitions:
            if t.source != init:
                attacker.append(
                    WeightedMove(
                        fg.word("~" + b, t.source, "~" + HASH, "~" + t.letter, "~" + t.target),
                        t.weight,
                    )
                )
    for f in sorted(aut.finals):
        for a in sorted(aut.alphabet):
            attacker.append(WeightedMove(fg.word("~" + a, f, "~" + init), 0))
    return WeightedWordGame(
        alphabet=alphabet,
        defender_moves=defender,
        attacker_moves=tuple(attacker),
        initial=WordConfig(fg.word(init), 0),
    )


def counter_word(x: int) -> GroupWord:
    """The counter value x as the unary group word r^x."""
    return fg.power(fg.word(COUNTER_SYMBOL), x)


def counter_value(w: GroupWord) -> int:
    return sum(sign for _, sign in w.letters)


def to_pair_game(g: WeightedWordGame) -> PairWordGame:
    """Re-encode every weight x as the unary word r^x; targets correspond."""
    return PairWordGame(
        alphabet=g.alphabet,
        defender_moves=tuple(
            PairMove(m.word, counter_word(m.weight)) for m in g.defender_moves
        ),
        attacker_moves=tuple(
            PairMove(m.word, counter_word(m.weight)) for m in g.attacker_moves
        ),
        initial=PairConfig(g.initial.word, counter_word(g.initial.counter)),
    )


def binarize(g: PairWordGame) -> PairWordGame:
    """Map first components through the binary-alphabet embedding."""
    enc = lambda w: fg.alpha_encode(w, g.alphabet)
    return PairWordGame(
        alphabet=fg.BINARY_ALPHABET,
        defender_moves=tuple(PairMove(enc(m.word), m.counter_word) for m in g.defender_moves),
        attacker_moves=tuple(PairMove(enc(m.word), m.counter_word) for m in g.attacker_moves),
        initial=PairConfig(enc(g.initial.word), g.initial.counter_word),
    )


def binarize_weighted(g: WeightedWordGame) -> WeightedWordGame:
    """Binary-alphabet form of the weighted game (weights untouched)."""
    enc = lambda w: fg.alpha_encode(w, g.alphabet)
    return WeightedWordGame(
        alphabet=fg.BINARY_ALPHABET,
        defender_moves=tuple(WeightedMove(enc(m.word), m.weight) for m in g.defender_moves),
        attacker_moves=tuple(WeightedMove(enc(m.word), m.weight) for m in g.attacker_moves),
        initial=WordConfig(enc(g.initial.word), g.initial.counter),
    )


def dump_weighted_game(g: WeightedWordGame) -> str:
    lines = [
        "alphabet " + " ".join(g.alphabet.symbols),
        f"initial word={fg.render(g.initial.word)} weight={g.initial.counter}",
        "target word= weight=0",
    ]
    for m in g.defender_moves:
        lines.append(f"player=D {m.render()}")
    for m in g.attacker_moves:
        lines.append(f"player=A {m.render()}")
    return "\n".join(lines) + "\n"


def dump_pair_game(g: PairWordGame) -> str:
    lines = [
        "alphabet " + " ".join(g.alphabet.symbols),
        f"initial word={fg.render(g.initial.word)} counter={fg.render(g.initial.counter_word)}",
        "target word= counter=",
    ]
    for m in g.defender_moves:
        lines.append(f"player=D {m.render()}")
    for m in g.attacker_moves:
        lines.append(f"player=A {m.render()}")
    return "\n".join(lines) + "\n"


def parse_weighted_game(text: str) -> WeightedWordGame:
    """Inverse of :func:`dump_weighted_game`."""
    alphabet: RankedAlphabet | None = None
    initial = WordConfig(fg.EPSILON, 0)
    defender: list[WeightedMove] = []
    attacker: list[WeightedMove] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("alphabet "):
            alphabet = RankedAlphabet(tuple(line.split()[1:]))
        elif line.startswith("initial "):
            word, weight = _split_move(line[len("initial "):])
            initial = WordConfig(word, weight)
        elif line.startswith("target "):
            continue
        elif line.startswith("player="):
            player, rest = line.split(None, 1)
            word, weight = _split_move(rest)
            move = WeightedMove(word, weight)
            if player == "player=D":
                defender.append(move)
            elif player == "player=A":
                attacker.append(move)
            else:
                raise ValueError(f"unknown player in line {line!r}")
        else:
            raise ValueError(f"unrecognized game dump line {line!r}")
    if alphabet is None:
        symbols: list[str] = []
        for m in list(defender) + list(attacker) + [WeightedMove(initial.word, 0)]:
            for sym, _ in m.word.letters:
                if sym not in symbols:
                    symbols.append(sym)
        alphabet = RankedAlphabet(tuple(symbols))
    return WeightedWordGame(alphabet, tuple(defender), tuple(attacker), initial)


def _split_move(rest: str) -> tuple[GroupWord, int]:
    if "word=" not in rest or " weight=" not in rest:
        raise ValueError(f"malformed move field {rest!r}")
    words, _, weight = rest.rpartition(" weight=")
    return fg.parse(words[len("word="):]), int(weight)
