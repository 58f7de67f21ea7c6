"""Integer-weighted automata on infinite words.

The central construction compiles a PCP instance into a complete
nondeterministic 5-state automaton whose zero-weight accepting path
prefixes witness exactly the bad prefixes of the input word.  The module
also provides the transition-reversal variant (negated weights, initial
and final state swapped) and the self-loop unfolding into nine states,
together with bounded acceptance and universality checks that serve as
desk-scale stand-ins for the undecidable unbounded questions.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .pcp import PcpInstance

STATE_NAMES_5 = ("q0", "q1", "q2", "q3", "q4")
STATE_NAMES_9 = ("q0", "q1", "q2", "q3", "q4", "q5", "q6", "q7", "q8")


class AutomatonError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Transition:
    source: str
    letter: str
    target: str
    weight: int


@dataclass(frozen=True)
class WeightedAutomaton:
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    transitions: frozenset[Transition]
    initial: str
    finals: frozenset[str]

    def __post_init__(self) -> None:
        if self.initial not in self.states:
            raise AutomatonError(f"initial state {self.initial!r} not a state")
        if not self.finals <= set(self.states):
            raise AutomatonError("final states must be states")
        for t in self.transitions:
            if t.source not in self.states or t.target not in self.states:
                raise AutomatonError(f"transition {t} uses unknown states")
            if t.letter not in self.alphabet:
                raise AutomatonError(f"transition {t} uses unknown letter")

    def outgoing(self, state: str, letter: str) -> list[Transition]:
        return sorted(
            t for t in self.transitions if t.source == state and t.letter == letter
        )

    def sorted_transitions(self) -> list[Transition]:
        return sorted(self.transitions)


@dataclass(frozen=True)
class PathPrefix:
    """A chained transition sequence with its cached total weight."""

    transitions: tuple[Transition, ...]
    weight: int

    def __post_init__(self) -> None:
        for t1, t2 in zip(self.transitions, self.transitions[1:]):
            if t1.target != t2.source:
                raise AutomatonError(f"path breaks between {t1} and {t2}")
        if self.weight != sum(t.weight for t in self.transitions):
            raise AutomatonError("cached weight disagrees with step weights")

    @classmethod
    def of(cls, transitions: tuple[Transition, ...]) -> "PathPrefix":
        return cls(transitions, sum(t.weight for t in transitions))

    @property
    def word(self) -> str:
        return "".join(t.letter for t in self.transitions)

    @property
    def reached(self) -> str | None:
        return self.transitions[-1].target if self.transitions else None

    @property
    def states(self) -> tuple[str, ...]:
        if not self.transitions:
            return ()
        return (self.transitions[0].source,) + tuple(t.target for t in self.transitions)


@dataclass(frozen=True)
class AutConfiguration:
    state: str
    remaining: str
    weight: int


def path_weight(p: PathPrefix) -> int:
    return sum(t.weight for t in p.transitions)


def reverse_path(p: PathPrefix) -> PathPrefix:
    """The same walk traversed backwards, with each transition reversed and negated."""
    rev = tuple(
        Transition(t.target, t.letter, t.source, -t.weight)
        for t in reversed(p.transitions)
    )
    return PathPrefix.of(rev)


def step(cfg: AutConfiguration, t: Transition) -> AutConfiguration:
    if t.source != cfg.state:
        raise AutomatonError(f"transition leaves {t.source}, configuration is at {cfg.state}")
    if not cfg.remaining or cfg.remaining[0] != t.letter:
        raise AutomatonError(f"transition reads {t.letter!r}, next letter is {cfg.remaining[:1]!r}")
    return AutConfiguration(t.target, cfg.remaining[1:], cfg.weight + t.weight)


def build_solution_checker(inst: PcpInstance) -> WeightedAutomaton:
    """Compile a PCP instance into the 5-state solution-checking automaton.

    For every domain letter there are seven base transitions tracking
    s-scaled image-length differences, plus six indexed families that guess
    and verify a mismatch position by storing letter codes in the weight.
    """
    s = inst.s
    trans: set[Transition] = set()
    codes = [inst.code(b) for b in inst.image_alphabet]
    for a in inst.domain_alphabet:
        h, g = inst.h_images[a], inst.g_images[a]
        dh, dg = len(h), len(g)
        trans.add(Transition("q0", a, "q1", s * (dh - dg)))
        trans.add(Transition("q0", a, "q4", s * (dh - dg)))
        trans.add(Transition("q1", a, "q1", s * (dh - dg)))
        trans.add(Transition("q2", a, "q2", -s * dg))
        trans.add(Transition("q3", a, "q3", s * dh))
        trans.add(Transition("q1", a, "q4", 0))
        trans.add(Transition("q4", a, "q4", 0))
        h_codes = [inst.code(b) for b in h]
        g_codes = [inst.code(b) for b in g]
        # (1) guess the mismatch at position k of h(a), storing its letter code
        for k, jk in enumerate(h_codes, start=1):
            trans.add(Transition("q1", a, "q2", s * (k - dg) + jk))
        # (2) verify against position l of g(a): any code other than the letter there
        for ell, il in enumerate(g_codes, start=1):
            for c in codes:
                if c != il:
                    trans.add(Transition("q2", a, "q4", -s * ell - c))
        # (3) symmetric guess on the g side
        for k, jk in enumerate(g_codes, start=1):
            trans.add(Transition("q1", a, "q3", s * (-k + dh) - jk))
        # (4) symmetric verification on the h side
        for ell, il in enumerate(h_codes, start=1):
            for c in codes:
                if c != il:
                    trans.add(Transition("q3", a, "q4", s * ell + c))
        # (5) guess and verify within the same letter, read from q1
        for k, jk in enumerate(h_codes, start=1):
            for ell, il in enumerate(g_codes, start=1):
                for c in codes:
                    if c != il:
                        trans.add(Transition("q1", a, "q4", (k - ell) * s + jk - c))
        # (6) guess and verify within the first letter, read from q0
        for k in range(1, min(dh, dg) + 1):
            jk = h_codes[k - 1]
            ik = g_codes[k - 1]
            for c in codes:
                if c != ik:
                    trans.add(Transition("q0", a, "q4", jk - c))
    return WeightedAutomaton(
        states=STATE_NAMES_5,
        alphabet=inst.domain_alphabet,
        transitions=frozenset(trans),
        initial="q0",
        finals=frozenset({"q4"}),
    )


def reverse(aut: WeightedAutomaton) -> WeightedAutomaton:
    """Reverse every transition, negate its weight, and swap initial with final."""
    if len(aut.finals) != 1:
        raise AutomatonError("reversal needs a single final state")
    (final,) = aut.finals
    return WeightedAutomaton(
        states=aut.states,
        alphabet=aut.alphabet,
        transitions=frozenset(
            Transition(t.target, t.letter, t.source, -t.weight) for t in aut.transitions
        ),
        initial=final,
        finals=frozenset({aut.initial}),
    )


_PRIMED = {"q1": "q5", "q2": "q6", "q3": "q7", "q4": "q8"}


def unfold_self_loops(aut: WeightedAutomaton) -> WeightedAutomaton:
    """Replace self-loops on q1..q4 by bounces into primed copies q5..q8.

    Every deleted self-loop on qi becomes the pair of cross edges qi -> qi+4
    and qi+4 -> qi; all other transitions among q1..q4 are duplicated onto
    the primed copies, and edges touching q0 are duplicated with the primed
    endpoint.  Finals among q1..q4 gain their primed twin.
    """
    if tuple(aut.states) != STATE_NAMES_5:
        raise AutomatonError("unfolding expects the 5-state automaton q0..q4")
    trans: set[Transition] = set()
    for t in aut.transitions:
        if t.source == t.target:
            if t.source == "q0":
                raise AutomatonError("q0 self-loops are outside the construction")
            primed = _PRIMED[t.source]
            trans.add(Transition(t.source, t.letter, primed, t.weight))
            trans.add(Transition(primed, t.letter, t.source, t.weight))
        elif t.source == "q0":
            trans.add(t)
            trans.add(Transition("q0", t.letter, _PRIMED[t.target], t.weight))
        elif t.target == "q0":
            trans.add(t)
            trans.add(Transition(_PRIMED[t.source], t.letter, "q0", t.weight))
        else:
            trans.add(t)
            trans.add(Transition(_PRIMED[t.source], t.letter, _PRIMED[t.target], t.weight))
    finals = set()
    for f in aut.finals:
        finals.add(f)
        if f in _PRIMED:
            finals.add(_PRIMED[f])
    return WeightedAutomaton(
        states=STATE_NAMES_9,
        alphabet=aut.alphabet,
        transitions=frozenset(trans),
        initial=aut.initial,
        finals=frozenset(finals),
    )


def is_complete(aut: WeightedAutomaton) -> bool:
    pairs = {(t.source, t.letter) for t in aut.transitions}
    return all(
        (q, a) in pairs for q in aut.states for a in aut.alphabet
    )


def _paths_over(aut: WeightedAutomaton, w: str):
    """Depth-first enumeration of all chained transition tuples reading prefixes of w."""
    stack: list[tuple[str, int, tuple[Transition, ...]]] = [(aut.initial, 0, ())]
    while stack:
        state, pos, path = stack.pop()
        if path:
            yield path
        if pos < len(w):
            for t in sorted(aut.outgoing(state, w[pos]), reverse=True):
                stack.append((t.target, pos + 1, path + (t,)))


def enumerate_accepting_prefixes(
    aut: WeightedAutomaton, w: str, mode: str = "forward", bound: int = 64
) -> list[PathPrefix]:
    """All zero-weight path prefixes over prefixes of w that end in a final state.

    ``mode="forward"`` tests the plain prefix weight; ``mode="reverse-weight"``
    tests the weight of the reversed, negated transition sequence.  The two
    select the same paths (a sum and its negation vanish together); the mode
    fixes which weight the returned prefixes carry.
    """
    if mode not in ("forward", "reverse-weight"):
        raise AutomatonError(f"unknown mode {mode!r}")
    if len(w) > bound:
        raise AutomatonError(f"word of length {len(w)} exceeds bound {bound}")
    found = []
    for path in _paths_over(aut, w):
        if path[-1].target not in aut.finals:
            continue
        prefix = PathPrefix.of(path)
        if mode == "reverse-weight":
            prefix = reverse_path(prefix)
        if prefix.weight == 0:
            found.append(prefix)
    return found


def accepts_within(aut: WeightedAutomaton, w: str, bound: int = 64) -> bool:
    """True iff some prefix of w carries a zero-weight path into a final state."""
    if len(w) > bound:
        raise AutomatonError(f"word of length {len(w)} exceeds bound {bound}")
    for path in _paths_over(aut, w):
        if path[-1].target in aut.finals and sum(t.weight for t in path) == 0:
            return True
    return False


@dataclass(frozen=True)
class UniversalityVerdict:
    horizon: int
    counterexample: str | None

    @property
    def all_accepted(self) -> bool:
        return self.counterexample is None

    def __str__(self) -> str:
        if self.all_accepted:
            return f"AllAccepted({self.horizon})"
        return f"Counterexample({self.counterexample})"


def bounded_universality(
    aut: WeightedAutomaton, horizon: int, max_words: int = 1 << 20
) -> UniversalityVerdict:
    """Search all length-``horizon`` words for one with no accepted prefix.

    Words are tried in lexicographic order of the alphabet, so the reported
    counterexample is the least one.
    """
    if horizon < 1:
        raise AutomatonError("horizon must be positive")
    total = len(aut.alphabet) ** horizon
    if total > max_words:
        raise AutomatonError(f"{total} words exceed the safety cap {max_words}")
    for letters in itertools.product(sorted(aut.alphabet), repeat=horizon):
        w = "".join(letters)
        if not accepts_within(aut, w, bound=horizon):
            return UniversalityVerdict(horizon, w)
    return UniversalityVerdict(horizon, None)


def export_dot(aut: WeightedAutomaton) -> str:
    lines = ["digraph automaton {", "  rankdir=LR;", '  __init [shape=point,label=""];']
    for q in aut.states:
        shape = "doublecircle" if q in aut.finals else "circle"
        lines.append(f"  {q} [shape={shape}];")
    lines.append(f"  __init -> {aut.initial};")
    for t in aut.sorted_transitions():
        lines.append(f'  {t.source} -> {t.target} [label="{t.letter},{t.weight}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_EDGE = re.compile(r"^\s*(\w+) -> (\w+) \[label=\"(.+),(-?\d+)\"\];$")


def parse_dot_edges(text: str) -> list[Transition]:
    """Recover the edge multiset from DOT text produced by :func:`export_dot`."""
    edges = []
    for line in text.splitlines():
        m = _DOT_EDGE.match(line)
        if m:
            edges.append(Transition(m.group(1), m.group(3), m.group(2), int(m.group(4))))
    return sorted(edges)


def export_flat(aut: WeightedAutomaton) -> str:
    """One transition per line: ``from letter to weight``, sorted for diffing."""
    header = [
        "states " + " ".join(aut.states),
        "alphabet " + " ".join(aut.alphabet),
        "initial " + aut.initial,
        "finals " + " ".join(sorted(aut.finals)),
    ]
    body = [f"{t.source} {t.letter} {t.target} {t.weight}" for t in aut.sorted_transitions()]
    return "\n".join(header + body) + "\n"


def parse_flat(text: str) -> WeightedAutomaton:
    states: tuple[str, ...] = ()
    alphabet: tuple[str, ...] = ()
    initial = ""
    finals: frozenset[str] = frozenset()
    trans = set()
    for line in text.splitlines():
        if not line.strip():
            continue
        fields = line.split()
        if fields[0] == "states":
            states = tuple(fields[1:])
        elif fields[0] == "alphabet":
            alphabet = tuple(fields[1:])
        elif fields[0] == "initial":
            initial = fields[1]
        elif fields[0] == "finals":
            finals = frozenset(fields[1:])
        else:
            src, letter, dst, weight = fields
            trans.add(Transition(src, letter, dst, int(weight)))
    return WeightedAutomaton(states, alphabet, frozenset(trans), initial, finals)
