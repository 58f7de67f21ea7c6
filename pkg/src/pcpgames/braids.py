"""Braid words, Garside normal form, the reduced Burau oracle, and braid games.

Braid words are sequences of signed Artin generator indices with free
cancellation applied eagerly.  Equality modulo the braid relations is
decided through the left Garside normal form over permutation braids: a
power of the half twist followed by a left-weighted sequence of
permutation factors.  The reduced Burau representation of the three-strand
group (faithful there) serves as an independent triviality oracle, and a
bounded rewriting search provides a third, brute-force opinion on short
words.

The game encodings map binary-alphabet words into fourth powers of the
first two generators (three-strand case, with the squared half twist as a
central counter) and pairs of words into the two commuting free rank-2
subgroups of the five-strand group.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from . import freegroup as fg
from .freegroup import GroupWord


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    """Signed generator indices (i or -i, 1-based), freely cancelled."""

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.strands < 2:
            raise BraidError("braid groups need at least two strands")
        for x in self.letters:
            if x == 0 or abs(x) > self.strands - 1:
                raise BraidError(f"generator index {x} out of range for {self.strands} strands")
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise BraidError("braid word is not freely cancelled")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return concat(self, other)

    def __invert__(self) -> "BraidWord":
        return invert(self)

    def __len__(self) -> int:
        return len(self.letters)

    def render(self) -> str:
        return " ".join(str(x) for x in self.letters)


def braid(strands: int, letters: Iterable[int]) -> BraidWord:
    """Build a braid word, cancelling adjacent inverse generator pairs."""
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return BraidWord(strands, tuple(stack))


def parse_braid(strands: int, text: str) -> BraidWord:
    return braid(strands, (int(tok) for tok in text.split()))


def concat(u: BraidWord, v: BraidWord) -> BraidWord:
    if u.strands != v.strands:
        raise BraidError("strand counts differ")
    return braid(u.strands, u.letters + v.letters)


def invert(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple(-x for x in reversed(w.letters)))


def braid_power(w: BraidWord, n: int) -> BraidWord:
    base = w if n >= 0 else invert(w)
    out = BraidWord(w.strands, ())
    for _ in range(abs(n)):
        out = concat(out, base)
    return out


def fundamental_braid(n: int) -> BraidWord:
    """The positive half twist: (s_{n-1}..s_1)(s_{n-1}..s_2)...(s_{n-1})."""
    if n < 2:
        raise BraidError("fundamental braid needs at least two strands")
    letters = [j for i in range(1, n) for j in range(n - 1, i - 1, -1)]
    return BraidWord(n, tuple(letters))


def exponent_sum(w: BraidWord) -> int:
    """Signed letter count; a braid group homomorphism onto the integers."""
    return sum(1 if x > 0 else -1 for x in w.letters)


# --- permutation helpers (tuples map strand start position to end position) ---


def _identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def _gen_perm(n: int, i: int) -> tuple[int, ...]:
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """Left-to-right composition: apply p, then q (braid concatenation order)."""
    return tuple(q[x] for x in p)


def _inverse_perm(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def _longest_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n - 1, -1, -1))


def _starting_set(p: tuple[int, ...]) -> set[int]:
    """Generators that can begin the permutation braid: descents of p."""
    return {i for i in range(len(p) - 1) if p[i] > p[i + 1]}


def _finishing_set(p: tuple[int, ...]) -> set[int]:
    return _starting_set(_inverse_perm(p))


def _tau(p: tuple[int, ...]) -> tuple[int, ...]:
    """Conjugation by the half twist: flip positions on both sides."""
    n = len(p)
    return tuple(n - 1 - p[n - 1 - i] for i in range(n))


def _left_complement(p: tuple[int, ...]) -> tuple[int, ...]:
    """The braid x* with x* . x = half twist."""
    inv = _inverse_perm(p)
    w0 = _longest_perm(len(p))
    return _compose(w0, inv)


def perm_of_braid(w: BraidWord) -> tuple[int, ...]:
    """Image of the braid in the symmetric group (a triviality filter)."""
    p = _identity_perm(w.strands)
    for x in w.letters:
        p = _compose(p, _gen_perm(w.strands, abs(x)))
    return p


def linking_numbers(w: BraidWord) -> dict[tuple[int, int], int]:
    """Signed crossing count per strand pair (strands named by start position).

    Invariant under the braid relations, and zero on the trivial braid, so a
    nonzero entry certifies nontriviality of a pure braid cheaply.
    """
    positions = list(range(w.strands))  # position -> strand id
    counts: dict[tuple[int, int], int] = {}
    for x in w.letters:
        i = abs(x) - 1
        s, t = positions[i], positions[i + 1]
        pair = (min(s, t), max(s, t))
        counts[pair] = counts.get(pair, 0) + (1 if x > 0 else -1)
        positions[i], positions[i + 1] = positions[i + 1], positions[i]
    return {pair: value for pair, value in counts.items() if value}


@functools.lru_cache(maxsize=None)
def _renorm(x: tuple[int, ...], y: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Make the factor pair left-weighted by sliding head letters of y into x."""
    n = len(x)
    while True:
        movable = _starting_set(y) - _finishing_set(x)
        if not movable:
            return x, y
        s = min(movable)
        t = _gen_perm(n, s + 1)
        x = _compose(x, t)
        y = _compose(t, y)


@dataclass(frozen=True)
class GarsideNormalForm:
    """Half-twist power and left-weighted permutation factors; canonical."""

    strands: int
    power: int
    factors: tuple[tuple[int, ...], ...]

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def is_trivial(self) -> bool:
        return self.power == 0 and not self.factors

    def render(self) -> str:
        facs = " ".join("".join(str(v) for v in f) for f in self.factors)
        return f"D^{self.power} [{facs}]"


def _normalise_factors(n: int, factors: list[tuple[int, ...]]) -> tuple[int, tuple[tuple[int, ...], ...]]:
    ident = _identity_perm(n)
    w0 = _longest_perm(n)
    changed = True
    while changed:
        changed = False
        for i in range(len(factors) - 1):
            a, b = _renorm(factors[i], factors[i + 1])
            if (a, b) != (factors[i], factors[i + 1]):
                factors[i], factors[i + 1] = a, b
                changed = True
    lo = 0
    hi = len(factors)
    power = 0
    while lo < hi and factors[lo] == w0:
        power += 1
        lo += 1
    while lo < hi and factors[hi - 1] == ident:
        hi -= 1
    body = tuple(factors[lo:hi])
    assert all(f != ident and f != w0 for f in body), "normalisation left a trivial factor"
    return power, body


def garside_nf(w: BraidWord) -> GarsideNormalForm:
    """Left Garside normal form of a braid word.

    Negative letters are rewritten as a negative half-twist power times the
    left complement of the generator; the powers are commuted to the front
    through the flip automorphism, and the remaining positive factor
    sequence is made left-weighted.
    """
    n = w.strands
    factors: list[tuple[int, ...]] = []
    dpows: list[int] = []
    for x in w.letters:
        if x > 0:
            factors.append(_gen_perm(n, x))
            dpows.append(0)
        else:
            factors.append(_left_complement(_gen_perm(n, -x)))
            dpows.append(-1)
    power = 0
    for i in range(len(factors) - 1, -1, -1):
        if power % 2:
            factors[i] = _tau(factors[i])
        power += dpows[i]
    extra, body = _normalise_factors(n, factors)
    return GarsideNormalForm(n, power + extra, body)


def factor_word(perm: tuple[int, ...]) -> tuple[int, ...]:
    """A positive braid word (1-based indices) lifting a permutation factor."""
    word: list[int] = []
    current = perm
    while current != _identity_perm(len(perm)):
        s = min(_starting_set(current))
        word.append(s + 1)
        current = _compose(_gen_perm(len(perm), s + 1), current)
    return tuple(word)


def nf_to_braid(nf: GarsideNormalForm) -> BraidWord:
    """Rebuild a braid word from a normal form (half-twist power, then factors)."""
    out = braid_power(fundamental_braid(nf.strands), nf.power)
    for factor in nf.factors:
        out = concat(out, BraidWord(nf.strands, factor_word(factor)))
    return out


def braids_equal(u: BraidWord, v: BraidWord) -> bool:
    if u.strands != v.strands:
        raise BraidError("strand counts differ")
    return garside_nf(u) == garside_nf(v)


def is_trivial(w: BraidWord) -> bool:
    """Exact but always through the normal form; see is_trivial_fast."""
    return garside_nf(w).is_trivial()


def is_trivial_fast(w: BraidWord) -> bool:
    """Triviality with cheap certificates of nontriviality tried first.

    The exponent sum, the strand permutation, and the pairwise linking
    numbers are braid invariants; only words on which all of them vanish
    reach the expensive oracle (reduced Burau for three strands, which is
    faithful there; normal form otherwise).
    """
    if not w.letters:
        return True
    if exponent_sum(w) != 0:
        return False
    if perm_of_braid(w) != _identity_perm(w.strands):
        return False
    if linking_numbers(w):
        return False
    if w.strands == 3:
        return burau3(w) == _BURAU_IDENTITY
    return is_trivial(w)


def _relation_images(a: int, b: int, c: int) -> Iterable[tuple[int, int, int]]:
    """Signed forms of the braid relation applicable to the triple (a, b, c).

    All six are consequences of the positive relation aba = bab for adjacent
    generator indices; together with their mirror instances they form a
    bidirectional, length-preserving rewrite family.
    """
    if abs(abs(a) - abs(b)) != 1:
        return
    x, y = abs(a), abs(b)
    if (a, b, c) == (x, y, x):
        yield (y, x, y)
    elif (a, b, c) == (-x, -y, -x):
        yield (-y, -x, -y)
    elif (a, b, c) == (x, y, -x):
        yield (-y, x, y)
    elif (a, b, c) == (-x, y, x):
        yield (y, x, -y)
    elif (a, b, c) == (x, -y, -x):
        yield (-y, -x, y)
    elif (a, b, c) == (-x, -y, x):
        yield (y, -x, -y)


def _rewriting_neighbours(word: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
    n = len(word)
    for i in range(n - 1):
        a, b = word[i], word[i + 1]
        if a == -b:
            yield word[:i] + word[i + 2:]
        if abs(abs(a) - abs(b)) >= 2:
            yield word[:i] + (b, a) + word[i + 2:]
    for i in range(n - 2):
        for image in _relation_images(word[i], word[i + 1], word[i + 2]):
            yield word[:i] + image + word[i + 3:]


def trivial_by_search(w: BraidWord, max_states: int = 500_000) -> bool:
    """Bounded breadth-first rewriting search for the empty word.

    Moves are free cancellation, far commutation, and the six signed forms
    of the braid relation; all are length-non-increasing, so the search
    terminates.  A test oracle for short words, not a decision procedure.
    """
    start = w.letters
    seen = {start}
    queue = deque([start])
    while queue:
        if len(seen) > max_states:
            raise BraidError(f"rewriting search exceeded {max_states} states")
        current = queue.popleft()
        if not current:
            return True
        for nxt in _rewriting_neighbours(current):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


# --- reduced Burau representation of the three-strand group ---

Laurent = tuple[tuple[int, int], ...]  # sorted ((exponent, coefficient), ...)
LaurentMatrix = tuple[tuple[Laurent, Laurent], tuple[Laurent, Laurent]]


def lp(*terms: tuple[int, int]) -> Laurent:
    acc: dict[int, int] = {}
    for e, c in terms:
        acc[e] = acc.get(e, 0) + c
    return tuple(sorted((e, c) for e, c in acc.items() if c))


def lp_add(a: Laurent, b: Laurent) -> Laurent:
    return lp(*(a + b))

def lp_mul(a: Laurent, b: Laurent) -> Laurent:
    acc: dict[int, int] = {}
    for e1, c1 in a:
        for e2, c2 in b:
            acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
    return tuple(sorted((e, c) for e, c in acc.items() if c))


LP_ZERO: Laurent = ()
LP_ONE: Laurent = ((0, 1),)

_BURAU_IDENTITY: LaurentMatrix = ((LP_ONE, LP_ZERO), (LP_ZERO, LP_ONE))

_BURAU_GENERATORS: dict[int, LaurentMatrix] = {
    1: ((lp((1, -1)), LP_ONE), (LP_ZERO, LP_ONE)),
    -1: ((lp((-1, -1)), lp((-1, 1))), (LP_ZERO, LP_ONE)),
    2: ((LP_ONE, LP_ZERO), (lp((1, 1)), lp((1, -1)))),
    -2: ((LP_ONE, LP_ZERO), (LP_ONE, lp((-1, -1)))),
}


def burau_mul(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    return tuple(
        tuple(
            lp_add(lp_mul(a[i][0], b[0][j]), lp_mul(a[i][1], b[1][j]))
            for j in range(2)
        )
        for i in range(2)
    )  # type: ignore[return-value]


def burau3(w: BraidWord) -> LaurentMatrix:
    """Reduced Burau image of a three-strand braid word."""
    if w.strands != 3:
        raise BraidError("the reduced Burau oracle is wired for three strands only")
    out = _BURAU_IDENTITY
    for x in w.letters:
        out = burau_mul(out, _BURAU_GENERATORS[x])
    return out


def burau3_is_scalar(m: LaurentMatrix) -> bool:
    return m[0][1] == LP_ZERO and m[1][0] == LP_ZERO and m[0][0] == m[1][1]


# --- encodings into the three- and five-strand groups ---

_B3_LETTER = {("c", 1): (1,) * 4, ("c", -1): (-1,) * 4,
              ("d", 1): (2,) * 4, ("d", -1): (-2,) * 4}

DELTA3 = fundamental_braid(3)
DELTA3_SQUARED = braid_power(DELTA3, 2)


def b3_encode(w: GroupWord, counter: int = 0) -> BraidWord:
    """Binary-alphabet word into fourth generator powers, counter into central twists."""
    letters: list[int] = []
    for letter in w.letters:
        try:
            letters.extend(_B3_LETTER[letter])
        except KeyError:
            raise BraidError(f"letter {letter} is not in the binary alphabet") from None
    return concat(braid(3, letters), braid_power(DELTA3_SQUARED, counter))


B5_D_WORD = (4, 3, 2, 1, 1, 2, 3, 4)

_B5_FIRST = {("c", 1): (1,) * 4, ("c", -1): (-1,) * 4,
             ("d", 1): (2,) * 4, ("d", -1): (-2,) * 4}


def _b5_second_letter(rank: int, sign: int) -> tuple[int, ...]:
    if rank == 1:
        base: tuple[int, ...] = (4, 4)
    elif rank == 2:
        base = B5_D_WORD
    else:
        raise BraidError("the second component alphabet has rank two")
    return base if sign > 0 else tuple(-x for x in reversed(base))


def b5_encode(word: GroupWord, counter_word: GroupWord,
              counter_alphabet: fg.RankedAlphabet | None = None) -> BraidWord:
    """Pair of words into the direct product of two free rank-2 subgroups."""
    alphabet = counter_alphabet if counter_alphabet is not None else fg.COUNTER_ALPHABET
    letters: list[int] = []
    for letter in word.letters:
        try:
            letters.extend(_B5_FIRST[letter])
        except KeyError:
            raise BraidError(f"letter {letter} is not in the binary alphabet") from None
    for sym, sign in counter_word.letters:
        letters.extend(_b5_second_letter(alphabet.rank(sym), sign))
    return braid(5, letters)


# --- braid games ---


@dataclass(frozen=True)
class BraidGame:
    """Move braids plus the initial braid; the target is the trivial braid."""

    strands: int
    defender_braids: tuple[BraidWord, ...]
    attacker_braids: tuple[BraidWord, ...]
    initial_braid: BraidWord


def build_braid3_game(g) -> BraidGame:
    """Three-strand game from a binarized weighted word game."""
    from .wordgames import WeightedWordGame

    if not isinstance(g, WeightedWordGame):
        raise BraidError("the three-strand game is built from a weighted word game")
    if g.alphabet.symbols != fg.BINARY_SYMBOLS:
        raise BraidError("binarize the word game before encoding into braids")
    return BraidGame(
        strands=3,
        defender_braids=tuple(b3_encode(m.word, m.weight) for m in g.defender_moves),
        attacker_braids=tuple(b3_encode(m.word, m.weight) for m in g.attacker_moves),
        initial_braid=b3_encode(g.initial.word, g.initial.counter),
    )


def build_braid5_game(g) -> BraidGame:
    """Five-strand game from a binarized pair word game."""
    from .wordgames import PairWordGame

    if not isinstance(g, PairWordGame):
        raise BraidError("the five-strand game is built from a pair word game")
    if g.alphabet.symbols != fg.BINARY_SYMBOLS:
        raise BraidError("binarize the word game before encoding into braids")
    return BraidGame(
        strands=5,
        defender_braids=tuple(b5_encode(m.word, m.counter_word) for m in g.defender_moves),
        attacker_braids=tuple(b5_encode(m.word, m.counter_word) for m in g.attacker_moves),
        initial_braid=b5_encode(g.initial.word, g.initial.counter_word),
    )


def build_braid_game(g) -> BraidGame:
    """Dispatch on the game kind: weighted games go to three strands, pairs to five."""
    from .wordgames import PairWordGame, WeightedWordGame

    if isinstance(g, WeightedWordGame):
        return build_braid3_game(g)
    if isinstance(g, PairWordGame):
        return build_braid5_game(g)
    raise BraidError(f"cannot build a braid game from {type(g).__name__}")


def dump_braid_game(g: BraidGame) -> str:
    lines = [
        f"strands {g.strands}",
        f"initial {g.initial_braid.render()}".rstrip(),
    ]
    for m in g.defender_braids:
        lines.append(f"player=D braid={m.render()}")
    for m in g.attacker_braids:
        lines.append(f"player=A braid={m.render()}")
    return "\n".join(lines) + "\n"
