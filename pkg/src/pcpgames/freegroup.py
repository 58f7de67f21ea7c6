"""Freely reduced words over symmetric (group) alphabets.

A letter is a pair ``(symbol, sign)`` with ``sign`` in ``{+1, -1}``; the
negative sign denotes the formal inverse of the symbol.  Words are kept
freely reduced at all times, so equality of group elements is plain
sequence equality.

The module also provides the rank-indexed embedding of an arbitrary
symmetric alphabet into the binary group alphabet ``{c, d}``: the letter
of rank ``i`` maps to ``c^i d c^-i`` (inverse letters to ``c^i d^-1 c^-i``).
This embedding is injective, which downstream encodings rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Letter = tuple[str, int]

BINARY_SYMBOLS = ("c", "d")


@dataclass(frozen=True)
class RankedAlphabet:
    """A symmetric alphabet whose symbols carry 1-based ranks in declaration order."""

    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"duplicate symbols in alphabet: {self.symbols}")

    def rank(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol) + 1
        except ValueError:
            raise KeyError(f"symbol {symbol!r} has no rank in {self.symbols}") from None

    def symbol(self, rank: int) -> str:
        if not 1 <= rank <= len(self.symbols):
            raise KeyError(f"rank {rank} out of range 1..{len(self.symbols)}")
        return self.symbols[rank - 1]

    def __contains__(self, symbol: str) -> bool:
        return symbol in self.symbols

    def __len__(self) -> int:
        return len(self.symbols)


BINARY_ALPHABET = RankedAlphabet(BINARY_SYMBOLS)

# Unary counter words use the rank-1 letter of this alphabet; the second
# letter only exists because the five-strand encoding offers a rank-2 target.
COUNTER_SYMBOL = "r"
COUNTER_ALPHABET = RankedAlphabet((COUNTER_SYMBOL, "t"))


@dataclass(frozen=True)
class GroupWord:
    """A freely reduced word; ``letters`` never contains an adjacent inverse pair."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        for (s1, g1), (s2, g2) in zip(self.letters, self.letters[1:]):
            if s1 == s2 and g1 == -g2:
                raise ValueError(f"word is not freely reduced at {s1!r}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return concat(self, other)

    def __invert__(self) -> "GroupWord":
        return invert(self)

    def __str__(self) -> str:
        return render(self)


EPSILON = GroupWord()


def reduce(raw: Iterable[Letter]) -> GroupWord:
    """Freely reduce a letter sequence by cancelling adjacent inverse pairs."""
    stack: list[Letter] = []
    for sym, sign in raw:
        if sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {sign}")
        if stack and stack[-1][0] == sym and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((sym, sign))
    return GroupWord(tuple(stack))


def word(*syms: str) -> GroupWord:
    """Build a word from rendered tokens, ``~`` marking inverse letters."""
    return reduce(
        (s[1:], -1) if s.startswith("~") else (s, 1) for s in syms
    )


def concat(u: GroupWord, v: GroupWord) -> GroupWord:
    """Product u.v in the free group (append from the right, then cancel)."""
    left = list(u.letters)
    i = 0
    vl = v.letters
    while left and i < len(vl) and left[-1][0] == vl[i][0] and left[-1][1] == -vl[i][1]:
        left.pop()
        i += 1
    return GroupWord(tuple(left) + vl[i:])


def invert(w: GroupWord) -> GroupWord:
    return GroupWord(tuple((sym, -sign) for sym, sign in reversed(w.letters)))


def power(w: GroupWord, n: int) -> GroupWord:
    base = w if n >= 0 else invert(w)
    out = EPSILON
    for _ in range(abs(n)):
        out = concat(out, base)
    return out


def is_identity(w: GroupWord) -> bool:
    return not w.letters


def render(w: GroupWord) -> str:
    """Text form: tokens whitespace-separated, inverses prefixed with ``~``."""
    return " ".join(("~" + sym) if sign < 0 else sym for sym, sign in w.letters)


def parse(text: str) -> GroupWord:
    """Inverse of :func:`render`; whitespace-only text parses to the empty word."""
    return word(*text.split())


def alpha_encode(w: GroupWord, alphabet: RankedAlphabet) -> GroupWord:
    """Embed a word over ``alphabet`` into the binary alphabet, letterwise.

    The rank-``i`` letter maps to ``c^i d c^-i`` and its inverse to
    ``c^i d^-1 c^-i``; the images are concatenated and reduced.
    """
    c, d = BINARY_SYMBOLS
    out: list[Letter] = []
    for sym, sign in w.letters:
        i = alphabet.rank(sym)
        block = [(c, 1)] * i + [(d, sign)] + [(c, -1)] * i
        out.extend(block)
    return reduce(out)


def alpha_decode(w: GroupWord, alphabet: RankedAlphabet) -> GroupWord | None:
    """Partial inverse of :func:`alpha_encode`.

    Greedily scans the reduced word, tracking the net c-depth; every d-letter
    read at depth ``i`` contributes the rank-``i`` source letter.  In a reduced
    image the closing ``c^-i`` of one block merges with the opening ``c^j`` of
    the next, so the depth walk recovers the block structure directly.  The
    candidate is re-encoded as a final check; anything that stalls the scan or
    fails the check yields ``None`` (decode is only used on encoder outputs).
    """
    c, d = BINARY_SYMBOLS
    out: list[Letter] = []
    depth = 0
    for sym, sign in w.letters:
        if sym == c:
            depth += sign
        elif sym == d:
            if depth < 1 or depth > len(alphabet):
                return None
            out.append((alphabet.symbol(depth), sign))
        else:
            return None
    if depth != 0:
        return None
    decoded = reduce(out)
    if alpha_encode(decoded, alphabet) != w:
        return None
    return decoded


def all_reduced_words(alphabet: Sequence[str], max_len: int) -> Iterable[GroupWord]:
    """Every freely reduced word of length <= max_len, shorter words first."""
    frontier: list[GroupWord] = [EPSILON]
    yield EPSILON
    for _ in range(max_len):
        nxt: list[GroupWord] = []
        for w in frontier:
            for sym in alphabet:
                for sign in (1, -1):
                    if w.letters and w.letters[-1] == (sym, -sign):
                        continue
                    grown = GroupWord(w.letters + ((sym, sign),))
                    nxt.append(grown)
                    yield grown
        frontier = nxt
