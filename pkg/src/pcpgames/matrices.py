"""Integer matrix encodings of the word games and the robot game embedding.

Words over the binary alphabet map into 2x2 integer matrices generated by
the two elementary congruence-subgroup generators (entries ±2 off the
diagonal); pairs of words map block-diagonally into 4x4 matrices of
determinant one.  A matrix game configuration is the accumulated product of
the played matrices acting on the anchor row vector from the right, so the
word-to-matrix correspondence is a literal homomorphism statement.

The robot game embedding doubles the dimension: a move vector v becomes the
block matrix with identity diagonal blocks and diag(v) in the top right,
acting on column vectors extended by ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import freegroup as fg
from .freegroup import GroupWord, RankedAlphabet
from .wordgames import COUNTER_ALPHABET, PairWordGame

IntMatrix = tuple[tuple[int, ...], ...]
IntVector = tuple[int, ...]

ANCHOR_ROW: IntVector = (1, 0, 1, 0)
COLUMN_ANCHOR: IntVector = (0, 1, 0, 1)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n, k, m = len(a), len(b), len(b[0])
    assert all(len(row) == k for row in a), "dimension mismatch"
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m))
        for i in range(n)
    )


def row_vec_mul(v: IntVector, m: IntMatrix) -> IntVector:
    return tuple(sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0])))


def mat_vec_mul(m: IntMatrix, v: IntVector) -> IntVector:
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def det(m: IntMatrix) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1:] for row in m[1:])
        total += (-1) ** j * m[0][j] * det(minor)
    return total


_F_GENERATORS: dict[tuple[str, int], IntMatrix] = {
    ("c", 1): ((1, 2), (0, 1)),
    ("c", -1): ((1, -2), (0, 1)),
    ("d", 1): ((1, 0), (2, 1)),
    ("d", -1): ((1, 0), (-2, 1)),
}


def f_encode(w: GroupWord) -> IntMatrix:
    """Product of the generator images of a binary-alphabet word; f(ε) = I."""
    out = identity(2)
    for letter in w.letters:
        out = mat_mul(out, _F_GENERATORS[letter])
    return out


def block_diag(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n, m = len(a), len(b)
    top = tuple(row + (0,) * m for row in a)
    bottom = tuple((0,) * n + row for row in b)
    return top + bottom


def pair_encode(word: GroupWord, counter_word: GroupWord) -> IntMatrix:
    """4x4 block-diagonal image: f(word) upper left, f(alpha(counter)) lower right."""
    upper = f_encode(word)
    lower = f_encode(fg.alpha_encode(counter_word, COUNTER_ALPHABET))
    return block_diag(upper, lower)


def fixes_anchor(m: IntMatrix, anchor: IntVector = ANCHOR_ROW) -> bool:
    return row_vec_mul(anchor, m) == anchor


def closed_form_alpha_image(j: int) -> IntMatrix:
    """f of the rank-j letter image: ((1+4j, -8j^2), (2, 1-4j))."""
    return ((1 + 4 * j, -8 * j * j), (2, 1 - 4 * j))


def _reduced_word_count(rank: int, max_len: int) -> int:
    total, layer = 1, 1
    for n in range(1, max_len + 1):
        layer = layer * (2 * rank if n == 1 else 2 * rank - 1)
        total += layer
    return total


def anchor_lemma_holds(max_len: int, rank: int = 3, max_words: int = 200_000) -> bool:
    """Exhaustively check fixes-anchor implies identity on encoded words.

    Enumerates every reduced word of length <= max_len over a rank-``rank``
    alphabet, encodes it through the binary embedding and f, embeds it as the
    upper block of a 4x4 matrix, and requires that fixing the anchor row
    forces the identity matrix.
    """
    if _reduced_word_count(rank, max_len) > max_words:
        raise ValueError(f"enumeration would exceed the cap of {max_words} words")
    alphabet = RankedAlphabet(tuple(f"z{i}" for i in range(1, rank + 1)))
    for w in fg.all_reduced_words(alphabet.symbols, max_len):
        m = block_diag(f_encode(fg.alpha_encode(w, alphabet)), identity(2))
        if fixes_anchor(m) and m != identity(4):
            return False
    return True


def column_anchor_lemma_report(
    max_len: int, rank: int = 3, max_words: int = 200_000
) -> tuple[bool, str | None]:
    """The main-text column-vector variant: M x0 = x0 with x0 = (0,1,0,1)^T.

    Reported, not asserted: returns (holds, first counterexample word or None).
    """
    if _reduced_word_count(rank, max_len) > max_words:
        raise ValueError(f"enumeration would exceed the cap of {max_words} words")
    alphabet = RankedAlphabet(tuple(f"z{i}" for i in range(1, rank + 1)))
    for w in fg.all_reduced_words(alphabet.symbols, max_len):
        m = block_diag(f_encode(fg.alpha_encode(w, alphabet)), identity(2))
        if mat_vec_mul(m, COLUMN_ANCHOR) == COLUMN_ANCHOR and m != identity(4):
            return False, fg.render(w)
    return True, None


@dataclass(frozen=True)
class MatrixGame:
    """Move matrices plus the anchor; the two conventions share the type.

    ``convention="product"``: the configuration is the accumulated product,
    starting from the encoded initial word (the identity when the source
    game starts empty), and the target is fixing the anchor row.
    ``convention="vector"``: the configuration is a column vector (starting
    from the anchor) and the target is reaching ``target_vector``.
    """

    defender: tuple[IntMatrix, ...]
    attacker: tuple[IntMatrix, ...]
    dimension: int
    anchor: IntVector
    initial: IntMatrix | None = None  # product convention; None means identity
    target_vector: IntVector | None = None
    convention: str = "product"


def build_matrix_game(g: PairWordGame) -> MatrixGame:
    """Encode a binarized pair word game move-for-move into SL(4,Z).

    The accumulated product starts at the encoding of the initial pair, so
    reaching a product that fixes the anchor coincides with the word game
    reaching the empty pair (the word game starts on a nonempty word).
    """
    if g.alphabet.symbols != fg.BINARY_SYMBOLS:
        raise ValueError("matrix game needs the binarized pair game")
    return MatrixGame(
        defender=tuple(pair_encode(m.word, m.counter_word) for m in g.defender_moves),
        attacker=tuple(pair_encode(m.word, m.counter_word) for m in g.attacker_moves),
        dimension=4,
        anchor=ANCHOR_ROW,
        initial=pair_encode(g.initial.word, g.initial.counter_word),
        convention="product",
    )


def apply_matrix_move(accumulated: IntMatrix, m: IntMatrix) -> IntMatrix:
    """Right multiplication, matching word concatenation order."""
    return mat_mul(accumulated, m)


@dataclass(frozen=True)
class RobotGame:
    attacker: tuple[IntVector, ...]
    defender: tuple[IntVector, ...]
    initial: IntVector
    target: IntVector
    dimension: int


def _shift_matrix(v: IntVector) -> IntMatrix:
    n = len(v)
    rows = []
    for i in range(n):
        rows.append(tuple(1 if j == i else (v[i] if j == i + n else 0) for j in range(2 * n)))
    for i in range(n):
        rows.append(tuple(1 if j == i + n else 0 for j in range(2 * n)))
    return tuple(rows)


def robot_to_matrix_game(r: RobotGame) -> MatrixGame:
    """Dimension-2n matrix game whose vector configurations mirror the robot game."""
    n = r.dimension
    if any(len(v) != n for v in r.attacker + r.defender + (r.initial, r.target)):
        raise ValueError("robot game vectors must all have the declared dimension")
    return MatrixGame(
        defender=tuple(_shift_matrix(v) for v in r.defender),
        attacker=tuple(_shift_matrix(v) for v in r.attacker),
        dimension=2 * n,
        anchor=r.initial + (1,) * n,
        target_vector=r.target + (1,) * n,
        convention="vector",
    )


def render_matrix(m: IntMatrix) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in m)


def dump_matrix_game(g: MatrixGame) -> str:
    lines = [
        f"# dimension={g.dimension} convention={g.convention}",
        "# anchor " + " ".join(str(x) for x in g.anchor),
    ]
    if g.target_vector is not None:
        lines.append("# target " + " ".join(str(x) for x in g.target_vector))
    if g.initial is not None:
        lines.append("# initial")
        lines.append(render_matrix(g.initial))
        lines.append("")
    for label, matrices in (("D", g.defender), ("A", g.attacker)):
        for i, m in enumerate(matrices):
            lines.append(f"# player={label} move={i}")
            lines.append(render_matrix(m))
            lines.append("")
    return "\n".join(lines)
