"""Words over multisets: descent structure, embracing numbers, and the
statistics defined directly from them.

A word is a finite sequence of positive integer letters, e.g.
``(4, 3, 1, 4, 4, 2)``.  Its maximal strictly decreasing runs are the
descent blocks; the display form ``431-4-42`` marks block boundaries with
dashes.  Every statistic in this module depends only on the relative order
(and equalities) of the letters, never on the actual values, and every
function is pure.

Three embracing rules coexist and are deliberately kept apart:

* ``embracing_numbers`` -- strict straddling pairs ``w_j > a > w_{j+1}``;
  this is the rule the bijection machinery consumes.
* ``weak_embracing_numbers`` -- weak pairs ``w_j >= a > w_{j+1}``; this is
  the rule behind the definitional ``Res``/``Les`` sums.
* ``interval_embracing_numbers`` -- blocks with ``opener < a < closer``;
  exposed for study only.  It differs from the strict pair rule exactly
  when ``a`` equals an interior letter of a block.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple[int, ...]


class Position(enum.Enum):
    """Where a letter sits inside its descent block.

    A letter alone in its block is an outsider.  In a block of length at
    least two, the leftmost (largest) letter is the closer, the rightmost
    (smallest) is the opener, and strictly interior letters are insiders.
    """

    OPENER = "opener"
    CLOSER = "closer"
    INSIDER = "insider"
    OUTSIDER = "outsider"

    @property
    def is_descent_top(self) -> bool:
        return self in (Position.INSIDER, Position.CLOSER)

    @property
    def is_descent_bottom(self) -> bool:
        return self in (Position.INSIDER, Position.OPENER)

    def __str__(self) -> str:  # pragma: no cover - trivial
        return self.value


def as_word(letters: Iterable[int]) -> Word:
    """Validate and freeze a letter sequence: every letter must be >= 1."""
    w = tuple(letters)
    for x in w:
        if not isinstance(x, int) or isinstance(x, bool) or x < 1:
            raise ValueError(f"letters must be positive integers, got {x!r}")
    return w


def parse_word(text: str) -> Word:
    """Parse a word from text.

    The canonical form is comma separated (``"3,5,4,4,1,1,4,2,5,3"``).
    Dashes are accepted as block decorations and ignored: a dashed form
    without commas (``"3-54-41-1-42-53"``) is read one digit per letter.
    """
    s = text.strip()
    if not s:
        return ()
    if "," in s:
        tokens = [t for t in re.split(r"[-,\s]+", s) if t]
        return as_word(int(t) for t in tokens)
    if "-" in s:
        digits = s.replace("-", "").replace(" ", "")
        if not digits.isdigit():
            raise ValueError(f"cannot parse word from {text!r}")
        return as_word(int(c) for c in digits)
    if not s.isdigit():
        raise ValueError(f"cannot parse word from {text!r}")
    return as_word((int(s),))


def format_word(w: Sequence[int]) -> str:
    """Canonical comma-separated form."""
    return ",".join(str(x) for x in w)


def format_blocks(w: Sequence[int]) -> str:
    """Display form with dashes at descent block boundaries.

    Single-digit words use the compact digit form (``431-4-42``); anything
    else keeps commas inside blocks so the text stays parseable.
    """
    w = tuple(w)
    if not w:
        return ""
    blocks = descent_blocks(w).blocks
    if max(w) > 9 or len(blocks) == 1:
        return "-".join(",".join(str(x) for x in w[s:e]) for s, e in blocks)
    return "-".join("".join(str(x) for x in w[s:e]) for s, e in blocks)


def reduce(seq: Sequence[int]) -> Word:
    """Replace the i-th smallest letter by i (defined on distinct letters).

    >>> reduce((8, 5, 1, 6))
    (4, 2, 1, 3)
    """
    if len(set(seq)) != len(seq):
        raise ValueError("reduce is only defined for distinct letters")
    return rank_values(seq)


def rank_values(seq: Sequence[int]) -> Word:
    """Rank letters by value, equal letters getting equal ranks."""
    ranks = {v: i + 1 for i, v in enumerate(sorted(set(seq)))}
    return tuple(ranks[v] for v in seq)


def duplicate_indices(w: Sequence[int]) -> tuple[int, ...]:
    """Left-to-right occurrence counter per value: the k-th copy gets k.

    >>> duplicate_indices((4, 3, 1, 4, 4, 2))
    (1, 1, 1, 2, 3, 1)
    """
    seen: dict[int, int] = {}
    out = []
    for x in w:
        seen[x] = seen.get(x, 0) + 1
        out.append(seen[x])
    return tuple(out)


@dataclass(frozen=True)
class DescentDecomposition:
    """Partition of a word into maximal strictly decreasing runs.

    ``blocks`` holds half-open index ranges ``(start, stop)``; ``positions``
    holds one :class:`Position` per letter.
    """

    blocks: tuple[tuple[int, int], ...]
    positions: tuple[Position, ...]


def descent_blocks(w: Sequence[int]) -> DescentDecomposition:
    """Cut the word before every weak ascent (``w_i <= w_{i+1}``)."""
    n = len(w)
    blocks = []
    start = 0
    for i in range(n - 1):
        if w[i] <= w[i + 1]:
            blocks.append((start, i + 1))
            start = i + 1
    if n:
        blocks.append((start, n))
    positions: list[Position] = []
    for s, e in blocks:
        if e - s == 1:
            positions.append(Position.OUTSIDER)
        else:
            positions.append(Position.CLOSER)
            positions.extend([Position.INSIDER] * (e - s - 2))
            positions.append(Position.OPENER)
    return DescentDecomposition(tuple(blocks), tuple(positions))


def positions(w: Sequence[int]) -> tuple[Position, ...]:
    return descent_blocks(w).positions


def _pair_embracing(w: Sequence[int], side: str, weak: bool) -> tuple[int, ...]:
    n = len(w)
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    pairs = [j for j in range(n - 1) if w[j] > w[j + 1]]
    out = []
    for i in range(n):
        a = w[i]
        if side == "right":
            near = (j for j in pairs if j > i)
        else:
            near = (j for j in pairs if j + 1 < i)
        if weak:
            out.append(sum(1 for j in near if w[j] >= a > w[j + 1]))
        else:
            out.append(sum(1 for j in near if w[j] > a > w[j + 1]))
    return tuple(out)


def embracing_numbers(w: Sequence[int], side: str = "right") -> tuple[int, ...]:
    """Strict embracing: blocks on the given side with a consecutive pair
    straddling the letter (``w_j > a > w_{j+1}``).

    >>> embracing_numbers((3, 6, 1, 7, 8, 4))
    (2, 1, 0, 1, 0, 0)
    """
    return _pair_embracing(w, side, weak=False)


def weak_embracing_numbers(w: Sequence[int], side: str = "right") -> tuple[int, ...]:
    """Weak embracing (``w_j >= a > w_{j+1}``); feeds the definitional
    ``Res`` and ``Les`` sums."""
    return _pair_embracing(w, side, weak=True)


def interval_embracing_numbers(w: Sequence[int], side: str = "right") -> tuple[int, ...]:
    """Block-interval embracing: blocks with ``opener < a < closer``.

    Not used by any statistic here; kept for comparison with the strict
    pair rule, from which it differs when ``a`` equals an interior letter
    of a block.
    """
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    blocks = descent_blocks(w).blocks
    out = []
    for i in range(len(w)):
        a = w[i]
        count = 0
        for s, e in blocks:
            if side == "right" and s > i or side == "left" and e <= i:
                if e - s >= 2 and w[e - 1] < a < w[s]:
                    count += 1
        out.append(count)
    return tuple(out)


def descent_positions(w: Sequence[int]) -> tuple[int, ...]:
    """0-based indices i with ``w_i > w_{i+1}``."""
    return tuple(i for i in range(len(w) - 1) if w[i] > w[i + 1])


def des(w: Sequence[int]) -> int:
    return len(descent_positions(w))


def maj(w: Sequence[int]) -> int:
    """Sum of 1-based descent positions."""
    return sum(i + 1 for i in descent_positions(w))


def inv(w: Sequence[int]) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def classic_stat(w: Sequence[int], name: str) -> int:
    try:
        fn = {"des": des, "maj": maj, "inv": inv}[name]
    except KeyError:
        raise ValueError(f"unknown classic statistic {name!r}") from None
    return fn(w)


def _height(w: Sequence[int], i: int) -> int:
    """Number of letters strictly smaller than ``w_i``, plus 1."""
    return sum(1 for x in w if x < w[i]) + 1


def _eq_left(w: Sequence[int], i: int) -> int:
    return sum(1 for j in range(i) if w[j] == w[i])


def _eq_right(w: Sequence[int], i: int) -> int:
    return sum(1 for j in range(i + 1, len(w)) if w[j] == w[i])


def descent_top_indices(w: Sequence[int]) -> tuple[int, ...]:
    return descent_positions(w)


def descent_bottom_indices(w: Sequence[int]) -> tuple[int, ...]:
    return tuple(i + 1 for i in descent_positions(w))


def _dtop(w: Sequence[int]) -> int:
    return sum(_height(w, i) for i in descent_top_indices(w))


def _dbot_l(w: Sequence[int]) -> int:
    return sum(_height(w, i) + _eq_left(w, i) for i in descent_bottom_indices(w))


def _dbot_r(w: Sequence[int]) -> int:
    return sum(_height(w, i) + _eq_right(w, i) for i in descent_bottom_indices(w))


def _res(w: Sequence[int]) -> int:
    return sum(weak_embracing_numbers(w, "right"))


def _les(w: Sequence[int]) -> int:
    return sum(weak_embracing_numbers(w, "left"))


_DEFINITIONAL = {
    "height_sum_desbot": lambda w: sum(_height(w, i) for i in descent_bottom_indices(w)),
    "Dtop": _dtop,
    "Dbot_l": _dbot_l,
    "Dbot_r": _dbot_r,
    "Ddif_l": lambda w: _dtop(w) - _dbot_l(w),
    "Ddif_r": lambda w: _dtop(w) - _dbot_r(w),
    "Res": _res,
    "Les": _les,
    "mak_l": lambda w: _dbot_l(w) + _res(w),
    "mak_r": lambda w: _dbot_r(w) + _res(w),
    "mad_l": lambda w: _dtop(w) - _dbot_l(w) + _res(w),
    "mad_r": lambda w: _dtop(w) - _dbot_r(w) + _res(w),
    "makl_l": lambda w: _dbot_l(w) + _les(w),
    "makl_r": lambda w: _dbot_r(w) + _les(w),
    "madl_l": lambda w: _dtop(w) - _dbot_l(w) + _les(w),
    "madl_r": lambda w: _dtop(w) - _dbot_r(w) + _les(w),
}

DEFINITIONAL_STATS = tuple(_DEFINITIONAL)


def definitional_stat(w: Sequence[int], name: str) -> int:
    """Statistic computed straight from heights, equal-letter counts and
    weak embracing sums -- never from pattern combinations.  These serve as
    the independent oracles for the pattern-combination identities.
    """
    try:
        fn = _DEFINITIONAL[name]
    except KeyError:
        raise ValueError(f"unknown definitional statistic {name!r}") from None
    return fn(w)


@dataclass(frozen=True)
class LetterProfile:
    """Per-letter record: value, duplicate index, block position, and the
    strict embracing numbers on both sides."""

    value: int
    dup_index: int
    position: Position
    r_embr: int
    l_embr: int


def letter_profiles(w: Sequence[int]) -> tuple[LetterProfile, ...]:
    dups = duplicate_indices(w)
    pos = positions(w)
    right = embracing_numbers(w, "right")
    left = embracing_numbers(w, "left")
    return tuple(
        LetterProfile(w[i], dups[i], pos[i], right[i], left[i]) for i in range(len(w))
    )
