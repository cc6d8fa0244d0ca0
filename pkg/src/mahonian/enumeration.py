"""Exhaustive enumeration of rearrangement classes and exact statistic
distributions.

A rearrangement class is described by a multiset spec, a mapping
``value -> multiplicity``.  Enumeration is lexicographic via constant-space
next-rearrangement stepping, with rank/unrank support so a class can be
split into contiguous chunks for parallel counting.  Histograms are plain
integer Counters; equidistribution means exact equality, no tolerance.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterator, Mapping, Sequence

from . import words
from .patterns import StatCombo, eval_combo
from .words import Word

MultisetSpec = Mapping[int, int]

StatLike = StatCombo | Callable[[Word], int]


def check_spec(spec: MultisetSpec) -> dict[int, int]:
    out = {}
    for value, count in sorted(spec.items()):
        if value < 1 or count < 1:
            raise ValueError(f"bad multiset entry {value}:{count}")
        out[value] = count
    return out


def multiset_of(w: Sequence[int]) -> dict[int, int]:
    return dict(sorted(Counter(w).items()))


def class_size(spec: MultisetSpec) -> int:
    """Multinomial coefficient n! / prod(m_a!)."""
    spec = check_spec(spec)
    n = sum(spec.values())
    size = math.factorial(n)
    for count in spec.values():
        size //= math.factorial(count)
    return size


def format_spec(spec: MultisetSpec) -> str:
    return ",".join(f"{v}:{c}" for v, c in sorted(spec.items()))


def parse_spec(text: str) -> dict[int, int]:
    """Parse ``"1:2,2:1"``; a plain word like ``"1,1,2"`` also works."""
    s = text.strip()
    if not s:
        return {}
    if ":" not in s:
        return multiset_of(words.parse_word(s))
    spec: dict[int, int] = {}
    for chunk in s.split(","):
        v, _, c = chunk.partition(":")
        value, count = int(v), int(c)
        if value in spec:
            raise ValueError(f"value {value} listed twice in {text!r}")
        spec[value] = count
    return check_spec(spec)


def min_word(spec: MultisetSpec) -> Word:
    return tuple(v for v, c in sorted(check_spec(spec).items()) for _ in range(c))


def next_rearrangement(letters: list[int]) -> bool:
    """Step to the lexicographic successor in place; False at the last one."""
    n = len(letters)
    i = n - 2
    while i >= 0 and letters[i] >= letters[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while letters[j] <= letters[i]:
        j -= 1
    letters[i], letters[j] = letters[j], letters[i]
    letters[i + 1 :] = reversed(letters[i + 1 :])
    return True


def enumerate_words(spec: MultisetSpec) -> Iterator[Word]:
    """Every rearrangement exactly once, lexicographically ascending."""
    current = list(min_word(spec))
    if not current:
        yield ()
        return
    while True:
        yield tuple(current)
        if not next_rearrangement(current):
            return


def word_at_rank(spec: MultisetSpec, rank: int) -> Word:
    """The word at the given 0-based lexicographic rank."""
    remaining = dict(check_spec(spec))
    n = sum(remaining.values())
    total = class_size(spec)
    if not 0 <= rank < max(total, 1):
        raise ValueError(f"rank {rank} out of range for class of size {total}")
    out = []
    for pos in range(n):
        for value in sorted(remaining):
            if remaining[value] == 0:
                continue
            remaining[value] -= 1
            count = math.factorial(n - pos - 1)
            for c in remaining.values():
                count //= math.factorial(c)
            if rank < count:
                out.append(value)
                break
            rank -= count
            remaining[value] += 1
    return tuple(out)


def enumerate_range(spec: MultisetSpec, start: int, stop: int) -> Iterator[Word]:
    """Words with ranks in [start, stop), by stepping from the unranked start."""
    if stop <= start:
        return
    current = list(word_at_rank(spec, start))
    if not current:
        yield ()
        return
    for _ in range(stop - start):
        yield tuple(current)
        if not next_rearrangement(current):
            return


def _evaluator(stat: StatLike) -> Callable[[Word], int]:
    if isinstance(stat, StatCombo):
        return lambda w: eval_combo(stat, w)
    if callable(stat):
        return stat
    raise TypeError(f"expected a StatCombo or a callable, got {stat!r}")


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    bounds = []
    start = 0
    for i in range(parts):
        stop = start + step + (1 if i < extra else 0)
        bounds.append((start, stop))
        start = stop
    return bounds


def _counted(
    spec: MultisetSpec, key: Callable[[Word], object], threads: int
) -> Counter:
    total = class_size(spec)
    if threads <= 1 or total < 2:
        return Counter(key(w) for w in enumerate_words(spec))

    def chunk_counts(bounds: tuple[int, int]) -> Counter:
        start, stop = bounds
        return Counter(key(w) for w in enumerate_range(spec, start, stop))

    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(chunk_counts, _chunks(total, threads)))
    merged: Counter = Counter()
    for part in parts:
        merged.update(part)
    return merged


def distribution(stat: StatLike, spec: MultisetSpec, threads: int = 1) -> Counter:
    """Exact histogram of the statistic over the whole class."""
    fn = _evaluator(stat)
    return _counted(spec, fn, threads)


def joint_distribution(stat: StatLike, spec: MultisetSpec, threads: int = 1) -> Counter:
    """Exact histogram of (descents, statistic) pairs over the class."""
    fn = _evaluator(stat)
    return _counted(spec, lambda w: (words.des(w), fn(w)), threads)


def equidistributed(
    stat_a: StatLike,
    stat_b: StatLike,
    spec: MultisetSpec,
    joint_with_des: bool = False,
    threads: int = 1,
) -> bool:
    """Exact equality of (joint) histograms over the class."""
    if joint_with_des:
        return joint_distribution(stat_a, spec, threads) == joint_distribution(
            stat_b, spec, threads
        )
    return distribution(stat_a, spec, threads) == distribution(stat_b, spec, threads)


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    # b is monic in its top coefficient; the division must be exact.
    rem = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for shift in range(len(out) - 1, -1, -1):
        coef = rem[shift + len(b) - 1]
        out[shift] = coef
        if coef:
            for j, y in enumerate(b):
                rem[shift + j] -= coef * y
    if any(rem):
        raise ArithmeticError("polynomial division left a remainder")
    return out


def _q_bracket(k: int) -> list[int]:
    return [1] * k


def maj_reference_polynomial(spec: MultisetSpec) -> dict[int, int]:
    """Coefficients of the q-multinomial [n]_q! / prod [m_a]_q!.

    Computed by exact integer polynomial arithmetic, with no enumeration:
    the independent cross-check for the major index distribution.
    """
    spec = check_spec(spec)
    n = sum(spec.values())
    poly = [1]
    for k in range(1, n + 1):
        poly = _poly_mul(poly, _q_bracket(k))
    for count in spec.values():
        for k in range(2, count + 1):
            poly = _poly_divexact(poly, _q_bracket(k))
    return {i: c for i, c in enumerate(poly) if c}


def _compositions(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def multiset_profiles(max_size: int, min_size: int = 1) -> list[dict[int, int]]:
    """Every multiset shape of total size between the bounds, with values
    normalized to 1..k.  Statistics only see relative order, so this covers
    every rearrangement class up to relabeling."""
    out = []
    for n in range(min_size, max_size + 1):
        for comp in _compositions(n):
            out.append({v + 1: c for v, c in enumerate(comp)})
    return out
