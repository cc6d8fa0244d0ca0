"""The descent-preserving involution on words and its three stages.

``delta`` splits a word into one record per letter (value, duplicate
index, block position, strict right embracing number).  ``epsilon``
remaps the positions inside each value class: descent-bottom status stays
with the letter, descent-top status is taken from a partner chosen by a
queue construction that reverses the relative placement of descent tops
among equal letters.  ``zeta`` rebuilds the unique word realizing a record
set, inserting letters by ascending value and, within a value, descending
duplicate index.  ``phi`` is the composition; it is an involution that
preserves descents and swaps the two equal-letter adjacency counts
(``[21]2`` and ``2[21]``) while fixing the other five pattern counts.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .words import (
    Position,
    Word,
    as_word,
    duplicate_indices,
    embracing_numbers,
    positions,
)


class NotConstructibleError(ValueError):
    """No word can realize the record set; identifies the failing letter."""

    def __init__(self, message: str, value: int | None = None, dup_index: int | None = None):
        super().__init__(message)
        self.value = value
        self.dup_index = dup_index


class BijectionInternalError(RuntimeError):
    """A record set derived from a word failed to rebuild: a library bug."""


@dataclass(frozen=True)
class LetterRecord:
    """The (value, duplicate index, position, right embracing) record of
    one letter."""

    value: int
    dup_index: int
    position: Position
    r_embr: int

    @property
    def key(self) -> tuple[int, int]:
        return (self.value, self.dup_index)

    def __str__(self) -> str:
        return f"{self.value} {self.dup_index} {self.position.value} {self.r_embr}"


RecordSet = tuple[LetterRecord, ...]


def delta(w: Sequence[int]) -> RecordSet:
    """One record per letter, in word order.

    >>> [str(r) for r in delta((2, 1))]
    ['2 1 closer 0', '1 1 opener 0']
    """
    w = as_word(w)
    dups = duplicate_indices(w)
    pos = positions(w)
    right = embracing_numbers(w, "right")
    return tuple(
        LetterRecord(w[i], dups[i], pos[i], right[i]) for i in range(len(w))
    )


def canonical(records: Iterable[LetterRecord]) -> RecordSet:
    """Display order: by (value, duplicate index)."""
    return tuple(sorted(records, key=lambda r: r.key))


def format_records(records: Iterable[LetterRecord]) -> str:
    return "\n".join(str(r) for r in canonical(records))


def parse_records(text: str) -> RecordSet:
    """One record per line: ``value dup position r``, e.g. ``4 1 closer 0``."""
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected 'value dup position r', got {line!r}")
        try:
            value, dup, r = int(parts[0]), int(parts[1]), int(parts[3])
            pos = Position(parts[2])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if value < 1 or dup < 1 or r < 0:
            raise ValueError(f"line {lineno}: out-of-range field in {line!r}")
        records.append(LetterRecord(value, dup, pos, r))
    return tuple(records)


def restrict(records: Iterable[LetterRecord], value: int) -> RecordSet:
    return tuple(sorted((r for r in records if r.value == value), key=lambda r: r.dup_index))


def destop(records: Iterable[LetterRecord]) -> Counter:
    """Multiset of values at descent-top positions (insider or closer)."""
    return Counter(r.value for r in records if r.position.is_descent_top)


def desbot(records: Iterable[LetterRecord]) -> Counter:
    """Multiset of values at descent-bottom positions (insider or opener)."""
    return Counter(r.value for r in records if r.position.is_descent_bottom)


@dataclass
class Block:
    """One block of an insertion state: finite letters as (value, dup)
    pairs, plus an optional infinity marker standing for every larger
    letter not yet placed."""

    letters: list[tuple[int, int]] = field(default_factory=list)
    open: bool = False

    @property
    def max_value(self) -> int:
        return max(v for v, _ in self.letters)

    def sorted_letters(self) -> list[tuple[int, int]]:
        return sorted(self.letters, reverse=True)

    def __str__(self) -> str:
        body = " ".join(f"{v}_{d}" for v, d in self.sorted_letters())
        return ("∞" + body) if self.open else body


Insertion = list[Block]


def format_insertion(state: Sequence[Block]) -> str:
    return " - ".join(str(b) for b in state)


def v_insertion(w: Sequence[int], value: int, dup_index: int) -> Insertion:
    """Partial state of the rebuild right after letter (value, dup_index)
    is placed: larger letters (and earlier copies of the value) collapse
    to an infinity marker, blocks with nothing left disappear.

    >>> format_insertion(v_insertion((5, 2, 3, 5, 3, 4, 1, 5, 3, 1), 3, 2))
    '∞2_1 - ∞3_2 - ∞1_1 - ∞3_3 1_2'
    """
    w = as_word(w)
    if sum(1 for x in w if x == value) < dup_index:
        raise ValueError(f"word has fewer than {dup_index} copies of {value}")
    dups = duplicate_indices(w)
    from .words import descent_blocks

    state: Insertion = []
    for s, e in descent_blocks(w).blocks:
        kept: list[tuple[int, int]] = []
        collapsed = False
        for i in range(s, e):
            if w[i] < value or (w[i] == value and dups[i] >= dup_index):
                kept.append((w[i], dups[i]))
            else:
                collapsed = True
        if kept:
            state.append(Block(kept, open=collapsed))
    return state


def _grouped(records: Iterable[LetterRecord]) -> dict[int, dict[int, LetterRecord]]:
    """Group by value and check (value, dup) uniqueness and contiguity."""
    by_value: dict[int, dict[int, LetterRecord]] = {}
    for rec in records:
        group = by_value.setdefault(rec.value, {})
        if rec.dup_index in group:
            raise NotConstructibleError(
                f"duplicate record for letter ({rec.value},{rec.dup_index})",
                rec.value, rec.dup_index,
            )
        group[rec.dup_index] = rec
    for value, group in by_value.items():
        if sorted(group) != list(range(1, len(group) + 1)):
            raise NotConstructibleError(
                f"duplicate indices for value {value} are not 1..{len(group)}",
                value,
            )
    return by_value


def _insertion_order(by_value: dict[int, dict[int, LetterRecord]]) -> Iterator[LetterRecord]:
    """Values ascending; within a value, duplicate indices descending."""
    for value in sorted(by_value):
        group = by_value[value]
        for dup in range(len(group), 0, -1):
            yield group[dup]


def _replay(records: Iterable[LetterRecord]) -> Iterator[tuple[LetterRecord, Insertion]]:
    """Insert the records one by one, yielding the state after each step.

    The block receiving (or created for) a letter is chosen by counting
    embraceable open blocks from the right: a descent top joins the
    (e+1)-th such block (a closer also removes its marker); a non-top
    opens a new block immediately left of the e-th one, except that a
    later copy of a value never jumps past the block holding the previous
    copy.  With e = 0 the reference degenerates to one slot past the
    right end, i.e. the new block is appended.
    """
    by_value = _grouped(records)
    state: Insertion = []
    prev_block: Block | None = None
    prev_value: int | None = None
    for rec in _insertion_order(by_value):
        v, d, pos, e = rec.value, rec.dup_index, rec.position, rec.r_embr
        if v != prev_value:
            prev_block = None
            prev_value = v
        eobs = [i for i, b in enumerate(state) if b.open and b.max_value < v]
        if pos.is_descent_top:
            if len(eobs) < e + 1:
                raise NotConstructibleError(
                    f"letter ({v},{d}): needs embraceable open block {e + 1} from the"
                    f" right, only {len(eobs)} available", v, d,
                )
            target = state[eobs[-(e + 1)]]
            target.letters.append((v, d))
            if pos is Position.CLOSER:
                target.open = False
            prev_block = target
        else:
            if e == 0:
                anchor = len(state)
            elif len(eobs) < e:
                raise NotConstructibleError(
                    f"letter ({v},{d}): needs embraceable open block {e} from the"
                    f" right, only {len(eobs)} available", v, d,
                )
            else:
                anchor = eobs[-e]
            if prev_block is not None:
                prev_at = next(i for i, b in enumerate(state) if b is prev_block)
                anchor = min(anchor, prev_at)
            new = Block([(v, d)], open=(pos is Position.OPENER))
            state.insert(anchor, new)
            prev_block = new
        yield rec, state
    for b in state:
        if b.open:
            raise NotConstructibleError(
                "insertion finished with an unclosed open block"
                f" ({format_insertion(state)})"
            )


def zeta(records: Iterable[LetterRecord]) -> Word:
    """Rebuild the word whose record set is the input.

    >>> zeta(delta((4, 3, 1, 4, 4, 2)))
    (4, 3, 1, 4, 4, 2)
    """
    state: Insertion = []
    for _, state in _replay(records):
        pass
    return tuple(v for block in state for v, _ in block.sorted_letters())


def zeta_trace(records: Iterable[LetterRecord]) -> list[tuple[LetterRecord, str]]:
    """The insertion steps as (record, state display) pairs."""
    return [(rec, format_insertion(state)) for rec, state in _replay(records)]


def f_map(records: Iterable[LetterRecord], value: int) -> dict[LetterRecord, LetterRecord]:
    """Partner map within one value class.

    Scanning by increasing duplicate index, descent tops and non-tops go
    into two queues; the top/non-top indicator tuple is reversed and the
    image tuple rebuilt by popping from the matching queue.  Letters of a
    value occurring once map to themselves.
    """
    group = restrict(records, value)
    tops = deque(r for r in group if r.position.is_descent_top)
    nontops = deque(r for r in group if not r.position.is_descent_top)
    flags = [not r.position.is_descent_top for r in group]
    return {
        rec: (nontops.popleft() if flag else tops.popleft())
        for rec, flag in zip(group, reversed(flags))
    }


def h_combine(pos_a: Position, pos_c: Position) -> Position:
    """Position with descent-bottom status from ``pos_a`` and descent-top
    status from ``pos_c``."""
    bottom = pos_a.is_descent_bottom
    top = pos_c.is_descent_top
    if bottom and top:
        return Position.INSIDER
    if bottom:
        return Position.OPENER
    if top:
        return Position.CLOSER
    return Position.OUTSIDER


def epsilon(records: Iterable[LetterRecord]) -> RecordSet:
    """Swap descent-top statuses within each value class, keeping value,
    duplicate index and right embracing number."""
    records = tuple(records)
    partner: dict[LetterRecord, LetterRecord] = {}
    for value in sorted({r.value for r in records}):
        partner.update(f_map(records, value))
    return tuple(
        LetterRecord(
            r.value,
            r.dup_index,
            h_combine(r.position, partner[r].position),
            r.r_embr,
        )
        for r in records
    )


def phi(w: Sequence[int]) -> Word:
    """The involution: decompose, remap positions, rebuild.

    >>> phi((3, 5, 4, 4, 1, 1, 4, 2, 5, 3))
    (3, 5, 4, 1, 1, 4, 2, 4, 5, 3)
    """
    try:
        return zeta(epsilon(delta(w)))
    except NotConstructibleError as exc:
        raise BijectionInternalError(
            f"remapped record set of {w!r} failed to rebuild: {exc}"
        ) from exc


@dataclass(frozen=True)
class ThetaRow:
    source: LetterRecord
    partner: LetterRecord
    image: LetterRecord


@dataclass(frozen=True)
class PhiTrace:
    word: Word
    records: RecordSet
    partner_maps: tuple[tuple[int, tuple[tuple[LetterRecord, LetterRecord], ...]], ...]
    theta: tuple[ThetaRow, ...]
    steps: tuple[tuple[LetterRecord, str], ...]
    result: Word


def phi_trace(w: Sequence[int]) -> PhiTrace:
    """Everything `phi` computes, for display."""
    w = as_word(w)
    records = delta(w)
    partner: dict[LetterRecord, LetterRecord] = {}
    maps = []
    for value in sorted({r.value for r in records}):
        fm = f_map(records, value)
        partner.update(fm)
        maps.append((value, tuple(fm.items())))
    image = epsilon(records)
    theta = tuple(
        ThetaRow(rec, partner[rec], img) for rec, img in zip(records, image)
    )
    try:
        steps = zeta_trace(image)
    except NotConstructibleError as exc:
        raise BijectionInternalError(
            f"remapped record set of {w!r} failed to rebuild: {exc}"
        ) from exc
    result = zeta(image)
    return PhiTrace(w, records, tuple(maps), theta, tuple(steps), result)


CONDITION_BALANCE = "destop-desbot-balance"
CONDITION_V_CONSISTENCY = "v-consistency"
CONDITION_CONSTRUCTIBILITY = "constructibility"


@dataclass(frozen=True)
class ValidityReport:
    ok: bool
    violations: tuple[tuple[str, str], ...]

    def conditions(self) -> tuple[str, ...]:
        return tuple(cond for cond, _ in self.violations)

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "invalid:\n" + "\n".join(f"  [{c}] {d}" for c, d in self.violations)


def validate_tuple_set(records: Iterable[LetterRecord]) -> ValidityReport:
    """Check the three conditions a record set must satisfy to come from a
    word: equally many descent tops and bottoms; per-value consistency
    (unique contiguous duplicate indices, right embracing numbers
    non-increasing in the duplicate index); and per-value constructibility
    (enough embraceable open blocks, counted incrementally as descent
    bottoms minus descent tops of the smaller values)."""
    records = tuple(records)
    violations: list[tuple[str, str]] = []

    tops = destop(records)
    bots = desbot(records)
    if sum(tops.values()) != sum(bots.values()):
        violations.append((
            CONDITION_BALANCE,
            f"{sum(tops.values())} descent tops vs {sum(bots.values())} descent bottoms",
        ))

    by_value: dict[int, list[LetterRecord]] = {}
    seen: set[tuple[int, int]] = set()
    consistent = True
    for rec in records:
        if rec.key in seen:
            violations.append((
                CONDITION_V_CONSISTENCY,
                f"duplicate (value, dup_index) = {rec.key}",
            ))
            consistent = False
        seen.add(rec.key)
        by_value.setdefault(rec.value, []).append(rec)
    for value in sorted(by_value):
        group = sorted(by_value[value], key=lambda r: r.dup_index)
        dups = [r.dup_index for r in group]
        if dups != list(range(1, len(group) + 1)):
            violations.append((
                CONDITION_V_CONSISTENCY,
                f"value {value}: duplicate indices {dups} are not 1..{len(group)}",
            ))
            consistent = False
        if any(a.r_embr < b.r_embr for a, b in zip(group, group[1:])):
            violations.append((
                CONDITION_V_CONSISTENCY,
                f"value {value}: right embracing numbers increase with duplicate index",
            ))
            consistent = False

    if consistent:
        open_blocks = 0
        for value in sorted(by_value):
            group = by_value[value]
            need = max(r.r_embr for r in group)
            tops_here = sum(1 for r in group if r.position.is_descent_top)
            if need > open_blocks - tops_here:
                violations.append((
                    CONDITION_CONSTRUCTIBILITY,
                    f"value {value}: needs {need} embraceable open blocks after"
                    f" placing its {tops_here} descent tops, only {open_blocks}"
                    " open blocks available",
                ))
            bots_here = sum(1 for r in group if r.position.is_descent_bottom)
            open_blocks += bots_here - tops_here

    return ValidityReport(not violations, tuple(violations))
