"""Generate candidate pattern-combination extensions and filter them by
brute-force equidistribution with the word major index.

A weaker pattern is obtained by decrementing one pattern letter so that it
collides with a smaller one (creating an equality) and re-reducing; a
candidate extension adds some weaker patterns of the base terms, each with
coefficient 1.  Passing the filter on every test class is experimental
evidence of Mahonity, not a proof.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import itertools

from .enumeration import MultisetSpec, distribution, format_spec
from .patterns import StatCombo, VincularPattern, builtin, format_combo
from .words import rank_values


def weaker_patterns(p: VincularPattern) -> tuple[VincularPattern, ...]:
    """All distinct weakenings of a pattern with distinct letters.

    Decrementing a letter equal to 1 reproduces the pattern after
    reduction and is excluded.

    >>> [str(q) for q in weaker_patterns(VincularPattern((2, 3, 1), 2))]
    ['1[21]', '2[21]']
    """
    if len(set(p.letters)) != len(p.letters):
        raise ValueError(f"weaker patterns need distinct letters, got {p}")
    out = set()
    for i, letter in enumerate(p.letters):
        if letter == 1:
            continue
        lowered = list(p.letters)
        lowered[i] = letter - 1
        out.add(VincularPattern(rank_values(lowered), p.adjacency))
    return tuple(sorted(out, key=VincularPattern.sort_key))


@dataclass(frozen=True)
class ExtensionCandidate:
    base: StatCombo
    added: tuple[VincularPattern, ...]

    def combo(self) -> StatCombo:
        terms = self.base.terms + tuple((1, p) for p in self.added)
        return StatCombo(terms)

    def __str__(self) -> str:
        return format_combo(self.combo())


def extension_candidates(base: StatCombo, add_count: int) -> list[ExtensionCandidate]:
    """Every way to add ``add_count`` distinct weaker patterns drawn from
    the base terms' weaker sets, in deterministic order."""
    pool: set[VincularPattern] = set()
    for _, pat in base.terms:
        pool.update(weaker_patterns(pat))
    ordered = sorted(pool, key=VincularPattern.sort_key)
    return [
        ExtensionCandidate(base, chosen)
        for chosen in itertools.combinations(ordered, add_count)
    ]


@dataclass(frozen=True)
class MineResult:
    candidate: ExtensionCandidate
    passed: bool
    first_failure: tuple[tuple[int, int], ...] | None  # multiset spec items

    def line(self) -> str:
        if self.passed:
            return f"{self.candidate} PASS"
        failed = format_spec(dict(self.first_failure))
        return f"{self.candidate} FAIL @ {failed}"


def mine(
    base: StatCombo,
    add_count: int,
    test_multisets: Sequence[MultisetSpec],
    threads: int = 1,
) -> list[MineResult]:
    """Filter the candidate extensions: keep those whose distribution
    matches the word major index exactly on every test class."""
    candidates = extension_candidates(base, add_count)
    reference = {
        tuple(sorted(spec.items())): distribution(builtin("maj_word"), spec)
        for spec in test_multisets
    }

    def check(candidate: ExtensionCandidate) -> MineResult:
        combo = candidate.combo()
        for spec in test_multisets:
            key = tuple(sorted(spec.items()))
            if distribution(combo, spec) != reference[key]:
                return MineResult(candidate, False, key)
        return MineResult(candidate, True, None)

    if threads <= 1 or len(candidates) < 2:
        return [check(c) for c in candidates]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(check, candidates))


def passing(results: Sequence[MineResult]) -> list[ExtensionCandidate]:
    return [r.candidate for r in results if r.passed]


MINE_BASES = {
    "mad": "mad_perm",
    "madl": "madl_perm",
    "mak": "mak_perm",
    "makl": "makl_perm",
}


def base_combo(name_or_text: str) -> StatCombo:
    """A miner base: one of the four named bases or combination grammar."""
    from .patterns import resolve_stat

    if name_or_text in MINE_BASES:
        return builtin(MINE_BASES[name_or_text])
    return resolve_stat(name_or_text)
