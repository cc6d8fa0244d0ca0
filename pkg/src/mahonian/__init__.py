"""Mahonian statistics on words over multisets: vincular pattern counting,
a descent-preserving word involution, and exhaustive equidistribution
checking."""

from .words import (
    DescentDecomposition,
    LetterProfile,
    Position,
    Word,
    as_word,
    classic_stat,
    definitional_stat,
    DEFINITIONAL_STATS,
    des,
    descent_blocks,
    duplicate_indices,
    embracing_numbers,
    format_blocks,
    format_word,
    inv,
    letter_profiles,
    maj,
    parse_word,
    positions,
    reduce,
    weak_embracing_numbers,
)
from .patterns import (
    BUILTIN_NAMES,
    PatternError,
    StatCombo,
    VincularPattern,
    builtin,
    count_occurrences,
    count_restricted,
    eval_combo,
    format_combo,
    format_pattern,
    parse_combo,
    parse_pattern,
    resolve_stat,
)
from .bijection import (
    Block,
    LetterRecord,
    NotConstructibleError,
    ValidityReport,
    delta,
    epsilon,
    f_map,
    h_combine,
    phi,
    phi_trace,
    v_insertion,
    validate_tuple_set,
    zeta,
)
from .enumeration import (
    class_size,
    distribution,
    enumerate_words,
    equidistributed,
    joint_distribution,
    maj_reference_polynomial,
    multiset_of,
    multiset_profiles,
)
from .miner import ExtensionCandidate, extension_candidates, mine, weaker_patterns

__version__ = "0.1.0"
