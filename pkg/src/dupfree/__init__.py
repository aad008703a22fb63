"""Duplication-free codes for disjoint and equal-length tandem-duplication channels."""

from .channel import (
    CorruptionTrace,
    DisjointPlan,
    apply_disjoint,
    apply_trace,
    sample_corruption,
)
from .codes import (
    Code,
    LengthSpec,
    count_code,
    enumerate_code,
    is_codeword,
    make_length_spec,
    rate,
)
from .decoder import DecodeResult, decode_bruteforce, decode_equal_length, decode_uniform
from .oracle import (
    DescendantSet,
    VerificationReport,
    check_lemma_eqmidcover,
    check_lemma_neqmidcover,
    confusable,
    descendants,
    negative_control,
    verify_theorem,
)
from .transform import (
    ZeroRunDecomposition,
    extract_disjoint_duplications,
    phi,
    phi_inverse,
    reduce_runs_mod,
    zero_run_decompose,
)
from .words import (
    Alphabet,
    DupEvent,
    FactorSpan,
    apply_duplication,
    find_squares,
    format_word,
    midcovers,
    parse_word,
    remove_duplication,
    spans_disjoint,
)

__version__ = "0.1.0"
