"""Authentication by challenge-response over self-distributive operations.

The scheme needs nothing but a binary operation satisfying the left
self-distributivity law (or, in the variant mode, the central duplication
law).  This package provides the scheme as explicit prover/verifier state
machines plus several platforms to run it on: braid words under shifted
conjugacy or ordinary conjugacy, the finite Laver tables, and assorted
degenerate magmas, together with law checkers, brute-force search
baselines, a line-oriented wire protocol, and a CLI.

Research code: commitments go out as raw elements and no parameter set
here is claimed to resist anything; see README.md.
"""

from .braids import (
    BraidWord,
    Letter,
    braid_invariants,
    concat,
    conj,
    free_reduce,
    invert,
    random_word,
    shift,
    shifted_conj,
    words_equal,
)
from .laver import LaverTable, build_table, row_pattern, threshold
from .platforms import (
    FiniteMagma,
    LdPlatform,
    cd_law_check,
    ld_law_check,
    parse_platform,
    platform_conj_braid,
    platform_f_conjugacy,
    platform_int_successor,
    platform_laver,
    platform_shifted_braid,
    platform_trivial,
    scsp_search,
)
from .protocol import KeyPair, ProtocolConfig, Transcript, keygen, run_session

__version__ = "0.1.0"

__all__ = [
    "BraidWord",
    "Letter",
    "braid_invariants",
    "concat",
    "conj",
    "free_reduce",
    "invert",
    "random_word",
    "shift",
    "shifted_conj",
    "words_equal",
    "LaverTable",
    "build_table",
    "row_pattern",
    "threshold",
    "FiniteMagma",
    "LdPlatform",
    "cd_law_check",
    "ld_law_check",
    "parse_platform",
    "platform_conj_braid",
    "platform_f_conjugacy",
    "platform_int_successor",
    "platform_laver",
    "platform_shifted_braid",
    "platform_trivial",
    "scsp_search",
    "KeyPair",
    "ProtocolConfig",
    "Transcript",
    "keygen",
    "run_session",
    "__version__",
]
