"""First-order probabilistic independence toolkit."""

from fotpi._fotpi import (  # noqa: F401
    cantor_pair,
    classify,
    compile_network,
    dec_holds,
    evaluate,
    expand,
    find_counterexample,
    godel_beta,
    godel_decode,
    godel_encode,
    imply,
    macro_doc,
    macros,
    parse,
    prove,
    semantic_oracles,
)

__all__ = [
    "cantor_pair",
    "classify",
    "compile_network",
    "dec_holds",
    "evaluate",
    "expand",
    "find_counterexample",
    "godel_beta",
    "godel_decode",
    "godel_encode",
    "imply",
    "macro_doc",
    "macros",
    "parse",
    "prove",
    "semantic_oracles",
]
