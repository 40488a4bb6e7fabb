# Distributed under the MIT License.
# See LICENSE for details.

"""LTL and limit-deterministic Buchi automata to deterministic parity automata.

The heavy lifting happens in the native extension; this package re-exports
its surface:

    >>> import ldpa
    >>> t = ldpa.translate("F G a | F G b")
    >>> t.dpa.accepts([["a"], ["a"]], [["b"]])
    True

Letters are sets (any iterable) of proposition names for formula-derived
automata, or plain symbol names for automata over symbol alphabets.
"""

from ._core import (
    BudgetError,
    Dpa,
    FormulaParseError,
    HoaParseError,
    Ldba,
    NnfError,
    Translation,
    crossvalidate,
    determinize,
    eval_formula,
    family_formula,
    parse_hoa,
    random_ldba,
    translate,
)

__all__ = [
    "BudgetError",
    "Dpa",
    "FormulaParseError",
    "HoaParseError",
    "Ldba",
    "NnfError",
    "Translation",
    "crossvalidate",
    "determinize",
    "eval_formula",
    "family_formula",
    "parse_hoa",
    "random_ldba",
    "translate",
]
