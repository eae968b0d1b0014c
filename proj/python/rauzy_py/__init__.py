"""Rauzy graphs and schemes for morphic words."""

from ._rauzy import (
    Oracle,
    Protocol,
    RauzyError,
    Spec,
    SubstitutionSystem,
    check_ur,
    evolve,
    load_spec,
    parse_spec,
    primitivize,
    verify_language_equality,
)

__all__ = [
    "Oracle",
    "Protocol",
    "RauzyError",
    "Spec",
    "SubstitutionSystem",
    "check_ur",
    "evolve",
    "load_spec",
    "parse_spec",
    "primitivize",
    "verify_language_equality",
]
