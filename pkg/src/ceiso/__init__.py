"""Isomorphism invariants, deciders and computable reductions for c.e. presentations
of commutative semigroups and monoids, abelian groups and unary algebras."""

from .algebra import (AG, CM, CS, SETS, UF, EnumerationTrace, Identity, Presentation, UTerm,
                      parse_presentation, parse_trace)
from .isochecker import decide_iso
from .ordinals import Ordinal, parse_ordinal

__all__ = ["AG", "CM", "CS", "SETS", "UF", "EnumerationTrace", "Identity", "Presentation", "UTerm",
           "parse_presentation", "parse_trace", "decide_iso", "Ordinal", "parse_ordinal"]
__version__ = "0.1.0"
