"""Localisation, colocalisation and coefficient theories, checked by exact computation.

Modules:
    linalg, fgab      integer matrices, Smith form, finitely generated abelian groups
    coefrings         prime sets, localised rings, Pruefer groups, the atom table
    extensions        short exact sequences with unknown middle term
    graded            graded theories, coefficient constructions, long exact sequences
    toy               free chain complexes up to homotopy
    kk                K-groups, the UCT formula and the explicit computations
    real_complex      the real/complex sequence and its splitting
    checks, cli       the reproduction suite and the command line
"""

from .coefrings import ExtModule, NotRepresentable, PrimeSet
from .fgab import FgAbGroup, GroupHom
from .graded import GradedGroup, TheoryMap
from .toy import ChainMap, FreeComplex

__version__ = "0.1.0"

__all__ = [
    "ChainMap",
    "ExtModule",
    "FgAbGroup",
    "FreeComplex",
    "GradedGroup",
    "GroupHom",
    "NotRepresentable",
    "PrimeSet",
    "TheoryMap",
]
