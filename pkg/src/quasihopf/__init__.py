"""Exact-arithmetic toolkit for finite-dimensional quasi-bialgebras.

Structure-constant algebras over Q or F_p, preantipode solvers, quasi-Hopf
bimodule constructions, and machine verification of the equivalence between
the preantipode, Frobenius and Hopf-monad properties on concrete inputs.
"""

from .fields import Rationals, PrimeField, QQ, FieldError

__all__ = ["Rationals", "PrimeField", "QQ", "FieldError"]

__version__ = "0.1.0"
