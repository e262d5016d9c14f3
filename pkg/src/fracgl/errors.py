"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class FracGLError(Exception):
    """Base class for all errors raised by :mod:`fracgl`."""


class DomainError(FracGLError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class PoleError(DomainError):
    """Evaluation hit a pole (Gamma function, reflection factor, 2F1 denominator)."""


class NumericError(FracGLError, ArithmeticError):
    """A numerical procedure failed (non-finite value, no convergence)."""


class DivergenceError(NumericError):
    """A series was asked to be summed outside its region of convergence."""


class ConvergenceError(NumericError):
    """A series or iteration did not converge within its term budget."""


class TermCapError(NumericError):
    """A computation would exceed its configured term cap."""


class CharacteristicZeroError(NumericError):
    """The hypergeometric denominator of the characteristic equation vanished."""
