#!/usr/bin/env python
# Copyright qgame authors
"""Exceptions."""


class QGameError(Exception):
    """Base exception of the package."""
    pass


class InvalidArgument(QGameError, ValueError):
    """Exception for the case an argument violates its precondition."""
    pass


class DimensionError(InvalidArgument):
    """Exception for the case a matrix has the wrong shape."""
    pass


class ContractViolation(QGameError):
    """Exception for the case an input or a result breaks its invariant."""
    pass


class SeriesError(QGameError):
    """Exception for the case the Fock-space series does not converge."""
    pass


class NoEquilibrium(QGameError):
    """Exception for the case no Nash equilibrium exists at the tolerance."""
    pass
