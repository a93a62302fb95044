"""Exception types shared across the package.

The CLI maps these onto exit codes: DomainError -> 3, NumericError -> 4.
Argument parsing failures exit 2 via argparse itself.
"""


class SostreeError(Exception):
    """Base class for package errors."""


class DomainError(SostreeError):
    """Input outside the mathematical domain of an operation."""


class NumericError(SostreeError):
    """Numerical failure: lost bracket, non-finite value, broken invariant."""


class BracketingError(NumericError):
    """Root bracket does not contain a sign change."""
