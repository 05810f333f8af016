#!/usr/bin/python3

"""
Exception hierarchy shared by the library, the command line and the HTTP
surface. Every class carries the process exit code the CLI maps it to and
the HTTP status the API answers with.
"""


class ReslabError(Exception):
    """Base class for every error raised on purpose by reslab."""
    exit_code = 1
    http_status = 400


class InvalidInputError(ReslabError, ValueError):
    """
    A precondition was violated: even modulus, non square-free d, an
    imprimitive or odd character where the formulas need an even primitive
    one, a malformed label, and so on.
    """
    exit_code = 2
    http_status = 400


class PoleError(InvalidInputError):
    """The Hurwitz zeta function was asked for its value at s = 1."""


class DegenerateParametersError(InvalidInputError):
    """
    The resonator schedule collapsed (N < 2 or L^2 < 3).

    Attributes:
        N (int): The derived Dirichlet polynomial length.
        L (float): The derived window parameter.
    """

    def __init__(self, message, N=None, L=None):
        super().__init__(message)
        self.N = N
        self.L = L


class ConvergenceError(ReslabError, ArithmeticError):
    """A numerical scheme could not certify the requested accuracy."""
    exit_code = 3
    http_status = 422


class BudgetExceededError(ReslabError):
    """The requested computation is larger than the declared budget."""
    exit_code = 3
    http_status = 422
