"""Exception hierarchy shared by every qpsc module."""


class QPSCError(Exception):
    """Base class for all errors raised by qpsc."""


class DomainError(QPSCError, ValueError):
    """An argument lies outside the domain of a physical function."""


class PotentialParseError(QPSCError, ValueError):
    """Malformed potential expression.

    ``offset`` is the byte offset into the UTF-8 encoded input where parsing
    stopped and ``expected`` names what the parser was looking for.
    """

    def __init__(self, offset: int, expected: str, text: str = ""):
        self.offset = offset
        self.expected = expected
        self.text = text
        super().__init__(f"parse error at offset {offset}: expected {expected}")


class SingularParameterError(QPSCError, ArithmeticError):
    """A closed-form expression is singular at the requested parameters."""


class HermiticityError(QPSCError, ArithmeticError):
    """A matrix that must be Hermitian is not, beyond tolerance."""


class DegenerateDenominatorError(QPSCError, ArithmeticError):
    """Non-degenerate perturbation formula applied to a degenerate level."""


class BasisTooSmallError(QPSCError, ValueError):
    """Truncated basis does not contain the target states with enough margin."""


class InadmissiblePotentialError(QPSCError, ValueError):
    """Potential fails the reality/non-vanishing test for observable splitting."""

    def __init__(self, report):
        self.report = report
        super().__init__(
            f"inadmissible potential: I1={report.I1!r}, I2={report.I2!r}"
        )
