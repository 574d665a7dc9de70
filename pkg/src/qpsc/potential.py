"""Angular potential profiles V(theta) and their Fourier moments.

A profile is a finite sum of terms of four kinds::

    constant      a
    cosine        a * cos(nu * theta)        (nu = 1 unless given)
    sine_gamma    a * sin(gamma * theta)
    monomial      a * theta**k               (k >= 0 integer)

The moment of order m is ``I(m) = integral_0^{2 pi} V(theta) exp(i m theta)``.
With that single kernel convention the coupling "I_1" between the states of a
swapped pair is ``I(-1)``, "I_2" is ``I(+1)`` and "I_0" is ``I(0)``.

Text form (used by the command line)::

    expr  := term ('+' term)*
    term  := NUMBER ['*' func] | func
    func  := 'cos' '(' arg ')' | 'sin' '(' arg ')' | 'theta' ['^' INT]
    arg   := [NUMBER '*'] 'theta'

Whitespace between tokens is ignored. NUMBER is a signed decimal literal
with optional exponent.
"""

from __future__ import annotations

import cmath
import enum
import math
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import PotentialParseError, SingularParameterError
from .quadrature import TWO_PI, gauss_legendre, integrate, trapezoid_periodic

DEFAULT_MOMENT_NODES = 4096


class TermKind(str, enum.Enum):
    CONSTANT = "constant"
    COSINE = "cosine"
    SINE_GAMMA = "sine_gamma"
    MONOMIAL = "monomial"


def _is_integer(x: float) -> bool:
    return float(x).is_integer()


@dataclass(frozen=True)
class PotentialTerm:
    """One term of a potential profile.

    ``parameter`` is the angular frequency for cosine terms, gamma for
    sine_gamma terms, the exponent for monomials and unused (0) for constants.
    """

    kind: TermKind
    amplitude: float
    parameter: float = 0.0

    def __post_init__(self):
        kind = TermKind(self.kind)
        object.__setattr__(self, "kind", kind)
        amplitude = float(self.amplitude)
        if not math.isfinite(amplitude):
            raise ValueError(f"amplitude must be finite, got {self.amplitude!r}")
        object.__setattr__(self, "amplitude", amplitude)
        p = float(self.parameter)
        if kind is TermKind.CONSTANT:
            p = 0.0
        elif kind in (TermKind.COSINE, TermKind.SINE_GAMMA):
            if not (math.isfinite(p) and p > 0.0):
                raise ValueError(f"{kind.value} parameter must be positive, got {self.parameter!r}")
        elif not (_is_integer(p) and p >= 0):
            raise ValueError(f"monomial exponent must be a nonnegative integer, got {self.parameter!r}")
        object.__setattr__(self, "parameter", p)

    @classmethod
    def constant(cls, amplitude: float) -> "PotentialTerm":
        return cls(TermKind.CONSTANT, amplitude)

    @classmethod
    def cosine(cls, amplitude: float, frequency: float = 1.0) -> "PotentialTerm":
        return cls(TermKind.COSINE, amplitude, frequency)

    @classmethod
    def sine(cls, amplitude: float, gamma: float) -> "PotentialTerm":
        return cls(TermKind.SINE_GAMMA, amplitude, gamma)

    @classmethod
    def monomial(cls, amplitude: float, exponent: int) -> "PotentialTerm":
        return cls(TermKind.MONOMIAL, amplitude, exponent)

    @property
    def is_periodic(self) -> bool:
        """True when the term is smooth and 2 pi periodic."""
        if self.kind is TermKind.CONSTANT:
            return True
        if self.kind is TermKind.MONOMIAL:
            return self.parameter == 0.0
        return _is_integer(self.parameter)

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        a, p = self.amplitude, self.parameter
        if self.kind is TermKind.CONSTANT:
            return np.full_like(theta, a)
        if self.kind is TermKind.COSINE:
            return a * np.cos(p * theta)
        if self.kind is TermKind.SINE_GAMMA:
            return a * np.sin(p * theta)
        return a * theta ** int(p)


@dataclass(frozen=True)
class PotentialSpec:
    terms: tuple[PotentialTerm, ...]

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise ValueError("a potential needs at least one term")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, *terms: PotentialTerm) -> "PotentialSpec":
        return cls(terms)

    def __add__(self, other: "PotentialSpec") -> "PotentialSpec":
        return PotentialSpec(self.terms + other.terms)

    def __str__(self):
        return format_potential(self)


@dataclass(frozen=True)
class AngularMoment:
    order: int
    value: complex


@dataclass(frozen=True)
class AdmissibilityReport:
    I1: complex
    I2: complex
    is_real: bool
    is_nonzero: bool

    @property
    def admissible(self) -> bool:
        return self.is_real and self.is_nonzero

    def to_dict(self) -> dict:
        return {
            "I1": [self.I1.real, self.I1.imag],
            "I2": [self.I2.real, self.I2.imag],
            "is_real": self.is_real,
            "is_nonzero": self.is_nonzero,
            "admissible": self.admissible,
        }


# -- text form ---------------------------------------------------------------

_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_INT = re.compile(r"\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, expected: str):
        offset = len(self.text[: self.pos].encode("utf-8"))
        raise PotentialParseError(offset, expected, self.text)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek_word(self, word: str) -> bool:
        self.skip_ws()
        return self.text.startswith(word, self.pos)

    def expect(self, word: str):
        if not self.peek_word(word):
            self.error(f"'{word}'")
        self.pos += len(word)

    def match(self, pattern: re.Pattern):
        self.skip_ws()
        return pattern.match(self.text, self.pos)

    def number(self) -> float:
        m = self.match(_NUMBER)
        if m is None:
            self.error("number")
        value = float(m.group())
        if not math.isfinite(value):
            self.error("finite number")
        self.pos = m.end()
        return value

    def parse(self) -> PotentialSpec:
        terms = [self.term()]
        while True:
            self.skip_ws()
            if self.pos == len(self.text):
                return PotentialSpec(tuple(terms))
            if not self.peek_word("+"):
                self.error("'+' or end of input")
            self.pos += 1
            terms.append(self.term())

    def term(self) -> PotentialTerm:
        if self.match(_NUMBER) is not None:
            amplitude = self.number()
            if not self.peek_word("*"):
                return PotentialTerm.constant(amplitude)
            self.pos += 1
            return self.func(amplitude)
        return self.func(1.0)

    def func(self, amplitude: float) -> PotentialTerm:
        if self.peek_word("cos"):
            self.pos += 3
            return PotentialTerm.cosine(amplitude, self.arg())
        if self.peek_word("sin"):
            self.pos += 3
            return PotentialTerm.sine(amplitude, self.arg())
        if self.peek_word("theta"):
            self.pos += 5
            if not self.peek_word("^"):
                return PotentialTerm.monomial(amplitude, 1)
            self.pos += 1
            m = self.match(_INT)
            if m is None:
                self.error("nonnegative integer exponent")
            self.pos = m.end()
            return PotentialTerm.monomial(amplitude, int(m.group()))
        self.error("number, 'cos', 'sin' or 'theta'")

    def arg(self) -> float:
        self.expect("(")
        start = self.pos
        factor = 1.0
        if self.match(_NUMBER) is not None:
            factor = self.number()
            self.expect("*")
        elif not self.peek_word("theta"):
            self.error("number or 'theta'")
        self.expect("theta")
        self.expect(")")
        if not factor > 0.0:
            self.pos = start
            self.skip_ws()
            self.error("positive frequency")
        return factor


def parse_potential(text: str) -> PotentialSpec:
    if not text or not text.strip():
        raise PotentialParseError(0, "a term", text or "")
    return _Parser(text).parse()


def _fmt(x: float) -> str:
    return format(x, ".17g")


def format_term(term: PotentialTerm) -> str:
    a = _fmt(term.amplitude)
    if term.kind is TermKind.CONSTANT:
        return a
    if term.kind is TermKind.COSINE:
        if term.parameter == 1.0:
            return f"{a}*cos(theta)"
        return f"{a}*cos({_fmt(term.parameter)}*theta)"
    if term.kind is TermKind.SINE_GAMMA:
        return f"{a}*sin({_fmt(term.parameter)}*theta)"
    return f"{a}*theta^{int(term.parameter)}"


def format_potential(spec: PotentialSpec) -> str:
    """Canonical text: terms in order, 17 significant digits, ' + ' between."""
    return " + ".join(format_term(t) for t in spec.terms)


# -- evaluation and moments ----------------------------------------------------

def evaluate(spec: PotentialSpec, theta):
    theta = np.asarray(theta, dtype=float)
    total = np.zeros_like(theta)
    for term in spec.terms:
        total = total + term(theta)
    return total[()] if total.ndim == 0 else total


def _term_moment_quadrature(term: PotentialTerm, m: int, nodes: int) -> complex:
    if term.is_periodic:
        theta, w = trapezoid_periodic(nodes)
    else:
        theta, w = gauss_legendre(0.0, TWO_PI, nodes)
    return complex(integrate(term(theta) * np.exp(1j * m * theta), w))


def angular_moment(spec: PotentialSpec, m: int, quadrature_nodes: int = DEFAULT_MOMENT_NODES) -> complex:
    """Numerical ``integral_0^{2pi} V(theta) exp(i m theta) dtheta``.

    Periodic terms use the trapezoid rule; sine terms with non-integer gamma
    and monomials are not periodic on [0, 2 pi] and use composite
    Gauss-Legendre panels instead.
    """
    if quadrature_nodes < 64:
        raise ValueError("quadrature_nodes must be >= 64")
    m = int(m)
    return sum((_term_moment_quadrature(t, m, quadrature_nodes) for t in spec.terms), 0j)


def _exp_integral(k: float) -> complex:
    """integral_0^{2pi} exp(i k theta) dtheta, exact for integer k."""
    if k == 0.0:
        return complex(TWO_PI)
    if _is_integer(k):
        return 0j
    return (cmath.exp(1j * TWO_PI * k) - 1.0) / (1j * k)


def _term_moment_closed(term: PotentialTerm, m: int) -> complex | None:
    a, p = term.amplitude, term.parameter
    if term.kind is TermKind.CONSTANT:
        return a * _exp_integral(m)
    if term.kind is TermKind.COSINE:
        return a * 0.5 * (_exp_integral(m + p) + _exp_integral(m - p))
    if term.kind is TermKind.SINE_GAMMA:
        if m == 0:
            return complex(a * (1.0 - math.cos(TWO_PI * p)) / p)
        if abs(m) != 1:
            return None
        if p == 1.0:
            raise SingularParameterError("sine moment of order +-1 is singular at gamma = 1")
        s, c = math.sin(p * math.pi), math.cos(p * math.pi)
        # m = -1 pairs with -i cos, m = +1 with +i cos.
        return 2.0 * a * s / (p * p - 1.0) * complex(p * s, m * c)
    k = int(p)
    if m == 0:
        return complex(a * TWO_PI ** (k + 1) / (k + 1))
    # integral theta^j e^{im theta} = (T^j - j * previous) / (i m) for j >= 1, 0 for j = 0
    value = 0j
    for j in range(1, k + 1):
        value = (TWO_PI ** j - j * value) / (1j * m)
    return a * value


def angular_moment_closed(spec: PotentialSpec, m: int) -> complex | None:
    """Exact moment from elementary integration, or None without a closed form.

    Sine terms have closed forms only for |m| <= 1 and raise
    :class:`SingularParameterError` at gamma = 1, |m| = 1.
    """
    m = int(m)
    total = 0j
    for term in spec.terms:
        value = _term_moment_closed(term, m)
        if value is None:
            return None
        total += value
    return total


@lru_cache(maxsize=4096)
def moment(spec: PotentialSpec, m: int) -> complex:
    """Closed form when one exists, otherwise quadrature at the default node count."""
    try:
        value = angular_moment_closed(spec, m)
    except SingularParameterError:
        value = None
    if value is None:
        value = angular_moment(spec, m)
    return value


def admissibility(spec: PotentialSpec, imag_tol: float = 1e-10, zero_tol: float = 1e-10) -> AdmissibilityReport:
    """Check that I(-1) and I(+1) are both real and both nonzero."""
    if imag_tol <= 0 or zero_tol <= 0:
        raise ValueError("tolerances must be positive")
    i1, i2 = moment(spec, -1), moment(spec, 1)
    return AdmissibilityReport(
        I1=i1,
        I2=i2,
        is_real=abs(i1.imag) <= imag_tol and abs(i2.imag) <= imag_tol,
        is_nonzero=abs(i1) > zero_tol and abs(i2) > zero_tol,
    )
