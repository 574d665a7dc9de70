import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import IntegrationWarning, quad

from qpsc import (
    PotentialParseError,
    PotentialSpec,
    PotentialTerm,
    SingularParameterError,
    TermKind,
    admissibility,
    angular_moment,
    angular_moment_closed,
    evaluate,
    format_potential,
    parse_potential,
)

T = PotentialTerm


def scipy_moment(spec, m):
    """Adaptive-quadrature reference, independent of qpsc.quadrature."""
    f = lambda t: float(evaluate(spec, t))  # noqa: E731
    opts = dict(epsabs=1e-13, epsrel=1e-13, limit=400)
    with warnings.catch_warnings():
        # near-zero integrals trip quad's roundoff warning
        warnings.simplefilter("ignore", IntegrationWarning)
        re = quad(lambda t: f(t) * math.cos(m * t), 0, 2 * math.pi, **opts)[0]
        im = quad(lambda t: f(t) * math.sin(m * t), 0, 2 * math.pi, **opts)[0]
    return complex(re, im)


amplitudes = st.floats(-10, 10, allow_nan=False).filter(lambda a: a != 0)
terms = st.one_of(
    st.builds(T.constant, amplitudes),
    st.builds(T.cosine, amplitudes, st.sampled_from([1.0, 2.0, 0.5, 3.0])),
    st.builds(T.sine, amplitudes, st.sampled_from([0.5, 1.0, 1.5, 2.5, 0.3, 2.0])),
    st.builds(T.monomial, amplitudes, st.integers(0, 4)),
)
specs = st.lists(terms, min_size=1, max_size=4).map(lambda ts: PotentialSpec(tuple(ts)))


class TestParse:
    def test_cosine(self):
        assert parse_potential("1.0*cos(theta)") == PotentialSpec.of(T.cosine(1.0))

    def test_sine_plus_constant(self):
        spec = parse_potential("0.5*sin(1.5*theta) + 2.0")
        assert spec == PotentialSpec.of(T.sine(0.5, 1.5), T.constant(2.0))
        assert spec.terms[0].kind is TermKind.SINE_GAMMA

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("  3 * theta ^ 2 ", T.monomial(3.0, 2)),
            ("theta", T.monomial(1.0, 1)),
            ("-2.5e-1*cos(2*theta)", T.cosine(-0.25, 2.0)),
            ("cos(theta)", T.cosine(1.0)),
            ("sin(theta)", T.sine(1.0, 1.0)),
            (".5", T.constant(0.5)),
            ("1*theta^0", T.monomial(1.0, 0)),
        ],
    )
    def test_forms(self, text, expected):
        assert parse_potential(text) == PotentialSpec.of(expected)

    @pytest.mark.parametrize(
        "text, offset",
        [
            ("cos(", 4),
            ("", 0),
            ("1.0*", 4),
            ("1.0 + ", 6),
            ("1.0 cos(theta)", 4),
            ("tan(theta)", 0),
            ("1*sin(0*theta)", 6),
            ("1*theta^-1", 8),
            ("1*cos(theta", 11),
            ("θ", 0),
            ("1 + θ", 4),
            ("1e999", 0),
        ],
    )
    def test_errors(self, text, offset):
        with pytest.raises(PotentialParseError) as err:
            parse_potential(text)
        assert err.value.offset == offset
        assert "expected" in str(err.value)

    def test_error_offset_is_bytes(self):
        with pytest.raises(PotentialParseError) as err:
            parse_potential("1 + θ + x")
        # θ is two bytes in UTF-8; the failure is at θ itself
        assert err.value.offset == 4

    def test_canonical_format(self):
        spec = parse_potential("0.1*cos(theta)+2*sin(0.5*theta) + -3*theta^2 + 4")
        assert format_potential(spec) == (
            "0.10000000000000001*cos(theta) + 2*sin(0.5*theta) + -3*theta^2 + 4"
        )

    @given(specs)
    def test_round_trip(self, spec):
        assert parse_potential(format_potential(spec)) == spec


class TestTerms:
    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(kind="sine_gamma", amplitude=1.0, parameter=0.0),
            dict(kind="sine_gamma", amplitude=1.0, parameter=-1.0),
            dict(kind="monomial", amplitude=1.0, parameter=1.5),
            dict(kind="monomial", amplitude=1.0, parameter=-1),
            dict(kind="constant", amplitude=math.inf),
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            PotentialTerm(**kwargs)

    def test_empty_spec(self):
        with pytest.raises(ValueError):
            PotentialSpec(())


class TestEvaluate:
    def test_examples(self):
        assert evaluate(PotentialSpec.of(T.cosine(2.0)), 0.0) == 2.0
        assert evaluate(PotentialSpec.of(T.sine(1.0, 0.5)), math.pi) == pytest.approx(1.0, abs=1e-15)
        assert evaluate(PotentialSpec.of(T.monomial(1.0, 2)), 2.0) == 4.0

    def test_vectorized_sum(self):
        spec = parse_potential("1 + 2*cos(theta) + 3*theta^2")
        th = np.linspace(0, 6, 7)
        np.testing.assert_allclose(evaluate(spec, th), 1 + 2 * np.cos(th) + 3 * th**2, rtol=1e-15)


class TestMoments:
    def test_cosine_I1(self):
        assert angular_moment(PotentialSpec.of(T.cosine(2.0)), -1) == pytest.approx(2 * math.pi, abs=1e-13)

    def test_cosine_I0(self):
        assert abs(angular_moment(PotentialSpec.of(T.cosine(2.0)), 0)) < 1e-13

    def test_constant_I0(self):
        assert angular_moment(PotentialSpec.of(T.constant(1.5)), 0) == pytest.approx(3 * math.pi, rel=1e-14)

    def test_minimum_nodes(self):
        with pytest.raises(ValueError):
            angular_moment(PotentialSpec.of(T.constant(1.0)), 0, 32)

    @pytest.mark.parametrize(
        "spec, m",
        [
            (PotentialSpec.of(T.sine(1.0, 0.5)), -1),
            (PotentialSpec.of(T.sine(3.0, 0.3)), 1),
            (PotentialSpec.of(T.sine(1.0, 1.0)), -1),
            (PotentialSpec.of(T.monomial(2.0, 3)), 1),
            (PotentialSpec.of(T.cosine(1.0, 2.5)), -2),
            (PotentialSpec.of(T.sine(1.0, 2.0), T.constant(1.0)), 2),
        ],
    )
    def test_quadrature_matches_scipy(self, spec, m):
        assert angular_moment(spec, m) == pytest.approx(scipy_moment(spec, m), abs=1e-10)

    @given(specs, st.integers(-6, 6))
    @settings(deadline=None, max_examples=60)
    def test_conjugate_symmetry(self, spec, m):
        a, b = angular_moment(spec, -m), angular_moment(spec, m)
        assert abs(a - b.conjugate()) <= 1e-12 * max(1.0, abs(a))

    @given(specs, st.integers(-4, 4))
    @settings(deadline=None, max_examples=60)
    def test_linearity(self, spec, m):
        total = angular_moment(spec, m)
        parts = sum(angular_moment(PotentialSpec.of(t), m) for t in spec.terms)
        assert abs(total - parts) <= 1e-12 * max(1.0, abs(total))

    @pytest.mark.parametrize("k", range(1, 6))
    def test_monomials_are_complex(self, k):
        spec = PotentialSpec.of(T.monomial(1.0, k))
        for m in (-1, 1):
            assert abs(angular_moment(spec, m).imag) > 1e-3


class TestClosedForms:
    def test_sine_half(self):
        value = angular_moment_closed(PotentialSpec.of(T.sine(1.0, 0.5)), -1)
        assert value.real == pytest.approx(-4.0 / 3.0, rel=1e-15)
        assert abs(value.imag) < 1e-15

    def test_cosine_I2(self):
        assert angular_moment_closed(PotentialSpec.of(T.cosine(3.0)), 1) == 3 * math.pi

    def test_monomial_k1(self):
        value = angular_moment_closed(PotentialSpec.of(T.monomial(1.0, 1)), -1)
        ref = scipy_moment(PotentialSpec.of(T.monomial(1.0, 1)), -1)
        assert value == pytest.approx(ref, abs=1e-12)
        assert value.imag == pytest.approx(2 * math.pi, rel=1e-15)

    @pytest.mark.parametrize("m", [-1, 1])
    def test_singular_gamma_one(self, m):
        with pytest.raises(SingularParameterError):
            angular_moment_closed(PotentialSpec.of(T.sine(1.0, 1.0)), m)

    def test_no_closed_form_for_high_sine_orders(self):
        assert angular_moment_closed(PotentialSpec.of(T.sine(1.0, 0.5)), 2) is None
        assert angular_moment_closed(PotentialSpec.of(T.sine(1.0, 0.5), T.constant(1.0)), -3) is None

    @pytest.mark.parametrize("gamma", [0.5, 1.5, 2.5, 3.5, 0.3, 0.75, 2.2])
    @pytest.mark.parametrize("m", [-1, 0, 1])
    def test_sine_general_formula_vs_scipy(self, gamma, m):
        spec = PotentialSpec.of(T.sine(7.0, gamma))
        assert angular_moment_closed(spec, m) == pytest.approx(scipy_moment(spec, m), abs=1e-11)

    @given(specs, st.integers(-3, 3))
    @settings(deadline=None, max_examples=80)
    def test_closed_matches_quadrature(self, spec, m):
        try:
            closed = angular_moment_closed(spec, m)
        except SingularParameterError:
            return
        if closed is None:
            return
        assert abs(closed - angular_moment(spec, m, 4096)) <= 1e-9


class TestAdmissibility:
    def test_cosine(self):
        rep = admissibility(PotentialSpec.of(T.cosine(1.0)))
        assert rep.admissible
        assert rep.I1 == pytest.approx(math.pi) and rep.I2 == pytest.approx(math.pi)

    @pytest.mark.parametrize("gamma", [0.5, 1.5, 2.5, 3.5])
    def test_half_odd_sine(self, gamma):
        assert admissibility(PotentialSpec.of(T.sine(1.0, gamma))).admissible

    def test_plain_sine(self):
        rep = admissibility(PotentialSpec.of(T.sine(1.0, 1.0)))
        assert not rep.admissible and not rep.is_real and rep.is_nonzero
        assert rep.I1 == pytest.approx(-1j * math.pi, abs=1e-13)

    def test_constant_is_zero(self):
        rep = admissibility(PotentialSpec.of(T.constant(1.0)))
        assert rep.is_real and not rep.is_nonzero and not rep.admissible

    def test_monomial(self):
        assert not admissibility(PotentialSpec.of(T.monomial(1.0, 2))).is_real

    def test_generic_gamma_decided_by_numbers(self):
        # gamma = 0.3 is neither half-odd nor real
        assert not admissibility(PotentialSpec.of(T.sine(1.0, 0.3))).admissible

    def test_tolerance_validation(self):
        with pytest.raises(ValueError):
            admissibility(PotentialSpec.of(T.cosine(1.0)), imag_tol=0.0)

    def test_reality_condition_sweep(self):
        # among non-integer gamma, imaginary parts vanish exactly on 1/2, 3/2, 5/2, ...
        for gamma in np.arange(0.25, 4.0, 0.25):
            spec = PotentialSpec.of(T.sine(10.0, float(gamma)))
            if gamma.is_integer():
                if gamma != 1.0:
                    # sin(gamma pi) = 0 kills the whole moment: real but zero
                    assert abs(angular_moment_closed(spec, -1)) <= 1e-10
                    assert not admissibility(spec).admissible
                continue
            imag = abs(angular_moment_closed(spec, -1).imag)
            half_odd = (2 * gamma) % 2 == 1
            assert (imag <= 1e-10) == half_odd
