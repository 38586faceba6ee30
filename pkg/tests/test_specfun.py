import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special

from morsent.errors import DomainError
from morsent.specfun import (
    digamma,
    laguerre_coeffs,
    laguerre_eval,
    ln_gamma,
    ln_gamma_complex,
)

EULER_GAMMA = 0.5772156649015329


@pytest.mark.parametrize(
    "x, expected",
    [(1.0, 0.0), (0.5, 0.5 * math.log(math.pi)), (6.0, math.log(120.0))],
)
def test_ln_gamma_examples(x, expected):
    assert ln_gamma(x) == pytest.approx(expected, rel=1e-13, abs=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.5])
def test_ln_gamma_domain(x):
    with pytest.raises(DomainError):
        ln_gamma(x)


@pytest.mark.parametrize("x", [0.3, 1.7, 9.5])
def test_gamma_recurrence(x):
    assert math.exp(ln_gamma(x + 1) - ln_gamma(x)) == pytest.approx(x, rel=1e-12)


def test_ln_gamma_large_argument_no_overflow():
    # Gamma(2*lam - n) at lam = 200
    assert ln_gamma(400.0) == pytest.approx(float(mpmath.loggamma(400)), rel=1e-14)


def _digamma_by_recurrence(k):
    # psi(k) = -gamma + sum_{j<k} 1/j for integer k
    return -EULER_GAMMA + sum(1.0 / j for j in range(1, k))


@pytest.mark.parametrize("k", [1, 3, 5])
def test_digamma_integer_points(k):
    assert digamma(k) == pytest.approx(_digamma_by_recurrence(k), abs=1e-12)


def test_digamma_values():
    assert digamma(3.0) == pytest.approx(0.9227843351, abs=1e-10)
    assert digamma(5.0) == pytest.approx(1.5061176684, abs=1e-10)
    with pytest.raises(DomainError):
        digamma(0.0)


def test_ln_gamma_complex_at_one():
    assert abs(ln_gamma_complex(1 + 0j)) < 1e-14


def test_ln_gamma_complex_reflection_moduli():
    # |Gamma(1/2 + ip)|^2 = pi / cosh(pi p)
    mod = abs(np.exp(ln_gamma_complex(0.5 + 1j)))
    assert mod == pytest.approx(math.sqrt(math.pi / math.cosh(math.pi)), rel=1e-12)
    assert mod == pytest.approx(0.5205909636, abs=1e-10)
    mod2 = abs(np.exp(ln_gamma_complex(1.5 + 2j))) ** 2
    assert mod2 == pytest.approx((0.25 + 4.0) * math.pi / math.cosh(2 * math.pi), rel=1e-12)


def test_ln_gamma_complex_domain():
    with pytest.raises(DomainError):
        ln_gamma_complex(-0.5 + 1j)
    with pytest.raises(DomainError):
        ln_gamma_complex(np.array([1.0, 0.0 + 2j]))


@pytest.mark.parametrize("x", [0.5, 2.0, 10.0])
def test_ln_gamma_complex_matches_real(x):
    z = ln_gamma_complex(complex(x, 0.0))
    assert abs(z - ln_gamma(x)) < 1e-12
    assert z.imag == 0.0


@given(
    st.floats(min_value=0.05, max_value=40.0),
    st.floats(min_value=-60.0, max_value=60.0),
)
def test_ln_gamma_complex_conjugate_symmetry(a, b):
    z = complex(a, b)
    assert abs(ln_gamma_complex(z.conjugate()) - ln_gamma_complex(z).conjugate()) <= 1e-13 * max(
        1.0, abs(ln_gamma_complex(z))
    )


def test_ln_gamma_complex_against_mpmath():
    for a in (0.25, 0.5, 1.5, 3.0, 7.5, 12.0):
        for b in (-30.0, -3.3, -0.2, 0.0, 0.7, 5.0, 25.0):
            z = complex(a, b)
            ours = np.exp(ln_gamma_complex(z))
            ref = complex(mpmath.gamma(mpmath.mpc(a, b)))
            assert abs(ours - ref) <= 1e-12 * abs(ref)


def test_ln_gamma_complex_branch_is_continuous_and_matches_loggamma():
    # scipy's loggamma uses the same analytic branch on Re z > 0
    for a in (0.5, 1.0, 4.5):
        p = np.linspace(-80, 80, 4001)
        ours = ln_gamma_complex(a + 1j * p)
        np.testing.assert_allclose(ours, special.loggamma(a + 1j * p), rtol=1e-13, atol=1e-12)
        assert np.max(np.abs(np.diff(ours.imag))) < 0.5


@pytest.mark.parametrize(
    "n, s, xi, expected",
    [(0, 7.0, 3.2, 1.0), (1, 1.0, 0.5, 1.5), (2, 1.0, 2.0, -1.0)],
)
def test_laguerre_eval_examples(n, s, xi, expected):
    assert laguerre_eval(n, s, xi) == pytest.approx(expected, abs=1e-15)


def test_laguerre_eval_array_shape():
    xi = np.linspace(0, 5, 12).reshape(3, 4)
    out = laguerre_eval(3, 1.5, xi)
    assert out.shape == (3, 4)
    np.testing.assert_allclose(out, special.eval_genlaguerre(3, 1.5, xi), rtol=1e-13)


@pytest.mark.parametrize(
    "n, s, expected",
    [(0, 3.0, [1.0]), (1, 1.0, [2.0, -1.0]), (2, 1.0, [3.0, -3.0, 0.5])],
)
def test_laguerre_coeffs_examples(n, s, expected):
    np.testing.assert_allclose(laguerre_coeffs(n, s).coeffs, expected, rtol=1e-13)


@pytest.mark.parametrize("n", range(9))
@pytest.mark.parametrize("s", [0.5, 1.0, 3.0, 7.5])
def test_laguerre_coeffs_invariants(n, s):
    lc = laguerre_coeffs(n, s)
    assert len(lc.coeffs) == n + 1
    assert lc.coeffs[0] == pytest.approx(math.gamma(n + s + 1) / (math.gamma(s + 1) * math.factorial(n)))
    assert np.all(np.sign(lc.coeffs) == (-1.0) ** np.arange(n + 1))


@pytest.mark.parametrize("n", range(9))
@pytest.mark.parametrize("s", [0.5, 1.0, 3.0, 7.5])
def test_recurrence_matches_monomial_sum(n, s):
    xi = np.linspace(0.0, 40.0, 100)
    rec = laguerre_eval(n, s, xi)
    horner = laguerre_coeffs(n, s)(xi)
    # relative to the size of the polynomial's terms, since both forms cancel near roots
    scale = np.abs(laguerre_coeffs(n, s).coeffs) @ np.vstack([xi**k for k in range(n + 1)])
    assert np.all(np.abs(rec - horner) <= 1e-9 * np.maximum(np.abs(rec), 1e-3 * scale))


def test_recurrence_accuracy_where_monomial_form_cancels():
    # monomial terms reach ~1e7 here while the value is ~-4
    xi = 40.0 * 50 / 99
    exact = float(mpmath.laguerre(8, 7.5, xi))
    assert laguerre_eval(8, 7.5, xi) == pytest.approx(exact, rel=1e-13)


@given(
    st.integers(min_value=0, max_value=8),
    st.floats(min_value=0.1, max_value=12.0),
    st.floats(min_value=0.0, max_value=30.0),
)
def test_recurrence_matches_scipy(n, s, xi):
    assert laguerre_eval(n, s, xi) == pytest.approx(
        float(special.eval_genlaguerre(n, s, xi)), rel=1e-9, abs=1e-9
    )


@pytest.mark.parametrize("s", [1, 3])
def test_laguerre_orthogonality(s):
    # xi^s L_n L_m is a polynomial, so Gauss-Laguerre with 30 nodes is exact
    nodes, weights = np.polynomial.laguerre.laggauss(30)
    for n in range(5):
        for m in range(5):
            val = np.sum(weights * nodes**s * laguerre_eval(n, s, nodes) * laguerre_eval(m, s, nodes))
            expected = math.gamma(n + s + 1) / math.factorial(n) if n == m else 0.0
            assert val == pytest.approx(expected, rel=1e-8, abs=1e-8 * math.gamma(s + 1))
