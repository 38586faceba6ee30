import math

import numpy as np
import pytest

from conftest import TABLE1, table_state
from morsent.entropy import normalization, support
from morsent.errors import InvalidStateError
from morsent.morse import (
    MorseParams,
    bound_state_count,
    eigenstate,
    eigenstates,
    peak_position,
    potential,
    psi,
    rho_x,
    xi_of_x,
)
from morsent.quad import integrate


def test_params_validation_and_derived():
    with pytest.raises(ValueError):
        MorseParams(0.0)
    with pytest.raises(ValueError):
        MorseParams(1.0, alpha=-1.0)
    p = MorseParams(3.0)
    assert p.depth == pytest.approx(9.0)
    assert p.omega == pytest.approx(1.0)
    q = MorseParams(2.0, alpha=1.5, hbar=0.7, mu=3.0)
    assert q.depth == pytest.approx(2.0**2 * 1.5**2 * 0.7**2 / 6.0)


def test_from_physical_roundtrip():
    p = MorseParams.from_physical(4.7, alpha=1.3, mu=2.0, hbar=0.9)
    assert p.depth == pytest.approx(4.7)
    assert p.lam == pytest.approx(math.sqrt(2 * 2.0 * 4.7) / (1.3 * 0.9))


def test_potential_examples():
    p = MorseParams(1.0)
    assert potential(p, 0.0) == pytest.approx(-1.0)
    assert potential(p, -math.log(2.0)) == pytest.approx(0.0, abs=1e-15)
    far = potential(p, np.array([10.0, 20.0, 40.0]))
    assert np.all(far < 0) and np.all(np.diff(far) > 0) and far[-1] > -1e-16
    assert potential(p, -701.0) == math.inf


def test_potential_minimum_is_at_origin():
    p = MorseParams(2.5, alpha=0.8)
    x = np.linspace(-1, 3, 4001)
    v = potential(p, x)
    assert x[np.argmin(v)] == pytest.approx(0.0, abs=1e-3)
    assert v.min() == pytest.approx(-p.depth)


@pytest.mark.parametrize("lam, count", [(0.4, 0), (0.5, 0), (1.0, 1), (1.5, 1), (1.5001, 2), (4.0, 4)])
def test_bound_state_count(lam, count):
    assert bound_state_count(MorseParams(lam)) == count


@pytest.mark.parametrize(
    "lam, n, s, norm2, energy",
    [(1.0, 0, 1.0, 1.0, -0.25), (2.0, 0, 3.0, 0.5, -2.25), (2.0, 1, 1.0, 0.5, -0.25)],
)
def test_eigenstate_examples(lam, n, s, norm2, energy):
    st = eigenstate(MorseParams(lam), n)
    assert st.s == s
    assert st.norm**2 == pytest.approx(norm2, rel=1e-14)
    assert st.energy == pytest.approx(energy)


def test_eigenstate_rejects_unbound():
    with pytest.raises(InvalidStateError):
        eigenstate(MorseParams(4.0), 4)
    with pytest.raises(InvalidStateError):
        eigenstate(MorseParams(0.4), 0)
    with pytest.raises(IndexError):
        eigenstate(MorseParams(1.5), 1)


def test_eigenstate_large_lambda_no_overflow():
    st = eigenstate(MorseParams(200.0), 3)
    assert math.isfinite(st.log_norm)
    assert math.isfinite(psi(MorseParams(200.0), st, 0.0))


@pytest.mark.parametrize("lam", [1.0, 2.7, 4.0, 7.3, 10.0])
def test_energy_ordering_and_constraint(lam):
    p = MorseParams(lam)
    states = eigenstates(p)
    energies = [st.energy for st in states]
    assert all(a < b for a, b in zip(energies, energies[1:]))
    assert energies[-1] < 0
    for st in states:
        assert st.s + 2 * st.n - (2 * lam - 1) == 0.0


def test_xi_examples():
    assert xi_of_x(MorseParams(1.0), 0.0) == 2.0
    assert xi_of_x(MorseParams(3.0), math.log(6.0)) == pytest.approx(1.0, rel=1e-15)
    assert xi_of_x(MorseParams(1.0, alpha=2.0), 0.5) == pytest.approx(2 * math.exp(-1), rel=1e-15)


def test_psi_examples():
    p = MorseParams(1.0)
    st = eigenstate(p, 0)
    assert psi(p, st, 0.0) == pytest.approx(math.exp(-1) * math.sqrt(2), rel=1e-14)
    assert psi(p, st, np.array([-50.0, 2000.0])).tolist() == [0.0, 0.0]
    p2 = MorseParams(2.0)
    assert psi(p2, eigenstate(p2, 1), math.log(2.0)) == 0.0


def test_rho_x_examples():
    p = MorseParams(1.0)
    st = eigenstate(p, 0)
    assert rho_x(p, st, 0.0) == pytest.approx(2 * math.exp(-2), rel=1e-14)
    x = np.linspace(-3, 10, 13001)
    dens = rho_x(p, st, x)
    assert np.all(dens >= 0)
    assert x[np.argmax(dens)] == pytest.approx(math.log(2.0), abs=1e-3)
    assert dens.max() == pytest.approx(math.exp(-1), rel=1e-6)
    assert peak_position(p, st) == pytest.approx(math.log(2.0), abs=0.05)


@pytest.mark.parametrize("n, lam", TABLE1)
def test_normalization(n, lam):
    p, st = table_state(n, lam)
    assert normalization(p, st, "position") == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("lam", [3.0, 4.0, 5.0])
def test_orthogonality(lam):
    p = MorseParams(lam)
    states = eigenstates(p)
    lo = min(support(p, st, "position")[0] for st in states)
    hi = max(support(p, st, "position")[1] for st in states)
    for a in states:
        for b in states:
            if a.n < b.n:
                val = integrate(lambda x: psi(p, a, x) * psi(p, b, x), lo, hi).value
                assert abs(val) <= 1e-8


@pytest.mark.parametrize("n, lam", TABLE1 + [(6, 8.0), (9, 10.0)])
def test_node_count(n, lam):
    p, st = table_state(n, lam)
    lo, hi, _ = support(p, st, "position")
    amp = psi(p, st, np.linspace(lo, hi, 4000))
    nz = np.sign(amp[amp != 0.0])
    assert np.count_nonzero(np.diff(nz)) == n


def test_nondefault_units_normalized():
    p = MorseParams(3.3, alpha=2.2, hbar=0.5, mu=1.7)
    for st in eigenstates(p):
        assert normalization(p, st, "position") == pytest.approx(1.0, abs=1e-10)
