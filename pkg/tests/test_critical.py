"""Tests for the double-eigenvalue (bifurcation point) catalog."""

import cmath
import math

import numpy as np
import pytest

from kmsbif.critical import (CriticalPoint, all_critical_points,
                             critical_t_values, q_polynomial, rho_c_of_t)
from kmsbif.errors import SizeError, UnsupportedCase
from kmsbif.kms import EigType, MuPoint, lambda_of_mu, rho_prime_of_mu
from kmsbif.oracle import kms_spectrum

SQRT8 = math.sqrt(8.0)


def _expected_degree(n, eig_type):
    if eig_type is EigType.Type1:
        return n - 2 if n % 2 == 0 else n - 3
    return n - 2 if n % 2 == 0 else n - 1


def test_q_polynomial_n3_type2():
    # U_2(t) + 3 = 4t^2 + 2, ascending coefficients
    coeffs = q_polynomial(3, EigType.Type2)
    assert list(coeffs) == [2, 0, 4]


def test_q_polynomial_type1_n3_unsupported():
    with pytest.raises(UnsupportedCase):
        q_polynomial(3, EigType.Type1)
    with pytest.raises(SizeError):
        q_polynomial(2, EigType.Type2)


def test_q_polynomial_degrees():
    for n in range(3, 31):
        for et in EigType:
            if n == 3 and et is EigType.Type1:
                continue
            coeffs = q_polynomial(n, et)
            assert len(coeffs) - 1 == _expected_degree(n, et)
            assert coeffs[-1] != 0


def test_q_polynomial_divides_exactly():
    # the deflated trivial roots really are roots of U_{n-1}(t) -/+ n
    from kmsbif.chebyshev import cheb_u
    assert cheb_u(3, 1.0) - 4 == 0.0    # type-1, n=4: t = 1 is a root
    assert cheb_u(3, -1.0) - 4 != 0.0   # ... but t = -1 is not
    assert cheb_u(3, -1.0) + 4 == 0.0   # type-2, n=4: t = -1 is a root
    assert cheb_u(4, 1.0) - 5 == 0.0    # type-1, n=5: both t = +/-1 are roots
    assert cheb_u(4, -1.0) - 5 == 0.0
    assert cheb_u(4, 1.0) + 5 != 0.0    # type-2, odd n: no trivial roots


def test_critical_t_values_n3():
    roots = critical_t_values(3, EigType.Type2)
    expected = {1j / math.sqrt(2), -1j / math.sqrt(2)}
    assert len(roots) == 2
    for r in roots:
        assert min(abs(r - e) for e in expected) < 1e-12


def test_critical_t_values_worked_examples():
    roots4 = critical_t_values(4, EigType.Type2)
    assert min(abs(r - (1 + 1j) / 2) for r in roots4) < 1e-12
    roots8 = critical_t_values(8, EigType.Type1)
    assert min(abs(r - (0.611 - 0.274j)) for r in roots8) < 1e-3


def test_root_count_matches_degree():
    for n in range(3, 31):
        for et in EigType:
            if n == 3 and et is EigType.Type1:
                continue
            roots = critical_t_values(n, et)
            assert len(roots) == _expected_degree(n, et)


def test_rho_c_examples():
    assert abs(rho_c_of_t(3, 1j / math.sqrt(2), EigType.Type2) - 1j * SQRT8) < 1e-12
    assert abs(rho_c_of_t(4, (1 + 1j) / 2, EigType.Type2) - (1 + 2j)) < 1e-12
    val = rho_c_of_t(8, 0.6105621720724612 - 0.27432847121452864j, EigType.Type1)
    assert abs(val - (0.922 - 1.29j)) < 4e-3


def test_all_critical_points_n3():
    pts = all_critical_points(3)
    assert len(pts) == 2
    assert all(p.eig_type is EigType.Type2 for p in pts)
    got = sorted(p.rho_c.imag for p in pts)
    assert abs(got[0] + SQRT8) < 1e-12 and abs(got[1] - SQRT8) < 1e-12
    assert all(abs(p.rho_c.real) < 1e-12 for p in pts)


def test_all_critical_points_n19_contains_imaginary_point():
    pts = all_critical_points(19)
    dist = min(abs(p.rho_c - 1.28j) for p in pts)
    assert dist < 5e-3


def test_critical_point_fields_consistent():
    for n in (4, 5, 8, 9):
        for p in all_critical_points(n):
            assert p.lambda_c == -n
            assert abs(cmath.cos(p.mu_c) - p.t_c) < 1e-12
            assert 0.0 <= p.mu_c.real <= math.pi
            for excluded in (-1.0, 0.0, 1.0):
                assert abs(p.rho_c - excluded) > 1e-6


def test_rho_c_outside_unit_circle():
    for n in range(3, 31):
        for p in all_critical_points(n):
            assert abs(p.rho_c) > 1.0


def test_conjugation_and_negation_closure_odd_n():
    for n in (5, 7, 9, 11):
        rhos = [p.rho_c for p in all_critical_points(n)]
        for r in rhos:
            assert min(abs(x - r.conjugate()) for x in rhos) < 1e-8
            assert min(abs(x + r) for x in rhos) < 1e-8


def test_mu_parameterization_at_critical_points():
    for n in (4, 6, 9, 12):
        for p in all_critical_points(n):
            mp = MuPoint(n=p.n, mu=p.mu_c, eig_type=p.eig_type)
            assert abs(lambda_of_mu(mp) + n) < 1e-9 * n
            assert abs(rho_prime_of_mu(mp)) < 1e-8


def test_oracle_sees_double_eigenvalue_n6():
    for p in all_critical_points(6):
        gaps = np.sort(np.abs(kms_spectrum(6, p.rho_c).eigenvalues + 6.0))
        assert gaps[0] < 1e-5 * 6 and gaps[1] < 1e-5 * 6
        assert gaps[2] > 1e-3


def test_catalog_ordering_deterministic():
    pts = all_critical_points(8)
    keys = [(p.eig_type.value, cmath.phase(p.rho_c)) for p in pts]
    assert keys == sorted(keys)
