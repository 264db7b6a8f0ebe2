"""Randomised identity suites over Cl(2,0), Cl(3,0) and Cl(1,3)."""

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from geocalc.connection import levi_civita
from geocalc.multivector import Multivector, Signature, hodge_star, pseudoscalar, scalar_product

from identities import (
    SIGNATURES,
    algebraic_residuals,
    curved_geometries,
    differential_residuals,
    ricci_equation_residual,
    unsigned_complement_residual,
)

TOL = 1e-9
GEOMS = curved_geometries()
LC = {k: levi_civita(G) for k, G in GEOMS.items()}


def _bad(res):
    return {k: v for k, v in res.items() if v > TOL}


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(sorted(SIGNATURES)), st.integers(0, 2**31 - 1))
def test_algebraic_identities(name, seed):
    assert _bad(algebraic_residuals(SIGNATURES[name], seed)) == {}


@settings(max_examples=75, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(sorted(GEOMS)), st.integers(0, 2**31 - 1))
def test_differential_identities(name, seed):
    assert _bad(differential_residuals(GEOMS[name], LC[name], seed)) == {}


@pytest.mark.parametrize("name", sorted(GEOMS))
def test_ricci_equation_on_curved_geometries(name):
    assert ricci_equation_residual(GEOMS[name], LC[name]) <= TOL


def test_complement_scalar_identity_needs_its_sign():
    # θ¹·⋆θ² = −1 but θ²·⋆θ¹ = +1 in Cl(2,0)
    sig = Signature(2, 0)
    tau = pseudoscalar(sig)
    e1, e2 = Multivector.basis(sig, 0), Multivector.basis(sig, 1)
    assert scalar_product(e1, hodge_star(e2, tau)) == -scalar_product(e2, hodge_star(e1, tau))
    residuals = [unsigned_complement_residual(sig, s) for s in range(40)]
    assert max(res for r, res in residuals if r == 1) > 0.1
    assert max(res for r, res in residuals if r != 1) <= TOL
