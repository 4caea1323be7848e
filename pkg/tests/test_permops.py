"""R-operator algebra: QYBE, symmetrizer closed forms, group-algebra idempotents."""

from fractions import Fraction

import pytest

from ratshuffle.exactalg import Polynomial, Variable, poly, rf
from ratshuffle.permops import (
    PermAlgebraElement,
    g_factor,
    hecke_idempotent_via_r,
    hecke_rcheck,
    hecke_sigma_element,
    perm_compose,
    qybe_holds,
    su_r,
    su_rcheck,
    su_symmetrizer,
    su_symmetrizer_closed,
    symmetric_group_idempotent,
)

KAPPA = rf(Variable("kappa"))
XI = rf(Variable("xi"))
z1, z2 = rf(Variable("z", 1)), rf(Variable("z", 2))


def test_perm_compose_basics():
    p12 = PermAlgebraElement.transposition(2, 1, 2)
    assert p12 * p12 == PermAlgebraElement.identity(2)
    # variable transport: P12 * (z1 * id) = z2 * P12
    assert p12 * PermAlgebraElement.identity(2).scale(z1) == p12.scale(z2)
    # plain coefficients multiply
    f = PermAlgebraElement.identity(2).scale(z1)
    g = PermAlgebraElement.identity(2).scale(z2)
    assert f * g == PermAlgebraElement.identity(2).scale(z1 * z2)


def test_perm_compose_rank_mismatch():
    with pytest.raises(ValueError):
        perm_compose(PermAlgebraElement.identity(2), PermAlgebraElement.identity(3))


def test_su_r_two_terms():
    r = su_r(1, 2, XI, KAPPA, 2)
    assert len(r.terms) == 2
    d = z1 - z2
    assert r.coefficient([1, 2]) == (d + KAPPA) / (d * KAPPA)
    assert r.coefficient([2, 1]) == -(d + XI) / (d * XI)
    with pytest.raises(ValueError):
        su_r(1, 1, XI, KAPPA, 2)


def test_hecke_affinization_identity():
    # kappa * Rcheck^rat_1(-kappa*xi | kappa) = sigma_1^kappa + (1/xi) * id,
    # with both sides written in the z variables.  The proportionality
    # constant is exactly 1.
    lhs = su_rcheck(1, -KAPPA * XI, KAPPA, 2).scale(KAPPA)
    rhs = hecke_sigma_element(1, 2, KAPPA, family="z") + PermAlgebraElement.identity(2).scale(
        rf(1) / XI
    )
    assert lhs == rhs


def test_su_rcheck_at_kappa_annihilates_symmetric_part():
    # Rcheck(kappa|kappa)^2 + (2/kappa) Rcheck(kappa|kappa) kills antisymmetric
    # functions: its id and P coefficients agree.
    e = su_rcheck(1, KAPPA, KAPPA, 2)
    combo = e * e + e.scale(rf(2) / KAPPA)
    assert combo.coefficient([1, 2]) == combo.coefficient([2, 1])


def test_qybe_rational():
    assert qybe_holds(3)


def test_hecke_braid_relation_with_spectral_parameters():
    k = 3
    x = [rf(Variable("xi", i)) for i in range(1, 4)]
    a = _hr(1, x[1] - x[2], k) * _hr(2, x[0] - x[2], k) * _hr(1, x[0] - x[1], k)
    b = _hr(2, x[0] - x[1], k) * _hr(1, x[0] - x[2], k) * _hr(2, x[1] - x[2], k)
    assert a == b


def _hr(i, m, k):
    return PermAlgebraElement.transposition(k, i, i + 1) + PermAlgebraElement.identity(k).scale(
        rf(1) / rf(m)
    )


def test_symmetrizer_closed_form_k2():
    h2 = su_symmetrizer(2, KAPPA, "+")
    d = z1 - z2
    assert h2.coefficient([1, 2]) == g_factor(d, KAPPA)
    assert h2.coefficient([2, 1]) == g_factor(-d, KAPPA)
    assert h2 == su_symmetrizer_closed(2, KAPPA, "+")


def test_symmetrizer_closed_forms():
    for k in (2, 3):
        assert su_symmetrizer(k, KAPPA, "+") == su_symmetrizer_closed(k, KAPPA, "+")
        assert su_symmetrizer(k, KAPPA, "-") == su_symmetrizer_closed(k, KAPPA, "-")


def test_symmetrizer_k1_identity():
    assert su_symmetrizer(1, KAPPA, "+") == PermAlgebraElement.identity(1)
    assert su_symmetrizer(1, KAPPA, "-") == PermAlgebraElement.identity(1)


def test_idempotents_match_group_algebra():
    for k in (2, 3, 4):
        assert hecke_idempotent_via_r(k, "+") == symmetric_group_idempotent(k, "+")
        assert hecke_idempotent_via_r(k, "-") == symmetric_group_idempotent(k, "-")


def test_idempotents_square():
    for k in (2, 3):
        for sign in ("+", "-"):
            e = hecke_idempotent_via_r(k, sign)
            assert e * e == e


def test_idempotent_k2_values():
    e2 = hecke_idempotent_via_r(2, "+")
    assert e2.coefficient([1, 2]) == rf(Fraction(1, 2))
    assert e2.coefficient([2, 1]) == rf(Fraction(1, 2))
    e2m = hecke_idempotent_via_r(2, "-")
    assert e2m.coefficient([1, 2]) == rf(Fraction(1, 2))
    assert e2m.coefficient([2, 1]) == rf(Fraction(-1, 2))
