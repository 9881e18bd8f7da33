"""Family catalog: chains, closed forms, normalizations, recurrences."""

from random import Random

import pytest

from askeykit.algebra import (
    GaussianRational,
    Poly,
    Rational,
    UnitPhase,
)
from askeykit.families import (
    FAMILIES,
    hermite_poly,
    jacobi_poly,
    krawtchouk_poly,
    laguerre_poly,
    lowering_constant_check,
    make_point,
    meixner_poly,
    normalization,
    raise_chain,
    recurrence_extract,
    standard_poly,
    cq_hermite_poly,
)
from askeykit.sampling import sample_point

Q = Rational

CHAIN_FAMILIES = [t for t, s in FAMILIES.items() if s.raising is not None]


def test_chain_first_steps():
    assert raise_chain("hermite", make_point("hermite"), 1) == Poly([0, -2])
    pt = make_point("laguerre", nu=Q(1, 2))
    assert raise_chain("laguerre", pt, 1) == Poly([Q(3, 2), -1])
    pt = make_point("charlier", a=Q(3))
    assert raise_chain("charlier", pt, 1) == Poly([1, Q(-1, 3)])


def test_standard_examples():
    assert hermite_poly(2) == Poly([-2, 0, 4])
    assert meixner_poly(Q(2), Q(1, 2), 1)(0) == GaussianRational(1)
    assert cq_hermite_poly(Q(1, 2), 1).coefficient(1) == GaussianRational(1)
    assert laguerre_poly(Q(0), 1) == Poly([1, -1])
    assert krawtchouk_poly(Q(1, 2), 5, 0) == Poly.one()


def test_inadmissible_points_raise():
    pt = make_point("laguerre", nu=Q(-3, 2))
    with pytest.raises(ValueError):
        raise_chain("laguerre", pt, 1)
    with pytest.raises(ValueError):
        raise_chain("krawtchouk", make_point("krawtchouk", p=Q(1, 2), N=4), 1)


def test_normalization_identity_random_points():
    rng = Random(91)
    for tag in CHAIN_FAMILIES:
        spec = FAMILIES[tag]
        upto = 6 if spec.carrier == "laurent" or tag == "wilson" else 8
        for _ in range(10):
            pt = sample_point(tag, rng)
            for n in range(upto + 1):
                assert standard_poly(tag, pt, n) == raise_chain(tag, pt, n) * normalization(
                    tag, pt, n
                ), (tag, pt, n)


def test_chain_degree_growth():
    rng = Random(17)
    for tag in CHAIN_FAMILIES:
        spec = FAMILIES[tag]
        pt = sample_point(tag, rng)
        for n in range(5):
            assert spec.fdegree(raise_chain(tag, pt, n)) == n


def test_adjoint_annihilation():
    # the lowering chain of length n kills polynomials of degree < n
    rng = Random(23)
    for tag in CHAIN_FAMILIES:
        spec = FAMILIES[tag]
        if spec.carrier != "poly" or tag == "wilson":
            continue
        pt = sample_point(tag, rng)
        low = spec.lowering(pt)
        for n in range(1, 5):
            for k in range(n):
                f = Poly.monomial(k)
                for _ in range(n):
                    f = low(f)
                assert not f, (tag, n, k)


def test_recurrence_examples():
    rec = recurrence_extract("hermite", make_point("hermite"), 5)
    assert all(not b for b in rec.b)
    assert rec.c[3] == GaussianRational(Q(3, 2))
    rec = recurrence_extract("laguerre", make_point("laguerre", nu=Q(1, 2)), 3)
    assert rec.b[0] == GaussianRational(Q(3, 2))
    rec = recurrence_extract("charlier", make_point("charlier", a=Q(2)), 3)
    assert rec.c[1] == GaussianRational(2)


def test_recurrence_against_closed_forms():
    b, c = Q(5, 2), Q(1, 3)
    rec = recurrence_extract("meixner", make_point("meixner", beta=b, c=c), 4)
    for n in range(5):
        assert rec.b[n] == GaussianRational((n + (n + b) * c) / (1 - c))
        if n:
            assert rec.c[n] == GaussianRational(n * (n + b - 1) * c / (1 - c) ** 2)
    p, N = Q(1, 3), 6
    rec = recurrence_extract("krawtchouk", make_point("krawtchouk", p=p, N=N), 5)
    for n in range(6):
        assert rec.b[n] == GaussianRational(p * (N - n) + n * (1 - p))
        if n:
            assert rec.c[n] == GaussianRational(n * p * (1 - p) * (N + 1 - n))
    lam, s = Q(4, 3), Q(2, 5)
    u = UnitPhase(s)
    rec = recurrence_extract(
        "meixner-pollaczek", make_point("meixner-pollaczek", lam=lam, phi=s), 3
    )
    n = 2
    assert rec.b[n] == GaussianRational(-(n + lam) * u.cos / u.sin)
    assert rec.c[n] == GaussianRational(n * (n + 2 * lam - 1) / (4 * u.sin ** 2))


def test_recurrence_c_nonzero():
    rng = Random(5)
    for tag in CHAIN_FAMILIES:
        pt = sample_point(tag, rng)
        rec = recurrence_extract(tag, pt, 4)
        for n in range(1, 5):
            assert rec.c[n], (tag, n)


def test_lowering_constant_hermite():
    pt = make_point("hermite")
    for n in (1, 2, 5):
        ell, res = lowering_constant_check("hermite", pt, n)
        assert not res
        assert ell == GaussianRational(-2 * n)


def test_lowering_constant_all_families():
    rng = Random(29)
    for tag in CHAIN_FAMILIES:
        pt = sample_point(tag, rng)
        for n in range(1, 5):
            ell, res = lowering_constant_check(tag, pt, n)
            assert not res, (tag, n)
            assert ell, (tag, n)


def test_weight_ratio_degree_bound():
    # eta^k(w_(nu+k sigma))/w_nu is polynomial of family degree <= 2k
    rng = Random(43)
    for tag in CHAIN_FAMILIES:
        spec = FAMILIES[tag]
        pt = sample_point(tag, rng)
        for var in spec.variants:
            for k in range(4):
                ratio = var.weight_ratio(pt, k)
                if spec.carrier == "laurent":
                    deg = max(abs(ratio.high), abs(ratio.low))
                else:
                    deg = spec.fdegree(ratio)
                assert deg <= 2 * k, (tag, var.name, k, deg)


def test_jacobi_derivative_relation():
    a, b = Q(1, 3), Q(3, 4)
    n = 3
    dP = jacobi_poly(a, b, n).derivative()
    assert dP == jacobi_poly(a + 1, b + 1, n - 1) * Q(n + a + b + 1, 2)


def test_charlier_recurrence_crossref():
    # c_1 = a, matching the flow solution at t = 0 (u = 1)
    rec = recurrence_extract("charlier", make_point("charlier", a=Q(7, 4)), 2)
    assert rec.c[1] == GaussianRational(Q(7, 4))
