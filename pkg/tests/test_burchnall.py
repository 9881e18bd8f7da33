"""Operational/expansion identities: generic engine, literal forms, oracles."""

from random import Random

from askeykit.algebra import (
    GaussianRational,
    Laurent,
    Poly,
    Rational,
    SymLaurent,
    binomial,
    chebyshev_lift,
    factorial,
)
from askeykit.burchnall import (
    EXPANSIONS,
    closed_expansion_residual,
    chain_expansion_residual,
    expansion_agreement_gap,
    feldheim_watson_coefficient,
    hermite_linearization_oracle,
    operational_residual,
    zassenhaus_series_residual,
)
from askeykit.families import FAMILIES, hermite_poly, make_point
from askeykit.sampling import sample_point, sample_rational

Q = Rational
x = Poly.x()


def _rand_f(rng, tag):
    spec = FAMILIES[tag]
    coeffs = [sample_rational(rng, -3, 3) for _ in range(5)]
    if tag == "wilson":
        coeffs = [c if k % 2 == 0 else 0 for k, c in enumerate(coeffs)]
    f = Poly(coeffs)
    return chebyshev_lift(f) if spec.carrier == "laurent" else f


def test_operational_hermite_example():
    pt = make_point("hermite")
    # (d/dx - 2x) x = 1 - 2x^2 = p_1 * x + p_0 * 1
    assert not operational_residual("hermite", pt, 1, x)
    assert not operational_residual("hermite", pt, 0, x ** 2 + 3)


def test_operational_all_variants():
    # zero for every family and variant, n <= 6, at 10 random parameter points
    rng = Random(101)
    for tag, spec in FAMILIES.items():
        if spec.raising is None:
            continue
        for _ in range(10):
            pt = sample_point(tag, rng)
            f = _rand_f(rng, tag)
            for var in spec.variants:
                for n in range(0, 7):
                    assert not operational_residual(tag, pt, n, f, var.name), (tag, var.name, n)


def test_chain_expansion_all_variants():
    rng = Random(202)
    for tag, spec in FAMILIES.items():
        if spec.raising is None:
            continue
        pt = sample_point(tag, rng)
        for var in spec.variants:
            for n in range(0, 4):
                for m in range(0, 3):
                    assert not chain_expansion_residual(tag, pt, n, m, var.name), (tag, var.name, n, m)


def test_hermite_expansion_small():
    pt = make_point("hermite")
    lhs, terms = EXPANSIONS["hermite-expansion"].build(pt, 1, 1)
    assert lhs == Poly([-2, 0, 4])
    assert terms[0] == Poly([0, 0, 4]) and terms[1] == Poly([-2])
    assert not closed_expansion_residual("hermite-expansion", pt, 1, 1)


def test_laguerre_expansion_small():
    pt = make_point("laguerre", nu=Q(1, 2))
    assert not closed_expansion_residual("laguerre-expansion", pt, 1, 1)
    assert not closed_expansion_residual("laguerre-expansion", pt, 1, 0)


def test_charlier_eta1_shifted_argument():
    pt = make_point("charlier", a=Q(3))
    assert not closed_expansion_residual("charlier-expansion-eta1", pt, 2, 1)


def _sample_for(ident, rng):
    return sample_point(EXPANSIONS[ident].family, rng)


def test_all_expansions_small_grid():
    rng = Random(303)
    for ident in EXPANSIONS:
        pt = _sample_for(ident, rng)
        for n in range(0, 4):
            for m in range(0, 4):
                assert not closed_expansion_residual(ident, pt, n, m), (ident, n, m)


def test_generic_vs_literal_agreement():
    rng = Random(404)
    for ident in EXPANSIONS:
        pt = _sample_for(ident, rng)
        for n, m in [(0, 0), (1, 2), (3, 1), (2, 2)]:
            assert not expansion_agreement_gap(ident, pt, n, m), (ident, n, m)


def test_expansion_rhs_value_symmetry():
    # swapping (n, m) changes the written sum but not its value
    rng = Random(505)
    for ident in EXPANSIONS:
        e = EXPANSIONS[ident]
        pt = _sample_for(ident, rng)
        for n, m in [(1, 2), (3, 1)]:
            _, t1 = e.build(pt, n, m)
            _, t2 = e.build(pt, m, n)
            s1 = sum(t1[1:], t1[0])
            s2 = sum(t2[1:], t2[0])
            if isinstance(s1, (Laurent, SymLaurent)) or isinstance(s2, (Laurent, SymLaurent)):
                s1 = Laurent.coerce(s1)
                s2 = Laurent.coerce(s2)
            assert s1 == s2, (ident, n, m)


def test_linearization_oracle_matches_feldheim_watson():
    for m in range(0, 7):
        for n in range(0, 7):
            got = hermite_linearization_oracle(m, n)
            assert got == tuple(
                GaussianRational(feldheim_watson_coefficient(m, n, r))
                for r in range(min(m, n) + 1)
            )


def test_linearization_examples():
    # H1 H1 = H2 + 2 H0; H2 H1 = H3 + 4 H1
    assert hermite_linearization_oracle(1, 1) == (GaussianRational(1), GaussianRational(2))
    assert hermite_linearization_oracle(2, 1) == (GaussianRational(1), GaussianRational(4))
    assert hermite_linearization_oracle(0, 4) == (GaussianRational(1),)


def test_linearization_inverts_expansion():
    # substituting the linearization into the inverse expansion recollects H_(n+m)
    for n, m in [(1, 1), (2, 2), (3, 2), (4, 3)]:
        total = Poly.zero()
        for r in range(min(n, m) + 1):
            coef = Q(binomial(n, r) * binomial(m, r) * (-2) ** r * factorial(r))
            lin = hermite_linearization_oracle(n - r, m - r)
            acc = Poly.zero()
            for j, cf in enumerate(lin):
                acc = acc + hermite_poly((n - r) + (m - r) - 2 * j) * cf
            total = total + acc * coef
        assert total == hermite_poly(n + m)


def test_zassenhaus_examples():
    assert zassenhaus_series_residual(0, x).is_zero()
    assert zassenhaus_series_residual(1, Poly.one()).is_zero()
    assert zassenhaus_series_residual(2, x).is_zero()


def test_zassenhaus_random():
    rng = Random(606)
    for _ in range(3):
        f = Poly([sample_rational(rng, -3, 3) for _ in range(4)])
        assert zassenhaus_series_residual(6, f).is_zero()
