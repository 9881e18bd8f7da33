"""Moment functionals, integrated adjointness, deformed orthogonality."""

from random import Random

import pytest

from askeykit.algebra import GaussianRational, Poly, Rational, pochhammer
from askeykit.burchnall import operational_rhs
from askeykit.families import make_point, raise_chain
from askeykit.functional import (
    build_functional,
    adjointness_check,
    gram_offdiagonal,
    hankel_determinant,
    modified_functional,
    toda_orthogonality_check,
)
from askeykit.sampling import sample_extras, sample_point

Q = Rational

COR23_FAMILIES = {
    "hermite": {},
    "laguerre": dict(nu=Q(1, 2)),
    "jacobi": dict(alpha=Q(1, 3), beta=Q(3, 4)),
    "meixner": dict(beta=Q(5, 2), c=Q(1, 3)),
    "charlier": dict(a=Q(7, 3)),
    "meixner-pollaczek": dict(lam=Q(4, 3), phi=Q(2, 5)),
    "big-q-jacobi": dict(a=Q(1, 3), b=Q(1, 4), c=Q(-2, 3), q=Q(1, 2)),
}


def test_moment_examples():
    L = build_functional("hermite", make_point("hermite"), 6)
    assert L.moments[1] == GaussianRational(0)
    assert L.moments[2] == GaussianRational(Q(1, 2))
    L = build_functional("laguerre", make_point("laguerre", nu=Q(1, 2)), 4)
    assert L.moments[1] == GaussianRational(Q(3, 2))
    L = build_functional("charlier", make_point("charlier", a=Q(2)), 4)
    assert L.moments[1] == GaussianRational(2)
    assert L.moments[0] == GaussianRational(1)


def test_functional_rejects_overflow_degree():
    L = build_functional("hermite", make_point("hermite"), 3)
    with pytest.raises(ValueError):
        L.apply(Poly.monomial(4))


def test_functional_rejects_partial_ladders():
    with pytest.raises(ValueError):
        build_functional("wilson", make_point("wilson", a=1, b=1, c=1, d=1), 3)


def test_gram_offdiagonal_vanishes():
    rng = Random(31)
    for tag, kw in COR23_FAMILIES.items():
        pt = sample_point(tag, rng)
        for n, m, v in gram_offdiagonal(tag, pt, 6):
            assert not v, (tag, n, m)


def test_hankel_determinants_nonzero():
    rng = Random(37)
    for tag, kw in COR23_FAMILIES.items():
        pt = sample_point(tag, rng)
        L = build_functional(tag, pt, 8)
        for size in range(1, 5):
            assert hankel_determinant(L, size), (tag, size)


def test_basis_annihilation():
    # L[p_n] = 0 for n >= 1 directly from the construction
    pt = make_point("meixner", beta=Q(5, 2), c=Q(1, 3))
    L = build_functional("meixner", pt, 6)
    for n in range(1, 7):
        assert not L.apply(raise_chain("meixner", pt, n))


def test_adjointness_laguerre_rho():
    pt = make_point("laguerre", nu=Q(1, 2))
    for n in (1, 2, 3):
        ok, witness, failures = adjointness_check("laguerre", pt, n, 6)
        assert ok, failures
        assert witness.rho == pochhammer(Q(3, 2), n)


def test_adjointness_all_families():
    for tag, kw in COR23_FAMILIES.items():
        pt = make_point(tag, **kw)
        for n in (1, 2, 3):
            ok, witness, failures = adjointness_check(tag, pt, n, 6)
            assert ok, (tag, n, failures[:2])
            assert witness.samples > 0
    # Hermite masses are t-independent, so rho is exactly 1
    ok, witness, _ = adjointness_check("hermite", make_point("hermite"), 3, 6)
    assert witness.rho == GaussianRational(1)


def test_toda_orthogonality():
    rng = Random(41)
    cases = [
        ("hermite-toda", "hermite"),
        ("laguerre-toda", "laguerre"),
        ("meixner-toda-eta1", "meixner"),
        ("meixner-toda-etaS", "meixner"),
        ("charlier-toda-eta1", "charlier"),
        ("charlier-toda-etaS", "charlier"),
        ("mp-toda", "meixner-pollaczek"),
    ]
    from askeykit.toda import MODIFIED_EXPANSIONS

    for ident, fam in cases:
        pt = sample_point(fam, rng)
        extras = sample_extras(MODIFIED_EXPANSIONS[ident].extras, rng, pt)
        for n in range(1, 5):
            residuals = toda_orthogonality_check(ident, pt, n, extras)
            assert len(residuals) == n
            assert all(not r for r in residuals), (ident, n)


def test_toda_orthogonality_neutral():
    # t = 0 is plain orthogonality of the undeformed family
    pt = make_point("hermite")
    residuals = toda_orthogonality_check("hermite-toda", pt, 3, {"t": Q(0)})
    assert all(not r for r in residuals)


def test_modified_functional_charlier():
    pt = make_point("charlier", a=Q(2))
    L = modified_functional("charlier", pt, Q(1, 2), 3)
    assert L.moments[1] == GaussianRational(1)  # deformed mean a*u


def test_bqj_chain_orthogonal_to_lower_monomials():
    # the f = 1 instance of the integrated expansion: the chain polynomial is
    # L-orthogonal to x^p for p < n
    pt = make_point("big-q-jacobi", a=Q(1, 3), b=Q(1, 4), c=Q(-2, 3), q=Q(1, 2))
    L = build_functional("big-q-jacobi", pt, 10)
    for n in range(1, 5):
        expansion = operational_rhs("big-q-jacobi", pt, n, Poly.one(), "Tq")
        for p in range(n):
            assert not L.apply(expansion * Poly.monomial(p)), (n, p)
