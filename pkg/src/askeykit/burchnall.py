"""Operational and expansion identities.

Two layers deliberately coexist:

  * a generic engine that evaluates the raising-chain expansion
        chain_n(f) = sum_k alpha(n,k) ratio_k eta^k(p_(n-k)) T_{k,n} f
    directly from a family's registered data, and

  * literal transcriptions of the closed-form expansion identities, one
    function per catalogued identity, written straight from the textbook
    closed forms and *not* routed through the engine.

Agreement between the two is itself a test: the engine must reproduce each
literal expansion after the family normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import (
    GR_HALF_I,
    GR_I,
    GR_ONE,
    GaussianRational,
    Laurent,
    Poly,
    Rational,
    SymLaurent,
    UnitPhase,
    binomial,
    factorial,
    laurent_scale,
    pochhammer,
    q_pochhammer,
)
from .families import (
    FAMILIES,
    ParamPoint,
    expand_in_basis,
    falling_poch_poly,
    hermite_poly,
    make_point,
    normalization,
    q_poch_poly,
    q_poch_scalar,
    raise_chain,
    rising_poch_poly,
    shifted_point,
    standard_poly,
)

__all__ = [
    "apply_chain",
    "operational_rhs",
    "operational_residual",
    "chain_expansion_rhs",
    "chain_expansion_residual",
    "Expansion",
    "EXPANSIONS",
    "closed_expansion_residual",
    "expansion_agreement_gap",
    "hermite_linearization_oracle",
    "feldheim_watson_coefficient",
    "TruncatedSeries",
    "zassenhaus_series_residual",
]

_Q = Rational
_half = Rational(1, 2)


# ---------------------------------------------------------------------------
# generic engine
# ---------------------------------------------------------------------------

def apply_chain(tag: str, point: ParamPoint, n: int, f):
    """R_nu R_(nu+sigma) ... R_(nu+(n-1)sigma) f by composing the operators."""
    spec = FAMILIES[tag]
    points = [point]
    for _ in range(n - 1):
        points.append(spec.shift(points[-1]))
    out = f
    for pt in reversed(points[:n]):
        out = spec.raising(pt)(out)
    return out


def operational_rhs(tag: str, point: ParamPoint, n: int, f, variant: str | None = None):
    spec = FAMILIES[tag]
    var = spec.variant(variant) if variant is not None else spec.default_variant()
    op = var.op_spec(point)
    rhs = None
    pt_k = point
    for k in range(n + 1):
        term = var.weight_ratio(point, k) * op.eta(raise_chain(tag, pt_k, n - k), k)
        term = term * op.t_op(k, n)(f)
        term = term * op.alpha(n, k)
        rhs = term if rhs is None else rhs + term
        pt_k = spec.shift(pt_k)
    return rhs


def operational_residual(tag: str, point: ParamPoint, n: int, f, variant: str | None = None):
    """Chain applied to f minus the weight-ratio expansion; exactly zero."""
    lhs = apply_chain(tag, point, n, f)
    rhs = operational_rhs(tag, point, n, f, variant)
    return Laurent.coerce(lhs) - rhs if isinstance(rhs, Laurent) else lhs - rhs


def chain_expansion_rhs(tag: str, point: ParamPoint, n: int, m: int, variant: str | None = None):
    spec = FAMILIES[tag]
    pt_n = point
    for _ in range(n):
        pt_n = spec.shift(pt_n)
    return operational_rhs(tag, point, n, raise_chain(tag, pt_n, m), variant)


def chain_expansion_residual(tag: str, point: ParamPoint, n: int, m: int, variant: str | None = None):
    """p_(n+m) minus the expansion with f = p_m at the n-shifted parameters."""
    lhs = raise_chain(tag, point, n + m)
    rhs = chain_expansion_rhs(tag, point, n, m, variant)
    return Laurent.coerce(lhs) - rhs if isinstance(rhs, Laurent) else lhs - rhs


# ---------------------------------------------------------------------------
# literal closed-form expansions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Expansion:
    """One closed-form expansion identity: LHS polynomial and its k-term sum."""

    id: str
    family: str
    variant: str  # the engine variant it must agree with
    degree_class: str  # "classical" | "q"
    build: Callable  # (point, n, m) -> (lhs, [terms])
    lhs_prefactor: Callable  # (n, m) -> scalar relating LHS to the standard polynomial


def residual_from_terms(lhs, terms):
    rhs = None
    for t in terms:
        rhs = t if rhs is None else rhs + t
    if rhs is None:
        rhs = Poly.zero()
    if isinstance(rhs, Laurent) or isinstance(lhs, (SymLaurent, Laurent)):
        return Laurent.coerce(rhs) - Laurent.coerce(lhs)
    return rhs - lhs


def _build_hermite(point, n, m):
    lhs = hermite_poly(n + m)
    terms = []
    for r in range(min(n, m) + 1):
        coef = _Q(binomial(n, r) * binomial(m, r) * (-2) ** r * factorial(r))
        terms.append(hermite_poly(n - r) * hermite_poly(m - r) * coef)
    return lhs, terms


def _build_laguerre(point, n, m):
    # ((m+1)_n / n!) L_(m+n) = sum_k ((-x)^k / k!) L_(n-k)^(nu+k) L_(m-k)^(nu+n+k)
    lhs = standard_poly("laguerre", point, n + m) * (
        pochhammer(m + 1, n) * _Q(Rational(1, factorial(n)))
    )
    terms = []
    for k in range(min(n, m) + 1):
        xs = Poly.monomial(k, _Q((-1) ** k) / factorial(k))
        t = xs * standard_poly("laguerre", shifted_point(point, k), n - k)
        t = t * standard_poly("laguerre", shifted_point(point, n + k), m - k)
        terms.append(t)
    return lhs, terms


def _build_jacobi(point, n, m):
    alpha, beta = point.get("alpha"), point.get("beta")
    lhs = standard_poly("jacobi", point, n + m) * _Q(binomial(n + m, n))
    quad = Poly([_Q(-1, 4), 0, _Q(1, 4)])  # (1-x^2)/(-4)
    terms = []
    for k in range(min(n, m) + 1):
        coef = pochhammer(alpha + beta + 2 * n + m + 1, k) * _Q(Rational(1, factorial(k)))
        t = (quad ** k) * coef
        t = t * standard_poly("jacobi", shifted_point(point, k), n - k)
        t = t * standard_poly("jacobi", shifted_point(point, n + k), m - k)
        terms.append(t)
    return lhs, terms


def _build_meixner_eta1(point, n, m):
    beta, c = point.get("beta"), point.get("c")
    lhs = standard_poly("meixner", point, n + m)
    terms = []
    for k in range(min(n, m) + 1):
        coef = (
            pochhammer(-n, k) * pochhammer(-m, k)
            * ((c - 1) / c) ** k
            * (pochhammer(beta, k) * pochhammer(beta + n, k) * factorial(k)).inverse()
        )
        t = rising_poch_poly(beta, k) * coef
        t = t * standard_poly("meixner", shifted_point(point, k), n - k)
        t = t * standard_poly("meixner", shifted_point(point, n + k), m - k).compose_affine(1, -n)
        terms.append(t)
    return lhs, terms


def _build_meixner_etaS(point, n, m):
    # coefficient ((1-c)/c^2)^k: the nabla = S Delta rewrite carries no sign
    beta, c = point.get("beta"), point.get("c")
    lhs = standard_poly("meixner", point, n + m)
    terms = []
    for k in range(min(n, m) + 1):
        coef = (
            pochhammer(-n, k) * pochhammer(-m, k)
            * ((1 - c) / (c * c)) ** k
            * (pochhammer(beta, k) * pochhammer(beta + n, k) * factorial(k)).inverse()
        )
        t = falling_poch_poly(k) * coef
        t = t * standard_poly("meixner", shifted_point(point, k), n - k).compose_affine(1, -k)
        t = t * standard_poly("meixner", shifted_point(point, n + k), m - k).compose_affine(1, -k)
        terms.append(t)
    return lhs, terms


def _build_charlier_eta1(point, n, m):
    # coefficient (-n)_k (-m)_k / (k! (-a)^k): nabla^k C_m = (-m)_k a^-k S^k C_(m-k)
    a = point.get("a")
    lhs = standard_poly("charlier", point, n + m)
    terms = []
    for k in range(min(n, m) + 1):
        coef = pochhammer(-n, k) * pochhammer(-m, k) * _Q(Rational(1, factorial(k))) / (-a) ** k
        t = standard_poly("charlier", point, n - k) * coef
        t = t * standard_poly("charlier", point, m - k).compose_affine(1, -n)
        terms.append(t)
    return lhs, terms


def _build_charlier_etaS(point, n, m):
    # coefficient (-n)_k (-m)_k (-x)_k / (k! a^(2k)); the weight ratio keeps (-x)_k
    a = point.get("a")
    lhs = standard_poly("charlier", point, n + m)
    terms = []
    for k in range(min(n, m) + 1):
        coef = pochhammer(-n, k) * pochhammer(-m, k) * _Q(Rational(1, factorial(k))) / a ** (2 * k)
        t = falling_poch_poly(k) * coef
        t = t * standard_poly("charlier", point, n - k).compose_affine(1, -k)
        t = t * standard_poly("charlier", point, m - k).compose_affine(1, -k)
        terms.append(t)
    return lhs, terms


def _build_mp(point, n, m):
    lam = point.get("lam")
    u = UnitPhase(point.get("phi"))
    two_sin = 2 * u.sin
    lhs = standard_poly("meixner-pollaczek", point, n + m) * _Q(binomial(n + m, n))
    terms = []
    for k in range(min(n, m) + 1):
        coef = (
            ((-GR_I) ** k) * u.power(-k) * _Q(two_sin ** k) * _Q(Rational(1, factorial(k)))
        )
        t = rising_poch_poly(lam, k, GR_I) * coef
        t = t * standard_poly("meixner-pollaczek", shifted_point(point, k), n - k).compose_affine(
            1, GR_HALF_I * (-k)
        )
        t = t * standard_poly("meixner-pollaczek", shifted_point(point, n + k), m - k).compose_affine(
            1, GR_HALF_I * (n - k)
        )
        terms.append(t)
    return lhs, terms


def _build_wilson(point, n, m):
    vals = [point.get(k) for k in ("a", "b", "c", "d")]
    s1 = sum(vals)
    lhs = standard_poly("wilson", point, n + m)
    terms = []
    for k in range(min(n, m) + 1):
        coef = (
            pochhammer(-n, k) * pochhammer(-m, k)
            * pochhammer(m + s1 + 2 * n - 1, k) * _Q(Rational(1, factorial(k)))
        )
        prod = Poly.one()
        for e in vals:
            prod = prod * rising_poch_poly(e, k, GR_I)
        t = prod * coef
        t = t * standard_poly("wilson", shifted_point(point, k), n - k).compose_affine(1, GR_HALF_I * (-k))
        t = t * standard_poly("wilson", shifted_point(point, n + k), m - k).compose_affine(
            1, GR_HALF_I * (n - k)
        )
        terms.append(t)
    return lhs, terms


def _build_bqj_Tq(point, n, m):
    a, b, c, q = (point.get(k) for k in ("a", "b", "c", "q"))
    lhs = standard_poly("big-q-jacobi", point, n + m)
    terms = []
    qn = _Q(1) / q ** n
    qm = _Q(1) / q ** m
    for k in range(min(n, m) + 1):
        num = q_poch_scalar(qn, q, k) * q_poch_scalar(qm, q, k) * q_poch_scalar(a * b * q ** (2 * n + m + 1), q, k)
        den = (
            q_poch_scalar(q, q, k) * q_poch_scalar(a * q, q, k) * q_poch_scalar(c * q, q, k)
            * q_poch_scalar(a * q ** (n + 1), q, k) * q_poch_scalar(c * q ** (n + 1), q, k)
        )
        coef = num * den.inverse() * ((a * c) ** k * q ** (k * k + 2 * k + n * k))
        t = q_poch_poly(1, q, k) * q_poch_poly(b / c, q, k) * coef
        t = t * standard_poly("big-q-jacobi", shifted_point(point, k), n - k).compose_affine(q ** k, 0)
        t = t * standard_poly("big-q-jacobi", shifted_point(point, n + k), m - k).compose_affine(q ** k, 0)
        terms.append(t)
    return lhs, terms


def _build_bqj_I(point, n, m):
    a, b, c, q = (point.get(k) for k in ("a", "b", "c", "q"))
    lhs = standard_poly("big-q-jacobi", point, n + m)
    terms = []
    qn = _Q(1) / q ** n
    qm = _Q(1) / q ** m
    for k in range(min(n, m) + 1):
        num = q_poch_scalar(qn, q, k) * q_poch_scalar(qm, q, k) * q_poch_scalar(a * b * q ** (2 * n + m + 1), q, k)
        den = (
            q_poch_scalar(q, q, k) * q_poch_scalar(a * q, q, k) * q_poch_scalar(c * q, q, k)
            * q_poch_scalar(a * q ** (n + 1), q, k) * q_poch_scalar(c * q ** (n + 1), q, k)
        )
        coef = num * den.inverse() * ((a * c) ** k * q ** (k * (k + n + 2)))
        qmk = _Q(1) / q ** k
        t = q_poch_poly(qmk / a, q, k) * q_poch_poly(qmk / c, q, k) * coef
        t = t * standard_poly("big-q-jacobi", shifted_point(point, k), n - k)
        t = t * standard_poly("big-q-jacobi", shifted_point(point, n + k), m - k).compose_affine(q ** n, 0)
        terms.append(t)
    return lhs, terms


def _aw_ratio_factor(vals, q, k) -> Laurent:
    """z^(-2k) (az, bz, cz, dz; q)_k."""
    out = Laurent.monomial(-2 * k)
    for e in vals:
        if not e:
            continue
        for j in range(k):
            out = out * Laurent(0, [1, -e * q ** j])
    return out


def _build_aw(point, n, m):
    vals = [point.get(k) for k in ("a", "b", "c", "d")]
    p = point.get("p")
    q = p * p
    a, b, c, d = vals
    lhs = standard_poly("askey-wilson", point, n + m)
    terms = []
    qn = _Q(1) / q ** n
    qm = _Q(1) / q ** m
    abcd = a * b * c * d
    for k in range(min(n, m) + 1):
        coef = (
            q_poch_scalar(qn, q, k) * q_poch_scalar(qm, q, k) * q_poch_scalar(abcd * q ** (2 * n + m - 1), q, k)
            * q_poch_scalar(q, q, k).inverse()
        )
        # q^(-k^2 + k + nm/2 + km/2 + nk), integral in the base p
        coef = coef * GaussianRational.coerce(p) ** (
            -2 * k * k + 2 * k + n * m + k * m + 2 * n * k
        )
        t = _aw_ratio_factor(vals, q, k) * coef
        t = t * laurent_scale(standard_poly("askey-wilson", shifted_point(point, k), n - k), p ** k)
        t = t * laurent_scale(
            standard_poly("askey-wilson", shifted_point(point, n + k), m - k),
            GaussianRational.coerce(p) ** (k - n),
        )
        terms.append(t)
    return lhs, terms


def _build_cqh(point, n, m):
    p = point.get("p")
    q = p * p
    lhs = standard_poly("continuous-q-hermite", point, n + m)
    terms = []
    qn = _Q(1) / q ** n
    qm = _Q(1) / q ** m
    for k in range(min(n, m) + 1):
        coef = q_poch_scalar(qn, q, k) * q_poch_scalar(qm, q, k) * q_poch_scalar(q, q, k).inverse()
        coef = coef * GaussianRational.coerce(p) ** (
            -2 * k * k + 2 * k + n * m + k * m + 2 * n * k
        )
        t = Laurent.monomial(-2 * k) * coef
        t = t * laurent_scale(standard_poly("continuous-q-hermite", point, n - k), p ** k)
        t = t * laurent_scale(
            standard_poly("continuous-q-hermite", point, m - k),
            GaussianRational.coerce(p) ** (k - n),
        )
        terms.append(t)
    return lhs, terms


def _pref_one(n, m):
    return GR_ONE


def _pref_binom(n, m):
    return GaussianRational(binomial(n + m, n))


EXPANSIONS: dict = {}


def _reg(e: Expansion):
    EXPANSIONS[e.id] = e


_reg(Expansion("hermite-expansion", "hermite", "", "classical", _build_hermite, _pref_one))
_reg(Expansion("laguerre-expansion", "laguerre", "", "classical", _build_laguerre, _pref_binom))
_reg(Expansion("jacobi-expansion", "jacobi", "", "classical", _build_jacobi, _pref_binom))
_reg(Expansion("meixner-expansion-eta1", "meixner", "eta1", "classical", _build_meixner_eta1, _pref_one))
_reg(Expansion("meixner-expansion-etaS", "meixner", "etaS", "classical", _build_meixner_etaS, _pref_one))
_reg(Expansion("charlier-expansion-eta1", "charlier", "eta1", "classical", _build_charlier_eta1, _pref_one))
_reg(Expansion("charlier-expansion-etaS", "charlier", "etaS", "classical", _build_charlier_etaS, _pref_one))
_reg(Expansion("mp-expansion", "meixner-pollaczek", "", "classical", _build_mp, _pref_binom))
_reg(Expansion("wilson-expansion", "wilson", "", "q", _build_wilson, _pref_one))
_reg(Expansion("bigqjacobi-expansion-Tq", "big-q-jacobi", "Tq", "q", _build_bqj_Tq, _pref_one))
_reg(Expansion("bigqjacobi-expansion-I", "big-q-jacobi", "I", "q", _build_bqj_I, _pref_one))
_reg(Expansion("aw-expansion", "askey-wilson", "", "q", _build_aw, _pref_one))
_reg(Expansion("cqhermite-expansion", "continuous-q-hermite", "", "q", _build_cqh, _pref_one))


def closed_expansion_residual(identity: str, point: ParamPoint, n: int, m: int):
    """LHS minus the closed-form k-sum for one catalogued identity; exactly zero."""
    e = EXPANSIONS[identity]
    lhs, terms = e.build(point, n, m)
    return residual_from_terms(lhs, terms)


def expansion_agreement_gap(identity: str, point: ParamPoint, n: int, m: int):
    """Literal RHS minus (prefactor * normalization * generic engine RHS).

    Zero means the closed form and the generic chain-expansion engine produce
    the identical polynomial, not merely the same LHS.
    """
    e = EXPANSIONS[identity]
    _, terms = e.build(point, n, m)
    literal = None
    for t in terms:
        literal = t if literal is None else literal + t
    generic = chain_expansion_rhs(e.family, point, n, m, e.variant)
    scale = e.lhs_prefactor(n, m) * normalization(e.family, point, n + m)
    if isinstance(literal, Laurent) or isinstance(generic, Laurent):
        return Laurent.coerce(literal) - Laurent.coerce(generic) * scale
    return literal - generic * scale


# ---------------------------------------------------------------------------
# Hermite oracles
# ---------------------------------------------------------------------------

def feldheim_watson_coefficient(m: int, n: int, r: int) -> int:
    return binomial(n, r) * binomial(m, r) * 2 ** r * factorial(r)


def hermite_linearization_oracle(m: int, n: int) -> tuple:
    """Coefficients of H_(m+n-2r) in H_m H_n, by brute-force basis expansion."""
    basis = [hermite_poly(j) for j in range(m + n + 1)]
    coeffs = expand_in_basis(hermite_poly(m) * hermite_poly(n), basis)
    out = []
    for j, cf in enumerate(coeffs):
        if (m + n - j) % 2 == 1:
            if cf:
                raise AssertionError("Hermite product expansion hit a parity-violating term")
        elif j > m + n:
            raise AssertionError("expansion degree overflow")
    for r in range(min(m, n) + 1):
        out.append(coeffs[m + n - 2 * r])
    if any(cf for j, cf in enumerate(coeffs) if j < m + n - 2 * min(m, n)):
        raise AssertionError("Hermite product expansion has terms below degree m+n-2min")
    return tuple(out)


@dataclass(frozen=True)
class TruncatedSeries:
    """Formal series in t truncated at `order`; coefficient j is a Poly in x."""

    coefficients: tuple
    order: int

    def __post_init__(self):
        if len(self.coefficients) != self.order + 1:
            raise ValueError("coefficient count must be order + 1")

    def is_zero(self) -> bool:
        return not any(self.coefficients)


def zassenhaus_series_residual(order: int, f: Poly) -> TruncatedSeries:
    """Coefficient-wise difference of exp(t(d/dx - 2x)) f against its closed form.

    LHS_j = chain^j f / j!; RHS is the t-expansion of f(x+t) exp(-2xt - t^2).
    """
    pt = make_point("hermite")
    spec = FAMILIES["hermite"]
    R = spec.raising(pt)
    lhs = []
    cur = f
    for j in range(order + 1):
        lhs.append(cur * _Q(Rational(1, factorial(j))))
        cur = R(cur)
    # exp(-2xt - t^2): coefficient of t^b
    exp_coeffs = []
    for b in range(order + 1):
        acc = Poly.zero()
        for mm in range(b // 2 + 1):
            w = b - 2 * mm
            coef = _Q(Rational((-1) ** mm, factorial(w) * factorial(mm)))
            acc = acc + Poly.monomial(w, _Q((-2) ** w)) * coef
        exp_coeffs.append(acc)
    # f(x+t): coefficient of t^a is f^(a)/a!
    taylor = []
    cur = f
    for a in range(order + 1):
        taylor.append(cur * _Q(Rational(1, factorial(a))))
        cur = cur.derivative()
    residual = []
    for j in range(order + 1):
        rhs = Poly.zero()
        for a in range(j + 1):
            rhs = rhs + taylor[a] * exp_coeffs[j - a]
        residual.append(lhs[j] - rhs)
    return TruncatedSeries(tuple(residual), order)
