"""The polynomial families: parameter spaces, raising operators, raising-chain
construction, closed hypergeometric forms, and exact recurrence extraction.

A family bundles everything the identity engines need:

  * an admissibility predicate on the parameter point and the shift nu -> nu+sigma
    (additive for the classical families, multiplicative by q for the q-families),
  * the raising operator R_nu acting on the carrier (polynomials in x, or
    symmetric Laurent polynomials in z for the Askey-Wilson level),
  * one or more Leibniz "variants", each pairing an operator scheme with the
    closed-form weight-ratio polynomial eta^k(w_{nu+k sigma}) / w_nu,
  * the scalar relating the raising chain applied to 1 to the standard
    (basic) hypergeometric form of the polynomials.

Weight ratios are stored as closed-form polynomial factories, never as
quotients of actual weights: the weights involve Gamma factors and infinite
products, while the ratios are plain polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .algebra import (
    GR_HALF_I,
    GR_I,
    GR_ONE,
    GR_ZERO,
    GaussianRational,
    Laurent,
    Poly,
    Rational,
    SymLaurent,
    UnitPhase,
    factorial,
    pochhammer,
    q_pochhammer,
)
from . import ops

__all__ = [
    "ParamPoint",
    "Variant",
    "FamilySpec",
    "MonicRecurrence",
    "FAMILIES",
    "make_point",
    "shifted_point",
    "falling_poch_poly",
    "rising_poch_poly",
    "q_poch_poly",
    "q_poch_scalar",
    "raise_chain",
    "standard_poly",
    "normalization",
    "recurrence_extract",
    "lowering_constant_check",
    "expand_in_basis",
    "monic",
    "hermite_poly",
    "laguerre_poly",
    "jacobi_poly",
    "meixner_poly",
    "charlier_poly",
    "mp_poly",
    "wilson_poly",
    "big_q_jacobi_poly",
    "askey_wilson_poly",
    "cq_hermite_poly",
    "krawtchouk_poly",
]

_half = Rational(1, 2)


@dataclass(frozen=True)
class ParamPoint:
    """A concrete parameter instantiation; phases are stored as half-tangents."""

    family: str
    values: tuple

    def get(self, name):
        for k, v in self.values:
            if k == name:
                return v
        raise KeyError(f"{self.family} point has no parameter {name!r}")

    def replace(self, **updates) -> "ParamPoint":
        vals = tuple((k, updates.pop(k) if k in updates else v) for k, v in self.values)
        if updates:
            raise KeyError(f"unknown parameters {sorted(updates)}")
        return ParamPoint(self.family, vals)

    def as_dict(self) -> dict:
        return dict(self.values)

    def __repr__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.values)
        return f"{self.family}({inner})"


@dataclass(frozen=True)
class Variant:
    """One Leibniz factorization of a family: operator scheme plus weight ratio."""

    name: str
    op_spec: Callable[[ParamPoint], ops.OperatorSpec]
    weight_ratio: Callable[[ParamPoint, int], object]


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    param_names: tuple
    carrier: str  # "poly" | "laurent"
    admissible: Callable[[ParamPoint], bool]
    shift: Callable[[ParamPoint], ParamPoint]
    raising: Optional[Callable[[ParamPoint], Callable]]
    variants: tuple
    lowering_tag: str
    lowering: Callable[[ParamPoint], Callable]
    adjoint: Optional[Callable[[ParamPoint], Callable]]
    normalization: Callable[[ParamPoint, int], GaussianRational]
    standard: Callable[[ParamPoint, int], object]
    fdegree: Callable[[object], int]

    def one(self):
        return SymLaurent.one() if self.carrier == "laurent" else Poly.one()

    def default_variant(self) -> Variant:
        return self.variants[0]

    def variant(self, name: str) -> Variant:
        for v in self.variants:
            if v.name == name:
                return v
        raise KeyError(f"{self.tag} has no Leibniz variant {name!r}")


@dataclass(frozen=True)
class MonicRecurrence:
    """Monic three-term data: x p_n = p_(n+1) + b[n] p_n + c[n] p_(n-1)."""

    b: tuple
    c: tuple


def _Q(v) -> Rational:
    return Rational(v)


# ---------------------------------------------------------------------------
# closed hypergeometric forms
# ---------------------------------------------------------------------------

def hermite_poly(n: int) -> Poly:
    """H_n(x) = sum_k (-1)^k n! (2x)^(n-2k) / (k! (n-2k)!)."""
    coeffs = [GR_ZERO] * (n + 1)
    sign = 1
    for k in range(n // 2 + 1):
        m = n - 2 * k
        coeffs[m] = GaussianRational(_Q(sign * factorial(n) * 2 ** m) / _Q(factorial(k) * factorial(m)))
        sign = -sign
    return Poly(coeffs)


def laguerre_poly(nu, n: int) -> Poly:
    """L_n^(nu)(x) = ((nu+1)_n / n!) 1F1(-n; nu+1; x)."""
    nu = _Q(nu)
    pref = pochhammer(nu + 1, n) * _Q(Rational(1, factorial(n)))
    out = Poly.zero()
    term = GR_ONE
    for k in range(n + 1):
        out = out + Poly.monomial(k, term)
        if k < n:
            term = term * _Q(k - n) / ((nu + 1 + k) * (k + 1))
    return out * pref


def jacobi_poly(alpha, beta, n: int) -> Poly:
    """P_n^(alpha,beta)(x) = ((alpha+1)_n / n!) 2F1(-n, n+alpha+beta+1; alpha+1; (1-x)/2)."""
    alpha = _Q(alpha)
    beta = _Q(beta)
    pref = pochhammer(alpha + 1, n) * _Q(Rational(1, factorial(n)))
    halfarg = Poly([_half, -_half])
    out = Poly.zero()
    coef = GR_ONE
    power = Poly.one()
    for k in range(n + 1):
        out = out + power * coef
        if k < n:
            coef = coef * _Q(k - n) * (alpha + beta + n + 1 + k) / ((alpha + 1 + k) * (k + 1))
            power = power * halfarg
    return out * pref


def falling_poch_poly(n: int) -> Poly:
    """(-x)_n as a polynomial: prod_j (j - x)."""
    out = Poly.one()
    for j in range(n):
        out = out * Poly([j, -1])
    return out


def meixner_poly(beta, c, n: int) -> Poly:
    """M_n(x; beta, c) = 2F1(-n, -x; beta; 1 - 1/c)."""
    beta = _Q(beta)
    c = _Q(c)
    z = (c - 1) / c
    out = Poly.zero()
    coef = GR_ONE
    fall = Poly.one()
    for k in range(n + 1):
        out = out + fall * coef
        if k < n:
            coef = coef * _Q(k - n) * z / ((beta + k) * (k + 1))
            fall = fall * Poly([k, -1])
    return out


def charlier_poly(a, n: int) -> Poly:
    """C_n(x; a) = 2F0(-n, -x; -; -1/a)."""
    a = _Q(a)
    out = Poly.zero()
    coef = GR_ONE
    fall = Poly.one()
    for k in range(n + 1):
        out = out + fall * coef
        if k < n:
            coef = coef * _Q(k - n) * (-1 / a) / _Q(k + 1)
            fall = fall * Poly([k, -1])
    return out


def rising_poch_poly(base, n: int, xcoef=1) -> Poly:
    """(base + xcoef*x)_n as a polynomial in x."""
    out = Poly.one()
    for j in range(n):
        out = out * Poly([_Q(base) + j, xcoef])
    return out


def mp_poly(lam, phi_s, n: int) -> Poly:
    """P_n^(lambda)(x; phi) = ((2 lambda)_n / n!) e^(i n phi)
    2F1(-n, lambda + ix; 2 lambda; 1 - e^(-2 i phi)), with phi given by its
    half-angle tangent.  The coefficients combine to real rationals."""
    lam = _Q(lam)
    u = UnitPhase(phi_s)
    zarg = GR_ONE - u.power(-2)
    out = Poly.zero()
    coef = GR_ONE
    rising = Poly.one()
    for k in range(n + 1):
        out = out + rising * coef
        if k < n:
            coef = coef * _Q(k - n) * zarg / ((2 * lam + k) * (k + 1))
            rising = rising * Poly([lam + k, GR_I])
    out = out * (pochhammer(2 * lam, n) * _Q(Rational(1, factorial(n))) * u.power(n))
    if any(c.im for c in out.coeffs):
        raise AssertionError("Meixner-Pollaczek polynomial came out non-real")
    return out


def wilson_poly(a, b, c, d, n: int) -> Poly:
    """W_n(x^2; a,b,c,d) as an even polynomial in x of degree 2n."""
    a, b, c, d = map(_Q, (a, b, c, d))
    e1 = a + b + c + d
    pref = pochhammer(a + b, n) * pochhammer(a + c, n) * pochhammer(a + d, n)
    out = Poly.zero()
    coef = GR_ONE
    even = Poly.one()
    for k in range(n + 1):
        out = out + even * coef
        if k < n:
            coef = coef * _Q(k - n) * (e1 + n - 1 + k) / ((a + b + k) * (a + c + k) * (a + d + k) * (k + 1))
            even = even * Poly([(a + k) * (a + k), 0, 1])  # (a+k)^2 + x^2
    return out * pref


def q_poch_scalar(a, q, k):
    """Scalar (a; q)_k as a Rational."""
    out = _Q(1)
    aq = _Q(a)
    for _ in range(k):
        out *= 1 - aq
        aq *= q
    return out


def big_q_jacobi_poly(a, b, c, q, n: int) -> Poly:
    """P_n(x; a, b, c; q) = 3phi2(q^-n, a b q^(n+1), x; aq, cq; q, q)."""
    a, b, c, q = map(_Q, (a, b, c, q))
    qinv_n = _Q(1) / q ** n
    abq = a * b * q ** (n + 1)
    out = Poly.zero()
    xpoch = Poly.one()
    for k in range(n + 1):
        scal = q_poch_scalar(qinv_n, q, k) * q_poch_scalar(abq, q, k) * q ** k / (
            q_poch_scalar(a * q, q, k) * q_poch_scalar(c * q, q, k) * q_poch_scalar(q, q, k)
        )
        out = out + xpoch * scal
        xpoch = xpoch * Poly([1, -(q ** k)])
    return out


def askey_wilson_poly(a, b, c, d, p, n: int) -> SymLaurent:
    """p_n(x; a,b,c,d | q) with q = p^2, as a symmetric Laurent polynomial."""
    a, b, c, d, p = map(_Q, (a, b, c, d, p))
    if not a:
        raise ValueError("the 4phi3 form needs a != 0; use the continuous q-Hermite family")
    q = p * p
    qinv_n = _Q(1) / q ** n
    abcd = a * b * c * d * q ** (n - 1)
    pref = GaussianRational(
        q_poch_scalar(a * b, q, n) * q_poch_scalar(a * c, q, n) * q_poch_scalar(a * d, q, n) / a ** n
    )
    out = Laurent.zero()
    zpoch = Laurent.one()
    for k in range(n + 1):
        scal = q_poch_scalar(qinv_n, q, k) * q_poch_scalar(abcd, q, k) * q ** k / (
            q_poch_scalar(a * b, q, k) * q_poch_scalar(a * c, q, k) * q_poch_scalar(a * d, q, k) * q_poch_scalar(q, q, k)
        )
        out = out + zpoch * scal
        # next factor of (az; q)_k (a/z; q)_k
        zpoch = zpoch * Laurent(0, [1, -a * q ** k]) * Laurent(-1, [-a * q ** k, 1])
    return (out * pref).to_sym()


def cq_hermite_poly(p, n: int) -> SymLaurent:
    """H_n(x | q) = z^-n 2phi0(q^-n, 0; -; q, q^n z^2), q = p^2."""
    p = _Q(p)
    q = p * p
    out = Laurent.zero()
    coef = GR_ONE
    qn = _Q(1) / q ** n
    qk = _Q(1)
    for k in range(n + 1):
        out = out + Laurent.monomial(2 * k - n, coef)
        if k < n:
            # next term ratio: (1 - q^(k-n)) / (1-q^(k+1)) * (-1) q^(-k) * q^n z^2
            coef = coef * (1 - qn * qk) / (1 - q * qk) * (-(q ** n) / qk)
            qk = qk * q
    return out.to_sym()


def krawtchouk_poly(pp, N: int, n: int) -> Poly:
    """K_n(x; p, N) = 2F1(-n, -x; -N; 1/p), for n <= N."""
    pp = _Q(pp)
    if n > N:
        raise ValueError("Krawtchouk needs n <= N")
    out = Poly.zero()
    coef = GR_ONE
    fall = Poly.one()
    for k in range(n + 1):
        out = out + fall * coef
        if k < n:
            coef = coef * _Q(k - n) / (_Q(k - N) * (k + 1) * pp)
            fall = fall * Poly([k, -1])
    return out


# ---------------------------------------------------------------------------
# family catalog
# ---------------------------------------------------------------------------

def _poly_degree(f: Poly) -> int:
    return f.degree


def _even_degree(f: Poly) -> int:
    return f.degree // 2 if f else -1


def _laurent_degree(f) -> int:
    return f.degree if f else -1


def _hermite_raise(pt):
    m2x = Poly([0, -2])
    return lambda f: f.derivative() + m2x * f


def _laguerre_raise(pt):
    nu = pt.get("nu")
    lin = Poly([nu + 1, -1])
    return lambda f: Poly.x() * f.derivative() + lin * f


def _jacobi_raise(pt):
    alpha, beta = pt.get("alpha"), pt.get("beta")
    quad = Poly([1, 0, -1])
    lin = Poly([beta - alpha, -(alpha + beta + 2)])
    return lambda f: quad * f.derivative() + lin * f


def _meixner_raise(pt):
    beta, c = pt.get("beta"), pt.get("c")
    lin = Poly([1, _Q(1) / beta])
    xs = Poly([0, -_Q(1) / (c * beta)])
    return lambda f: lin * f + xs * ops.translate(f, -1)


def _charlier_raise(pt):
    a = pt.get("a")
    xs = Poly([0, -_Q(1) / a])
    return lambda f: f + xs * ops.translate(f, -1)


def _mp_raise(pt):
    lam = pt.get("lam")
    u = UnitPhase(pt.get("phi"))
    up = Poly([lam, -GR_I]) * (-u.value)          # -e^(i phi) (lambda - ix)
    dn = Poly([lam, GR_I]) * (-u.power(-1))       # -e^(-i phi) (lambda + ix)
    return lambda f: up * ops.translate(f, GR_HALF_I) + dn * ops.translate(f, -GR_HALF_I)


def _wilson_raise(pt):
    vals = [pt.get(k) for k in ("a", "b", "c", "d")]
    plus = Poly.one()
    minus = Poly.one()
    for e in vals:
        plus = plus * Poly([e, GR_I])    # e + ix
        minus = minus * Poly([e, -GR_I])  # e - ix
    den = Poly([0, GaussianRational(0, 2)])  # 2ix

    def R(f):
        num = plus * ops.translate(f, -GR_HALF_I) - minus * ops.translate(f, GR_HALF_I)
        return num.exact_div(den)

    return R


def _bqj_raise_abc(a, b, c, q):
    up = Poly([1, -_Q(1) / (a * q)]) * Poly([1, -_Q(1) / (c * q)])
    dn = Poly([1, -1]) * Poly([1, -b / c])
    den = Poly([0, 1 - q])

    def R(f):
        num = up * f - dn * f.compose_affine(q, 0)
        return num.exact_div(den)

    return R


def _bqj_raise(pt):
    return _bqj_raise_abc(pt.get("a"), pt.get("b"), pt.get("c"), pt.get("q"))


def _bql_raise(pt):
    return _bqj_raise_abc(pt.get("a"), _Q(0), pt.get("c"), pt.get("q"))


def _aw_raise_vals(vals, p):
    q = p * p
    B = Laurent.one()
    for e in vals:
        B = B * Laurent(0, [1, -e])
    Binv = B.invert_var()
    den = Laurent(0, [1, 0, -1])  # 1 - z^2
    scal = _Q(-2) / (1 - q)

    def R(f: SymLaurent) -> SymLaurent:
        num = (
            B * ops.aw_eta(f, p, 1) * Laurent.monomial(-1)
            - Laurent.monomial(3) * Binv * ops.aw_eta(f, p, -1)
        )
        if not num:
            return SymLaurent.zero()
        return (num.exact_div(den) * scal).to_sym()

    return R


def _aw_raise(pt):
    return _aw_raise_vals([pt.get(k) for k in ("a", "b", "c", "d")], pt.get("p"))


def _cqh_raise(pt):
    return _aw_raise_vals([_Q(0)] * 4, pt.get("p"))


# weight-ratio factories ----------------------------------------------------

def _ratio_one(pt, k):
    return Poly.one()


def _ratio_x_pow(pt, k):
    return Poly.monomial(k)


def _ratio_jacobi(pt, k):
    return Poly([1, 0, -1]) ** k


def _ratio_meixner_eta1(pt, k):
    beta = pt.get("beta")
    out = Poly.one()
    for j in range(k):
        out = out * Poly([beta + j, 1])
    return out * pochhammer(beta, k).inverse()


def _ratio_meixner_etaS(pt, k):
    beta, c = pt.get("beta"), pt.get("c")
    scal = GaussianRational(_Q((-1) ** k)) * (pochhammer(beta, k) * GaussianRational(c ** k)).inverse()
    return falling_poch_poly(k) * scal


def _ratio_charlier_etaS(pt, k):
    a = pt.get("a")
    return falling_poch_poly(k) * GaussianRational(_Q(1) / (-a) ** k)


def _ratio_mp(pt, k):
    lam = pt.get("lam")
    u = UnitPhase(pt.get("phi"))
    return rising_poch_poly(lam, k, GR_I) * (GR_I ** k * u.power(-k))


def _ratio_wilson(pt, k):
    out = Poly.one() * GaussianRational(_Q((-1) ** k))
    for name in ("a", "b", "c", "d"):
        out = out * rising_poch_poly(pt.get(name), k, GR_I)
    return out


def q_poch_poly(scale, q, k) -> Poly:
    """(scale * x; q)_k as a polynomial in x."""
    out = Poly.one()
    s = _Q(scale)
    for j in range(k):
        out = out * Poly([1, -s * q ** j])
    return out


def _ratio_bqj_Tq(pt, k):
    b, c, q = pt.get("b"), pt.get("c"), pt.get("q")
    return q_poch_poly(1, q, k) * q_poch_poly(b / c, q, k)


def _ratio_bql_Tq(pt, k):
    return q_poch_poly(1, pt.get("q"), k)


def _ratio_bqj_I(pt, k):
    # shared by big q-Jacobi and big q-Laguerre: b drops out of this ratio
    a, c, q = pt.get("a"), pt.get("c"), pt.get("q")
    qk = q ** k
    return q_poch_poly(_Q(1) / (a * qk), q, k) * q_poch_poly(_Q(1) / (c * qk), q, k)


def _ratio_aw_vals(vals, p, k):
    q = p * p
    out = Laurent.monomial(-2 * k, GaussianRational(_Q((-1) ** k)) * GaussianRational.coerce(p) ** (-k * k))
    for e in vals:
        if not e:
            continue
        for j in range(k):
            out = out * Laurent(0, [1, -e * q ** j])
    return out


def _ratio_aw(pt, k):
    return _ratio_aw_vals([pt.get(n) for n in ("a", "b", "c", "d")], pt.get("p"), k)


def _ratio_cqh(pt, k):
    return _ratio_aw_vals([], pt.get("p"), k)


# lowering / adjoint operators ----------------------------------------------

def _low_derivative(pt):
    return lambda f: f.derivative()


def _adj_neg_derivative(pt):
    return lambda f: -f.derivative()


def _low_neg_forward(pt):
    return ops.neg_forward_shift


def _low_delta_x(pt):
    return ops.delta_x


def _adj_neg_delta_x(pt):
    return lambda f: -ops.delta_x(f)


def _low_delta_x2(pt):
    return ops.delta_x2


def _low_qinv(pt):
    q = pt.get("q")
    return lambda f: ops.q_derivative_inverse(f, q)


def _low_aw(pt):
    p = pt.get("p")
    return lambda f: ops.aw_Dq(f, p)


# normalizations: standard = normalization(pt, n) * raise_chain(pt, n) --------

def _norm_hermite(pt, n):
    return GaussianRational(_Q((-1) ** n))


def _norm_laguerre(pt, n):
    return GaussianRational(Rational(1, factorial(n)))


def _norm_jacobi(pt, n):
    return GaussianRational(Rational((-1) ** n, 2 ** n * factorial(n)))


def _norm_unit(pt, n):
    return GR_ONE


def _norm_mp(pt, n):
    return GaussianRational(Rational((-1) ** n, factorial(n)))


def _norm_bqj(pt, n):
    a, c, q = pt.get("a"), pt.get("c"), pt.get("q")
    num = GaussianRational((a * c) ** n * q ** (n * (n + 1)) * (1 - q) ** n)
    return num * (q_pochhammer(a * q, q, n) * q_pochhammer(c * q, q, n)).inverse()


def _norm_aw(pt, n):
    # standard = ((q-1)/2)^n q^(n(n-1)/4) * chain; the q-power is integral in p
    p = pt.get("p")
    q = p * p
    return GaussianRational(((q - 1) / 2) ** n * p ** (n * (n - 1) // 2))


def _sh_ident(pt):
    return pt


def _sh_add(names, delta):
    def sh(pt):
        return pt.replace(**{k: pt.get(k) + delta for k in names})

    return sh


def _sh_mul_q(names):
    def sh(pt):
        q = pt.get("q")
        return pt.replace(**{k: pt.get(k) * q for k in names})

    return sh


def _sh_mul_p(names):
    def sh(pt):
        p = pt.get("p")
        return pt.replace(**{k: pt.get(k) * p for k in names})

    return sh


def _in_open(v, lo, hi) -> bool:
    return lo < v < hi


FAMILIES: dict = {}


def _register(spec: FamilySpec):
    FAMILIES[spec.tag] = spec


_register(FamilySpec(
    tag="hermite",
    param_names=(),
    carrier="poly",
    admissible=lambda pt: True,
    shift=_sh_ident,
    raising=_hermite_raise,
    variants=(Variant("", lambda pt: ops.DERIVATIVE_SPEC, _ratio_one),),
    lowering_tag="derivative",
    lowering=_low_derivative,
    adjoint=_adj_neg_derivative,
    normalization=_norm_hermite,
    standard=lambda pt, n: hermite_poly(n),
    fdegree=_poly_degree,
))

_register(FamilySpec(
    tag="laguerre",
    param_names=("nu",),
    carrier="poly",
    admissible=lambda pt: pt.get("nu") > -1,
    shift=_sh_add(("nu",), 1),
    raising=_laguerre_raise,
    variants=(Variant("", lambda pt: ops.DERIVATIVE_SPEC, _ratio_x_pow),),
    lowering_tag="derivative",
    lowering=_low_derivative,
    adjoint=_adj_neg_derivative,
    normalization=_norm_laguerre,
    standard=lambda pt, n: laguerre_poly(pt.get("nu"), n),
    fdegree=_poly_degree,
))

_register(FamilySpec(
    tag="jacobi",
    param_names=("alpha", "beta"),
    carrier="poly",
    admissible=lambda pt: pt.get("alpha") > -1 and pt.get("beta") > -1,
    shift=_sh_add(("alpha", "beta"), 1),
    raising=_jacobi_raise,
    variants=(Variant("", lambda pt: ops.DERIVATIVE_SPEC, _ratio_jacobi),),
    lowering_tag="derivative",
    lowering=_low_derivative,
    adjoint=_adj_neg_derivative,
    normalization=_norm_jacobi,
    standard=lambda pt, n: jacobi_poly(pt.get("alpha"), pt.get("beta"), n),
    fdegree=_poly_degree,
))

_register(FamilySpec(
    tag="meixner",
    param_names=("beta", "c"),
    carrier="poly",
    admissible=lambda pt: pt.get("beta") > 0 and _in_open(pt.get("c"), 0, 1),
    shift=_sh_add(("beta",), 1),
    raising=_meixner_raise,
    variants=(
        Variant("eta1", lambda pt: ops.BACKWARD_ETA1_SPEC, _ratio_meixner_eta1),
        Variant("etaS", lambda pt: ops.BACKWARD_ETAS_SPEC, _ratio_meixner_etaS),
    ),
    lowering_tag="neg_forward_shift",
    lowering=_low_neg_forward,
    adjoint=_low_neg_forward,
    normalization=_norm_unit,
    standard=lambda pt, n: meixner_poly(pt.get("beta"), pt.get("c"), n),
    fdegree=_poly_degree,
))

_register(FamilySpec(
    tag="charlier",
    param_names=("a",),
    carrier="poly",
    admissible=lambda pt: pt.get("a") > 0,
    shift=_sh_ident,
    raising=_charlier_raise,
    variants=(
        Variant("eta1", lambda pt: ops.BACKWARD_ETA1_SPEC, _ratio_one),
        Variant("etaS", lambda pt: ops.BACKWARD_ETAS_SPEC, _ratio_charlier_etaS),
    ),
    lowering_tag="neg_forward_shift",
    lowering=_low_neg_forward,
    adjoint=_low_neg_forward,
    normalization=_norm_unit,
    standard=lambda pt, n: charlier_poly(pt.get("a"), n),
    fdegree=_poly_degree,
))

_register(FamilySpec(
    tag="meixner-pollaczek",
    param_names=("lam", "phi"),
    carrier="poly",
    admissible=lambda pt: pt.get("lam") > 0 and pt.get("phi") > 0,
    shift=lambda pt: pt.replace(lam=pt.get("lam") + _half),
    raising=_mp_raise,
    variants=(Variant("", lambda pt: ops.DELTA_X_SPEC, _ratio_mp),),
    lowering_tag="delta_x",
    lowering=_low_delta_x,
    adjoint=_adj_neg_delta_x,
    normalization=_norm_mp,
    standard=lambda pt, n: mp_poly(pt.get("lam"), pt.get("phi"), n),
    fdegree=_poly_degree,
))

_register(FamilySpec(
    tag="wilson",
    param_names=("a", "b", "c", "d"),
    carrier="poly",
    admissible=lambda pt: all(pt.get(k) > 0 for k in ("a", "b", "c", "d")),
    shift=_sh_add(("a", "b", "c", "d"), _half),
    raising=_wilson_raise,
    variants=(Variant("", lambda pt: ops.DELTA_X2_SPEC, _ratio_wilson),),
    lowering_tag="delta_x2",
    lowering=_low_delta_x2,
    adjoint=None,
    normalization=_norm_unit,
    standard=lambda pt, n: wilson_poly(pt.get("a"), pt.get("b"), pt.get("c"), pt.get("d"), n),
    fdegree=_even_degree,
))

_register(FamilySpec(
    tag="big-q-jacobi",
    param_names=("a", "b", "c", "q"),
    carrier="poly",
    admissible=lambda pt: _in_open(pt.get("q"), 0, 1)
    and _in_open(pt.get("a"), 0, 1 / pt.get("q"))
    and _in_open(pt.get("b"), 0, 1 / pt.get("q"))
    and pt.get("c") < 0,
    shift=_sh_mul_q(("a", "b", "c")),
    raising=_bqj_raise,
    variants=(
        Variant("Tq", lambda pt: ops.qderiv_Tq_spec(pt.get("q")), _ratio_bqj_Tq),
        Variant("I", lambda pt: ops.qderiv_I_spec(pt.get("q")), _ratio_bqj_I),
    ),
    lowering_tag="q_derivative_inverse",
    lowering=_low_qinv,
    adjoint=_low_qinv,
    normalization=_norm_bqj,
    standard=lambda pt, n: big_q_jacobi_poly(pt.get("a"), pt.get("b"), pt.get("c"), pt.get("q"), n),
    fdegree=_poly_degree,
))

_register(FamilySpec(
    tag="big-q-laguerre",
    param_names=("a", "c", "q"),
    carrier="poly",
    admissible=lambda pt: _in_open(pt.get("q"), 0, 1)
    and _in_open(pt.get("a"), 0, 1 / pt.get("q"))
    and pt.get("c") < 0,
    shift=_sh_mul_q(("a", "c")),
    raising=_bql_raise,
    variants=(
        Variant("Tq", lambda pt: ops.qderiv_Tq_spec(pt.get("q")), _ratio_bql_Tq),
        Variant("I", lambda pt: ops.qderiv_I_spec(pt.get("q")), _ratio_bqj_I),
    ),
    lowering_tag="q_derivative_inverse",
    lowering=_low_qinv,
    adjoint=_low_qinv,
    normalization=_norm_bqj,
    standard=lambda pt, n: big_q_jacobi_poly(pt.get("a"), 0, pt.get("c"), pt.get("q"), n),
    fdegree=_poly_degree,
))

_register(FamilySpec(
    tag="askey-wilson",
    param_names=("a", "b", "c", "d", "p"),
    carrier="laurent",
    admissible=lambda pt: _in_open(pt.get("p"), 0, 1)
    and max(abs(pt.get(k)) for k in ("a", "b", "c", "d")) < 1
    and pt.get("a") != 0,
    shift=_sh_mul_p(("a", "b", "c", "d")),
    raising=_aw_raise,
    variants=(Variant("", lambda pt: ops.aw_spec(pt.get("p")), _ratio_aw),),
    lowering_tag="aw_Dq",
    lowering=_low_aw,
    adjoint=None,
    normalization=_norm_aw,
    standard=lambda pt, n: askey_wilson_poly(pt.get("a"), pt.get("b"), pt.get("c"), pt.get("d"), pt.get("p"), n),
    fdegree=_laurent_degree,
))

_register(FamilySpec(
    tag="continuous-q-hermite",
    param_names=("p",),
    carrier="laurent",
    admissible=lambda pt: _in_open(pt.get("p"), 0, 1),
    shift=_sh_ident,
    raising=_cqh_raise,
    variants=(Variant("", lambda pt: ops.aw_spec(pt.get("p")), _ratio_cqh),),
    lowering_tag="aw_Dq",
    lowering=_low_aw,
    adjoint=None,
    normalization=_norm_aw,
    standard=lambda pt, n: cq_hermite_poly(pt.get("p"), n),
    fdegree=_laurent_degree,
))

_register(FamilySpec(
    tag="krawtchouk",
    param_names=("p", "N"),
    carrier="poly",
    admissible=lambda pt: _in_open(pt.get("p"), 0, 1) and pt.get("N") >= 1,
    shift=_sh_ident,
    raising=None,  # finite family: only the closed form and its recurrence are used
    variants=(),
    lowering_tag="neg_forward_shift",
    lowering=_low_neg_forward,
    adjoint=None,
    normalization=_norm_unit,
    standard=lambda pt, n: krawtchouk_poly(pt.get("p"), pt.get("N"), n),
    fdegree=_poly_degree,
))


def shifted_point(point: ParamPoint, k: int) -> ParamPoint:
    """nu + k sigma."""
    spec = FAMILIES[point.family]
    for _ in range(k):
        point = spec.shift(point)
    return point


def make_point(tag: str, **values) -> ParamPoint:
    spec = FAMILIES[tag]
    missing = [k for k in spec.param_names if k not in values]
    if missing:
        raise KeyError(f"{tag} needs parameters {missing}")
    extra = [k for k in values if k not in spec.param_names]
    if extra:
        raise KeyError(f"{tag} got unknown parameters {extra}")
    vals = tuple(
        (k, values[k] if k == "N" else _Q(values[k])) for k in spec.param_names
    )
    return ParamPoint(tag, vals)


_chain_cache: dict = {}
_std_cache: dict = {}


def raise_chain(tag: str, point: ParamPoint, n: int):
    """R_nu R_(nu+sigma) ... R_(nu+(n-1)sigma) applied to the constant 1.

    The rightmost factor acts first; the order matters because raising
    operators at different parameters do not commute.
    """
    spec = FAMILIES[tag]
    if spec.raising is None:
        raise ValueError(f"{tag} has no raising-chain machinery")
    key = (tag, point, n)
    hit = _chain_cache.get(key)
    if hit is not None:
        return hit
    pt = point
    for _ in range(n + 1):
        if not spec.admissible(pt):
            raise ValueError(f"inadmissible parameter point {pt}")
        pt = spec.shift(pt)
    if n == 0:
        out = spec.one()
    else:
        out = spec.raising(point)(raise_chain(tag, spec.shift(point), n - 1))
        if spec.fdegree(out) != n:
            raise AssertionError(f"{tag} raising chain degree {spec.fdegree(out)} != {n}")
    _chain_cache[key] = out
    return out


def standard_poly(tag: str, point: ParamPoint, n: int):
    """The standard (basic) hypergeometric form of the degree-n polynomial."""
    spec = FAMILIES[tag]
    key = (tag, point, n)
    hit = _std_cache.get(key)
    if hit is None:
        hit = spec.standard(point, n)
        _std_cache[key] = hit
    return hit


def normalization(tag: str, point: ParamPoint, n: int) -> GaussianRational:
    return FAMILIES[tag].normalization(point, n)


def monic(f) -> object:
    """Normalize so the x^deg coefficient is 1 (z^deg carries 2^-deg on the lift)."""
    if isinstance(f, SymLaurent):
        d = f.degree
        return f * (f.lead.inverse() * Rational(1, 2 ** d))
    return f * f.lead.inverse()


def expand_in_basis(element, basis: list) -> list:
    """Coefficients of `element` in a graded basis; tripwire on any residue."""
    by_degree = {}
    for j, b in enumerate(basis):
        by_degree[b.degree if b else -1] = j
    coeffs = [GR_ZERO] * len(basis)
    rem = element
    while rem:
        d = rem.degree
        j = by_degree.get(d)
        if j is None:
            raise AssertionError(f"no basis element of degree {d} while expanding")
        c = rem.lead * basis[j].lead.inverse()
        coeffs[j] = c
        rem = rem - basis[j] * c
        if rem and rem.degree >= d:
            raise AssertionError("basis expansion failed to reduce degree")
    return coeffs


def _basis_polys(tag: str, point: ParamPoint, upto: int) -> list:
    spec = FAMILIES[tag]
    if spec.raising is not None:
        return [raise_chain(tag, point, j) for j in range(upto + 1)]
    return [standard_poly(tag, point, j) for j in range(upto + 1)]


def recurrence_extract(tag: str, point: ParamPoint, N: int) -> MonicRecurrence:
    """Exact b_n, c_n for n <= N from x * monic(p_n) = monic(p_(n+1)) + ...

    A residue outside the three expected terms means the family data is wrong
    and raises immediately.
    """
    spec = FAMILIES[tag]
    polys = _basis_polys(tag, point, N + 1)
    ms = [monic(f) for f in polys]
    if spec.carrier == "laurent":
        xm = SymLaurent([0, _half])
    elif spec.fdegree(Poly.x()) != 1:
        xm = Poly.monomial(2)  # even carrier: the recurrence variable is x^2
    else:
        xm = Poly.x()
    bs, cs = [], []
    for n in range(N + 1):
        coeffs = expand_in_basis(xm * ms[n], ms[: n + 2])
        for j, cf in enumerate(coeffs[: max(n - 1, 0)]):
            if cf:
                raise AssertionError(f"{tag}: x p_{n} has a stray p_{j} component")
        if coeffs[n + 1] != GR_ONE:
            raise AssertionError(f"{tag}: x p_{n} is not monic against p_{n + 1}")
        bs.append(coeffs[n])
        cs.append(coeffs[n - 1] if n >= 1 else GR_ZERO)
    return MonicRecurrence(tuple(bs), tuple(cs))


def lowering_constant_check(tag: str, point: ParamPoint, n: int):
    """L_nu p_n^(nu) must be an exact scalar multiple of p_(n-1)^(nu+sigma).

    Returns (scalar, residual); the residual after the best leading-term fit
    must be exactly zero.
    """
    spec = FAMILIES[tag]
    if n < 1:
        raise ValueError("lowering_constant_check needs n >= 1")
    pn = raise_chain(tag, point, n)
    target = raise_chain(tag, spec.shift(point), n - 1)
    lowered = spec.lowering(point)(pn)
    if not lowered:
        return GR_ZERO, target  # degree-0 annihilation would be a failure upstream
    if spec.fdegree(lowered) != n - 1:
        raise AssertionError(f"{tag}: lowering did not drop the degree by one")
    ell = lowered.lead * target.lead.inverse()
    residual = lowered - target * ell
    return ell, residual
