"""Shift, difference, divided-difference and q-difference operators, and the
generalized Leibniz rules they satisfy.

Each Leibniz scheme is a factorization

    partial^n (f*g) = sum_k alpha(n,k) * eta^k(partial^(n-k) f) * (T_{k,n} g)

with a multiplicative twist eta.  The backward-shift and q-derivative rules
admit two inequivalent factorizations each, so the catalog carries eight
entries over six underlying operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import (
    GR_HALF_I,
    GaussianRational,
    Laurent,
    Poly,
    Rational,
    SymLaurent,
    binomial,
    q_binomial,
    q_integer,
)

__all__ = [
    "derivative",
    "translate",
    "forward_shift",
    "backward_shift",
    "neg_forward_shift",
    "delta_x",
    "delta_x2",
    "q_shift",
    "q_derivative",
    "q_derivative_inverse",
    "aw_eta",
    "aw_Dq",
    "aw_Dq_raw",
    "OperatorSpec",
    "leibniz_check",
    "operator_catalog",
    "DERIVATIVE_SPEC",
    "BACKWARD_ETA1_SPEC",
    "BACKWARD_ETAS_SPEC",
    "DELTA_X_SPEC",
    "DELTA_X2_SPEC",
    "qderiv_Tq_spec",
    "qderiv_I_spec",
    "aw_spec",
]


def derivative(f: Poly) -> Poly:
    return f.derivative()


def translate(f: Poly, c) -> Poly:
    """f(x + c)."""
    return f.compose_affine(1, c)


def forward_shift(f: Poly) -> Poly:
    """Delta f = f(x+1) - f(x)."""
    return translate(f, 1) - f


def backward_shift(f: Poly) -> Poly:
    """Nabla f = f(x) - f(x-1)."""
    return f - translate(f, -1)


def neg_forward_shift(f: Poly) -> Poly:
    return -forward_shift(f)


def delta_x(f: Poly) -> Poly:
    """(f(x + i/2) - f(x - i/2)) / i."""
    diff = translate(f, GR_HALF_I) - translate(f, -GR_HALF_I)
    return diff * GaussianRational(0, -1)  # 1/i = -i


def delta_x2(f: Poly) -> Poly:
    """(f(x + i/2) - f(x - i/2)) / (2ix), defined on even polynomials."""
    diff = translate(f, GR_HALF_I) - translate(f, -GR_HALF_I)
    return diff.exact_div(Poly([0, GaussianRational(0, 2)]))


def q_shift(f: Poly, q) -> Poly:
    """T_q f(x) = f(qx)."""
    return f.compose_affine(q, 0)


def q_derivative(f: Poly, q) -> Poly:
    """(f(x) - f(qx)) / ((1-q)x); sends x^n to [n]_q x^(n-1)."""
    q = Rational(q)
    return Poly([c * q_integer(k, q) for k, c in enumerate(f.coeffs)][1:])


def q_derivative_inverse(f: Poly, q) -> Poly:
    """D at base 1/q: (f(x) - f(x/q)) / ((1 - 1/q)x)."""
    return q_derivative(f, Rational(1) / Rational(q))


def aw_eta(f: SymLaurent, p, power: int = 1) -> Laurent:
    """z |-> p^power * z on the symmetric carrier; breaks symmetry on purpose."""
    return f.to_laurent().scale_var(GaussianRational.coerce(p) ** power)


def aw_Dq_raw(f: SymLaurent, p) -> Laurent:
    """The Askey-Wilson divided difference before folding; must be symmetric.

    (f(q^(1/2)z) - f(q^(-1/2)z)) / ((1/2)(q^(1/2)-q^(-1/2))(z - 1/z)),
    with q = p^2.
    """
    p = Rational(p)
    num = aw_eta(f, p, 1) - aw_eta(f, p, -1)
    if not num:
        return Laurent.zero()
    scalar = (p - 1 / p) / 2
    den = Laurent(-1, [-scalar, 0, scalar])  # (1/2)(p - 1/p)(z - 1/z)
    return num.exact_div(den)


def aw_Dq(f: SymLaurent, p) -> SymLaurent:
    out = aw_Dq_raw(f, p)
    return out.to_sym()


@dataclass(frozen=True)
class OperatorSpec:
    """One Leibniz factorization: the operator, its twist and its g-side operators."""

    name: str
    carrier: str  # "poly" | "laurent"
    partial: Callable
    eta: Callable  # eta(f, k): k-th power of the twist, k may be negative
    alpha: Callable[[int, int], object]  # alpha(n, k)
    t_op: Callable[[int, int], Callable]  # T_{k,n}


def _iterate(op: Callable, f, n: int):
    for _ in range(n):
        f = op(f)
    return f


def leibniz_check(spec: OperatorSpec, f, g, n: int):
    """partial^n(fg) minus its Leibniz expansion; exactly zero when the rule holds."""
    lhs = _iterate(spec.partial, f * g, n)
    rhs = None
    for k in range(n + 1):
        term = (spec.eta(_iterate(spec.partial, f, n - k), k) * spec.t_op(k, n)(g)) * spec.alpha(n, k)
        rhs = term if rhs is None else rhs + term
    return lhs - rhs


def _eta_identity(f, k):
    return f


def _spec_derivative() -> OperatorSpec:
    return OperatorSpec(
        name="derivative",
        carrier="poly",
        partial=derivative,
        eta=_eta_identity,
        alpha=binomial,
        t_op=lambda k, n: lambda g: _iterate(derivative, g, k),
    )


def _spec_backward_eta1() -> OperatorSpec:
    # nabla^n(fg) = sum binom(n,k) (nabla^(n-k) f) (S^(n-k) nabla^k g), S f = f(x-1)
    return OperatorSpec(
        name="backward-eta1",
        carrier="poly",
        partial=backward_shift,
        eta=_eta_identity,
        alpha=binomial,
        t_op=lambda k, n: lambda g: translate(_iterate(backward_shift, g, k), -(n - k)),
    )


def _spec_backward_etaS() -> OperatorSpec:
    # nabla^n(fg) = sum binom(n,k) (S^k nabla^(n-k) f) (nabla^k g)
    return OperatorSpec(
        name="backward-etaS",
        carrier="poly",
        partial=backward_shift,
        eta=lambda f, k: translate(f, -k),
        alpha=binomial,
        t_op=lambda k, n: lambda g: _iterate(backward_shift, g, k),
    )


def _spec_delta_x() -> OperatorSpec:
    # (d/dx)-analogue on a vertical strip; eta shifts x down by i/2.
    return OperatorSpec(
        name="delta-x",
        carrier="poly",
        partial=delta_x,
        eta=lambda f, k: translate(f, GR_HALF_I * (-k)),
        alpha=binomial,
        t_op=lambda k, n: lambda g: translate(_iterate(delta_x, g, k), GR_HALF_I * (n - k)),
    )


def _spec_delta_x2() -> OperatorSpec:
    # Same shape for the Wilson operator; f and g must be even polynomials.
    return OperatorSpec(
        name="delta-x2",
        carrier="poly",
        partial=delta_x2,
        eta=lambda f, k: translate(f, GR_HALF_I * (-k)),
        alpha=binomial,
        t_op=lambda k, n: lambda g: translate(_iterate(delta_x2, g, k), GR_HALF_I * (n - k)),
    )


def _spec_qderiv_Tq(q) -> OperatorSpec:
    q = Rational(q)
    dq = lambda g: q_derivative(g, q)
    return OperatorSpec(
        name="qderiv-Tq",
        carrier="poly",
        partial=dq,
        eta=lambda f, k: f.compose_affine(q ** k, 0),
        alpha=lambda n, k: q_binomial(n, k, q),
        t_op=lambda k, n: lambda g: _iterate(dq, g, k),
    )


def _spec_qderiv_I(q) -> OperatorSpec:
    q = Rational(q)
    dq = lambda g: q_derivative(g, q)
    return OperatorSpec(
        name="qderiv-I",
        carrier="poly",
        partial=dq,
        eta=_eta_identity,
        alpha=lambda n, k: q_binomial(n, k, q),
        t_op=lambda k, n: lambda g: _iterate(dq, g, k).compose_affine(q ** (n - k), 0),
    )


def _spec_aw(p) -> OperatorSpec:
    p = Rational(p)
    q = p * p
    dq = lambda g: aw_Dq(g, p)

    def alpha(n, k):
        # q-binomial times q^(k(k-n)/2), an integer power of the base p
        return GaussianRational.coerce(q_binomial(n, k, q)) * GaussianRational.coerce(p) ** (k * (k - n))

    return OperatorSpec(
        name="aw",
        carrier="laurent",
        partial=dq,
        eta=lambda f, k: aw_eta(f, p, k) if isinstance(f, SymLaurent) else f.scale_var(GaussianRational.coerce(p) ** k),
        alpha=alpha,
        t_op=lambda k, n: lambda g: aw_eta(_iterate(dq, g, k), p, k - n),
    )


DERIVATIVE_SPEC = _spec_derivative()
BACKWARD_ETA1_SPEC = _spec_backward_eta1()
BACKWARD_ETAS_SPEC = _spec_backward_etaS()
DELTA_X_SPEC = _spec_delta_x()
DELTA_X2_SPEC = _spec_delta_x2()

_q_spec_cache: dict = {}


def qderiv_Tq_spec(q) -> OperatorSpec:
    key = ("Tq", Rational(q))
    if key not in _q_spec_cache:
        _q_spec_cache[key] = _spec_qderiv_Tq(q)
    return _q_spec_cache[key]


def qderiv_I_spec(q) -> OperatorSpec:
    key = ("I", Rational(q))
    if key not in _q_spec_cache:
        _q_spec_cache[key] = _spec_qderiv_I(q)
    return _q_spec_cache[key]


def aw_spec(p) -> OperatorSpec:
    key = ("aw", Rational(p))
    if key not in _q_spec_cache:
        _q_spec_cache[key] = _spec_aw(p)
    return _q_spec_cache[key]


def operator_catalog(q=Rational(1, 2), p=Rational(1, 2)) -> dict:
    """All eight Leibniz factorizations, q-based entries bound to the given bases."""
    return {
        "derivative": DERIVATIVE_SPEC,
        "backward-eta1": BACKWARD_ETA1_SPEC,
        "backward-etaS": BACKWARD_ETAS_SPEC,
        "delta-x": DELTA_X_SPEC,
        "delta-x2": DELTA_X2_SPEC,
        "qderiv-Tq": qderiv_Tq_spec(q),
        "qderiv-I": qderiv_I_spec(q),
        "aw": aw_spec(p),
    }
