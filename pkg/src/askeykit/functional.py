"""Normalized moment functionals built from raising-chain orthogonality.

No integral is ever evaluated: the functional L with L[1] = 1 and
L[p_n] = 0 for n >= 1 is recovered exactly by expanding monomials in the
raising-chain basis, and it stands in for integration against the
orthogonality measure in every integrated identity.  Total masses are never
known, so adjointness across two measures is tested through a fitted
constant whose constancy over all test pairs is itself the assertion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import GR_ZERO, GaussianRational, Poly, Rational
from .families import FAMILIES, ParamPoint, expand_in_basis, raise_chain
from .burchnall import operational_rhs
from .toda import MODIFIED_EXPANSIONS

__all__ = [
    "MomentFunctional",
    "MassRatioWitness",
    "build_functional",
    "hankel_determinant",
    "gram_offdiagonal",
    "adjointness_check",
    "modified_functional",
    "toda_orthogonality_check",
]

_Q = Rational


@dataclass(frozen=True)
class MomentFunctional:
    """L[x^k] = moments[k], normalized so L[1] = 1."""

    family: str
    point: ParamPoint | None
    moments: tuple

    @property
    def order(self) -> int:
        return len(self.moments) - 1

    def apply(self, f: Poly) -> GaussianRational:
        if f.degree > self.order:
            raise ValueError(f"functional built to order {self.order}, got degree {f.degree}")
        out = GR_ZERO
        for k, c in enumerate(f.coeffs):
            out = out + c * self.moments[k]
        return out


@dataclass(frozen=True)
class MassRatioWitness:
    """Single fitted constant rho with the number of pairs it survived."""

    rho: GaussianRational
    samples: int


_functional_cache: dict = {}


def build_functional(tag: str, point: ParamPoint, order: int) -> MomentFunctional:
    """Moments from expanding x^k in the degree-graded orthogonal basis.

    The p_0-coefficient of x^k is L[x^k] because L kills every higher basis
    element; orthogonality of the basis itself is a separate check
    (gram_offdiagonal).
    """
    spec = FAMILIES[tag]
    if spec.carrier != "poly" or spec.fdegree(Poly.x()) != 1:
        raise ValueError(f"moment functionals need the full polynomial ladder; {tag} lacks it")
    key = (tag, point, order)
    hit = _functional_cache.get(key)
    if hit is not None:
        return hit
    basis = [raise_chain(tag, point, j) for j in range(order + 1)]
    moments = []
    for k in range(order + 1):
        coeffs = expand_in_basis(Poly.monomial(k), basis[: k + 1])
        moments.append(coeffs[0])
    out = MomentFunctional(tag, point, tuple(moments))
    _functional_cache[key] = out
    return out


def hankel_determinant(L: MomentFunctional, size: int) -> GaussianRational:
    """det(moments[i+j])_{0<=i,j<size}, by exact Gaussian elimination."""
    if 2 * (size - 1) > L.order:
        raise ValueError("Hankel block exceeds the built moment order")
    m = [[L.moments[i + j] for j in range(size)] for i in range(size)]
    det = GaussianRational(1)
    for col in range(size):
        pivot = None
        for r in range(col, size):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            return GR_ZERO
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col].inverse()
        for r in range(col + 1, size):
            if not m[r][col]:
                continue
            factor = m[r][col] * inv
            for cc in range(col, size):
                m[r][cc] = m[r][cc] - factor * m[col][cc]
    return det


def gram_offdiagonal(tag: str, point: ParamPoint, order: int) -> list:
    """All L[p_n p_m], n != m, n+m <= order; each must vanish exactly."""
    L = build_functional(tag, point, order)
    out = []
    for n in range(order + 1):
        for m in range(n + 1, order - n + 1):
            pn = raise_chain(tag, point, n)
            pm = raise_chain(tag, point, m)
            out.append((n, m, L.apply(pn * pm)))
    return out


def adjointness_check(tag: str, point: ParamPoint, n: int, D: int, variant: str | None = None):
    """Integrated adjointness through normalized moment functionals.

    For monomial pairs f = x^i, g = x^j with i + j <= D, compares
      LHS' = L_nu[(chain expansion of f) * g]   against
      RHS' = L_(nu+n sigma)[f * adj^n g],
    where adj is the family's exact adjoint lowering operator.  Demands
    (a) RHS' = 0 forces LHS' = 0 (in particular every g of degree < n), and
    (b) one constant rho fits LHS' = rho * RHS' across every remaining pair.

    Returns (ok, witness, failures).
    """
    spec = FAMILIES[tag]
    if spec.adjoint is None:
        raise ValueError(f"{tag} has no exact adjoint registered")
    adj = spec.adjoint(point)
    pt_shift = point
    for _ in range(n):
        pt_shift = spec.shift(pt_shift)
    L_base = build_functional(tag, point, D + 2 * n)
    L_shift = build_functional(tag, pt_shift, D)
    failures = []
    rho = None
    samples = 0
    for i in range(D + 1):
        expansion = operational_rhs(tag, point, n, Poly.monomial(i), variant)
        for j in range(D - i + 1):
            lhs = L_base.apply(expansion * Poly.monomial(j))
            g = Poly.monomial(j)
            for _ in range(n):
                g = adj(g)
            rhs = L_shift.apply(Poly.monomial(i) * g) if g else GR_ZERO
            if not rhs:
                if lhs:
                    failures.append((i, j, "rhs vanished but lhs did not", lhs))
                continue
            ratio = lhs / rhs
            samples += 1
            if rho is None:
                rho = ratio
            elif ratio != rho:
                failures.append((i, j, "mass ratio drifted", ratio))
    return (not failures, MassRatioWitness(rho if rho is not None else GR_ZERO, samples), failures)


def modified_functional(tag: str, point: ParamPoint, extra, order: int) -> MomentFunctional:
    """Moment functional of the e^(-xt)-deformed measure.

    Parameter-absorbing families rebuild at the deformed point; Hermite and
    Laguerre compose the base moments with the affine change of variable.
    """
    extra = _Q(extra)
    if tag == "hermite":
        base = build_functional(tag, point, order)
        t = extra
        moments = []
        for k in range(order + 1):
            # L~[x^k] = L[(x + t/2)^k]
            moments.append(base.apply(Poly([t / 2, 1]) ** k))
        return MomentFunctional(tag, point, tuple(moments))
    if tag == "laguerre":
        base = build_functional(tag, point, order)
        s = 1 + extra
        moments = [base.moments[k] / GaussianRational(s ** k) for k in range(order + 1)]
        return MomentFunctional(tag, point, tuple(moments))
    if tag == "meixner":
        return build_functional(tag, point.replace(c=point.get("c") * extra), order)
    if tag == "charlier":
        return build_functional(tag, point.replace(a=point.get("a") * extra), order)
    if tag == "meixner-pollaczek":
        from .algebra import tangent_subtract

        return build_functional(tag, point.replace(phi=tangent_subtract(point.get("phi"), extra)), order)
    raise KeyError(f"no modified measure registered for {tag}")


def toda_orthogonality_check(identity: str, point: ParamPoint, n: int, extras) -> list:
    """The expansion-sum polynomial annihilates x^p, p < n, under the deformed
    functional; returns the list of L~[E_n x^p] values (all exactly zero)."""
    e = MODIFIED_EXPANSIONS[identity]
    _, terms = e.build(point, n, extras)
    E = None
    for t in terms:
        E = t if E is None else E + t
    key = e.extras[0] if e.extras else None
    extra = extras[key] if key else None
    L = modified_functional(e.family, point, extra, E.degree + max(n - 1, 0))
    return [L.apply(E * Poly.monomial(p)) for p in range(n)]
