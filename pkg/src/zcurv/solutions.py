"""Closed-form solutions and residual functionals.

Residuals are returned as jets (never booleans): a solution claim is the
statement that every stored coefficient of the residual vanishes.  Two
derivative orders are consumed by the mixed derivative, so a residual of
an order-K jet is an order K-2 jet.

Rank-1 normalisation bookkeeping (see ``transform_GF``): with A = (2),

    F-form   F_xy = exp(2F)        solved by  F = -ln(x + y)
    G-form   G_xy = 2 exp(G)       solved by  G = 2F = -2 ln(x + y)

and generally G = A F intertwines the residuals exactly:
``lse_residual(A F, 'lsbis') == A * lse_residual(F, 'ls')`` for every
square A, invertible or not.
"""

from dataclasses import dataclass
from fractions import Fraction

from .cartan import CartanMatrix
from .jets import Jet
from .superfield import SuperField
from .zerocurv import SUPER_LIOUVILLE_SIGN


@dataclass(frozen=True)
class SolutionVector:
    """One jet per node of the Cartan matrix."""

    components: tuple[Jet, ...]
    cartan: CartanMatrix

    def __post_init__(self):
        if len(self.components) != self.cartan.rank:
            raise ValueError("component count must equal the rank")


def liouville_solution(f: Jet, g: Jet) -> Jet:
    """General Liouville solution  F = (1/2) ln(f'(x) g'(y) / (f+g)^2).

    ``f`` must depend on x only and ``g`` on y only, with nonvanishing
    derivative bodies, nonvanishing f+g body, and positive f'g' body (the
    exact ln works on the real branch).  The result has order one less
    than the inputs.
    """
    f._check_compatible(g)
    if not f.depends_only_on("x"):
        raise ValueError("f must depend only on x")
    if not g.depends_only_on("y"):
        raise ValueError("g must depend only on y")
    fp = f.deriv_x()
    gp = g.deriv_y()
    if fp.body == 0:
        raise ValueError("f'(x0) vanishes")
    if gp.body == 0:
        raise ValueError("g'(y0) vanishes")
    s = (f + g).truncate(fp.order)
    if s.body == 0:
        raise ValueError("f(x0) + g(y0) vanishes")
    ratio = (fp * gp) / (s * s)
    return ratio.ln() * Fraction(1, 2)


def liouville_residual(f_jet: Jet) -> Jet:
    """Residual of  F_xy = exp(2F), truncated to order K - 2."""
    mixed = f_jet.deriv_x().deriv_y()
    return mixed - (f_jet * 2).exp().truncate(f_jet.order - 2)


def lse_residual(sol: SolutionVector, form: str) -> list[Jet]:
    """Componentwise residuals of the F-form ('ls') or G-form ('lsbis')."""
    if form not in ("ls", "lsbis"):
        raise ValueError(f"unknown form {form!r}")
    if not sol.cartan.is_all_even():
        raise ValueError("classical residuals require an all-even matrix")
    A = sol.cartan.entries
    n = sol.cartan.rank
    comps = sol.components
    out = []
    for i in range(n):
        target = comps[i].order - 2
        mixed = comps[i].deriv_x().deriv_y()
        if form == "ls":
            arg = Jet.zero(comps[i].base, comps[i].order)
            for j in range(n):
                if A[i][j]:
                    arg = arg + comps[j] * A[i][j]
            rhs = arg.exp().truncate(target)
        else:
            rhs = Jet.zero(comps[i].base, target)
            for j in range(n):
                if A[i][j]:
                    rhs = rhs + comps[j].exp().truncate(target) * A[i][j]
        out.append(mixed - rhs)
    return out


def transform_GF(sol: SolutionVector, inverse: bool = False) -> SolutionVector:
    """Apply G = A F (or F = inverse(A) G, refused for singular A)."""
    matrix = sol.cartan.inverse() if inverse else sol.cartan.entries
    n = sol.cartan.rank
    comps = []
    for i in range(n):
        acc = Jet.zero(sol.components[0].base, sol.components[0].order)
        for j in range(n):
            if matrix[i][j]:
                acc = acc + sol.components[j] * matrix[i][j]
        comps.append(acc)
    return SolutionVector(tuple(comps), sol.cartan)


def conformal_transform(f_jet: Jet, phi: Jet, psi: Jet) -> Jet:
    """Finite conformal action  F(phi(x), psi(y)) + (1/2) ln(phi' psi').

    ``phi`` depends on x only and ``psi`` on y only; they share a base
    point, and their bodies must equal the base point of ``f_jet``.
    Zero residuals are preserved, and the transform composes: applying
    ``phi1 o phi2`` equals applying phi1 then phi2.
    """
    if not phi.depends_only_on("x"):
        raise ValueError("phi must depend only on x")
    if not psi.depends_only_on("y"):
        raise ValueError("psi must depend only on y")
    comp = f_jet.compose(phi, psi)
    dphi = phi.deriv_x()
    dpsi = psi.deriv_y()
    if dphi.body == 0 or dpsi.body == 0:
        raise ValueError("phi' or psi' vanishes at the base point")
    w = ((dphi * dpsi).ln()) * Fraction(1, 2)
    order = min(comp.order, w.order)
    return comp.truncate(order) + w.truncate(order)


def super_liouville_residual(field: SuperField,
                             sign: int = SUPER_LIOUVILLE_SIGN) -> SuperField:
    """Residual of  D+(D-(F)) = sign * exp(F)  for an even superfield."""
    if field.parity() != 0:
        raise ValueError("super residual requires an even-homogeneous field")
    mixed = field.d_minus().d_plus()
    rhs = field.exp().truncate(field.order - 2)
    return mixed - rhs * Fraction(sign)
