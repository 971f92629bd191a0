"""Curve quotients by isotropic subgroups, p odd.

One degree-p step substitutes u = x^p - b^{p-1} x and rewrites x R(x) as
u P1(u) plus an Artin-Schreier coboundary; iterating over a basis of a
totally isotropic stable submodule produces the full descent datum
(r, R1, Delta) with x R(x) = r R1(r) + Delta^p - Delta, all verified as exact
polynomial identities, never numerically.
"""

from dataclasses import dataclass

from . import addpoly, ff
from .errors import TheoremViolation, ValidationError


class TermPoly:
    """Sparse classical polynomial {exponent: coefficient} over one field."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {}
        if terms:
            for k, v in terms.items():
                if not v.is_zero():
                    self.terms[int(k)] = v

    @classmethod
    def from_additive(cls, f: addpoly.AdditivePoly):
        return cls(f.base, {f.p ** i: c for i, c in enumerate(f.coeffs)})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max(self.terms) if self.terms else -1

    def constant_term(self):
        return self.terms.get(0, self.field.zero())

    def __eq__(self, other):
        return (
            isinstance(other, TermPoly)
            and self.field is other.field
            and self.terms == other.terms
        )

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k)
            out[k] = v if w is None else w + v
        return TermPoly(self.field, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k)
            out[k] = -v if w is None else w - v
        return TermPoly(self.field, out)

    def __neg__(self):
        return TermPoly(self.field, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 + k2
                w = out.get(k)
                prod = v1 * v2
                out[k] = prod if w is None else w + prod
        return TermPoly(self.field, out)

    def scale(self, c):
        return TermPoly(self.field, {k: c * v for k, v in self.terms.items()})

    def pth_power(self):
        p = self.field.p
        return TermPoly(self.field, {k * p: v.frobenius(1) for k, v in self.terms.items()})

    def power(self, k: int):
        out = TermPoly(self.field, {0: self.field.one()})
        for _ in range(k):
            out = out * self
        return out

    def compose_additive(self, g: addpoly.AdditivePoly):
        """Substitute the additive polynomial g for the variable."""
        gt = TermPoly.from_additive(g.embed_to(self.field))
        out = TermPoly(self.field)
        for k, v in self.terms.items():
            out = out + gt.power(k).scale(v)
        return out

    def eval(self, x):
        out = x.field.zero()
        for k, v in self.terms.items():
            vv = v if v.field is x.field else ff.embed(v, x.field)
            out = out + vv * x ** k
        return out

    def coeffs_list(self):
        return [self.terms[k] for k in sorted(self.terms)]

    def sorted_terms(self):
        return sorted(self.terms.items())


def x_times(f: addpoly.AdditivePoly) -> TermPoly:
    """x * f(x) as a sparse classical polynomial."""
    return TermPoly(f.base, {f.p ** i + 1: c for i, c in enumerate(f.coeffs)})


def artin_schreier_coboundary(t: TermPoly) -> TermPoly:
    return t.pth_power() - t


# ---------------------------------------------------------------------------


@dataclass
class IsotropicDatum:
    """A kernel vector with the symmetric gamma choice pairing(b, b)/2."""

    beta: object
    gamma: object

    @classmethod
    def make(cls, R_amb: addpoly.AdditivePoly, pairing, beta):
        p = beta.field.p
        if p == 2:
            raise ValidationError("quotient steps need p odd")
        if beta.is_zero():
            raise ValidationError("datum needs a nonzero kernel vector")
        half = pow(2, -1, p)
        gamma = pairing.eval(beta, beta) * half
        datum = cls(beta=beta, gamma=gamma)
        if gamma ** p - gamma != beta * addpoly.evaluate(R_amb, beta):
            raise TheoremViolation("symmetric gamma fails its Artin-Schreier equation")
        return datum


@dataclass
class QuotientStep:
    """u of degree p, the coboundary part Delta0, and the descended P1."""

    u: addpoly.AdditivePoly
    delta0: TermPoly
    P1: addpoly.AdditivePoly


def single_quotient(R_amb: addpoly.AdditivePoly, pairing, datum: IsotropicDatum) -> QuotientStep:
    """One degree-p descent along the cyclic subgroup of the datum.

    Returns (u, Delta0, P1) with x R(x) = u P1(u) + Delta0^p - Delta0 checked
    as an exact identity, and Delta0(0) = 0.
    """
    F = datum.beta.field
    p = F.p
    if p == 2:
        raise ValidationError("quotient steps need p odd")
    e = R_amb.p_degree
    if e < 1:
        raise ValidationError("descent needs degree at least p")
    beta, gamma = datum.beta, datum.gamma
    if not addpoly.evaluate(addpoly.e_poly(R_amb), beta).is_zero():
        raise ValidationError("datum vector is not in the kernel space")

    binv = beta.inverse()
    u = addpoly.AdditivePoly(F, [-(beta ** (p - 1)), F.one()])

    # P = beta^{-p} ( -beta R + beta^{1-p} R(beta) x^p + gamma((x/beta)^p + x/beta) - pairing(x, beta) )
    fxb = pairing.as_additive_in_x(beta)
    if fxb.base is not F:
        fxb = fxb.embed_to(F)
    Rb = addpoly.evaluate(R_amb, beta)
    terms = R_amb.scale(-beta)
    terms = terms + addpoly.AdditivePoly(F, [F.zero(), binv ** (p - 1) * Rb])
    terms = terms + addpoly.AdditivePoly(F, [gamma * binv, gamma * (binv ** p)])
    terms = terms - fxb
    P = terms.scale(binv ** p)
    assert addpoly.evaluate(P, beta).is_zero(), "datum choice must kill the linear defect"

    P1, rem = addpoly.right_divmod(P, u)
    if not rem.is_zero():
        raise TheoremViolation("descent polynomial must be composed through u")
    assert P1.p_degree == e - 1

    # Delta0 = -(x/beta)(gamma (x/beta) - pairing(x, beta))
    d_terms = {2: -(gamma * binv * binv)}
    for i, c in enumerate(fxb.coeffs):
        if not c.is_zero():
            k = p ** i + 1
            prev = d_terms.get(k)
            add = binv * c
            d_terms[k] = add if prev is None else prev + add
    delta0 = TermPoly(F, d_terms)
    assert delta0.constant_term().is_zero()

    lhs = x_times(R_amb)
    uP1u = TermPoly.from_additive(u) * TermPoly.from_additive(addpoly.compose(P1, u))
    rhs = uP1u + artin_schreier_coboundary(delta0)
    if lhs != rhs:
        raise TheoremViolation("degree-p descent identity failed symbolically")
    return QuotientStep(u=u, delta0=delta0, P1=P1)


def push_element(step: QuotientStep, pairing_P1, beta2, gamma2):
    """Image (u(beta'), gamma' - Delta0(beta')) of a commuting datum downstairs.

    The pushed pair satisfies the symmetric-gamma condition for P1 and its
    vector is killed by the E-polynomial of P1; both are asserted.
    """
    F = beta2.field
    p = F.p
    nb = addpoly.evaluate(step.u, beta2)
    ng = gamma2 - step.delta0.eval(beta2)
    if not addpoly.evaluate(addpoly.e_poly(step.P1), nb).is_zero():
        raise TheoremViolation("pushed vector must be in the descended kernel space")
    if pairing_P1.eval(nb, nb) != ng + ng:
        raise TheoremViolation("pushed gamma fails the symmetric condition")
    if ng ** p - ng != nb * addpoly.evaluate(step.P1, nb):
        raise TheoremViolation("pushed gamma fails its Artin-Schreier equation")
    return nb, ng


@dataclass
class InductionData:
    """Descent datum (r, R1, Delta, e') witnessing an induced structure."""

    r: addpoly.AdditivePoly
    R1: addpoly.AdditivePoly
    delta: TermPoly
    e_prime: int

    @property
    def index(self):
        """Degree of the extension the structure is induced from."""
        return self.r.degree


def iterated_quotient(R: addpoly.AdditivePoly, m: int, U) -> InductionData:
    """Descend along a nonzero totally isotropic stable submodule U.

    U is a sympmod Submodule (its module was built from (R, m)); the basis is
    taken in canonical row order. All invariants of the returned datum are
    verified symbolically: the defining identity, rationality over the base,
    reducedness of r, scaling equivariance, and divisibility of the scaling
    orders.
    """
    M = U.module
    ctx = M.context
    if ctx.ambient.p == 2:
        raise ValidationError("descent needs p odd")
    if U.dim == 0:
        raise ValidationError("U must be nonzero")
    if not (U.t_stable and U.s_stable and U.isotropic):
        raise ValidationError("U must be a totally isotropic stable submodule")
    F = ctx.ambient
    pairing = ctx.pairing

    betas = U.field_elements()
    data = [IsotropicDatum.make(ctx.R_amb, pairing, b) for b in betas]
    for i in range(len(betas)):
        for j in range(i + 1, len(betas)):
            if ctx.omega(betas[i], betas[j]) != 0:
                raise ValidationError("submodule is not totally isotropic")

    R_cur = ctx.R_amb
    pairing_cur = pairing
    r = addpoly.AdditivePoly.identity(F)
    delta = TermPoly(F)
    while data:
        datum, rest = data[0], data[1:]
        step = single_quotient(R_cur, pairing_cur, datum)
        pairing_next = addpoly.pairing_poly(step.P1) if step.P1.p_degree >= 1 else None
        new_data = []
        for d2 in rest:
            if pairing_cur.eval(datum.beta, d2.beta) != pairing_cur.eval(d2.beta, datum.beta):
                raise TheoremViolation("descent data stopped commuting")
            nb, ng = push_element(
                step,
                pairing_next if pairing_next is not None else _zero_pairing(F),
                d2.beta,
                d2.gamma,
            )
            if nb.is_zero():
                raise TheoremViolation("independent basis vector collapsed in descent")
            new_data.append(IsotropicDatum(beta=nb, gamma=ng))
        delta = delta + step.delta0.compose_additive(r)
        r = addpoly.compose(step.u, r)
        R_cur = step.P1
        pairing_cur = pairing_next
        data = new_data

    out = InductionData(r=r, R1=R_cur, delta=delta, e_prime=R_cur.p_degree)
    ok, reasons = verify_morphism(R, out.R1, out.r, out.delta, m)
    if not ok:
        raise TheoremViolation(f"descent datum failed verification: {reasons}")
    assert out.e_prime == ctx.e - U.dim
    _check_kernel_facts(ctx, out, U)
    return out


def _zero_pairing(F):
    return addpoly.PairingTable(F, {})


def _check_kernel_facts(ctx, out, U):
    """Descent side facts: E_{R1}(r(x)) right-divides the original
    E-polynomial, and the descent map kills exactly the submodule."""
    E_R = ctx.E_amb
    big = addpoly.compose(addpoly.e_poly(out.R1).embed_to(ctx.ambient), out.r)
    _, rem = addpoly.right_divmod(E_R, big)
    if not rem.is_zero():
        raise TheoremViolation("descended E-polynomial does not right-divide the original")
    for b in U.field_elements():
        if not addpoly.evaluate(out.r, b).is_zero():
            raise TheoremViolation("descent map must kill the submodule")


def verify_morphism(R: addpoly.AdditivePoly, R1, r, delta, m: int):
    """Independent recheck of a claimed descent datum.

    Conditions: the exact identity x R(x) = r(x) R1(r(x)) + Delta^p - Delta,
    nontriviality, reducedness of r, rationality over the base field,
    divisibility of scaling orders, scaling equivariance of r, Delta(0) = 0.
    Returns (ok, list of failed conditions).
    """
    reasons = []
    base = R.base
    ambient = r.base
    lhs = x_times(R.embed_to(ambient))
    rR1r = TermPoly.from_additive(r) * TermPoly.from_additive(addpoly.compose(R1, r))
    rhs = rR1r + artin_schreier_coboundary(delta)
    if lhs != rhs:
        reasons.append("defining identity fails")
    if r.p_degree < 1:
        reasons.append("r is trivial")
    if not addpoly.is_reduced(r):
        reasons.append("r is not reduced")
    if not addpoly.is_rational_over(r, base.n):
        reasons.append("r has coefficients outside the base field")
    if not addpoly.is_rational_over(R1, base.n):
        reasons.append("R1 has coefficients outside the base field")
    if not addpoly.is_rational_over([v for _, v in delta.sorted_terms()], base.n):
        reasons.append("Delta has coefficients outside the base field")
    if not delta.constant_term().is_zero():
        reasons.append("Delta(0) != 0")
    d_Rm = addpoly.twisted_scaling_order(R, m)
    if addpoly.scaling_order(R1) % d_Rm != 0:
        reasons.append("twisted scaling order does not divide the descended one")
    if not addpoly.mu_scaling(r, d_Rm):
        reasons.append("r is not scaling-equivariant")
    return (not reasons), reasons
