"""Root systems: orbits of pairs of roots of unity under p-power and
inverse-Frobenius twists, their integer invariants, and the symplectic type
classification (A / B / C) used to label irreducible module summands.
"""

from dataclasses import dataclass
from math import gcd, lcm

from . import addpoly, ff
from .errors import ValidationError
from .numth import multiplicative_order, v2


class RootSystem:
    """Orbit representative (alpha, beta) in some field, with (p, q) recorded."""

    __slots__ = ("alpha", "beta", "p", "f", "e_prime", "f_prime")

    def __init__(self, alpha, beta, f):
        if alpha.is_zero() or beta.is_zero():
            raise ValidationError("root system entries must be nonzero")
        if alpha.field is not beta.field:
            raise ValidationError("both entries must live in one field")
        self.alpha = alpha
        self.beta = beta
        self.p = alpha.field.p
        self.f = f
        self.e_prime = ff.element_order(alpha)
        self.f_prime = ff.element_order(beta)

    @property
    def q(self):
        return self.p ** self.f

    def orbit_invariant_key(self):
        """Orders are orbit invariants: both twists permute each mu_d."""
        return (self.p, self.f, self.e_prime, self.f_prime)

    def translate(self, i, j):
        """The orbit element theta^i sigma^j (alpha, beta)."""
        a = self.alpha ** (self.p ** i)
        b = self.beta ** (self.p ** i)
        if j:
            a = a ** pow(self.q, -j, self.e_prime)
        return RootSystem(a, b, self.f)


@dataclass(frozen=True)
class RSInvariants:
    a: int
    b: int
    c: int
    e_prime: int
    f_prime: int


def invariants(W: RootSystem) -> RSInvariants:
    """Minimal-exponent invariants, by direct minimality scans.

    All conditions are congruences on the orders, so the scans are exact:
    a: least a >= 1 with q^a = 1 mod ord(alpha);
    b: least b >= 1 with p^b = q^x mod ord(alpha) solvable and p^b = 1 mod ord(beta);
    c: least c >= 0 with p^b = q^c mod ord(alpha).
    """
    p, q = W.p, W.q
    ea, fb = W.e_prime, W.f_prime
    a = multiplicative_order(q, ea)
    qa_residues = {pow(q, x, ea) for x in range(a)}
    cap = lcm(multiplicative_order(p, ea), multiplicative_order(p, fb))
    b = None
    for cand in range(1, cap + 1):
        if pow(p, cand, fb) % fb == 1 % fb and pow(p, cand, ea) in qa_residues:
            b = cand
            break
    assert b is not None, "b-scan bound must contain a solution"
    target = pow(p, b, ea)
    c = None
    for cand in range(a):
        if pow(q, cand, ea) == target:
            c = cand
            break
    assert c is not None
    return RSInvariants(a=a, b=b, c=c, e_prime=ea, f_prime=fb)


def belongs(W: RootSystem, d: int, r: int) -> bool:
    """Membership test for the twist group with parameters (d, r)."""
    if r < 1 or d < 1 or pow(W.q, r, d) != 1 % d:
        raise ValidationError("need q^r = 1 mod d for a well-formed twist group")
    inv = invariants(W)
    return d % inv.e_prime == 0 and r % (inv.a * inv.f_prime) == 0


def classify(W: RootSystem):
    """First matching symplectic type among A, B, C, else "none".

    Returns (label, count of symplectic structures: 2 for type A with p odd,
    1 otherwise, 0 when not symplectic).
    """
    inv = invariants(W)
    p, q = W.p, W.q
    a, b, c = inv.a, inv.b, inv.c
    ea, fb = inv.e_prime, inv.f_prime
    minus_one_order = 1 if p == 2 else 2
    if a % 2 == 0 and (q ** (a // 2) + 1) % ea == 0 and fb == minus_one_order:
        return "A", (2 if p != 2 else 1)
    if b % 2 == 0 and c % 2 == 0:
        if (p ** (b // 2) + q ** (c // 2)) % ea == 0 and (p ** (b // 2) + 1) % fb == 0:
            return "B", 1
    if b % 2 == 0 and (c - a) % 2 == 0:
        if (p ** (b // 2) + q ** ((a + c) // 2)) % ea == 0 and (p ** (b // 2) + 1) % fb == 0:
            return "C", 1
    return "none", 0


def same_root_system(W1: RootSystem, W2: RootSystem) -> bool:
    """Same orbit: enumerate twists of one pair and compare."""
    if (W1.p, W1.f) != (W2.p, W2.f):
        return False
    if (W1.e_prime, W1.f_prime) != (W2.e_prime, W2.f_prime):
        return False
    inv = invariants(W1)
    ordp = multiplicative_order(W1.p, lcm(W1.e_prime, W1.f_prime))
    for i in range(ordp):
        for j in range(inv.a):
            t = W1.translate(i, j)
            if t.alpha == W2.alpha and t.beta == W2.beta:
                return True
    return False


# ---------------------------------------------------------------------------
# The monomial case


def monomial_root_system(p: int, f: int, e: int, a_e, m: int):
    """Root system of a monomial a_e x^{p^e}, with its closed-form invariants.

    Requires the scaling roots to generate F_{p^{2e}} (equivalently the order
    of p mod the twisted scaling order is 2e); the closed forms are checked
    against the brute-force scans before returning.
    """
    base = ff.field_create(p, f)
    if isinstance(a_e, int):
        a_e = base.constant(a_e)
    if a_e.field is not base:
        raise ValidationError("a_e must be an element of F_{p^f}")
    if a_e.is_zero():
        raise ValidationError("a_e must be nonzero")
    if e < 1:
        raise ValidationError("monomial analysis needs e >= 1")
    R = addpoly.AdditivePoly(base, [base.zero()] * e + [a_e])
    d = addpoly.twisted_scaling_order(R, m)
    if multiplicative_order(p, d) != 2 * e:
        raise ValidationError(
            f"scaling roots of order {d} generate F_{p}^{multiplicative_order(p, d)}, "
            f"not F_{p}^{2 * e}; the monomial formulas do not apply"
        )
    e1 = gcd(f, 2 * e)
    joint = ff.field_create(p, lcm(2 * e, f))
    alpha = ff.embed(ff.canonical_root_of_unity(ff.field_create(p, 2 * e), d), joint)
    val = -(a_e ** (-(p ** e - 1)))
    beta_sub, _ = ff.norm_trace(val, e1)
    beta = ff.embed(beta_sub, joint)
    W = RootSystem(alpha, beta, f)

    inv = invariants(W)
    a_formula = 2 * e // e1
    b_formula = e1
    c_formula = next(c for c in range(2 * e + 1) if (f * c - e1) % (2 * e) == 0)
    formula = RSInvariants(
        a=a_formula, b=b_formula, c=c_formula, e_prime=inv.e_prime, f_prime=inv.f_prime
    )
    if formula != inv:
        raise AssertionError(f"closed-form invariants {formula} disagree with scans {inv}")
    return W, inv


def predicted_type(p: int, f: int, e: int) -> str:
    """Type prediction for the monomial case by 2-adic comparison of e and f."""
    if v2(e) >= v2(f):
        return "A"
    return "B-or-C"


def matches_module(M, W: RootSystem) -> bool:
    """Does a monomial module realize the defining relations of the root system?

    Some orbit translate (alpha_t, beta_t) of W must satisfy, over the
    module's ambient: the scaling action is literal multiplication by
    alpha_t, every nonzero kernel element is a beta_t-eigenvector of the a-th
    Frobenius power, and the dimension is a*b.
    """
    import itertools

    import numpy as np

    ctx = M.context
    if any(not c.is_zero() for c in ctx.R.coeffs[:-1]):
        raise ValidationError("module comparison applies to monomial R only")
    inv = invariants(W)
    if M.dim != inv.a * inv.b:
        return False
    amb = M.ambient
    ordp = multiplicative_order(W.p, lcm(W.e_prime, W.f_prime))
    for i in range(ordp):
        for j in range(inv.a):
            t = W.translate(i, j)
            if ff.embed(t.alpha, amb) != ctx.alpha:
                continue
            beta_amb = ff.embed(t.beta, amb)
            ok = True
            for coords in itertools.product(range(M.p), repeat=M.dim):
                if not any(coords):
                    continue
                eta = M.element(coords)
                if eta.frobenius(ctx.base.n * inv.a) != beta_amb * eta:
                    ok = False
                    break
                tv = M.element((M.T @ np.array(coords)) % M.p)
                if tv != ctx.alpha * eta:
                    ok = False
                    break
            if ok:
                return True
    return False


def nu_label(type_label: str, doubled: bool = False) -> str:
    """Primary-module label: unique structure for B/C, ambiguous single A,
    and the doubled anisotropic type-A configuration."""
    if type_label in ("B", "C"):
        return "(M(W),0)"
    if type_label == "A":
        return "(M(W),2)" if doubled else "n/a"
    return "n/a"


def detect_doubled_type_a(W1: RootSystem, W2: RootSystem, direct_sum_anisotropic: bool):
    """The doubled type-A configuration: equal-orbit type-A summands whose
    direct sum stays completely anisotropic."""
    t1, _ = classify(W1)
    t2, _ = classify(W2)
    if t1 == "A" and t2 == "A" and direct_sum_anisotropic and same_root_system(W1, W2):
        return "(M(W),2)"
    return "n/a"
