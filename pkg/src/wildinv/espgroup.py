"""The finite groups attached to an additive polynomial R.

Elements are triples (alpha, beta, gamma) with alpha a scaling root of unity,
beta in the kernel of the E-polynomial and gamma an Artin-Schreier coordinate
over beta R(beta); the product twists beta by alpha and corrects gamma by the
bilinear pairing. The alpha = 1 subgroup is an extra-special p-group whose
commutators realize the symplectic form.
"""

import itertools

import numpy as np

from . import addpoly, ff
from .ambient import build_context
from .errors import ValidationError


class GroupContext:
    """Everything needed for exact group arithmetic over (R, m)."""

    def __init__(self, R, m=1):
        ctx = build_context(R, m, need_gamma=True)
        self.ctx = ctx
        self.R = R
        self.m = m
        self.ambient = ctx.ambient
        self.d_R = ctx.d_R
        self.d_Rm = ctx.d_Rm
        self.e = ctx.e
        self.mu = ctx.mu  # mu_{d_R}, canonical order
        self.p = ctx.ambient.p
        # full kernel space enumerated by basis coordinates (mixed radix order)
        p, dim = self.p, 2 * self.e
        self.beta_coords = list(itertools.product(range(p), repeat=dim))
        self.betas = [ctx.kernel_vector_to_element(c) for c in self.beta_coords]
        self.beta_index = {b: i for i, b in enumerate(self.betas)}
        # one gamma per beta (deterministic linear solve); index 0 is beta = 0
        assert self.betas[0].is_zero()
        self.gamma0 = []
        for b in self.betas:
            t = b * addpoly.evaluate(ctx.R_amb, b)
            g = ff.artin_schreier_root(t)
            assert g is not None, "ambient was built to contain gamma coordinates"
            self.gamma0.append(g)
        assert self.gamma0[0].is_zero()

    def pairing_value(self, x, y):
        return self.ctx.pairing.eval(x, y)

    def omega(self, x, y):
        return self.ctx.omega(x, y)

    def identity(self):
        return GroupElement(self, self.ambient.one(), self.ambient.zero(), self.ambient.zero())

    def element(self, alpha, beta, gamma):
        return GroupElement(self, alpha, beta, gamma)

    def h_elements(self):
        """All of the alpha = 1 subgroup, |.| = p^{2e+1}, in canonical order."""
        one = self.ambient.one()
        out = []
        for i, b in enumerate(self.betas):
            g0 = self.gamma0[i]
            for c in range(self.p):
                out.append(GroupElement(self, one, b, g0 + c, check=False))
        return out

    def q_size(self, restricted=False):
        d = self.d_Rm if restricted else self.d_R
        return d * self.p ** (2 * self.e + 1)


class GroupElement:
    """(alpha, beta, gamma) with the three defining membership equations checked."""

    __slots__ = ("ctx", "alpha", "beta", "gamma")

    def __init__(self, ctx, alpha, beta, gamma, check=True):
        self.ctx = ctx
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma
        if check:
            p = ctx.p
            if alpha ** ctx.d_R != ctx.ambient.one():
                raise ValidationError("alpha is not a scaling root of unity")
            if not addpoly.evaluate(ctx.ctx.E_amb, beta).is_zero():
                raise ValidationError("beta is not in the kernel space")
            if gamma ** p - gamma != beta * addpoly.evaluate(ctx.ctx.R_amb, beta):
                raise ValidationError("gamma fails its Artin-Schreier equation")

    def in_h(self):
        return self.alpha == self.ctx.ambient.one()

    def in_q_m(self):
        return self.alpha ** self.ctx.d_Rm == self.ctx.ambient.one()

    def tuple(self):
        return (self.alpha, self.beta, self.gamma)

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.ctx is other.ctx
            and self.tuple() == other.tuple()
        )

    def __hash__(self):
        return hash((self.alpha, self.beta, self.gamma))

    def __repr__(self):
        return f"({self.alpha}, {self.beta}, {self.gamma})"


def multiply(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """(a1 a2, b1 + a1 b2, c1 + c2 + pairing(b1, a1 b2))."""
    if g1.ctx is not g2.ctx:
        raise ValidationError("elements from different group contexts")
    ctx = g1.ctx
    a = g1.alpha * g2.alpha
    ab2 = g1.alpha * g2.beta
    b = g1.beta + ab2
    c = g1.gamma + g2.gamma + ctx.pairing_value(g1.beta, ab2)
    return GroupElement(ctx, a, b, c)


def inverse(g: GroupElement) -> GroupElement:
    ctx = g.ctx
    ai = g.alpha.inverse()
    b = -(ai * g.beta)
    c = -g.gamma + ctx.pairing_value(g.beta, g.beta)
    out = GroupElement(ctx, ai, b, c, check=False)
    assert multiply(g, out) == ctx.identity()
    return out


def commutator(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """g1 g2 g1^{-1} g2^{-1}; for alpha = 1 this is central with scalar gamma."""
    out = multiply(multiply(g1, g2), multiply(inverse(g1), inverse(g2)))
    if g1.in_h() and g2.in_h():
        assert out.alpha == g1.ctx.ambient.one() and out.beta.is_zero()
        assert all(c == 0 for c in out.gamma.coords[1:]), "commutator gamma must be scalar"
    return out


def frobenius_twist(g: GroupElement) -> GroupElement:
    """The generator of the outer Z-action: coordinatewise inverse q-Frobenius."""
    ctx = g.ctx
    k = (-ctx.R.base.n) % ctx.ambient.n
    return GroupElement(ctx, g.alpha.frobenius(k), g.beta.frobenius(k), g.gamma.frobenius(k))


ENUMERATION_GUARD = 10 ** 6


def _index_tables(ctx: GroupContext):
    """Integer encoding of the alpha = 1 subgroup: (beta index, gamma offset).

    add_idx is the beta index addition; delta[i, j] in F_p is what the gamma
    coordinate of a product exceeds the reference gamma of its beta by. Both
    tables are filled from exact field arithmetic, then everything downstream
    is plain integer work.
    """
    p, e, M = ctx.p, ctx.e, ctx.ambient.n
    dim = 2 * e
    nb = len(ctx.betas)
    U = np.array(ctx.beta_coords, dtype=np.int64)  # (nb, dim)
    # mixed radix index of coordinatewise sums
    weights = np.array([p ** (dim - 1 - k) for k in range(dim)], dtype=np.int64)
    add_idx = ((U[:, None, :] + U[None, :, :]) % p) @ weights  # (nb, nb)

    basis = ctx.ctx.kernel_elems
    P = np.zeros((dim, dim, M), dtype=np.int64)
    for k in range(dim):
        for l in range(dim):
            P[k, l] = ctx.pairing_value(basis[k], basis[l]).as_vector()
    fvals = np.einsum("ik,jl,klm->ijm", U, U, P) % p  # (nb, nb, M)

    G0 = np.array([g.as_vector() for g in ctx.gamma0], dtype=np.int64)  # (nb, M)
    delta_full = (G0[:, None, :] + G0[None, :, :] + fvals - G0[add_idx]) % p
    assert not delta_full[:, :, 1:].any(), "group law must close over reference gammas"
    delta = delta_full[:, :, 0]
    return add_idx, delta


def analyze(ctx: GroupContext) -> dict:
    """Center, commutator subgroup and the extra-special verdict, by enumeration."""
    p, e = ctx.p, ctx.e
    size = p ** (2 * e + 1)
    if size > ENUMERATION_GUARD:
        raise ValidationError(f"group of size {size} exceeds the enumeration guard")
    if e == 0:
        return {
            "order": p,
            "center_order": p,
            "commutator_order": 1,
            "is_extra_special": False,
            "degenerate": True,
        }
    nb = len(ctx.betas)
    add_idx, delta = _index_tables(ctx)

    def mul(x, y):
        return (int(add_idx[x[0], y[0]]), (x[1] + y[1] + int(delta[x[0], y[0]])) % p)

    central_betas = [i for i in range(nb) if np.array_equal(delta[i], delta[:, i])]
    center = [(i, c) for i in central_betas for c in range(p)]

    # every commutator, from all pairs: beta part cancels, gamma is the
    # antisymmetrized delta; the set is central so closure is cheap
    comm_scalars = np.unique((delta - delta.T) % p)
    comms = {(0, int(c)) for c in comm_scalars}
    commutator_subgroup = _close_under(comms, mul, (0, 0))

    center_is_scalars = sorted(center) == [(0, c) for c in range(p)]
    extra_special = (
        center_is_scalars
        and len(center) == p
        and sorted(commutator_subgroup) == sorted(center)
    )
    return {
        "order": nb * p,
        "center_order": len(center),
        "commutator_order": len(commutator_subgroup),
        "is_extra_special": extra_special,
        "degenerate": False,
    }


def _close_under(seed, mul, identity):
    out = set(seed)
    out.add(identity)
    frontier = list(out)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(out):
                c = mul(a, b)
                if c not in out:
                    out.add(c)
                    nxt.append(c)
        frontier = nxt
    return out
