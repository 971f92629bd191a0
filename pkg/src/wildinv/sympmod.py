"""The symplectic module of an additive polynomial.

The kernel of the E-polynomial carries the antisymmetrized pairing (values in
the prime field), a scaling action by a canonical root of unity, and the base
field Frobenius. Complete anisotropy of this module is decided two ways: a
cyclic-submodule scan, and independently by exhibiting an exact skew
decomposition of the E-polynomial from a totally isotropic submodule. The two
must agree; disagreement is raised, never papered over.
"""

import itertools
from math import gcd, lcm

import numpy as np

from . import addpoly, ff, linalg
from .ambient import Context, _guard, _kernel_data, build_context
from .errors import TheoremViolation, ValidationError
from .numth import multiplicative_order


class SymplecticModule:
    """Basis of the kernel space, its Gram matrix, and the two action matrices.

    T is multiplication by the canonical primitive scaling root, S the base
    field Frobenius; both act on column coordinate vectors. The recorded
    sigma-order r never enters stability tests.
    """

    __slots__ = ("context", "dim", "gram", "T", "S", "d", "r", "m")

    def __init__(self, context, gram, T, S, d, r):
        self.context = context
        self.dim = len(context.kernel_elems)
        self.gram = gram
        self.T = T
        self.S = S
        self.d = d
        self.r = r
        self.m = context.m

    @property
    def ambient(self):
        return self.context.ambient

    @property
    def basis(self):
        return self.context.kernel_elems

    @property
    def p(self):
        return self.ambient.p

    def element(self, coords):
        return self.context.kernel_vector_to_element(coords)

    def coords(self, x):
        return self.context.element_to_kernel_vector(x)

    def zero_module(self):
        return self.dim == 0

    def submodule(self, rows):
        return Submodule(self, rows)


class Submodule:
    """Row-span subspace with stability and isotropy flags recomputed on build."""

    __slots__ = ("module", "rows", "t_stable", "s_stable", "isotropic")

    def __init__(self, module, rows):
        p = module.p
        rows = np.array(rows, dtype=np.int64).reshape(-1, module.dim) % p
        rows, _ = linalg.rref(rows, p)
        self.module = module
        self.rows = rows
        self.t_stable = _stable_under(rows, module.T, p)
        self.s_stable = _stable_under(rows, module.S, p)
        G = module.gram
        self.isotropic = not (rows @ G @ rows.T % p).any() if rows.size else True

    @property
    def dim(self):
        return self.rows.shape[0]

    def field_elements(self):
        """Basis of the subspace as actual field elements."""
        return [self.module.element(r) for r in self.rows]

    def signature(self):
        return tuple(map(tuple, self.rows.tolist()))

    def __eq__(self, other):
        return (
            isinstance(other, Submodule)
            and self.module is other.module
            and self.signature() == other.signature()
        )

    def __hash__(self):
        return hash(self.signature())


def _stable_under(rows, M, p):
    if rows.size == 0:
        return True
    img = rows @ M.T % p
    return linalg.rank(np.vstack([rows, img]), p) == linalg.rank(rows, p)


def build(R: addpoly.AdditivePoly, m: int) -> SymplecticModule:
    """Construct the module for (R, m); the zero module when e = 0."""
    context = build_context(R, m, need_gamma=False)
    return _module_from_context(context)


def _module_from_context(context) -> SymplecticModule:
    p = context.ambient.p
    dim = context.dim
    if dim == 0:
        Z = np.zeros((0, 0), dtype=np.int64)
        return SymplecticModule(context, Z, Z, Z, context.d_Rm, 1)
    basis = context.kernel_elems
    gram = np.zeros((dim, dim), dtype=np.int64)
    for i in range(dim):
        for j in range(i + 1, dim):
            w = context.omega(basis[i], basis[j])
            gram[i, j] = w
            gram[j, i] = (-w) % p
    T = _action_matrix(context, lambda x: context.alpha * x)
    S = _action_matrix(context, lambda x: x.frobenius(context.base.n))
    _check_module_axioms(gram, T, S, context)
    r = lcm(linalg.mat_order(S, p), multiplicative_order(context.base.order, context.d_Rm))
    return SymplecticModule(context, gram, T, S, context.d_Rm, r)


def _action_matrix(context, fn):
    p = context.ambient.p
    cols = [context.element_to_kernel_vector(fn(b)) for b in context.kernel_elems]
    return np.array(cols, dtype=np.int64).T % p


def _check_module_axioms(gram, T, S, context):
    p = context.ambient.p
    dim = gram.shape[0]
    if linalg.rank(gram, p) != dim:
        raise TheoremViolation("pairing must be nondegenerate on the kernel space")
    if (T.T @ gram @ T % p != gram).any() or (S.T @ gram @ S % p != gram).any():
        raise TheoremViolation("actions must preserve the pairing")
    q = context.base.order
    lhs = S @ T @ linalg.mat_inv(S, p) % p
    if (lhs != linalg.mat_pow(T, q, p)).any():
        raise TheoremViolation("twisting relation S T S^-1 = T^q fails")


def omega(M: SymplecticModule, v, w) -> int:
    """Pairing of two kernel-space field elements, as an integer mod p."""
    return M.context.omega(v, w)


# ---------------------------------------------------------------------------
# Anisotropy


def cyclic_submodule(M, coords) -> Submodule:
    rows = addpoly._cyclic_rows(np.array(coords, dtype=np.int64), [M.T, M.S], M.p)
    return Submodule(M, rows)


def _least_isotropic_cyclic(M):
    """Least (dim, signature) totally isotropic cyclic submodule, or None."""
    if M.zero_module():
        return None
    best = None
    for coords in itertools.product(range(M.p), repeat=M.dim):
        if not any(coords):
            continue
        sub = cyclic_submodule(M, coords)
        if sub.isotropic:
            key = (sub.dim, sub.signature())
            if best is None or key < best[0]:
                best = (key, sub)
    return None if best is None else best[1]


def completely_anisotropic(M):
    """(verdict, witness): witness is a least-dimension nonzero totally
    isotropic stable submodule, or None.

    Scanning cyclic submodules is complete: a nonzero isotropic submodule
    contains the cyclic closure of each of its nonzero vectors, and a
    least-dimension witness is inclusion-minimal, hence cyclic.
    """
    w = _least_isotropic_cyclic(M)
    return (w is None), w


def anisotropic_of(M) -> bool:
    """Verdict only, for module-like objects (sums, restrictions)."""
    return _least_isotropic_cyclic(M) is None


def all_stable_submodules(M):
    """Exhaustive oracle: every nonzero proper T,S-stable subspace.

    Walks the full subspace lattice, so only usable for small coordinate
    spaces; kept as an independent check on the cyclic scan.
    """
    p, dim = M.p, M.dim
    if p ** dim > 4000:
        raise ValidationError("subspace lattice too large for the exhaustive oracle")
    vectors = [v for v in itertools.product(range(p), repeat=dim) if any(v)]
    spans = {}

    def rec(start, rows):
        R, _ = linalg.rref(np.array(rows, dtype=np.int64), p)
        sig = tuple(map(tuple, R.tolist()))
        if sig in spans:
            return
        spans[sig] = R
        if R.shape[0] >= dim:
            return
        for k in range(start, len(vectors)):
            rec(k + 1, rows + [vectors[k]])

    for k in range(len(vectors)):
        rec(k + 1, [vectors[k]])
    out = []
    for sig, R in sorted(spans.items()):
        if 0 < R.shape[0] < dim:
            sub = Submodule(M, R)
            if sub.t_stable and sub.s_stable:
                out.append(sub)
    return out


def decomposition_witness(R: addpoly.AdditivePoly, m: int, module: SymplecticModule = None):
    """A decomposition E = f1 o f2 with f2 scaling-equivariant and isotropic
    kernel, or None. Verified by exact right division, rationality, and the
    scaling congruence, independently of the anisotropy verdict.
    """
    M = module if module is not None else build(R, m)
    found = _least_isotropic_cyclic(M)
    if found is None:
        return None
    f1, f2 = _decomposition_from_submodule(M, found)
    return f1, f2, found


def _decomposition_from_submodule(M: SymplecticModule, sub: Submodule):
    ctx = M.context
    span = _span_of_rows(M, sub.rows)
    f2 = addpoly.kernel_poly(span)
    if not addpoly.is_rational_over(f2, ctx.base.n):
        raise TheoremViolation("stable isotropic kernel gave a non-rational factor")
    if not addpoly.mu_scaling(f2, ctx.d_Rm):
        raise TheoremViolation("stable isotropic kernel gave a non-equivariant factor")
    f1, rem = addpoly.right_divmod(ctx.E_amb, f2)
    if not rem.is_zero():
        raise TheoremViolation("kernel polynomial of an isotropic submodule must divide exactly")
    assert addpoly.compose(f1, f2) == ctx.E_amb
    return f1, f2


def _span_of_rows(M, rows):
    p = M.p
    elems = {M.element([0] * M.dim)}
    for r in rows:
        b = M.element(r)
        elems = {x + b * c for x in elems for c in range(p)}
    return sorted(elems, key=lambda x: x.coords)


def perp(M, sub: Submodule) -> Submodule:
    """Orthogonal complement; dimensions add up by nondegeneracy."""
    if M.zero_module():
        return M.submodule(np.zeros((0, 0), dtype=np.int64))
    if sub.dim == 0:
        return M.submodule(np.eye(M.dim, dtype=np.int64))
    rows = linalg.nullspace(sub.rows @ M.gram % M.p, M.p)
    out = M.submodule(rows)
    assert out.dim + sub.dim == M.dim
    return out


# ---------------------------------------------------------------------------
# Direct sums and Frobenius restriction


def build_pair(R1, m1, R2, m2):
    """Two modules in one common ambient field, so their scaling roots agree."""
    d1 = addpoly.twisted_scaling_order(R1, m1)
    d2 = addpoly.twisted_scaling_order(R2, m2)
    if d1 != d2:
        raise ValidationError("direct summands need equal twisted scaling orders")
    M1 = build(R1, m1)
    M2 = build(R2, m2)
    if M1.ambient is not M2.ambient:
        deg = lcm(M1.ambient.n, M2.ambient.n)
        M1 = _build_in_degree(R1, m1, deg)
        M2 = _build_in_degree(R2, m2, deg)
    return M1, M2


def _build_in_degree(R, m, degree) -> SymplecticModule:
    """Module built inside the specific field F_{p^degree} (must be large enough)."""
    base = R.base
    p = base.p
    _guard(p, degree)
    E = addpoly.e_poly(R)
    ambient, kernel_elems, kernel_rows = _kernel_data(E, p, degree)
    d_R = addpoly.scaling_order(R)
    context = Context(
        R=R,
        m=m,
        base=base,
        ambient=ambient,
        R_amb=R.embed_to(ambient),
        E_amb=E.embed_to(ambient),
        e=R.p_degree,
        d_R=d_R,
        d_Rm=addpoly.twisted_scaling_order(R, m),
        kernel_elems=kernel_elems,
        kernel_rows=kernel_rows,
        mu=ff.roots_of_unity(ambient, d_R),
        alpha=ff.canonical_root_of_unity(ambient, addpoly.twisted_scaling_order(R, m)),
        has_gamma=False,
        pairing=addpoly.pairing_poly(R),
    )
    return _module_from_context(context)


class DirectSumModule:
    """Block-diagonal sum of two modules sharing one ambient and one scaling root."""

    __slots__ = ("parts", "gram", "T", "S", "d", "r", "p", "dim")

    def __init__(self, M1: SymplecticModule, M2: SymplecticModule):
        if M1.p != M2.p:
            raise ValidationError("direct sum needs a common prime field")
        if M1.d != M2.d:
            raise ValidationError("direct sum needs equal twisted scaling orders")
        if M1.dim and M2.dim:
            if M1.ambient is not M2.ambient:
                raise ValidationError("build the summands with build_pair first")
            if M1.context.alpha != M2.context.alpha:
                raise ValidationError("summands disagree on the canonical scaling root")
        self.parts = (M1, M2)
        self.p = M1.p
        self.dim = M1.dim + M2.dim
        self.gram = _block_diag(M1.gram, M2.gram)
        self.T = _block_diag(M1.T, M2.T)
        self.S = _block_diag(M1.S, M2.S)
        self.d = M1.d
        self.r = lcm(M1.r, M2.r)

    def zero_module(self):
        return self.dim == 0

    def submodule(self, rows):
        return Submodule(self, rows)


def _block_diag(A, B):
    n, m = A.shape[0], B.shape[0]
    out = np.zeros((n + m, n + m), dtype=np.int64)
    out[:n, :n] = A
    out[n:, n:] = B
    return out


def direct_sum(M1: SymplecticModule, M2: SymplecticModule) -> DirectSumModule:
    return DirectSumModule(M1, M2)


class _RestrictedModule:
    """Same space and pairing, Frobenius power action (unramified restriction)."""

    __slots__ = ("parent", "gram", "T", "S", "d", "r", "p", "dim")

    def __init__(self, M, t):
        self.parent = M
        self.p = M.p
        self.dim = M.dim
        self.gram = M.gram
        self.T = M.T
        self.S = linalg.mat_pow(M.S, t, M.p) if M.dim else M.S
        self.d = M.d
        self.r = M.r // gcd(M.r, t)

    def zero_module(self):
        return self.dim == 0

    def submodule(self, rows):
        return Submodule(self, rows)


def restrict_frobenius(M, t: int):
    """Module seen over the degree-t unramified extension: S becomes S^t."""
    if t < 1:
        raise ValidationError("t must be >= 1")
    return _RestrictedModule(M, t)


def minimal_imprimitive_unramified_degree(M: SymplecticModule) -> int:
    """Least t >= 1 such that the degree-t restriction stops being anisotropic.

    Only meaningful for twisted scaling order 1 or 2, where prime-field lines
    are scaling-stable; finite because the line through any kernel vector is
    Frobenius-stable over the field that vector generates.
    """
    if M.d > 2:
        raise ValidationError("criterion applies only when the scaling order is 1 or 2")
    if M.zero_module():
        raise ValidationError("the zero module has no nonzero vector to restrict to")
    q_deg = M.context.base.n
    bound = None
    for coords in itertools.product(range(M.p), repeat=M.dim):
        if not any(coords):
            continue
        x = M.element(coords)
        t = 1
        y = x.frobenius(q_deg)
        while y != x:
            y = y.frobenius(q_deg)
            t += 1
        bound = t if bound is None else min(bound, t)
    for t in range(1, bound + 1):
        if not anisotropic_of(restrict_frobenius(M, t)):
            return t
    raise TheoremViolation("restriction bound reached without an isotropic line")
