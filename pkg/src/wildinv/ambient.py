"""One working field per computation.

Every group/module computation over (R, m) happens inside a single field
F_{p^M} chosen large enough for the kernel of the E-polynomial, the scaling
roots of unity, and (when asked) the Artin-Schreier coordinates. M is the
lcm of the required degrees; a size guard rejects p^M beyond 2^40, which is
far above anything the constructions here need.
"""

from math import lcm

import numpy as np

from . import addpoly, ff
from .errors import AmbientGuardError, ValidationError
from .numth import multiplicative_order

SIZE_GUARD_BITS = 40


class Context:
    """Ambient field together with the kernel space and scaling roots of R."""

    __slots__ = (
        "R",
        "m",
        "base",
        "ambient",
        "R_amb",
        "E_amb",
        "e",
        "d_R",
        "d_Rm",
        "kernel_elems",
        "kernel_rows",
        "mu",
        "alpha",
        "has_gamma",
        "pairing",
    )

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw[k])

    @property
    def dim(self):
        return len(self.kernel_elems)

    def kernel_vector_to_element(self, coords):
        """Field element from F_p-coordinates in the canonical kernel basis."""
        out = self.ambient.zero()
        for c, b in zip(coords, self.kernel_elems):
            if c % self.ambient.p:
                out = out + b * int(c)
        return out

    def element_to_kernel_vector(self, x):
        from .linalg import coords_in_rows

        c = coords_in_rows(self.kernel_rows, x.as_vector(), self.ambient.p)
        if c is None:
            raise ValidationError("element is not in the kernel space")
        return c

    def omega(self, x, y) -> int:
        """Antisymmetrized pairing, a prime-field scalar."""
        v = self.pairing.eval(x, y) - self.pairing.eval(y, x)
        assert all(c == 0 for c in v.coords[1:]), "pairing values must be scalars"
        return v.coords[0]


def validate_input(R: addpoly.AdditivePoly, m: int):
    if R.is_zero():
        raise ValidationError("R must be a nonzero additive polynomial")
    if m < 1:
        raise ValidationError("m must be a positive integer")
    if m % R.p == 0:
        raise ValidationError(f"m = {m} must be prime to p = {R.p}")
    if R.p == 2 and R.p_degree == 0:
        raise ValidationError("the pair (p, e) = (2, 0) is excluded")


def build_context(R: addpoly.AdditivePoly, m: int, need_gamma: bool = False) -> Context:
    """Assemble the ambient field and canonical data for (R, m)."""
    validate_input(R, m)
    base = R.base
    p = base.p
    e = R.p_degree
    d_R = addpoly.scaling_order(R)
    d_Rm = addpoly.twisted_scaling_order(R, m)
    E = addpoly.e_poly(R)
    s = addpoly.splitting_degree(E)
    M = lcm(base.n * s, multiplicative_order(p, d_R))
    _guard(p, M)
    ambient, kernel_elems, kernel_rows = _kernel_data(E, p, M)

    pairing = addpoly.pairing_poly(R)
    if need_gamma and e >= 1:
        # gamma coordinates solve y^p - y = b R(b); one degree-p extension
        # makes every absolute trace vanish, so at most one enlargement
        if _needs_artin_schreier_extension(R, ambient, kernel_elems):
            M *= p
            _guard(p, M)
            ambient, kernel_elems, kernel_rows = _kernel_data(E, p, M)

    mu = ff.roots_of_unity(ambient, d_R)
    alpha = ff.canonical_root_of_unity(ambient, d_Rm)
    return Context(
        R=R,
        m=m,
        base=base,
        ambient=ambient,
        R_amb=R.embed_to(ambient),
        E_amb=E.embed_to(ambient),
        e=e,
        d_R=d_R,
        d_Rm=d_Rm,
        kernel_elems=kernel_elems,
        kernel_rows=kernel_rows,
        mu=mu,
        alpha=alpha,
        has_gamma=need_gamma,
        pairing=pairing,
    )


def required_degree(R: addpoly.AdditivePoly, m: int) -> int:
    """The ambient degree build_context would use before any gamma extension."""
    validate_input(R, m)
    d_R = addpoly.scaling_order(R)
    s = addpoly.splitting_degree(addpoly.e_poly(R))
    return lcm(R.base.n * s, multiplicative_order(R.p, d_R))


def _guard(p, M):
    if M * p.bit_length() > 4096:
        raise AmbientGuardError(f"ambient degree {M} is structurally oversized")
    if p ** M > 2 ** SIZE_GUARD_BITS:
        raise AmbientGuardError(
            f"ambient field F_{p}^{M} exceeds the 2^{SIZE_GUARD_BITS} size guard"
        )


def _kernel_data(E, p, M):
    ambient = ff.field_create(p, M)
    kernel_elems = addpoly.kernel_basis(E, ambient)
    if len(kernel_elems) != E.p_degree:
        raise AssertionError("ambient does not split the E-polynomial")
    rows = np.array([b.as_vector() for b in kernel_elems], dtype=np.int64).reshape(
        len(kernel_elems), M
    )
    return ambient, kernel_elems, rows


def _needs_artin_schreier_extension(R, ambient, kernel_elems):
    p = ambient.p
    span = {ambient.zero()}
    for b in kernel_elems:
        span = {s + b * c for s in span for c in range(p)}
    for beta in span:
        t = beta * addpoly.evaluate(R, beta)
        if ff.artin_schreier_root(t) is None:
            return True
    return False
