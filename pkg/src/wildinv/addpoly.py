"""Additive (linearized) polynomials over finite fields.

An additive polynomial sum a_i x^{p^i} is stored by its p-power coefficient
vector (a_0, ..., a_e); composition is the twisted (Ore) product and right
division with remainder always exists, which is the engine behind every
decomposition question in this library.
"""

from math import gcd

import numpy as np

from . import ff
from .errors import ValidationError
from .linalg import nullspace, rref
from .numth import prime_factors


class AdditivePoly:
    """sum_{i=0}^{e} a_i x^{p^i} with a_e != 0; the zero polynomial has no terms."""

    __slots__ = ("base", "coeffs")

    def __init__(self, base, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.base = base
        self.coeffs = tuple(coeffs)
        for c in self.coeffs:
            if c.field is not base:
                raise ValidationError("coefficient outside the declared base field")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_ints(cls, base, ints):
        return cls(base, [base.constant(c) for c in ints])

    @classmethod
    def zero(cls, base):
        return cls(base, [])

    @classmethod
    def identity(cls, base):
        return cls(base, [base.one()])

    @classmethod
    def monomial(cls, base, e, coeff=None):
        c = base.one() if coeff is None else coeff
        return cls(base, [base.zero()] * e + [c])

    # -- basics ---------------------------------------------------------------

    @property
    def p(self):
        return self.base.p

    def is_zero(self):
        return not self.coeffs

    @property
    def p_degree(self):
        """e with deg = p^e."""
        if self.is_zero():
            raise ValidationError("zero polynomial has no degree")
        return len(self.coeffs) - 1

    @property
    def degree(self):
        return self.p ** self.p_degree

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.base.zero()

    def __eq__(self, other):
        return (
            isinstance(other, AdditivePoly)
            and self.base is other.base
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.base.p, self.base.n, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "AdditivePoly(0)"
        terms = [f"({c})x^{self.p}^{i}" for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return "AdditivePoly(" + " + ".join(terms) + ")"

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return AdditivePoly(
            self.base, [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __sub__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return AdditivePoly(
            self.base, [self.coeff(i) - other.coeff(i) for i in range(n)]
        )

    def __neg__(self):
        return AdditivePoly(self.base, [-c for c in self.coeffs])

    def scale(self, c):
        """Left scalar multiple c * f."""
        if isinstance(c, int):
            c = self.base.constant(c)
        return AdditivePoly(self.base, [c * a for a in self.coeffs])

    def _check(self, other):
        if not isinstance(other, AdditivePoly) or other.base is not self.base:
            raise ValidationError("additive polynomials over different fields")

    def embed_to(self, field):
        """Same polynomial with coefficients pushed into an extension field."""
        if field is self.base:
            return self
        return AdditivePoly(field, [ff.embed(c, field) for c in self.coeffs])

    def map_coeffs(self, fn):
        return AdditivePoly(self.base, [fn(c) for c in self.coeffs])

    def operator_matrix(self, field=None):
        """Matrix of f as an F_p-linear operator on the given field."""
        F = field or self.base
        f = self.embed_to(F)
        n = F.n
        M = np.zeros((n, n), dtype=np.int64)
        for i, c in enumerate(f.coeffs):
            if not c.is_zero():
                M = (M + F.mult_matrix(c) @ F.frobenius_matrix(i)) % F.p
        return M


def evaluate(f: AdditivePoly, x) -> "ff.FieldElement":
    """f(x) by iterated Frobenius; x may live in an extension of f's base."""
    F = x.field
    if F is not f.base:
        if F.p != f.base.p or F.n % f.base.n != 0:
            raise ValidationError("argument field is not an extension of the base")
        f = f.embed_to(F)
    out = F.zero()
    xp = x
    for i, c in enumerate(f.coeffs):
        if i > 0:
            xp = xp.frobenius(1)
        if not c.is_zero():
            out = out + c * xp
    return out


def compose(f: AdditivePoly, g: AdditivePoly) -> AdditivePoly:
    """f(g(x)): the twisted product with coefficient rule a_i * b_j^{p^i}."""
    f._check(g)
    if f.is_zero() or g.is_zero():
        return AdditivePoly.zero(f.base)
    base = f.base
    out = [base.zero()] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a.is_zero():
            continue
        for j, b in enumerate(g.coeffs):
            if b.is_zero():
                continue
            out[i + j] = out[i + j] + a * b.frobenius(i)
    return AdditivePoly(base, out)


def right_divmod(f: AdditivePoly, g: AdditivePoly):
    """(h, r) with f = h o g + r and deg r < deg g, in the skew polynomial ring."""
    if g.is_zero():
        raise ValidationError("right division by zero")
    base = f.base
    g._check(f)
    if f.is_zero():
        return AdditivePoly.zero(base), AdditivePoly.zero(base)
    dg = g.p_degree
    lead_inv = g.coeffs[dg].inverse()
    rem = list(f.coeffs)
    h = [base.zero()] * max(len(f.coeffs) - dg, 0)
    for i in range(len(rem) - 1, dg - 1, -1):
        if rem[i].is_zero():
            continue
        t = rem[i] * lead_inv.frobenius(i - dg)
        h[i - dg] = t
        for k, b in enumerate(g.coeffs):
            if not b.is_zero():
                rem[k + i - dg] = rem[k + i - dg] - t * b.frobenius(i - dg)
        assert rem[i].is_zero()
    return AdditivePoly(base, h), AdditivePoly(base, rem[:dg])


def skew_right_gcd(f: AdditivePoly, g: AdditivePoly) -> AdditivePoly:
    """Monic right gcd; its kernel is the intersection of the two kernels."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, right_divmod(a, b)[1]
    if a.is_zero():
        return a
    return a.scale(a.coeffs[a.p_degree].inverse())


# ---------------------------------------------------------------------------
# The E-polynomial, scaling orders, and the bilinear pairing


def e_poly(R: AdditivePoly) -> AdditivePoly:
    """The degree-p^{2e} additive polynomial R(x)^{p^e} + sum (a_i x)^{p^{e-i}}.

    Its coefficient of x is a_e, so it is always reduced; its root space is
    the 2e-dimensional symplectic space attached to R.
    """
    if R.is_zero():
        raise ValidationError("R must be nonzero")
    e = R.p_degree
    if R.p == 2 and e == 0:
        raise ValidationError("the pair (p, e) = (2, 0) is excluded")
    base = R.base
    out = [base.zero()] * (2 * e + 1)
    for i, a in enumerate(R.coeffs):
        if a.is_zero():
            continue
        out[e + i] = out[e + i] + a.frobenius(e)  # from R(x)^{p^e}
        out[e - i] = out[e - i] + a.frobenius(e - i)  # from (a_i x)^{p^{e-i}}
    E = AdditivePoly(base, out)
    if e >= 1:
        assert E.coeff(0) == R.coeffs[e], "x-slot coefficient must equal a_e"
    else:
        # e = 0 collapses both sums onto the x slot: coefficient 2 a_0, p odd
        assert not E.coeff(0).is_zero()
    return E


def scaling_order(R: AdditivePoly) -> int:
    """d_R = gcd{p^i + 1 : a_i != 0}; always divides p^e + 1."""
    if R.is_zero():
        raise ValidationError("R must be nonzero")
    d = 0
    for i, a in enumerate(R.coeffs):
        if not a.is_zero():
            d = gcd(d, R.p ** i + 1)
    assert (R.p ** R.p_degree + 1) % d == 0
    return d


def twisted_scaling_order(R: AdditivePoly, m: int) -> int:
    """d_{R,m} = d_R / gcd(d_R, m)."""
    if m < 1 or m % R.p == 0:
        raise ValidationError("m must be a positive integer prime to p")
    d = scaling_order(R)
    return d // gcd(d, m)


class PairingTable:
    """The biadditive pairing of R as a finite list of monomials c x^{p^a} y^{p^b}.

    F_p-bilinear in each slot; its antisymmetrization on the root space of the
    E-polynomial takes values in the prime field.
    """

    __slots__ = ("base", "terms")

    def __init__(self, base, terms):
        self.base = base
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    def is_zero(self):
        return not self.terms

    def eval(self, x, y):
        F = x.field
        if y.field is not F:
            raise ValidationError("pairing arguments in different fields")
        out = F.zero()
        for (a, b), c in self.terms.items():
            cc = c if c.field is F else ff.embed(c, F)
            out = out + cc * x.frobenius(a) * y.frobenius(b)
        return out

    def pth_power_terms(self):
        """Term dict of table^p (exponents shift by one, coefficients by Frobenius)."""
        return {(a + 1, b + 1): c.frobenius(1) for (a, b), c in self.terms.items()}

    def as_additive_in_x(self, y):
        """Fix the second slot: an additive polynomial in x over y's field."""
        F = y.field
        amax = max((a for (a, b) in self.terms), default=0)
        out = [F.zero()] * (amax + 1)
        for (a, b), c in self.terms.items():
            cc = c if c.field is F else ff.embed(c, F)
            out[a] = out[a] + cc * y.frobenius(b)
        return AdditivePoly(F, out)


def pairing_poly(R: AdditivePoly) -> PairingTable:
    """The table -sum_{i<e} ( sum_{j<e-i} (a_i x^{p^i} y)^{p^j} + (x R(y))^{p^i} )."""
    if R.is_zero():
        raise ValidationError("R must be nonzero")
    e = R.p_degree
    base = R.base
    terms = {}

    def put(a, b, c):
        if (a, b) in terms:
            terms[(a, b)] = terms[(a, b)] + c
        else:
            terms[(a, b)] = c

    for i in range(e):
        ai = R.coeff(i)
        if not ai.is_zero():
            for j in range(e - i):
                put(i + j, j, -ai.frobenius(j))
        for k, ak in enumerate(R.coeffs):
            if not ak.is_zero():
                put(i, k + i, -ak.frobenius(i))
    return PairingTable(base, terms)


def pairing_value(R: AdditivePoly, x, y):
    return pairing_poly(R).eval(x, y)


def pairing_identity_residual(R: AdditivePoly) -> dict:
    """Exact residual of f^p - f + x^{p^e} E(y) - x R(y) - y R(x); empty iff the
    defining identity of the pairing holds term for term."""
    e = R.p_degree
    base = R.base
    table = pairing_poly(R)
    acc = {}

    def put(a, b, c):
        key = (a, b)
        cur = acc.get(key)
        acc[key] = c if cur is None else cur + c
        if acc[key].is_zero():
            del acc[key]

    for (a, b), c in table.pth_power_terms().items():
        put(a, b, c)
    for (a, b), c in table.terms.items():
        put(a, b, -c)
    E = e_poly(R)
    for j, c in enumerate(E.coeffs):
        if not c.is_zero():
            put(e, j, c)  # + x^{p^e} E(y)
    for i, a in enumerate(R.coeffs):
        if not a.is_zero():
            put(0, i, -a)  # - x R(y)
            put(i, 0, -a)  # - y R(x)
    return acc


def mu_scaling(f: AdditivePoly, d: int) -> bool:
    """Does f(ax) = a f(x) hold for every a in mu_d?

    Equivalent to d | p^i - 1 at every index with a nonzero coefficient;
    d | 0 counts as true for the i = 0 slot.
    """
    if d < 1 or gcd(d, f.p) != 1:
        raise ValidationError("d must be a positive integer prime to p")
    if f.is_zero():
        return True
    for i, c in enumerate(f.coeffs):
        if not c.is_zero() and (f.p ** i - 1) % d != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Kernels and kernel polynomials


def kernel_poly(W) -> AdditivePoly:
    """Monic additive polynomial vanishing exactly on the F_p-subspace W.

    Built as a tower of degree-p steps x^p - u^{p-1} x, which keeps the result
    visibly additive; W is validated to really be a subspace.
    """
    W = list(W)
    if not W:
        raise ValidationError("W must contain at least 0")
    F = W[0].field
    p = F.p
    vecs = np.array([w.as_vector() for w in W], dtype=np.int64)
    basis, _ = rref(vecs, p)
    dim = basis.shape[0]
    if len(set(W)) != p ** dim:
        raise ValidationError("W is not an F_p-subspace (wrong cardinality)")
    span = {F.zero()}
    basis_elems = [F.el(row) for row in basis]
    for b in basis_elems:
        span = {s + b * c for s in span for c in range(p)}
    if span != set(W):
        raise ValidationError("W is not an F_p-subspace (not closed)")

    f = AdditivePoly.identity(F)
    for b in basis_elems:
        v = evaluate(f, b)
        assert not v.is_zero()
        step = AdditivePoly(F, [-(v ** (p - 1)), F.one()])
        f = compose(step, f)
    return f


def kernel_basis(f: AdditivePoly, field) -> list:
    """Canonical F_p-basis (as field elements) of ker(f) inside the given field."""
    M = f.operator_matrix(field)
    rows = nullspace(M, field.p)
    return [field.el(r) for r in rows]


def splitting_degree(f: AdditivePoly) -> int:
    """Least k with ker(f) fully inside F_{q^k}, q the base field order.

    Found by right-gcds against x^{q^k} - x, so no extension field is built.
    """
    if f.is_zero():
        raise ValidationError("zero polynomial")
    # kernel size is blind to Frobenius right-factors
    coeffs = list(f.coeffs)
    s = 0
    while coeffs and coeffs[0].is_zero():
        coeffs.pop(0)
        s += 1
    g = AdditivePoly(f.base, coeffs)
    target = g.p_degree
    if target == 0:
        return 1
    n0 = f.base.n
    for k in range(1, 10000):
        frob_poly = [f.base.zero()] * (n0 * k + 1)
        frob_poly[0] = -f.base.one()
        frob_poly[-1] = f.base.one()
        h = skew_right_gcd(AdditivePoly(f.base, frob_poly), g)
        if not h.is_zero() and h.p_degree == target:
            return k
    raise AssertionError("splitting degree search exceeded cap")


# ---------------------------------------------------------------------------
# Reducedness, rationality, primality


def is_reduced(f: AdditivePoly) -> bool:
    """Separable kernel: nonzero coefficient in the x slot."""
    if f.is_zero():
        raise ValidationError("zero polynomial")
    return not f.coeff(0).is_zero()


def is_rational_over(f, sub_degree: int) -> bool:
    """Are all coefficients fixed by the degree-sub_degree subfield Frobenius?"""
    if isinstance(f, AdditivePoly):
        coeffs = f.coeffs
    else:
        coeffs = list(f)
    return all(c.frobenius(sub_degree) == c for c in coeffs)


def is_prime(f: AdditivePoly) -> bool:
    """No nontrivial decomposition f = f1 o f2 over the base field.

    Frobenius right-factors are peeled first; for reduced f every minimal
    right factor over the base is the kernel polynomial of a base-Frobenius
    stable subspace of ker(f), so cyclic-submodule witnesses decide the
    question. Each witness is confirmed by exact right division.
    """
    if f.is_zero():
        raise ValidationError("zero polynomial")
    if f.p_degree == 0:
        raise ValidationError("degree p^0 polynomials are units for composition")
    if f.coeff(0).is_zero():
        return f.p_degree == 1
    base = f.base
    p = base.p
    n = f.p_degree
    if n == 1:
        return True
    s = splitting_degree(f)
    ambient = ff.field_create(p, base.n * s)
    basis = kernel_basis(f, ambient)
    assert len(basis) == n
    B = np.array([b.as_vector() for b in basis], dtype=np.int64)
    # base-field Frobenius action in kernel coordinates
    S = _action_matrix_on_rows(B, lambda x: x.frobenius(base.n), ambient)
    f_amb = f.embed_to(ambient)
    for coords in _nonzero_coord_vectors(p, n):
        rows = _cyclic_rows(coords, [S], p)
        if 0 < rows.shape[0] < n:
            W = _span_elements(rows, B, ambient)
            f2 = kernel_poly(W)
            h, r = right_divmod(f_amb, f2)
            assert r.is_zero(), "kernel-subspace factor must divide exactly"
            assert is_rational_over(f2, base.n), "stable subspace must give a rational factor"
            return False
    return True


def _action_matrix_on_rows(B, fn, field):
    """Matrix (columns) of a linear map in the row-basis coordinates of B."""
    from .linalg import coords_in_rows

    p = field.p
    cols = []
    for row in B:
        x = field.el(row)
        y = fn(x)
        c = coords_in_rows(B, y.as_vector(), p)
        assert c is not None, "space not stable under the action"
        cols.append(c)
    return np.array(cols, dtype=np.int64).T % p


def _nonzero_coord_vectors(p, n):
    import itertools as it

    for v in it.product(range(p), repeat=n):
        if any(v):
            yield np.array(v, dtype=np.int64)


def _cyclic_rows(v, mats, p):
    """RREF basis of the smallest subspace containing v stable under all mats."""
    rows = rref(v.reshape(1, -1), p)[0]
    while True:
        new = [rows]
        for M in mats:
            new.append(rows @ M.T % p)
        stacked = np.vstack(new)
        nxt, _ = rref(stacked, p)
        if nxt.shape[0] == rows.shape[0]:
            return nxt
        rows = nxt


def _span_elements(rows, B, field):
    """All field elements of the subspace given by coordinate rows over basis B."""
    import itertools as it

    p = field.p
    vecs = rows @ B % p
    elems = {field.zero()}
    for row in vecs:
        b = field.el(row)
        elems = {e + b * c for e in elems for c in range(p)}
    return sorted(elems, key=lambda x: x.coords)


# ---------------------------------------------------------------------------
# Coefficient transport (additive polys in p^t-powers <-> classical polys)


def coeff_transport(f: AdditivePoly, t: int):
    """Map sum c_i x^{p^{ti}} to the classical polynomial sum c_i y^i.

    Requires base degree | t and every exponent of f a multiple of t. Under
    those hypotheses composition goes to ordinary multiplication, so primality
    of f matches irreducibility of the image; the image of an E-polynomial
    with full scaling order is additionally reciprocal.
    """
    base = f.base
    if t < 1 or t % base.n != 0:
        raise ValidationError("transport needs base degree | t")
    if f.is_zero():
        return []
    out = [base.zero()] * (f.p_degree // t + 1)
    for i, c in enumerate(f.coeffs):
        if c.is_zero():
            continue
        if i % t != 0:
            raise ValidationError(f"exponent p^{i} is not a power of p^{t}")
        out[i // t] = c
    return out


def coeff_transport_inverse(coeffs, t: int) -> AdditivePoly:
    """Inverse map sum c_i y^i to sum c_i x^{p^{ti}}."""
    coeffs = list(coeffs)
    if not coeffs:
        raise ValidationError("empty polynomial")
    base = coeffs[0].field
    if t < 1 or t % base.n != 0:
        raise ValidationError("transport needs base degree | t")
    out = [base.zero()] * ((len(coeffs) - 1) * t + 1)
    for i, c in enumerate(coeffs):
        out[i * t] = c
    return AdditivePoly(base, out)


def is_reciprocal(coeffs) -> bool:
    """c_i == c_{r-i} for a classical coefficient list."""
    cs = list(coeffs)
    while cs and cs[-1].is_zero():
        cs.pop()
    return all(cs[i] == cs[len(cs) - 1 - i] for i in range(len(cs)))


def format_additive_poly(f: AdditivePoly) -> str:
    """Text form "q=p^f; coeffs=[c_0; c_1; ...; c_e]" with elements in the
    field text form."""
    base = f.base
    body = "; ".join(ff.format_element(c) for c in f.coeffs)
    return f"q={base.p}^{base.n}; coeffs=[{body}]"


def parse_additive_poly_text(s: str) -> AdditivePoly:
    """Inverse of format_additive_poly."""
    s = s.strip()
    try:
        head, body = s.split(";", 1)
        assert head.startswith("q=")
        p, n = (int(t) for t in head[2:].split("^"))
        body = body.strip()
        assert body.startswith("coeffs=[") and body.endswith("]")
        inner = body[len("coeffs=") + 1 : -1]
    except Exception as exc:
        raise ValidationError(f"malformed additive polynomial {s!r}") from exc
    base = ff.field_create(p, n)
    coeffs = []
    if inner.strip():
        for tok in inner.split(";"):
            c = ff.parse_element(tok)
            if c.field is not base:
                raise ValidationError("coefficient field differs from the declared base")
            coeffs.append(c)
    return AdditivePoly(base, coeffs)


def classical_is_irreducible(coeffs) -> bool:
    """Irreducibility of a classical polynomial over its coefficient field."""
    cs = list(coeffs)
    F = cs[0].field
    while cs and cs[-1].is_zero():
        cs.pop()
    if len(cs) < 2:
        return False
    if len(cs) == 2:
        return True
    q = F.order
    n = len(cs) - 1
    xq = ff._f_powmod_x(q ** n, cs, F)
    if ff._f_trim(ff._f_sub(xq, [F.zero(), F.one()], F), F):
        return False
    for ell in prime_factors(n):
        h = ff._f_powmod_x(q ** (n // ell), cs, F)
        g = ff._f_gcd(cs, ff._f_sub(h, [F.zero(), F.one()], F), F)
        if len(g) != 1:
            return False
    return True


__all__ = [
    "AdditivePoly",
    "PairingTable",
    "evaluate",
    "compose",
    "right_divmod",
    "skew_right_gcd",
    "e_poly",
    "scaling_order",
    "twisted_scaling_order",
    "pairing_poly",
    "pairing_value",
    "pairing_identity_residual",
    "mu_scaling",
    "kernel_poly",
    "kernel_basis",
    "splitting_degree",
    "is_reduced",
    "is_rational_over",
    "is_prime",
    "coeff_transport",
    "coeff_transport_inverse",
    "is_reciprocal",
    "classical_is_irreducible",
    "format_additive_poly",
    "parse_additive_poly_text",
]
