"""Exact arithmetic in finite fields F_{p^n}.

Every field is a quotient F_p[x]/(modulus) where the modulus is the
lexicographically least monic irreducible of its degree (coefficient tuple
ordered constant-first), so all descriptions are reproducible across runs
with no stored tables. Elements are coordinate vectors in the power basis.
Subfield embeddings map the source generator to the lexicographically least
root of the source modulus in the target, which makes them canonical too.

Nothing in this module rounds: coordinates are Python ints mod p.
"""

import itertools
import random
from math import gcd

import numpy as np

from .errors import ValidationError
from .linalg import solve as _solve_mod
from .numth import is_prime, multiplicative_order, prime_factors

# Structural cap on extension degrees; the per-computation 2^40 ambient
# guard lives in ambient.py where whole contexts are assembled.
MAX_DEGREE = 512


# ---------------------------------------------------------------------------
# F_p[x] helpers on plain int lists (coefficient lists, constant first)

def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_divmod(a, m, p):
    a = list(a)
    inv = pow(m[-1], p - 2, p)
    q = [0] * max(len(a) - len(m) + 1, 0)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        off = len(a) - len(m)
        if c:
            q[off] = c
            for i, mi in enumerate(m):
                a[off + i] = (a[off + i] - c * mi) % p
        a.pop()
        _fp_trim(a)
    return _fp_trim(q), _fp_trim(a)


def _fp_mod(a, m, p):
    return _fp_divmod(a, m, p)[1]


def _fp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _fp_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _fp_powmod_x(e, m, p):
    """x^e mod m over F_p by square and multiply."""
    result = [1]
    base = _fp_mod([0, 1], m, p)
    while e:
        if e & 1:
            result = _fp_mod(_fp_mul(result, base, p), m, p)
        base = _fp_mod(_fp_mul(base, base, p), m, p)
        e >>= 1
    return result


def _fp_is_irreducible(m, p):
    """Monic m irreducible over F_p: x^{p^n} = x mod m and the proper
    Frobenius gcd conditions."""
    n = len(m) - 1
    if n < 1:
        return False
    xq = _fp_powmod_x(p ** n, m, p)
    if _fp_trim(list(xq)) != [0, 1]:
        return False
    for ell in prime_factors(n):
        h = _fp_powmod_x(p ** (n // ell), m, p)
        diff = list(h)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g = _fp_gcd(m, _fp_trim(diff), p)
        if len(g) != 1:
            return False
    return True


def _least_irreducible(p, n):
    """Lexicographically least monic irreducible of degree n (constant first).

    Zero constant term never happens for n >= 2, so that whole block of the
    lexicographic order is skipped rather than enumerated.
    """
    if n == 1:
        return (0, 1)
    for c0 in range(1, p):
        for tail in itertools.product(range(p), repeat=n - 1):
            m = [c0] + list(tail) + [1]
            if _fp_is_irreducible(m, p):
                return tuple(m)
    raise AssertionError("no irreducible found (impossible)")


# ---------------------------------------------------------------------------

_FIELD_CACHE = {}


def field_create(p: int, n: int) -> "Field":
    """The canonical description of F_{p^n} (interned per (p, n))."""
    key = (p, n)
    if key in _FIELD_CACHE:
        return _FIELD_CACHE[key]
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    if n < 1:
        raise ValidationError(f"extension degree must be >= 1, got {n}")
    if n > MAX_DEGREE:
        raise ValidationError(f"extension degree {n} exceeds structural cap {MAX_DEGREE}")
    F = Field(p, n, _least_irreducible(p, n))
    _FIELD_CACHE[key] = F
    return F


class Field:
    """Immutable description of F_{p^n} plus cached arithmetic tables."""

    __slots__ = ("p", "n", "modulus", "_red", "_frob", "_zero", "_one", "_embed_cache")

    def __init__(self, p, n, modulus):
        self.p = p
        self.n = n
        self.modulus = tuple(modulus)
        # x^{n+j} mod modulus for j = 0..n-2, used to fold products
        red = []
        cur = [(-c) % p for c in modulus[:-1]]  # x^n
        for _ in range(max(n - 1, 0)):
            red.append(tuple(cur))
            cur = [0] + cur
            top = cur.pop()
            if top:
                for i in range(n):
                    cur[i] = (cur[i] - top * modulus[i]) % p
        self._red = red
        self._frob = {}
        self._zero = FieldElement(self, (0,) * n)
        self._one = FieldElement(self, tuple([1] + [0] * (n - 1)))
        self._embed_cache = {}

    @property
    def order(self):
        return self.p ** self.n

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def el(self, coords) -> "FieldElement":
        coords = tuple(int(c) % self.p for c in coords)
        if len(coords) != self.n:
            raise ValidationError(f"need {self.n} coordinates, got {len(coords)}")
        return FieldElement(self, coords)

    def constant(self, c: int) -> "FieldElement":
        return FieldElement(self, tuple([c % self.p] + [0] * (self.n - 1)))

    def gen(self) -> "FieldElement":
        if self.n == 1:
            return self._one
        return FieldElement(self, tuple([0, 1] + [0] * (self.n - 2)))

    def elements(self):
        """All elements in canonical (coordinate-lex) order."""
        for coords in itertools.product(range(self.p), repeat=self.n):
            yield FieldElement(self, coords)

    # -- raw coordinate arithmetic ------------------------------------------

    def _mul(self, a, b):
        p, n = self.p, self.n
        if n == 1:
            return (a[0] * b[0] % p,)
        conv = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] += ai * bj
        out = [c % p for c in conv[:n]]
        for j in range(n - 1):
            c = conv[n + j] % p
            if c:
                row = self._red[j]
                for i in range(n):
                    out[i] = (out[i] + c * row[i]) % p
        return tuple(out)

    def _inv(self, a):
        # extended Euclid in F_p[x] against the modulus
        p = self.p
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        r0, r1 = list(self.modulus), _fp_trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r2 = _fp_divmod(r0, r1, p)
            r0, r1 = r1, r2
            qs1 = _fp_mul(q, s1, p)
            s2 = [(x - y) % p for x, y in itertools.zip_longest(s0, qs1, fillvalue=0)]
            s0, s1 = s1, _fp_trim(s2)
        c = pow(r0[-1], p - 2, p)
        inv = [x * c % p for x in s0]
        inv += [0] * (self.n - len(inv))
        return tuple(inv[: self.n])

    def frobenius_matrix(self, k: int):
        """Matrix (columns) of x -> x^{p^k} as an F_p-linear map."""
        k %= self.n
        if k in self._frob:
            return self._frob[k]
        p, n = self.p, self.n
        if k == 0:
            M = np.eye(n, dtype=np.int64)
        else:
            M1 = self._frob.get(1)
            if M1 is None:
                # columns are images of the basis: (x^i)^p = (x^p)^i
                gp = self.gen() ** p
                cols = [self._one.coords]
                cur = gp
                for _ in range(1, n):
                    cols.append(cur.coords)
                    cur = cur * gp
                M1 = np.array(cols, dtype=np.int64).T % p
                self._frob[1] = M1
            M = M1
            for _ in range(k - 1):
                M = M @ M1 % p
        self._frob[k] = M
        return M

    def mult_matrix(self, a: "FieldElement"):
        """Matrix (columns) of multiplication by a."""
        n = self.n
        cols = []
        cur = a.coords
        cols.append(cur)
        basis_shift = self.gen().coords
        for _ in range(1, n):
            cur = self._mul(cur, basis_shift)
            cols.append(cur)
        return np.array(cols, dtype=np.int64).T % self.p

    def __repr__(self):
        return f"F_{self.p}^{self.n}"

    def __reduce__(self):  # keep interning through pickling
        return (field_create, (self.p, self.n))


class FieldElement:
    """One element of a Field, as a power-basis coordinate tuple."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    # -- basics --------------------------------------------------------------

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.coords == other.coords
        if isinstance(other, int):
            return self == self.field.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.coords))

    def __repr__(self):
        return format_element(self)

    def as_vector(self):
        return np.array(self.coords, dtype=np.int64)

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValidationError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple((a - b) % p for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.coords, o.coords))

    __rmul__ = __mul__

    def inverse(self):
        return FieldElement(self.field, self.field._inv(self.coords))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field.constant(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def frobenius(self, k: int = 1):
        """x^{p^k}, computed by the cached Frobenius matrix."""
        F = self.field
        k %= F.n
        if k == 0:
            return self
        M = F.frobenius_matrix(k)
        v = (M @ self.as_vector()) % F.p
        return FieldElement(F, tuple(int(c) for c in v))


# ---------------------------------------------------------------------------
# Field maps


def frobenius(x: FieldElement, k: int) -> FieldElement:
    """x^{p^k} (an additive and multiplicative homomorphism)."""
    if k < 0:
        raise ValidationError("frobenius exponent must be >= 0")
    return x.frobenius(k % x.field.n)


def norm_trace(x: FieldElement, sub_degree: int):
    """Norm and trace of x down to F_{p^sub_degree}, returned in that field."""
    F = x.field
    if sub_degree < 1 or F.n % sub_degree != 0:
        raise ValidationError(f"{sub_degree} does not divide field degree {F.n}")
    steps = F.n // sub_degree
    tr = x
    nr = x
    cur = x
    for _ in range(steps - 1):
        cur = cur.frobenius(sub_degree)
        tr = tr + cur
        nr = nr * cur
    sub = field_create(F.p, sub_degree)
    return project_to_subfield(nr, sub), project_to_subfield(tr, sub)


def embed(x: FieldElement, target: Field) -> FieldElement:
    """Canonical ring embedding of x's field into target (least-root rule)."""
    S, T = x.field, target
    if S is T:
        return x
    if S.p != T.p or T.n % S.n != 0:
        raise ValidationError(f"no embedding F_{S.p}^{S.n} -> F_{T.p}^{T.n}")
    M = _embedding_matrix(S, T)
    v = (M @ x.as_vector()) % T.p
    return FieldElement(T, tuple(int(c) for c in v))


def project_to_subfield(x: FieldElement, sub: Field) -> FieldElement:
    """Inverse of embed on its image; x must be fixed by the subfield Frobenius."""
    F = x.field
    if sub is F:
        return x
    if x.frobenius(sub.n) != x:
        raise ValidationError("element is not in the requested subfield")
    M = _embedding_matrix(sub, F)
    c = _solve_mod(M, x.as_vector(), F.p)
    assert c is not None, "subfield projection must be solvable"
    return sub.el(c)


def _embedding_matrix(S: Field, T: Field):
    key = (S.p, S.n)
    if key in T._embed_cache:
        return T._embed_cache[key]
    if S.n == 1:
        M = np.zeros((T.n, 1), dtype=np.int64)
        M[0, 0] = 1
        T._embed_cache[key] = M
        return M
    # least root of the source modulus inside the target
    mod = [T.constant(c) for c in S.modulus]
    roots = poly_roots(mod, T)
    assert len(roots) == S.n, "irreducible modulus must split in the target"
    rho = min(roots, key=lambda r: r.coords)
    cols = []
    cur = T.one()
    for _ in range(S.n):
        cols.append(cur.coords)
        cur = cur * rho
    M = np.array(cols, dtype=np.int64).T % T.p
    T._embed_cache[key] = M
    return M


def roots_of_unity(F: Field, d: int):
    """All of mu_d in F, sorted canonically. d must divide p^n - 1."""
    if d < 1:
        raise ValidationError("d must be >= 1")
    if gcd(d, F.p) != 1 or (F.order - 1) % d != 0:
        raise ValidationError(f"{d} does not divide {F.p}^{F.n} - 1")
    if d == 1:
        return [F.one()]
    zeta = _root_of_unity_generator(F, d)
    out = set()
    cur = F.one()
    for _ in range(d):
        out.add(cur)
        cur = cur * zeta
    assert len(out) == d
    return sorted(out, key=lambda x: x.coords)


def canonical_root_of_unity(F: Field, d: int) -> FieldElement:
    """First element of mu_d (canonical order) whose order is exactly d."""
    mu = roots_of_unity(F, d)
    for z in mu:
        if element_order(z) == d:
            return z
    raise AssertionError("mu_d contains no element of order d (impossible)")


def _root_of_unity_generator(F: Field, d: int):
    cof = (F.order - 1) // d
    ells = prime_factors(d)
    for y in F.elements():
        if y.is_zero():
            continue
        z = y ** cof
        if z == F.one():
            continue
        if all(z ** (d // ell) != F.one() for ell in ells):
            return z
    raise AssertionError("no generator of mu_d found (impossible)")


def element_order(x: FieldElement) -> int:
    """Multiplicative order of a nonzero element."""
    if x.is_zero():
        raise ValidationError("zero has no multiplicative order")
    N = x.field.order - 1
    o = N
    for q in prime_factors(N):
        while o % q == 0 and x ** (o // q) == x.field.one():
            o //= q
    return o


def artin_schreier_root(t: FieldElement):
    """Some y with y^p - y = t, or None when the absolute trace of t is nonzero.

    Deterministic: the particular solution from the canonical linear solve.
    """
    F = t.field
    A = (F.frobenius_matrix(1) - np.eye(F.n, dtype=np.int64)) % F.p
    y = _solve_mod(A, t.as_vector(), F.p)
    if y is None:
        return None
    return F.el(y)


# ---------------------------------------------------------------------------
# Root finding for moduli (used only to pin canonical embeddings)


def poly_roots(coeffs, F: Field):
    """All roots in F of a nonzero squarefree polynomial with coefficients in F.

    Cantor-Zassenhaus equal-degree splitting with a fixed-seed generator, so
    results (and hence embeddings) are reproducible.
    """
    rng = random.Random(0x5EED ^ (F.p * 1000003 + F.n))
    # strip to the product of distinct linear factors: gcd(f, x^order - x)
    f = _f_monic(coeffs, F)
    xq = _f_powmod_x(F.order, f, F)
    lin = _f_gcd(f, _f_sub(xq, [F.zero(), F.one()], F), F)
    out = []
    _cz_split(lin, F, rng, out)
    return sorted(out, key=lambda r: r.coords)


def _cz_split(f, F, rng, out):
    deg = len(f) - 1
    if deg == 0:
        return
    if deg == 1:
        out.append(-f[0] / f[1])
        return
    p = F.p
    while True:
        a = F.el([rng.randrange(p) for _ in range(F.n)])
        if p == 2:
            # trace map sum_{i<k} y^{2^i} of y = d x + a, d random nonzero:
            # the multiplier is what separates roots with equal absolute trace
            d = F.zero()
            while d.is_zero():
                d = F.el([rng.randrange(p) for _ in range(F.n)])
            acc = _f_mod([a, d], f, F)
            tr = list(acc)
            for _ in range(F.n - 1):
                acc = _f_mod(_f_mul(acc, acc, F), f, F)
                tr = _f_add(tr, acc, F)
            g = _f_gcd(f, tr, F)
        else:
            e = (F.order - 1) // 2
            w = _f_powmod([a, F.one()], e, f, F)
            w = _f_sub(w, [F.one()], F)
            g = _f_gcd(f, w, F)
        if 0 < len(g) - 1 < deg:
            h = _f_quo(f, g, F)
            _cz_split(g, F, rng, out)
            _cz_split(h, F, rng, out)
            return


def _f_monic(f, F):
    f = [c for c in f]
    while f and f[-1].is_zero():
        f.pop()
    if not f:
        raise ValidationError("zero polynomial")
    inv = f[-1].inverse()
    return [c * inv for c in f]


def _f_trim(f, F):
    while f and f[-1].is_zero():
        f.pop()
    return f


def _f_sub(a, b, F):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero()
        y = b[i] if i < len(b) else F.zero()
        out.append(x - y)
    return _f_trim(out, F)


def _f_mul(a, b, F):
    if not a or not b:
        return []
    out = [F.zero()] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai.is_zero():
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
    return _f_trim(out, F)


def _f_add(a, b, F):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero()
        y = b[i] if i < len(b) else F.zero()
        out.append(x + y)
    return _f_trim(out, F)


def _f_mod(a, m, F):
    a = list(a)
    inv = m[-1].inverse()
    while len(a) >= len(m):
        c = a[-1] * inv
        if not c.is_zero():
            off = len(a) - len(m)
            for i, mi in enumerate(m):
                a[off + i] = a[off + i] - c * mi
        a.pop()
        _f_trim(a, F)
    return _f_trim(a, F)


def _f_quo(a, b, F):
    a = list(a)
    inv = b[-1].inverse()
    q = [F.zero()] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv
        d = len(a) - len(b)
        q[d] = c
        for i, bi in enumerate(b):
            a[d + i] = a[d + i] - c * bi
        a.pop()
        _f_trim(a, F)
    return _f_trim(q, F)


def _f_gcd(a, b, F):
    a, b = list(a), list(b)
    while b:
        a, b = b, _f_mod(a, b, F)
    return _f_monic(a, F) if a else a


def _f_powmod(base, e, m, F):
    result = [F.one()]
    base = _f_mod(list(base), m, F)
    while e:
        if e & 1:
            result = _f_mod(_f_mul(result, base, F), m, F)
        base = _f_mod(_f_mul(base, base, F), m, F)
        e >>= 1
    return result


def _f_powmod_x(e, m, F):
    return _f_powmod([F.zero(), F.one()], e, m, F)


# ---------------------------------------------------------------------------
# Text form "p^n:modulus_csv:coords_csv"


def format_element(x: FieldElement) -> str:
    F = x.field
    mod = ",".join(str(c) for c in F.modulus)
    co = ",".join(str(c) for c in x.coords)
    return f"{F.p}^{F.n}:{mod}:{co}"


def parse_element(s: str) -> FieldElement:
    try:
        head, mod, co = s.strip().split(":")
        p, n = (int(t) for t in head.split("^"))
    except Exception as exc:
        raise ValidationError(f"malformed element {s!r}") from exc
    F = field_create(p, n)
    modulus = tuple(int(c) % p for c in mod.split(","))
    if modulus != F.modulus:
        raise ValidationError(
            f"modulus mismatch for F_{p}^{n}: expected {F.modulus}, got {modulus}"
        )
    coords = [int(c) for c in co.split(",")]
    return F.el(coords)


__all__ = [
    "Field",
    "FieldElement",
    "field_create",
    "frobenius",
    "norm_trace",
    "embed",
    "project_to_subfield",
    "roots_of_unity",
    "canonical_root_of_unity",
    "element_order",
    "artin_schreier_root",
    "multiplicative_order",
    "poly_roots",
    "format_element",
    "parse_element",
]
