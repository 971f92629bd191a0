import random

import pytest

from wildinv.addpoly import (
    AdditivePoly,
    classical_is_irreducible,
    coeff_transport,
    coeff_transport_inverse,
    compose,
    e_poly,
    evaluate,
    is_prime,
    is_rational_over,
    is_reciprocal,
    is_reduced,
    kernel_basis,
    kernel_poly,
    mu_scaling,
    pairing_identity_residual,
    pairing_poly,
    pairing_value,
    right_divmod,
    scaling_order,
    skew_right_gcd,
    splitting_degree,
    twisted_scaling_order,
)
from wildinv.errors import ValidationError
from wildinv.ff import field_create, roots_of_unity


def random_poly(F, emax, rng, nonzero=True):
    e = rng.randint(0, emax)
    cs = [F.el([rng.randrange(F.p) for _ in range(F.n)]) for _ in range(e + 1)]
    f = AdditivePoly(F, cs)
    if nonzero and f.is_zero():
        return random_poly(F, emax, rng, nonzero)
    return f


def random_element(F, rng):
    return F.el([rng.randrange(F.p) for _ in range(F.n)])


def test_evaluate_examples():
    F3 = field_create(3, 1)
    xp = AdditivePoly.from_ints(F3, [0, 1])
    assert evaluate(xp, F3.zero()).is_zero()
    f = AdditivePoly.from_ints(F3, [1, 1])  # x + x^3
    assert evaluate(f, F3.one()) == F3.constant(2)


def test_evaluate_is_additive():
    rng = random.Random(2)
    for p in (2, 3, 5):
        F = field_create(p, 2)
        for _ in range(25):
            f = random_poly(F, 3, rng)
            x, y = random_element(F, rng), random_element(F, rng)
            assert evaluate(f, x + y) == evaluate(f, x) + evaluate(f, y)
            lam = rng.randrange(p)
            assert evaluate(f, x * lam) == evaluate(f, x) * lam


def test_compose_examples_and_cross_check():
    F3 = field_create(3, 1)
    xp = AdditivePoly.from_ints(F3, [0, 1])
    assert compose(xp, xp) == AdditivePoly.from_ints(F3, [0, 0, 1])
    a = AdditivePoly.from_ints(F3, [2])
    b = AdditivePoly.from_ints(F3, [2])
    assert compose(a, b) == AdditivePoly.from_ints(F3, [1])
    rng = random.Random(4)
    for p in (2, 3, 5):
        F = field_create(p, 2)
        for _ in range(25):
            f, g = random_poly(F, 3, rng), random_poly(F, 3, rng)
            x = random_element(F, rng)
            assert evaluate(compose(f, g), x) == evaluate(f, evaluate(g, x))


def test_compose_associative():
    rng = random.Random(6)
    F = field_create(3, 2)
    for _ in range(25):
        f, g, h = (random_poly(F, 2, rng) for _ in range(3))
        assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_right_divmod():
    rng = random.Random(8)
    count = 0
    for p in (2, 3, 5):
        for n in (1, 2):
            F = field_create(p, n)
            for _ in range(35):
                f = random_poly(F, 3, rng)
                g = random_poly(F, 2, rng)
                h, r = right_divmod(f, g)
                assert compose(h, g) + r == f
                if not r.is_zero():
                    assert r.p_degree < g.p_degree
                count += 1
    assert count >= 200
    F3 = field_create(3, 1)
    f = AdditivePoly.from_ints(F3, [1, 2, 1])
    h, r = right_divmod(f, f)
    assert h == AdditivePoly.identity(F3) and r.is_zero()
    g = AdditivePoly.from_ints(F3, [1, 0, 0, 1])
    h, r = right_divmod(f, g)
    assert h.is_zero() and r == f
    with pytest.raises(ValidationError):
        right_divmod(f, AdditivePoly.zero(F3))


def test_skew_factorization_example():
    # x^9 + x = (x^3 + a x) o (x^3 + b x) over F_9 when b^4 = -1, a = -b^3
    F9 = field_create(3, 2)
    E = AdditivePoly.from_ints(F9, [1, 0, 1])
    bs = [b for b in F9.elements() if not b.is_zero() and b ** 4 == -F9.one()]
    assert bs
    for b in bs:
        g = AdditivePoly(F9, [b, F9.one()])
        h, r = right_divmod(E, g)
        assert r.is_zero()
        assert compose(h, g) == E
        assert h.coeffs[0] == -(b ** 3)


def test_e_poly_examples():
    F3 = field_create(3, 1)
    R = AdditivePoly.from_ints(F3, [0, 1])
    assert e_poly(R) == AdditivePoly.from_ints(F3, [1, 0, 1])
    F9 = field_create(3, 2)
    a = F9.gen()
    Rm = AdditivePoly(F9, [F9.zero(), a])
    E = e_poly(Rm)
    assert E.coeffs[0] == a and E.coeffs[2] == a ** 3 and E.coeffs[1].is_zero()
    F4 = field_create(2, 2)
    R48 = AdditivePoly(F4, [F4.zero(), F4.one(), F4.zero(), F4.one()])
    E48 = e_poly(R48)
    assert E48.p_degree == 6 and E48.coeffs[0] == F4.one()
    with pytest.raises(ValidationError):
        e_poly(AdditivePoly.from_ints(field_create(2, 1), [1]))  # (p,e) = (2,0)


def test_e_poly_always_reduced():
    rng = random.Random(9)
    for p in (2, 3, 5):
        F = field_create(p, 2)
        for _ in range(20):
            R = random_poly(F, 3, rng)
            if p == 2 and R.p_degree == 0:
                continue
            assert is_reduced(e_poly(R))


def test_scaling_orders():
    F3 = field_create(3, 1)
    F2 = field_create(2, 1)
    assert scaling_order(AdditivePoly.from_ints(F3, [0, 0, 1])) == 10  # x^{p^e} -> p^e+1
    R28 = AdditivePoly.from_ints(F2, [0, 1, 0, 1])  # x^2 + x^8
    assert scaling_order(R28) == 3
    R = AdditivePoly.from_ints(F3, [0, 1])
    assert scaling_order(R) == 4
    assert twisted_scaling_order(R, 2) == 2
    assert twisted_scaling_order(R, 1) == 4
    with pytest.raises(ValidationError):
        twisted_scaling_order(R, 3)


def test_pairing_e1_closed_form():
    F5 = field_create(5, 1)
    a0, a1 = F5.constant(2), F5.constant(3)
    T = pairing_poly(AdditivePoly(F5, [a0, a1]))
    assert T.terms[(0, 0)] == -(a0 + a0)
    assert T.terms[(0, 1)] == -a1
    assert set(T.terms) == {(0, 0), (0, 1)}


def test_pairing_zero_when_e0():
    F3 = field_create(3, 1)
    assert pairing_poly(AdditivePoly.from_ints(F3, [2])).is_zero()


def test_pairing_identity_exact():
    rng = random.Random(10)
    for p in (2, 3, 5):
        for n in (1, 2, 3):
            F = field_create(p, n)
            for _ in range(12):
                R = random_poly(F, 3, rng)
                if p == 2 and R.p_degree == 0:
                    continue
                assert pairing_identity_residual(R) == {}


def test_pairing_bilinear():
    rng = random.Random(12)
    F9 = field_create(3, 2)
    R = AdditivePoly(F9, [F9.one(), F9.gen()])
    for _ in range(20):
        x, y, z = (random_element(F9, rng) for _ in range(3))
        assert pairing_value(R, x + z, y) == pairing_value(R, x, y) + pairing_value(R, z, y)
        assert pairing_value(R, x, y + z) == pairing_value(R, x, y) + pairing_value(R, x, z)


def test_mu_scaling():
    F3 = field_create(3, 1)
    R = AdditivePoly.from_ints(F3, [0, 1])
    E = e_poly(R)
    assert mu_scaling(E, 1)
    assert mu_scaling(E, scaling_order(R))
    xp = AdditivePoly.from_ints(F3, [0, 1])
    assert not mu_scaling(xp, 4)
    # spot check by evaluation on a primitive 4th root
    F81 = field_create(3, 4)
    for z in roots_of_unity(F81, 4):
        Ez = E.embed_to(F81)
        for x in [F81.gen(), F81.gen() + 1]:
            assert evaluate(Ez, z * x) == z * evaluate(Ez, x)


def test_kernel_poly():
    F27 = field_create(3, 3)
    assert kernel_poly([F27.zero()]) == AdditivePoly.identity(F27)
    W = [F27.constant(c) for c in range(3)]
    assert kernel_poly(W) == AdditivePoly(F27, [F27.constant(-1), F27.one()])
    # the line through an eighth root of -1 gives x^3 - beta^2 x
    F81 = field_create(3, 4)
    beta = next(b for b in F81.elements() if not b.is_zero() and b ** 8 == -F81.one())
    line = [F81.zero(), beta, beta * 2]
    assert kernel_poly(line) == AdditivePoly(F81, [-(beta ** 2), F81.one()])
    with pytest.raises(ValidationError):
        kernel_poly([F27.zero(), F27.one()])  # not a subspace
    # kernel poly of a full kernel vanishes exactly on it, scaling-stable case
    F81 = field_create(3, 4)
    E = e_poly(AdditivePoly.from_ints(field_create(3, 1), [0, 1])).embed_to(F81)
    kb = kernel_basis(E, F81)
    span = {F81.zero()}
    for b in kb:
        span = {s + b * c for s in span for c in range(3)}
    f = kernel_poly(sorted(span, key=lambda x: x.coords))
    zeros = [x for x in F81.elements() if evaluate(f, x).is_zero()]
    assert set(zeros) == span
    # stable under x -> x^3 (base field F_3): coefficients rational over F_3
    assert is_rational_over(f, 1)
    # mu_d stable kernel gives scaling equivariance
    assert mu_scaling(f, 4)


def test_is_reduced_and_rationality():
    F3 = field_create(3, 1)
    xp = AdditivePoly.from_ints(F3, [0, 1])
    assert not is_reduced(xp)
    assert is_reduced(e_poly(xp))
    F9 = field_create(3, 2)
    f = AdditivePoly(F9, [F9.gen(), F9.one()])
    assert is_rational_over(f, 2)
    assert not is_rational_over(f, 1)


def test_splitting_degree():
    F3 = field_create(3, 1)
    E = e_poly(AdditivePoly.from_ints(F3, [0, 1]))
    assert splitting_degree(E) == 4  # kernel has order-16 elements: 16 | 3^4 - 1
    assert splitting_degree(AdditivePoly.from_ints(F3, [1])) == 1
    # frobenius right factors do not change the splitting field: f = g o x^p
    fr = AdditivePoly.from_ints(F3, [0, 1, 0, 1])
    assert splitting_degree(fr) == splitting_degree(AdditivePoly.from_ints(F3, [1, 0, 1]))


def test_skew_right_gcd():
    F3 = field_create(3, 1)
    E = e_poly(AdditivePoly.from_ints(F3, [0, 1]))
    frob4 = AdditivePoly(F3, [-F3.one()] + [F3.zero()] * 3 + [F3.one()])
    g = skew_right_gcd(frob4, E)
    # x^{3^4} - x contains the full kernel of E
    assert g.p_degree == 2


def test_is_prime():
    F3 = field_create(3, 1)
    F9 = field_create(3, 2)
    assert is_prime(AdditivePoly.from_ints(F3, [1, 0, 1]))
    assert not is_prime(AdditivePoly.from_ints(F9, [1, 0, 1]))
    assert not is_prime(AdditivePoly.from_ints(F3, [0, 0, 1]))  # x^{p^2}
    assert is_prime(AdditivePoly.from_ints(F3, [0, 1]))  # x^p is prime
    with pytest.raises(ValidationError):
        is_prime(AdditivePoly.from_ints(F3, [2]))


def test_coeff_transport():
    F3 = field_create(3, 1)
    E = e_poly(AdditivePoly.from_ints(F3, [0, 1]))
    cs = coeff_transport(E, 1)
    assert [c.coords[0] for c in cs] == [1, 0, 1]
    assert classical_is_irreducible(cs)
    assert is_reciprocal(cs)
    assert coeff_transport_inverse(cs, 1) == E
    assert coeff_transport(AdditivePoly.from_ints(F3, [0, 1]), 1) == [F3.zero(), F3.one()]
    with pytest.raises(ValidationError):
        coeff_transport(AdditivePoly.from_ints(F3, [1, 1]), 2)  # exponent shape


def test_transport_agrees_with_is_prime_and_reciprocal():
    # random R with d_R = p^t + 1 and f | t: transported E is reciprocal;
    # a reducible transport always certifies a decomposition, and for t = f
    # the equivalence is two-way (for t > f it can fail: factors may live
    # outside the p^t-power subring, e.g. x + x^81 over F_3)
    rng = random.Random(13)
    from wildinv.addpoly import scaling_order as d_of

    checked = both_ways = 0
    for p in (2, 3):
        F = field_create(p, 1)
        for _ in range(40):
            R = random_poly(F, 2, rng)
            if p == 2 and R.p_degree == 0:
                continue
            d = d_of(R)
            k, x = 0, d - 1
            while x % p == 0 and x > 0:
                x //= p
                k += 1
            if x != 1 or k < 1:
                continue
            E = e_poly(R)
            try:
                cs = coeff_transport(E, k)
            except ValidationError:
                continue
            assert is_reciprocal(cs)
            irr = classical_is_irreducible(cs)
            prime = is_prime(E)
            if not irr:
                assert not prime
            if k == F.n:
                assert irr == prime
                both_ways += 1
            checked += 1
    assert checked >= 5 and both_ways >= 3


def test_text_form_roundtrip():
    from wildinv.addpoly import format_additive_poly, parse_additive_poly_text

    F9 = field_create(3, 2)
    R = AdditivePoly(F9, [F9.gen(), F9.one()])
    s = format_additive_poly(R)
    assert s.startswith("q=3^2; coeffs=[")
    assert parse_additive_poly_text(s) == R
    with pytest.raises(ValidationError):
        parse_additive_poly_text("nonsense")


def test_transport_counterexample_beyond_base_degree():
    # the one-way-ness is real: x + x^81 over F_3 transports to the
    # irreducible y^2 + 1 yet decomposes through mixed p-power factors
    F3 = field_create(3, 1)
    E = e_poly(AdditivePoly.from_ints(F3, [0, 0, 1]))
    cs = coeff_transport(E, 2)
    assert classical_is_irreducible(cs)
    assert not is_prime(E)
    f2 = AdditivePoly.from_ints(F3, [2, 1, 1])
    f1 = AdditivePoly.from_ints(F3, [2, 2, 1])
    assert compose(f1, f2) == E
