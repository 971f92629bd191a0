import numpy as np
import pytest

from wildinv.addpoly import AdditivePoly, compose
from wildinv.errors import ValidationError
from wildinv.ff import field_create
from wildinv.linalg import mat_pow, rank
from wildinv.sympmod import (
    all_stable_submodules,
    anisotropic_of,
    build,
    build_pair,
    completely_anisotropic,
    cyclic_submodule,
    decomposition_witness,
    direct_sum,
    minimal_imprimitive_unramified_degree,
    omega,
    perp,
    restrict_frobenius,
)


@pytest.fixture(scope="module")
def m_q9():
    F9 = field_create(3, 2)
    R = AdditivePoly(F9, [F9.zero(), F9.one()])
    return build(R, 1)


def test_zero_module_for_e0():
    F3 = field_create(3, 1)
    M = build(AdditivePoly.from_ints(F3, [1]), 1)
    assert M.zero_module()
    ok, wit = completely_anisotropic(M)
    assert ok and wit is None


def test_build_q9(m_q9):
    M = m_q9
    assert M.dim == 2 and M.d == 4
    assert rank(M.gram, 3) == 2
    # gram consistent with pointwise pairing on all basis pairs
    for i, bi in enumerate(M.basis):
        for j, bj in enumerate(M.basis):
            assert omega(M, bi, bj) == M.gram[i, j]
            assert omega(M, bi, bj) == (-omega(M, bj, bi)) % 3
        assert omega(M, bi, bi) == 0


def test_actions_preserve_gram(m_q9):
    from wildinv.linalg import mat_inv

    M = m_q9
    p = M.p
    assert ((M.T.T @ M.gram @ M.T) % p == M.gram).all()
    assert ((M.S.T @ M.gram @ M.S) % p == M.gram).all()
    q = M.context.base.order
    assert ((M.S @ M.T @ mat_inv(M.S, p)) % p == mat_pow(M.T, q, p)).all()


def test_splitting_found_automatically_for_q3():
    # q = 3, R = x^3: kernel not inside F_3; the working field grows to fit
    F3 = field_create(3, 1)
    M = build(AdditivePoly.from_ints(F3, [0, 1]), 1)
    assert M.dim == 2
    assert M.ambient.n == 4


def test_anisotropy_examples(m_q9):
    ok, wit = completely_anisotropic(m_q9)
    assert ok and wit is None
    F9 = field_create(3, 2)
    R = AdditivePoly(F9, [F9.zero(), F9.one()])
    M2 = build(R, 2)
    ok2, wit2 = completely_anisotropic(M2)
    assert not ok2
    assert wit2.dim == 1 and wit2.isotropic and wit2.t_stable and wit2.s_stable
    F3 = field_create(3, 1)
    M3 = build(AdditivePoly.from_ints(F3, [0, 1]), 1)
    assert completely_anisotropic(M3)[0]


def test_decomposition_route(m_q9):
    # prime E gives none
    assert decomposition_witness(m_q9.context.R, 1, module=m_q9) is None
    F9 = field_create(3, 2)
    R = AdditivePoly(F9, [F9.zero(), F9.one()])
    M2 = build(R, 2)
    out = decomposition_witness(R, 2, module=M2)
    assert out is not None
    f1, f2, sub = out
    assert compose(f1, f2) == M2.context.E_amb
    assert f2.p_degree == sub.dim == 1


def test_route_equivalence_small_sweep():
    # executable decomposition criterion: both routes agree for all nonzero R
    # over F_3 with e = 1 and several m
    F3 = field_create(3, 1)
    for a0 in range(3):
        for a1 in range(1, 3):
            R = AdditivePoly.from_ints(F3, [a0, a1])
            for m in (1, 2, 4):
                M = build(R, m)
                anis, _ = completely_anisotropic(M)
                dec = decomposition_witness(R, m, module=M)
                assert anis == (dec is None)


def test_exhaustive_oracle_agreement():
    # full sweep of e = 1 over F_3 with every valid m, plus q = 9 cases and
    # one e = 2 sample: lattice walk and cyclic scan must always agree
    F3 = field_create(3, 1)
    F9 = field_create(3, 2)
    mods = []
    for a0 in range(3):
        for a1 in range(1, 3):
            for m in (1, 2, 4):
                mods.append(build(AdditivePoly.from_ints(F3, [a0, a1]), m))
    mods.append(build(AdditivePoly(F9, [F9.zero(), F9.one()]), 1))
    mods.append(build(AdditivePoly(F9, [F9.zero(), F9.one()]), 2))
    mods.append(build(AdditivePoly.from_ints(F3, [0, 0, 1]), 5))
    for M in mods:
        subs = all_stable_submodules(M)
        oracle = any(s.isotropic for s in subs)
        cyc_ok, wit = completely_anisotropic(M)
        assert oracle == (not cyc_ok)
        if wit is not None:
            # the reported witness is minimal against the full lattice
            best = min(s.dim for s in subs if s.isotropic)
            assert wit.dim == best


def test_perp(m_q9):
    M = m_q9
    full = M.submodule(np.eye(M.dim, dtype=np.int64))
    assert perp(M, full).dim == 0
    zero = M.submodule(np.zeros((0, M.dim), dtype=np.int64))
    assert perp(M, zero).dim == M.dim
    line = cyclic_submodule(M, [1, 0])
    pp = perp(M, line)
    assert pp.dim + line.dim == M.dim
    assert perp(M, pp).signature() == line.signature()


def test_direct_sum_with_zero_is_original(m_q9):
    F3 = field_create(3, 1)
    Z = build(AdditivePoly.from_ints(F3, [1]), 1)
    # give the zero summand a compatible scaling order by twisting m
    # (d = 2 for e = 0); instead check shape-level behaviour with equal d
    M2 = build(AdditivePoly(field_create(3, 2), [field_create(3, 2).zero(), field_create(3, 2).one()]), 2)
    Z2 = build(AdditivePoly.from_ints(F3, [1]), 1)
    assert Z2.d == 2 == M2.d
    DS = direct_sum(M2, Z2)
    assert DS.dim == M2.dim
    assert anisotropic_of(DS) == anisotropic_of(M2)


def test_legendre_configuration():
    # e = f = 1 pairs: anisotropy of the sum tracks the Legendre symbol of -a
    for p in (3, 5):
        Fp = field_create(p, 1)
        m2 = {3: 5, 5: 7}[p]
        for a in range(1, p):
            R1 = AdditivePoly.from_ints(Fp, [0, 1])
            R2 = AdditivePoly.from_ints(Fp, [0, a])
            A, B = build_pair(R1, 1, R2, m2)
            assert A.d == B.d == p + 1
            DS = direct_sum(A, B)
            expect = pow(-a % p, (p - 1) // 2, p) == p - 1
            assert anisotropic_of(DS) == expect


def test_restrict_frobenius_identity(m_q9):
    M1 = restrict_frobenius(m_q9, 1)
    assert (M1.S == m_q9.S).all() and anisotropic_of(M1) == anisotropic_of(m_q9)


def test_minimal_unramified_degree():
    F3 = field_create(3, 1)
    M = build(AdditivePoly.from_ints(F3, [0, 1]), 2)  # d = 2, primitive
    assert completely_anisotropic(M)[0]
    t = minimal_imprimitive_unramified_degree(M)
    assert t == 2
    assert not anisotropic_of(restrict_frobenius(M, t))
    # already failing module reports 1
    F9 = field_create(3, 2)
    M2 = build(AdditivePoly(F9, [F9.zero(), F9.one()]), 2)
    assert not completely_anisotropic(M2)[0]
    assert minimal_imprimitive_unramified_degree(M2) == 1
    with pytest.raises(ValidationError):
        minimal_imprimitive_unramified_degree(build(AdditivePoly(F9, [F9.zero(), F9.one()]), 1))


def test_ambient_guard():
    # x^9 + x^27 over F_3 needs a degree-30 working field: past the 2^40 guard
    from wildinv.errors import AmbientGuardError

    F3 = field_create(3, 1)
    R = AdditivePoly.from_ints(F3, [0, 0, 1, 1])
    with pytest.raises(AmbientGuardError):
        build(R, 1)


def test_p2_known_isotropic_subspace():
    # x^2 + x^8 over F_4: the constant subfield sits isotropically inside the
    # kernel space, so the verdict is imprimitive with a dim-2 witness
    # (scaling order 3 rules out stable lines)
    from wildinv.addpoly import evaluate
    from wildinv.ff import embed

    F4 = field_create(2, 2)
    R = AdditivePoly(F4, [F4.zero(), F4.one(), F4.zero(), F4.one()])
    M = build(R, 1)
    assert M.dim == 6 and M.d == 3
    ok, wit = completely_anisotropic(M)
    assert not ok and wit.dim == 2
    amb = M.ambient
    f4 = [embed(x, amb) for x in F4.elements()]
    for x in f4:
        assert evaluate(M.context.E_amb, x).is_zero()
    rows = np.array([M.coords(x) for x in f4 if not x.is_zero()], dtype=np.int64)
    sub = M.submodule(rows)
    assert sub.dim == 2 and sub.isotropic and sub.t_stable and sub.s_stable


def test_canonical_generator_choice_is_immaterial():
    # different generators of the scaling group give the same verdict
    F9 = field_create(3, 2)
    R = AdditivePoly(F9, [F9.zero(), F9.one()])
    M = build(R, 1)
    from wildinv.ff import element_order
    from wildinv.sympmod import Submodule, _action_matrix

    ctx = M.context
    others = [z for z in ctx.mu if element_order(z) == ctx.d_Rm and z != ctx.alpha]
    for z in others:
        T2 = _action_matrix(ctx, lambda x: z * x)

        class Twin:
            p = M.p
            dim = M.dim
            gram = M.gram
            T = T2
            S = M.S

            def zero_module(self):
                return False

            def submodule(self, rows):
                return Submodule(self, rows)

        assert anisotropic_of(Twin()) == anisotropic_of(M)
