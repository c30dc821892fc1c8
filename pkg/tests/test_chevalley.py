"""Chevalley basis, centralizer dimensions and rigidity budgets.

Structure constants are cross-checked three ways: against root-string
lengths (|N| = p+1), against the Jacobi identity (exhaustive on the small
algebras, a large seeded sample on E8), and against invariance of the
bilinear form.  The budget numbers themselves were computed once with this
code, cross-checked against the closed-form identities d0 + dinf = #Phi,
d1 = rank, and frozen below.
"""

import random

import pytest

from excmono.affine_k import kappa_character
from excmono.chevalley import (
    ChevalleyAlgebra,
    MonodromyBudget,
    _jordan_type,
    _natural_so_matrix,
    build_algebra,
    kappa_fixed_dim,
    quadruple_dim_survey,
    quasiminuscule_dims,
    regular_nilpotent_centralizer,
    rigidity_budget,
    v_class_centralizer,
)
from excmono.rootsys import root_system

ALL_TYPES = ["A1", "G2", "D4", "D6", "D8", "E7", "E8"]

# label -> (algebra dim, regular centralizer, v-class centralizer)
DIMS = {
    "A1": (3, 1, None),
    "G2": (14, 2, 6),
    "D4": (28, 4, 12),
    "D6": (66, 6, 30),
    "D8": (120, 8, 56),
    "E7": (133, 7, 63),
    "E8": (248, 8, 120),
}

BUDGETS = {
    "G2": (6, 2, 6),
    "D4": (12, 4, 12),
    "D6": (30, 6, 30),
    "D8": (56, 8, 56),
    "E7": (63, 7, 63),
    "E8": (120, 8, 120),
}


def _zero(alg):
    return tuple([0] * alg.rank)


def _sum_vec(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


# --------------------------------------------------------------- dimensions

@pytest.mark.parametrize("label", ALL_TYPES)
def test_algebra_dimension(label):
    alg = build_algebra(label)
    assert alg.dim == DIMS[label][0]
    assert alg.dim == alg.rank + len(alg.roots)


@pytest.mark.parametrize("label", ["B3", "C4", "F4", "D5", "A3", "D2"])
def test_unsupported_types_rejected(label):
    with pytest.raises(ValueError):
        build_algebra(label)


def test_g2_algebra_uses_the_dual_root_system():
    alg = build_algebra("G2")
    # simple roots of the algebra pair like the transposed Cartan matrix
    g_side = root_system("G2")
    assert alg.rs.cartan == [[g_side.cartan[j][i] for j in range(2)]
                             for i in range(2)]


# ------------------------------------------------------ structure constants

def _n_matches_string(alg, a, b):
    s = _sum_vec(a, b)
    if s == _zero(alg) or s not in alg.root_set:
        return True
    n = alg.structure_constant(a, b)
    p = alg._string_p(b, a)
    return abs(n) == p + 1


@pytest.mark.parametrize("label", ["A1", "G2", "D4"])
def test_magnitude_is_string_length_exhaustive(label):
    alg = build_algebra(label)
    for a in alg.roots:
        for b in alg.roots:
            assert _n_matches_string(alg, a, b), (a, b)


def test_magnitude_is_string_length_sampled_e8():
    alg = build_algebra("E8")
    rng = random.Random(88)
    for _ in range(3000):
        a, b = rng.choice(alg.roots), rng.choice(alg.roots)
        assert _n_matches_string(alg, a, b), (a, b)


@pytest.mark.parametrize("label", ["G2", "D4"])
def test_antisymmetry_and_negation_exhaustive(label):
    alg = build_algebra(label)
    for a in alg.roots:
        for b in alg.roots:
            s = _sum_vec(a, b)
            if s == _zero(alg) or s not in alg.root_set:
                continue
            n = alg.structure_constant(a, b)
            assert alg.structure_constant(b, a) == -n
            assert alg.structure_constant(_neg(a), _neg(b)) == -n


@pytest.mark.parametrize("label", ["G2", "D6"])
def test_triple_sum_zero_identity(label):
    # a + b + c = 0  =>  N(a,b) (c-vee,c-vee) = N(b,c) (a-vee,a-vee)
    alg = build_algebra(label)
    rs = alg.rs

    def cn(a):
        return rs.coroot_norm(rs.coroot_of[a])

    for a in alg.roots:
        for b in alg.roots:
            s = _sum_vec(a, b)
            if s == _zero(alg) or s not in alg.root_set:
                continue
            c = _neg(s)
            lhs = alg.structure_constant(a, b) * cn(c)
            rhs = alg.structure_constant(b, c) * cn(a)
            assert lhs == rhs, (a, b)


def _jacobi_defect(alg, i, j, k):
    x, y, z = {i: 1}, {j: 1}, {k: 1}
    total = alg.bracket(alg.bracket(x, y), z)
    for key, c in alg.bracket(alg.bracket(y, z), x).items():
        total[key] = total.get(key, 0) + c
    for key, c in alg.bracket(alg.bracket(z, x), y).items():
        total[key] = total.get(key, 0) + c
    return {key: c for key, c in total.items() if c}


@pytest.mark.parametrize("label", ["A1", "G2"])
def test_jacobi_exhaustive(label):
    alg = build_algebra(label)
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k in range(alg.dim):
                assert not _jacobi_defect(alg, i, j, k), (i, j, k)


def test_jacobi_sampled_e8():
    alg = build_algebra("E8")
    rng = random.Random(248)
    for _ in range(10000):
        i, j, k = (rng.randrange(alg.dim) for _ in range(3))
        assert not _jacobi_defect(alg, i, j, k), (i, j, k)


def test_bracket_of_opposite_root_vectors_is_the_coroot():
    alg = build_algebra("G2")
    for a in alg.roots:
        got = alg.bracket({alg.index[a]: 1}, {alg.index[_neg(a)]: 1})
        want = {i: c for i, c in enumerate(alg.rs.coroot_of[a]) if c}
        assert got == want


# ------------------------------------------------------------ bilinear form

@pytest.mark.parametrize("label", ["G2"])
def test_form_invariance_exhaustive(label):
    alg = build_algebra(label)
    for i in range(alg.dim):
        for j in range(alg.dim):
            xj = alg.bracket({i: 1}, {j: 1})
            for k in range(alg.dim):
                lhs = sum(c * alg.invariant_form(t, k) for t, c in xj.items())
                xk = alg.bracket({i: 1}, {k: 1})
                rhs = sum(c * alg.invariant_form(j, t) for t, c in xk.items())
                assert lhs + rhs == 0, (i, j, k)


def test_form_invariance_sampled_e7():
    alg = build_algebra("E7")
    rng = random.Random(133)
    for _ in range(4000):
        i, j, k = (rng.randrange(alg.dim) for _ in range(3))
        xj = alg.bracket({i: 1}, {j: 1})
        lhs = sum(c * alg.invariant_form(t, k) for t, c in xj.items())
        xk = alg.bracket({i: 1}, {k: 1})
        rhs = sum(c * alg.invariant_form(j, t) for t, c in xk.items())
        assert lhs + rhs == 0, (i, j, k)


def test_form_is_nondegenerate_on_g2():
    from excmono.linalg import integer_rank

    alg = build_algebra("G2")
    gram = [[alg.invariant_form(i, j) for j in range(alg.dim)]
            for i in range(alg.dim)]
    assert integer_rank(gram) == alg.dim


# ----------------------------------------------------- centralizer numbers

@pytest.mark.parametrize("label", ALL_TYPES)
def test_regular_nilpotent_centralizer(label):
    alg = build_algebra(label)
    assert regular_nilpotent_centralizer(alg) == DIMS[label][1] == alg.rank


@pytest.mark.parametrize("label", ALL_TYPES)
def test_kappa_fixed_dim_is_half_the_roots(label):
    alg = build_algebra(label)
    kappa = kappa_character(root_system(label))
    assert kappa_fixed_dim(alg, kappa) == len(alg.roots) // 2


@pytest.mark.parametrize("label", [t for t in ALL_TYPES if t != "A1"])
def test_v_class_centralizer(label):
    alg = build_algebra(label)
    w = v_class_centralizer(alg)
    assert w.centralizer_dim == DIMS[label][2] == len(alg.roots) // 2
    # v is nilpotent but neither zero nor regular
    assert w.root_combination
    assert w.centralizer_dim > alg.rank


def test_v_class_witnesses_are_orthogonal_in_e_types():
    for label in ("E7", "E8"):
        alg = build_algebra(label)
        w = v_class_centralizer(alg)
        rs = alg.rs
        quad = w.root_combination
        assert len(quad) == 4
        assert list(quad) == sorted(quad, key=lambda a: (sum(a), a))
        for i in range(4):
            for j in range(i + 1, 4):
                assert rs.coroot_dot(rs.coroot_of[quad[i]],
                                     rs.coroot_of[quad[j]]) == 0


def test_quadruple_survey_sees_two_values():
    # not every orthogonal quadruple lands in the same class: a minority
    # give a strictly larger centralizer (67 in E7, 134 in E8)
    assert quadruple_dim_survey(build_algebra("E7"), 60) == {63: 48, 67: 12}
    assert quadruple_dim_survey(build_algebra("E8"), 25) == {120: 23, 134: 2}


# --------------------------------------------------- natural representation

def test_natural_so_matrix_is_skew_adjoint():
    for m in (4, 6, 8):
        pairs = [(1, -2), (1, 2)] + [(i + 1, -(i + 2))
                                     for i in range(2, m - 1, 2)]
        mat = _natural_so_matrix(m, pairs)
        n = 2 * m
        for i in range(n):
            for j in range(n):
                # A^T J + J A = 0 with J the antidiagonal identity
                assert mat[j][i] + mat[n - 1 - i][n - 1 - j] == 0


def test_jordan_type_oracle():
    # block diagonal J3 + J2 + J1, conjugated by a unimodular matrix
    base = [[0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0],
            [0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0]]
    assert _jordan_type(base) == (3, 2, 1)
    from excmono.linalg import mat_mul

    upper = [[1, 2, 0, 0, 1, 0],
             [0, 1, 3, 0, 0, 0],
             [0, 0, 1, 0, 2, 1],
             [0, 0, 0, 1, 0, 4],
             [0, 0, 0, 0, 1, 0],
             [0, 0, 0, 0, 0, 1]]
    lower = [[1, 0, 0, 0, 0, 0],
             [2, 1, 0, 0, 0, 0],
             [0, 1, 1, 0, 0, 0],
             [3, 0, 0, 1, 0, 0],
             [0, 0, 2, 0, 1, 0],
             [1, 0, 0, 0, 1, 1]]
    p = mat_mul(upper, lower)

    # p has determinant 1; conjugation preserves the Jordan type
    pinv = _inverse_unimodular(p)
    conj = mat_mul(mat_mul(p, base), pinv)
    assert _jordan_type(conj) == (3, 2, 1)


def _inverse_unimodular(p):
    from fractions import Fraction

    n = len(p)
    aug = [[Fraction(p[i][j]) for j in range(n)]
           + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = [[x for x in row[n:]] for row in aug]
    assert all(x.denominator == 1 for row in out for x in row)
    return [[int(x) for x in row] for row in out]


def test_d_type_jordan_partitions():
    for label, m in (("D4", 4), ("D6", 6), ("D8", 8)):
        w = v_class_centralizer(build_algebra(label))
        assert f"(3, {'2, ' * (m - 2)}1)" in w.description.replace("  ", " ")


# ----------------------------------------------------------------- budgets

@pytest.mark.parametrize("label", list(BUDGETS))
def test_rigidity_budget(label):
    b = rigidity_budget(label)
    assert (b.d0, b.d1, b.dinf) == BUDGETS[label]
    assert b.phi_count == root_system(label).num_roots
    assert b.h1_dim == 0
    assert b.identity_holds()
    assert b.d0 + b.dinf == b.phi_count
    assert b.d0 + b.d1 + b.dinf == build_algebra(label).dim


def test_budget_is_a_frozen_record():
    b = rigidity_budget("G2")
    assert isinstance(b, MonodromyBudget)
    with pytest.raises(AttributeError):
        b.d0 = 0


# ---------------------------------------------------------- quasiminuscule

QM = {"G2": (7, 6), "E7": (133, 34), "E8": (248, 58)}


@pytest.mark.parametrize("label", list(QM))
def test_quasiminuscule_dims(label):
    rs = root_system(label)
    qm, y, heis = quasiminuscule_dims(label)
    assert (qm, y) == QM[label]
    # closed form: #Phi minus the strictly negative pairings against the
    # highest coroot, which number 2 h-vee - 3
    assert heis == rs.num_roots - (2 * rs.dual_coxeter_number() - 3)
    theta_vee = rs.highest_root()[1]
    assert heis == sum(1 for b in rs.roots if rs.pair(b, theta_vee) >= 0)


def test_quasiminuscule_rejects_others():
    with pytest.raises(ValueError):
        quasiminuscule_dims("D4")


# ------------------------------------------------------ principal grading

@pytest.mark.parametrize("label,h", [("G2", 6), ("D4", 6), ("E7", 18)])
def test_principal_grading_and_power_bijections(label, h):
    alg = build_algebra(label)
    assert root_system(label).coxeter_number() == h
    _check_hard_lefschetz(alg, h)


def test_principal_grading_e8():
    alg = build_algebra("E8")
    _check_hard_lefschetz(alg, 30)


def _check_hard_lefschetz(alg, h):
    from excmono.linalg import integer_rank

    grade = {}
    for a in alg.roots:
        grade.setdefault(sum(a), []).append(alg.index[a])
    grade.setdefault(0, []).extend(range(alg.rank))
    assert len(grade[h - 1]) == len(grade[1 - h]) == 1
    e = alg.regular_nilpotent()
    for n in range(1, h):
        lo, hi = grade[-n], grade[n]
        assert len(lo) == len(hi)
        cols = []
        for idx in lo:
            vec = {idx: 1}
            for _ in range(2 * n):
                vec = alg.bracket(e, vec)
            cols.append(vec)
        # image lives entirely in degree +n
        hi_set = set(hi)
        for vec in cols:
            assert set(vec) <= hi_set
        rows = [[vec.get(idx, 0) for vec in cols] for idx in hi]
        assert integer_rank(rows) == len(lo), n
