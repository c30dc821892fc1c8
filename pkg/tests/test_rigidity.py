import itertools
from fractions import Fraction

import pytest

from excmono.rigidity import (
    ConjClass,
    FiniteGroup,
    MatrixRep,
    PermRep,
    enumerate_group,
    predicted_triple,
    pgl2_group,
    psl2_group,
    triple_count,
)

S4_GENS = [(1, 0, 2, 3), (1, 2, 3, 0)]


def perm_mul(a, b):
    return tuple(a[b[i]] for i in range(len(a)))


def brute_class_count(group):
    """Independent class count: full-orbit conjugation, no generators."""
    elems = group.elements
    inv = {g: group.inv(g) for g in elems}
    assigned = set()
    count = 0
    for g in elems:
        if g in assigned:
            continue
        orbit = {group.mul(x, group.mul(g, inv[x])) for x in elems}
        assigned |= orbit
        count += 1
    return count


# ------------------------------------------------------------ enumeration

def test_s4_order_via_itertools_oracle():
    oracle = set(itertools.permutations(range(4)))
    g = enumerate_group(S4_GENS)
    assert g.order == 24
    assert set(g.elements) == oracle


def test_s4_five_classes():
    g = enumerate_group(S4_GENS)
    assert len(g.classes) == 5
    assert sorted(c.size for c in g.classes) == [1, 3, 6, 6, 8]
    assert brute_class_count(g) == 5


def test_s4_class_labels_are_order_letter():
    g = enumerate_group(S4_GENS)
    labels = {c.label for c in g.classes}
    assert labels == {"1A", "2A", "2B", "3A", "4A"}


def test_sl2_f5_order():
    rep = MatrixRep(5, 2)
    g = FiniteGroup(rep, [(1, 1, 0, 1), (0, 4, 1, 0)])
    assert g.order == 5 * (5 * 5 - 1) == 120
    assert len(g.center) == 2
    assert len(g.classes) == brute_class_count(g) == 9


def test_cap_overflow_is_explicit():
    with pytest.raises(OverflowError, match="cap of 10"):
        enumerate_group(S4_GENS, cap=10)


def test_enumeration_is_deterministic():
    a = enumerate_group(S4_GENS)
    b = enumerate_group(S4_GENS)
    assert a.elements == b.elements
    assert [c.label for c in a.classes] == [c.label for c in b.classes]
    assert [c.members for c in a.classes] == [c.members for c in b.classes]


def test_identity_is_first_element():
    g = enumerate_group(S4_GENS)
    assert g.elements[0] == (0, 1, 2, 3)
    assert g.classes[0].label == "1A" and g.classes[0].size == 1


# ----------------------------------------------------- element arithmetic

def test_perm_rep_ops():
    rep = PermRep(4)
    a, b = (1, 0, 2, 3), (1, 2, 3, 0)
    assert rep.mul(a, rep.inv(a)) == rep.identity
    assert rep.mul(a, b) == tuple(a[b[i]] for i in range(4))
    assert rep.invariant((1, 2, 0, 3)) == (1, 3)


def test_matrix_rep_inverse_roundtrip():
    rep = MatrixRep(7, 2)
    mats = [(1, 1, 0, 1), (2, 3, 1, 2), (0, 6, 1, 0), (3, 1, 5, 2)]
    for m in mats:
        assert rep.mul(m, rep.inv(m)) == rep.identity


def test_matrix_rep_rejects_singular():
    rep = MatrixRep(5, 2)
    with pytest.raises(ValueError, match="not invertible"):
        rep.inv((1, 2, 2, 4))


def test_matrix_rep_rejects_composite_modulus():
    with pytest.raises(ValueError, match="not prime"):
        MatrixRep(6, 2)


def test_projective_canonical_form_kills_scalars():
    rep = MatrixRep(5, 2, scalars=range(1, 5))
    m = rep.canon((2, 4, 0, 2))
    for s in range(1, 5):
        assert rep.canon(tuple(s * x % 5 for x in (2, 4, 0, 2))) == m


def test_projective_invariant_is_conjugation_stable():
    g = pgl2_group(5)
    for cls in g.classes:
        vals = {g.rep.invariant(x) for x in cls.members}
        assert len(vals) == 1


def test_element_order():
    g = enumerate_group(S4_GENS)
    assert g.element_order((0, 1, 2, 3)) == 1
    assert g.element_order((1, 0, 2, 3)) == 2
    assert g.element_order((1, 2, 3, 0)) == 4


# ----------------------------------------------------- class-equation law

@pytest.mark.parametrize("build", [
    lambda: enumerate_group(S4_GENS),
    lambda: psl2_group(7),
    lambda: pgl2_group(5),
])
def test_class_sizes_partition_group(build):
    g = build()
    assert sum(c.size for c in g.classes) == g.order
    for c in g.classes:
        assert g.order % c.size == 0
        cent = sum(1 for x in g.elements
                   if g.mul(x, c.rep) == g.mul(c.rep, x))
        assert c.size * cent == g.order


def test_class_by_label_unknown():
    g = enumerate_group(S4_GENS)
    with pytest.raises(ValueError, match="no class 9Z"):
        g.class_by_label("9Z")


# --------------------------------------------------------- named groups

def test_psl2_f7_order_and_classes():
    g = psl2_group(7)
    assert g.order == 168
    assert len(g.center) == 1
    assert sorted(c.size for c in g.classes) == [1, 21, 24, 24, 42, 56]


def test_pgl2_f5_is_s5_shaped():
    g = pgl2_group(5)
    assert g.order == 120
    assert len(g.center) == 1
    assert sorted(c.size for c in g.classes) == [1, 10, 15, 20, 20, 24, 30]


def test_pgl2_rejects_bad_ell():
    for bad in (2, 4, 9):
        with pytest.raises(ValueError, match="odd prime"):
            pgl2_group(bad)


# ------------------------------------------------------------ triples

def hurwitz_setup():
    g = psl2_group(7)
    return (g, g.class_by_label("2A"), g.class_by_label("3A"),
            g.class_by_label("7A"))


def test_hurwitz_triple_is_strictly_rigid():
    g, c2, c3, c7 = hurwitz_setup()
    r = triple_count(g, c2, c3, c7)
    assert r.solution_count == 168
    assert r.normalized_count == Fraction(1)
    assert r.generates and r.all_generate and r.strictly_rigid


def test_hurwitz_other_seventh_class_matches():
    g = psl2_group(7)
    r = triple_count(g, g.class_by_label("2A"), g.class_by_label("3A"),
                     g.class_by_label("7B"))
    assert r.solution_count == 168 and r.strictly_rigid


def test_count_invariant_under_representative_change():
    g, c2, c3, c7 = hurwitz_setup()
    base = triple_count(g, c2, c3, c7)
    for alt in c2.members[1:6]:
        r = triple_count(g, c2, c3, c7, g0=alt)
        assert r.solution_count == base.solution_count
        assert r.strictly_rigid == base.strictly_rigid


def test_solution_count_naive_oracle_on_s4():
    # independent full triple enumeration on a small group
    g = enumerate_group(S4_GENS)
    c2 = g.class_by_label("2A")
    c3 = g.class_by_label("3A")
    c4 = g.class_by_label("4A")
    naive = sum(1 for a in c2.members for b in c3.members
                for c in c4.members
                if perm_mul(perm_mul(a, b), c) == g.rep.identity)
    r = triple_count(g, c2, c3, c4)
    assert r.solution_count == naive == 24
    assert r.normalized_count == Fraction(1)
    assert r.strictly_rigid  # (2,3,4) transposition triple generates S4


def test_triple_rejects_foreign_class():
    g, c2, c3, c7 = hurwitz_setup()
    other = enumerate_group(S4_GENS).class_by_label("2A")
    with pytest.raises(ValueError, match="does not belong"):
        triple_count(g, other, c3, c7)


def test_triple_rejects_bad_base_point():
    g, c2, c3, c7 = hurwitz_setup()
    with pytest.raises(ValueError, match="not in C0"):
        triple_count(g, c2, c3, c7, g0=c3.rep)


def test_empty_triple_reports_zero():
    g = enumerate_group(S4_GENS)
    c4 = g.class_by_label("4A")
    c2b = g.class_by_label("2B")
    r = triple_count(g, c4, c4, c2b)
    if r.solution_count == 0:
        assert r.normalized_count == 0
        assert not r.generates and not r.strictly_rigid


def test_singleton_classes_in_cyclic_group():
    # every class of C5 is a singleton; a closing triple has exactly one
    # solution and is vacuously rigid by the normalized-count test
    g = enumerate_group([(1, 2, 3, 4, 0)])
    assert g.order == 5 and len(g.classes) == 5
    assert all(c.size == 1 for c in g.classes)
    a, b = g.classes[1], g.classes[2]
    target = g.classes[g.class_of[g.inv(g.mul(a.rep, b.rep))]]
    r = triple_count(g, a, b, target)
    assert r.solution_count == 1
    assert r.normalized_count == Fraction(1)
    assert r.generates  # any nonidentity element generates C5
    wrong = g.classes[1 if target is not g.classes[1] else 3]
    if wrong is not target:
        r0 = triple_count(g, a, b, wrong)
        assert r0.solution_count == 0 and not r0.strictly_rigid


# ----------------------------------------------------------- toy fixture

def test_predicted_triple_pgl2_f5_frozen():
    r = predicted_triple("pgl2", 5)
    assert r.group_order == 120 and r.center_order == 1
    assert r.class_sizes == (15, 24, 24)
    assert r.solution_count == 120
    assert r.normalized_count == Fraction(1)
    # solutions exist but all land inside the PSL2 subgroup
    assert not r.generates and not r.strictly_rigid
    assert "toy fixture" in r.note


def test_predicted_triple_empty_when_minus_one_not_square():
    # tr(g0 g1)^2 = -4 must be solvable, so ell = 3 mod 4 gives nothing
    for ell in (3, 7):
        r = predicted_triple("pgl2", ell)
        assert r.solution_count == 0
        assert not r.strictly_rigid


def test_predicted_triple_unsupported_instances():
    for kind, ell in [("g2", 3), ("pgl2", 4), ("pgl2", 17),
                      ("psl3", 5)]:
        with pytest.raises(ValueError, match="supported: pgl2"):
            predicted_triple(kind, ell)


def test_predicted_triple_unipotent_class_size():
    r = predicted_triple("pgl2", 7)
    assert r.class_sizes[1] == 7 * 7 - 1
    assert r.class_labels[1] == r.class_labels[2]


def test_report_json_shape():
    r = predicted_triple("pgl2", 5)
    d = r.json_dict()
    assert d["solution_count"] == 120
    assert d["normalized_count"] == [1, 1]
    assert d["classes"][1] == d["classes"][2]
    assert isinstance(d["strictly_rigid"], bool)
