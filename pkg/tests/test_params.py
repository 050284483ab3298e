from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from affine_cells.kl import cell_preorder, kl_table
from affine_cells.ordered import WeightFunction
from affine_cells.params import (
    C_CLASSES,
    RationalHyperplane,
    arrangement_BFG,
    arrangement_C,
    check_specialization_gate,
    threshold_form_check,
    facet_of,
    fold,
    gamma_bound_ok,
    gamma_plus,
    in_close_pair_chamber,
    integer_point,
    order_from_claim,
    ratio_set,
    semicontinuity_check,
    specialize_table,
    tau_closure,
    theta_images,
    threshold,
)

from conftest import c2_weight

# constants chosen so that the only hyperplane between the facet (2,0,1) and the
# chamber weight (4,2,3) is t - t' = m5 s
M = (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 4), 1, Fraction(1, 4))
M5_ORBIT = {(1, -1, -1), (1, 1, -1), (1, -1, 1), (1, 1, 1)}


def class_words(part):
    return sorted(sorted(str(w) for w in c) for c in part.classes)


class TestArrangements:
    def test_bfg_counts(self):
        assert len(arrangement_BFG(1, 1)) == 4
        assert len(arrangement_BFG(1, 2)) == 6
        with pytest.raises(ValueError):
            arrangement_BFG(0, 1)

    def test_c_arrangement(self):
        assert len(arrangement_C([2, 3, 5, 7, 11, 13], closed=False)) == 11
        with pytest.raises(ValueError):
            arrangement_C([1] * 5)

    def test_tau_closure_is_closed(self):
        A = arrangement_C(M)
        assert tau_closure(A) == A
        for h in A:
            for i in range(3):
                n = list(h.normal)
                n[i] = -n[i]
                assert RationalHyperplane(tuple(n)) in A

    def test_normals_are_primitive(self):
        assert RationalHyperplane((2, -4, 0)).normal == (1, -2, 0)
        assert RationalHyperplane((Fraction(1, 2), 1, 0)).normal == (1, 2, 0)
        with pytest.raises(ValueError):
            RationalHyperplane((0, 0, 0))


class TestFacets:
    def test_zero_classes(self):
        A = arrangement_C(M)
        assert facet_of((1, 0, 1), A, C_CLASSES).zero_classes == {"s"}
        assert facet_of((0, 1, 0), A, C_CLASSES).zero_classes == {"t", "t'"}
        assert facet_of((4, 2, 3), A, C_CLASSES).is_chamber

    @given(st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9)), st.integers(1, 7))
    def test_rescaling_invariance(self, p, k):
        A = arrangement_C(M)
        assert facet_of(p, A, C_CLASSES) == facet_of(tuple(k * x for x in p), A, C_CLASSES)

    def test_negative_control_geometry(self):
        A = arrangement_C(M)
        facet, chamber = facet_of((2, 0, 1), A, C_CLASSES), facet_of((4, 2, 3), A, C_CLASSES)
        assert in_close_pair_chamber((4, 2, 3), M)
        assert not facet.in_closure_of(chamber)
        reduced = [h for h in A if h.normal not in M5_ORBIT]
        assert facet_of((2, 0, 1), reduced, C_CLASSES).in_closure_of(facet_of((4, 2, 3), reduced, C_CLASSES))

    def test_positive_case_geometry(self):
        A = arrangement_C(M)
        assert facet_of((1, 0, 1), A, C_CLASSES).in_closure_of(facet_of((1102, 11, 1101), A, C_CLASSES))

    def test_fold_and_integer_point(self):
        assert fold({"t": -2, "s": 1, "t'": 0}) == {"t": 2, "s": 1, "t'": 0}
        assert integer_point({"t": Fraction(1, 2), "s": Fraction(1, 3), "t'": 0}) == {"t": 3, "s": 2, "t'": 0}


class TestOrders:
    def test_ratio_set(self):
        assert ratio_set(1) == [-1, 1]
        assert len(ratio_set(3)) == 2 * len({Fraction(k, j) for j in range(1, 4) for k in range(1, 4)})

    def test_threshold(self):
        assert threshold(1, 11, 10) == 0
        assert threshold(5, 2, 10) == Fraction(5, 2)
        assert threshold(3, 0, 10) == 10

    @pytest.mark.parametrize("construction,vals,forms,kernel,plus", [
        ("t-dominant", {"t": 21, "s": 1, "t'": 1}, ((1, 0, 0), (0, 1, 1)), ((0, 1, -1),), {"t"}),
        ("t-dominant", {"t": 60, "s": 2, "t'": 3}, ((1, 0, 0), (0, 2, 3)), ((0, 3, -2),), {"t"}),
        ("s-dominant", {"t": 1, "s": 21, "t'": 1}, ((0, 1, 0), (1, 0, 1)), ((1, 0, -1),), {"s"}),
        ("t-pair-apart", {"t": 205, "s": 1, "t'": 101}, ((1, 0, 1), (1, 0, 0), (0, 1, 0)), (), {"t", "t'"}),
        ("t-pair-close", {"t": 101, "s": 1, "t'": 101}, ((1, 0, 1), (0, 1, 0)), ((1, 0, -1),), {"t", "t'"}),
        ("t-pair-close", {"t": 1102, "s": 11, "t'": 1101}, ((1, 0, 1), (0, 1, 0), (1, 0, -1)), (), {"t", "t'"}),
    ])
    def test_constructions(self, construction, vals, forms, kernel, plus):
        spec = order_from_claim(construction, vals, 10)
        assert spec.forms == forms
        assert set(spec.kernel_basis) == set(kernel)
        assert spec.plus == plus
        if construction != "t-pair-apart":
            assert threshold_form_check(construction, spec, vals, 10) == []

    def test_lex(self):
        spec = order_from_claim("lex", {"s": 21, "t": 1}, 10)
        assert spec.forms == ((1, 0), (0, 1)) and spec.plus == {"s"}
        spec = order_from_claim("lex", {"s": 1, "t": 21}, 10)
        assert spec.forms == ((0, 1), (1, 0)) and spec.plus == {"t"}

    @pytest.mark.parametrize("construction,vals", [
        ("lex", {"s": 2, "t": 1}),
        ("t-dominant", {"t": 20, "s": 1, "t'": 1}),
        ("s-dominant", {"t": 1, "s": 20, "t'": 1}),
        ("t-pair-apart", {"t": 102, "s": 1, "t'": 101}),
        ("t-pair-close", {"t": 100, "s": 1, "t'": 100}),
        ("nonsense", {"t": 1, "s": 1, "t'": 1}),
    ])
    def test_hypotheses_enforced(self, construction, vals):
        with pytest.raises(ValueError):
            order_from_claim(construction, vals, 10)


@pytest.fixture(scope="module")
def generic(C2):
    vals = {"t": 21, "s": 1, "t'": 1}
    L = WeightFunction.generic(C2, order_from_claim("t-dominant", vals, 10))
    return vals, kl_table(L, 6)


class TestSpecialisation:
    def test_gamma_plus(self, generic):
        _, tab = generic
        gp = gamma_plus(tab)
        assert gp.first and gamma_bound_ok(gp, 10)
        assert all(tab.algebra.sign(g) > 0 for g in gp.union())
        assert {tag for tag, _ in gp.tagged()} <= {"P", "M-gap", "M-relation"}

    def test_gamma_plus_grows_with_the_ball(self, C2, generic):
        vals, tab = generic
        small = kl_table(tab.weight, 4)
        assert gamma_plus(small).union() <= gamma_plus(tab).union()

    def test_gate_and_transport(self, C2, generic):
        vals, tab = generic
        target = WeightFunction.integer(C2, vals)
        images = theta_images(tab.weight, target)
        assert check_specialization_gate(target, gamma_plus(tab).union(), images, tab.weight.spec.kernel_basis)
        direct = kl_table(target, 6)
        assert specialize_table(tab, target).P == direct.P

    def test_gate_rejects_bad_targets(self, C2, generic):
        vals, tab = generic
        # t no longer dominates
        target = c2_weight(C2, 1, 1, 1)
        images = theta_images(tab.weight, target)
        assert not check_specialization_gate(target, gamma_plus(tab).union(), images, tab.weight.spec.kernel_basis)
        with pytest.raises(ValueError):
            specialize_table(tab, target)

    def test_kernel_must_be_killed(self, C2, generic):
        vals, tab = generic
        target = c2_weight(C2, 21, 2, 1)
        images = theta_images(tab.weight, target)
        assert not check_specialization_gate(target, [], images, tab.weight.spec.kernel_basis)


class TestCellsAcrossParameters:
    @pytest.mark.parametrize("a,b", [
        ((205, 1, 101), (305, 1, 151)),
        ((3, 1, 2), (5, 2, 3)),
        ((1, 1, 1), (2, 2, 2)),
    ])
    def test_same_region_same_partition(self, C2, a, b):
        pa = cell_preorder(kl_table(c2_weight(C2, *a), 7), "left")
        pb = cell_preorder(kl_table(c2_weight(C2, *b), 7), "left")
        assert class_words(pa) == class_words(pb)

    def test_semicontinuity_trivial(self, C2):
        L = c2_weight(C2, 2, 1, 1)
        rep = semicontinuity_check(L, L, 8)
        assert rep["ok"] and len(rep["pieces"]) == 8

    def test_semicontinuity_requires_closure(self, C2):
        with pytest.raises(ValueError):
            semicontinuity_check(c2_weight(C2, 2, 0, 1), c2_weight(C2, 4, 2, 3), 4, arrangement=arrangement_C(M))
