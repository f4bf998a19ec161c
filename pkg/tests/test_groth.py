"""Fusion rules, identity checkers, criterion scan, module reconciliation."""

import pytest

from leibniz.fields import QQ
from leibniz.algebra import canonical_lie, make_A, make_e, make_sl2, sl2_module_matrices
from leibniz.bimodule import antisymmetrize, adjoint, one_dim_bimodule, symmetrize, trivial_bimodule
from leibniz.groth import (
    ClassRegistry,
    GrElement,
    GrothError,
    Label,
    UNIT,
    cg_base,
    class_of_bimodule,
    clebsch_gordan,
    criterion_scan,
    gr_mul,
    group_base,
    identity_checkers,
    integer_base,
    parse_element,
    sl2_rule,
    star_product,
    verify_ring_vs_modules,
    weight_rule,
)
from leibniz.linalg import Matrix
from leibniz.tensor import trunc_bar


def S(tag):
    return Label("sym", tag)


def A(tag):
    return Label("anti", tag)


def wtag(*vals):
    return tuple(QQ.from_int(v) for v in vals)


WR = weight_rule(QQ, 1)
SR = sl2_rule()


def wmul(a, b):
    return gr_mul(WR, GrElement.of(a), GrElement.of(b))


def smul(x, y):
    if isinstance(x, Label):
        x = GrElement.of(x)
    if isinstance(y, Label):
        y = GrElement.of(y)
    return gr_mul(SR, x, y)


class TestClebschGordan:
    def test_one_one(self):
        assert clebsch_gordan(1, 1) == [2, 0]

    def test_with_trivial(self):
        assert clebsch_gordan(3, 0) == [3]

    def test_count_and_range(self):
        for m in range(5):
            for n in range(5):
                ws = clebsch_gordan(m, n)
                assert len(ws) == min(m, n) + 1
                assert ws[0] == m + n and ws[-1] == abs(m - n)

    def test_negative_rejected(self):
        with pytest.raises(GrothError):
            clebsch_gordan(-1, 2)


class TestWeightRule:
    def test_unit_laws(self):
        a = S(wtag(1))
        assert wmul(UNIT, a) == GrElement.of(a)
        assert wmul(a, UNIT) == GrElement.of(a)

    def test_weights_add_with_unit_folding(self):
        assert wmul(S(wtag(1)), S(wtag(2))) == GrElement.of(S(wtag(3)))
        assert wmul(S(wtag(1)), S(wtag(-1))) == GrElement.of(UNIT)
        assert wmul(A(wtag(2)), A(wtag(-2))) == GrElement.of(UNIT)

    def test_cross_side_vanishes(self):
        assert wmul(S(wtag(1)), A(wtag(1))).is_zero()
        assert wmul(A(wtag(-2)), S(wtag(1))).is_zero()

    def test_the_associativity_counterexample(self):
        u, v, w = (GrElement.of(l) for l in (S(wtag(1)), S(wtag(-1)), A(wtag(1))))
        lhs = gr_mul(WR, gr_mul(WR, u, v), w)
        rhs = gr_mul(WR, u, gr_mul(WR, v, w))
        assert lhs == GrElement.of(A(wtag(1)))
        assert rhs.is_zero()

    def test_scaled_bilinearity(self):
        two_s1 = GrElement.of(S(wtag(1)), 2)
        assert gr_mul(WR, two_s1, GrElement.of(S(wtag(1)))) == GrElement.of(
            S(wtag(2)), 2
        )

    def test_zero_weight_space_is_integers(self):
        r0 = weight_rule(QQ, 0)
        assert r0.window(2) == [UNIT]
        assert gr_mul(r0, GrElement.of(UNIT, 3), GrElement.of(UNIT, 5)) == GrElement.of(
            UNIT, 15
        )

    def test_foreign_label_rejected(self):
        with pytest.raises(GrothError):
            WR.mul_labels(S(1), S(2))  # sl2-style integer tags


class TestSl2Rule:
    def test_fusion_of_naturals(self):
        assert smul(S(1), S(1)) == GrElement.of(S(2)) + GrElement.of(UNIT)

    def test_cross_vanishes(self):
        assert smul(S(1), A(1)).is_zero()

    def test_documented_jordan_witness(self):
        a, b = GrElement.of(S(1)), GrElement.of(A(1))
        asq = smul(a, a)
        lhs = smul(smul(asq, b), b)
        rhs = smul(asq, smul(b, b))
        assert lhs == GrElement.of(A(2)) + GrElement.of(UNIT)
        assert rhs == GrElement.of(S(2)) + GrElement.of(A(2)) + GrElement.of(UNIT)

    def test_documented_power_witness(self):
        x = GrElement.of(S(1)) + GrElement.of(A(1))
        x2 = smul(x, x)
        lhs = smul(x2, x2)
        rhs = smul(smul(x2, x), x)
        expected_lhs = (
            GrElement.of(S(4))
            + GrElement.of(A(4))
            + GrElement.of(S(2), 5)
            + GrElement.of(A(2), 5)
            + GrElement.of(UNIT, 6)
        )
        expected_rhs = (
            GrElement.of(S(4))
            + GrElement.of(A(4))
            + GrElement.of(S(2), 4)
            + GrElement.of(A(2), 4)
            + GrElement.of(UNIT, 6)
        )
        assert lhs == expected_lhs
        assert rhs == expected_rhs


class TestIdentityCheckers:
    def test_commutative_everywhere(self):
        for rule, window in ((WR, WR.window(2)), (SR, SR.window(4))):
            out = identity_checkers(rule, window, trials=100, seed=0)
            assert out["commutative"].holds

    def test_weight_identities_on_single_labels(self):
        # on pairs of plain labels the alternative and jordan laws do hold
        window = WR.window(2)
        singles = [GrElement.of(l) for l in window]
        for u in singles:
            for v in singles:
                uu = gr_mul(WR, u, u)
                assert gr_mul(WR, uu, v) == gr_mul(WR, u, gr_mul(WR, u, v))
                lhs = gr_mul(WR, gr_mul(WR, uu, v), u)
                rhs = gr_mul(WR, uu, gr_mul(WR, v, u))
                assert lhs == rhs

    def test_weight_identities_fail_on_combinations(self):
        # combinations hitting inverse weight pairs break the alternative
        # law through the shared unit; the checker must find this
        out = identity_checkers(WR, WR.window(2), trials=200, seed=0)
        assert not out["associative"].holds
        assert not out["alternative"].holds
        assert not out["jordan"].holds
        assert not out["power_associative"].holds
        wit = out["alternative"].counterexample
        u, v = wit["elements"]
        uu = gr_mul(WR, u, u)
        assert gr_mul(WR, uu, v) != gr_mul(WR, u, gr_mul(WR, u, v))

    def test_sl2_all_four_fail_with_witnesses(self):
        out = identity_checkers(SR, SR.window(4), trials=200, seed=0)
        for name in ("associative", "alternative", "jordan", "power_associative"):
            assert not out[name].holds
            wit = out[name].counterexample
            assert wit["lhs"] != wit["rhs"]

    def test_deterministic_given_seed(self):
        a = identity_checkers(SR, SR.window(3), trials=50, seed=7)
        b = identity_checkers(SR, SR.window(3), trials=50, seed=7)
        assert {k: v.holds for k, v in a.items()} == {
            k: v.holds for k, v in b.items()
        }
        assert (
            a["jordan"].counterexample["elements"]
            == b["jordan"].counterexample["elements"]
        )

    def test_empty_window_rejected(self):
        with pytest.raises(GrothError):
            identity_checkers(WR, [], trials=0, seed=0)


class TestCriterionScan:
    def test_weight_fires_associative_only(self):
        findings = criterion_scan(WR, WR.window(1))
        props = {f["property"] for f in findings}
        assert "associative" in props
        assert "jordan" not in props
        assert all(f["confirmed"] for f in findings)

    def test_sl2_fires_alternative_and_jordan(self):
        findings = criterion_scan(SR, SR.window(4))
        props = {f["property"] for f in findings}
        assert {"alternative", "jordan"} <= props
        assert all(f["confirmed"] for f in findings)

    def test_sl2_jordan_replay_matches_documented_values(self):
        findings = criterion_scan(SR, SR.window(4))
        jordan = next(f for f in findings if f["property"] == "jordan")
        assert jordan["lhs"] == GrElement.of(A(2)) + GrElement.of(UNIT)
        assert jordan["rhs"] == (
            GrElement.of(S(2)) + GrElement.of(A(2)) + GrElement.of(UNIT)
        )


class TestStarProduct:
    def test_smallest_example_is_the_integers(self):
        zz = star_product(integer_base(), integer_base())
        assert zz.window(5) == [UNIT]
        assert gr_mul(zz, GrElement.of(UNIT, 2), GrElement.of(UNIT, 3)) == GrElement.of(
            UNIT, 6
        )

    def test_cross_products_vanish_and_unit_neutral(self):
        rule = star_product(group_base(QQ, 1), cg_base())
        a = Label("sym", wtag(2))
        b = Label("anti", 3)
        assert rule.mul_labels(a, b).is_zero()
        assert rule.mul_labels(UNIT, b) == GrElement.of(b)

    def test_agrees_with_weight_rule(self):
        for k in (1, 2):
            star = star_product(group_base(QQ, k), group_base(QQ, k))
            direct = weight_rule(QQ, k)
            window = direct.window(1)
            for x in window:
                for y in window:
                    assert star.mul(x, y) == direct.mul(x, y)

    def test_agrees_with_sl2_rule(self):
        star = star_product(cg_base(), cg_base())
        window = SR.window(4)
        for x in window:
            for y in window:
                assert star.mul(x, y) == SR.mul(x, y)


class TestClasses:
    def test_adjoint_of_solvable(self):
        alg = make_A(QQ)
        reg = ClassRegistry("weight", alg)
        cls = class_of_bimodule(adjoint(alg), reg)
        assert cls == GrElement.of(A(wtag(1))) + GrElement.of(UNIT)

    def test_trivial_multiplicity(self):
        alg = make_e(QQ)
        reg = ClassRegistry("weight", alg)
        assert class_of_bimodule(trivial_bimodule(alg, 3), reg) == GrElement.of(UNIT, 3)

    def test_clebsch_gordan_class(self):
        sl2 = make_sl2(QQ)
        reg = ClassRegistry("sl2", sl2)
        m = symmetrize(sl2, sl2_module_matrices(QQ, 1))
        cls = class_of_bimodule(trunc_bar(m, m), reg)
        assert cls == GrElement.of(S(2)) + GrElement.of(UNIT)

    def test_uncertified_refused(self):
        alg = make_e(QQ)
        weak = one_dim_bimodule(alg, [0], [1])
        with pytest.raises(GrothError):
            class_of_bimodule(weak, ClassRegistry("weight", alg))

    def test_registry_rule_from_lie_quotient_identical(self):
        # the rule depends only on the quotient data: building it for the
        # solvable algebra and for its 1-dim abelian quotient agree
        alg = make_A(QQ)
        quot, _ = canonical_lie(alg)
        r1 = ClassRegistry("weight", alg).rule()
        r2 = ClassRegistry("weight", quot).rule()
        w = r1.window(2)
        assert r2.window(2) == w
        for x in w:
            for y in w:
                assert r1.mul(x, y) == r2.mul(x, y)

    def test_verify_ring_vs_modules_one_dim(self):
        alg = make_e(QQ)
        reg = ClassRegistry("weight", alg)
        rule = reg.rule()
        line = lambda s, anti: (antisymmetrize if anti else symmetrize)(
            alg, [Matrix(QQ, [[s]])]
        )
        pairs = [
            (line(1, False), line(-1, False)),
            (line(1, False), line(1, True)),
            (line(2, True), line(1, True)),
        ]
        out = verify_ring_vs_modules(rule, reg, pairs)
        assert out["ok"]

    def test_verify_ring_vs_modules_sl2(self):
        sl2 = make_sl2(QQ)
        reg = ClassRegistry("sl2", sl2)
        rule = reg.rule()
        ms = lambda n: symmetrize(sl2, sl2_module_matrices(QQ, n))
        ma = lambda n: antisymmetrize(sl2, sl2_module_matrices(QQ, n))
        pairs = [(ms(1), ms(1)), (ms(1), ma(1)), (ma(1), ma(2)), (ms(2), ms(1))]
        out = verify_ring_vs_modules(rule, reg, pairs)
        assert out["ok"]


class TestParsing:
    def test_sl2_expressions(self):
        e = parse_element(SR, "2*S(1)+A(1)-U")
        assert e == (
            GrElement.of(S(1), 2) + GrElement.of(A(1)) + GrElement.of(UNIT, -1)
        )

    def test_weight_expressions_with_rationals(self):
        e = parse_element(WR, "S(1/2)-3*A(-1)", QQ)
        assert e.terms[Label("sym", (QQ.parse("1/2"),))] == 1
        assert e.terms[Label("anti", (QQ.parse("-1"),))] == -3

    def test_zero_tag_folds_to_unit(self):
        assert parse_element(SR, "S(0)") == GrElement.of(UNIT)
        assert parse_element(WR, "A(0)", QQ) == GrElement.of(UNIT)

    def test_bad_terms_rejected(self):
        with pytest.raises(GrothError):
            parse_element(SR, "S(1,2)")
        with pytest.raises(GrothError):
            parse_element(SR, "Q(1)")
