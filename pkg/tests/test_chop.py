"""Composition series: strategies, certification, oracle agreement."""

import random

import pytest

from leibniz.fields import QQ, FF
from leibniz.algebra import make_A, make_N, make_S, make_e, make_sl2, sl2_module_matrices
from leibniz.bimodule import (
    BimoduleError,
    adjoint,
    antisymmetrize,
    conjugate,
    direct_sum,
    one_dim_bimodule,
    symmetrize,
    trivial_bimodule,
)
from leibniz.chop import (
    bruteforce_invariant_subspaces,
    chop,
    common_eigenvector,
    oracle_composition_factors,
)
from leibniz.linalg import Matrix
from leibniz.samples import random_full_bimodule, random_invertible
from leibniz.tensor import trunc_bar

F2, F3 = FF(2), FF(3)


def multiset(factors):
    return sorted((f.signature for f in factors), key=lambda s: repr(s))


class TestCommonEigenvector:
    def test_diagonal_family(self):
        mats = [Matrix.from_ints(QQ, [[1, 0], [0, 2]]), Matrix.from_ints(QQ, [[3, 0], [0, 3]])]
        v = common_eigenvector(mats, QQ, 2)
        assert v is not None
        for m in mats:
            image = m.apply(v)
            # image is proportional to v
            assert image[0] * v[1] == image[1] * v[0]

    def test_no_common_eigenvector(self):
        sl2 = make_sl2(QQ)
        mats = sl2_module_matrices(QQ, 1)
        assert common_eigenvector(mats, QQ, 2) is None


class TestChopExamples:
    def test_adjoint_of_solvable(self):
        rep = chop(adjoint(make_A(QQ)))
        assert rep.dims == [1, 1]
        assert rep.certified
        sigs = multiset(rep.factors)
        # one anti-symmetric weight-1 line and one trivial line
        kinds = sorted((f.anti_symmetric, f.trivial) for f in rep.factors)
        assert kinds == [(True, False), (True, True)]

    def test_one_dim_irreducible(self):
        rep = chop(symmetrize(make_e(QQ), [Matrix(QQ, [[4]])]))
        assert rep.dims == [1] and rep.certified

    def test_weak_input_never_certified(self):
        rep = chop(one_dim_bimodule(make_e(QQ), [0], [1]))
        assert rep.dims == [1]
        assert not rep.certified

    def test_certification_only_for_full_inputs(self):
        # random weak samples may happen to be full; certification must
        # track exactly that distinction
        from leibniz.samples import random_weak_bimodule

        rng = random.Random(31)
        for _ in range(25):
            alg = random.Random(rng.random()).choice([make_e(F3), make_A(F3)])
            mod = random_weak_bimodule(alg, rng.randint(1, 3), rng)
            rep = chop(mod)
            if rep.certified:
                assert mod.is_full()
            if not mod.is_full():
                assert not rep.certified

    def test_clebsch_gordan_square(self):
        sl2 = make_sl2(QQ)
        m = symmetrize(sl2, sl2_module_matrices(QQ, 1))
        rep = chop(trunc_bar(m, m))
        assert sorted(rep.dims) == [1, 3]
        assert rep.certified
        three = next(f for f in rep.factors if f.dim == 3)
        assert three.symmetric and not three.trivial
        one = next(f for f in rep.factors if f.dim == 1)
        assert one.trivial

    def test_mixed_direct_sum_over_sl2(self):
        sl2 = make_sl2(QQ)
        mats = sl2_module_matrices(QQ, 1)
        rep = chop(direct_sum(symmetrize(sl2, mats), antisymmetrize(sl2, mats)))
        kinds = sorted((f.dim, f.symmetric, f.anti_symmetric) for f in rep.factors)
        assert kinds == [(2, False, True), (2, True, False)]
        assert rep.certified

    def test_simple_adjoint(self):
        rep = chop(adjoint(make_S(QQ)))
        assert sorted(rep.dims) == [2, 3]
        assert rep.certified
        two = next(f for f in rep.factors if f.dim == 2)
        assert two.anti_symmetric
        three = next(f for f in rep.factors if f.dim == 3)
        assert three.symmetric

    def test_zero_dim(self):
        rep = chop(trivial_bimodule(make_A(QQ), 0))
        assert rep.factors == [] and rep.certified

    def test_seed_invariance_of_multiset(self):
        rng = random.Random(77)
        for _ in range(5):
            mod = random_full_bimodule(make_A(QQ), 3, rng)
            reports = [chop(mod, seed=s) for s in range(5)]
            base = multiset(reports[0].factors)
            assert all(multiset(r.factors) == base for r in reports[1:])

    def test_factor_dims_always_sum(self):
        rng = random.Random(78)
        for _ in range(10):
            mod = random_full_bimodule(make_e(F3), rng.randint(1, 3), rng)
            rep = chop(mod)
            assert sum(rep.dims) == mod.dim


class TestBruteforceOracle:
    def test_trivial_actions_dim2_f2(self):
        # all 5 subspaces of F_2^2 are invariant under zero actions
        mod = trivial_bimodule(make_e(F2), 2)
        assert len(bruteforce_invariant_subspaces(mod)) == 5

    def test_irreducible_line(self):
        mod = symmetrize(make_e(F3), [Matrix.from_ints(F3, [[2]])])
        spaces = bruteforce_invariant_subspaces(mod)
        assert sorted(s.dim for s in spaces) == [0, 1]

    def test_nilpotent_adjoint_contains_kernel_line(self):
        mod = adjoint(make_N(F3))
        spaces = bruteforce_invariant_subspaces(mod)
        from leibniz.linalg import rref_span

        assert any(s == rref_span([(0, 1)], 2, F3) for s in spaces)

    def test_bounds_enforced(self):
        with pytest.raises(BimoduleError):
            bruteforce_invariant_subspaces(trivial_bimodule(make_e(QQ), 2))
        with pytest.raises(BimoduleError):
            bruteforce_invariant_subspaces(trivial_bimodule(make_e(FF(11)), 2))
        with pytest.raises(BimoduleError):
            bruteforce_invariant_subspaces(trivial_bimodule(make_e(F2), 6))

    def test_chop_matches_oracle_on_seeded_family(self):
        rng = random.Random(101)
        algebras = [make_e(F3), make_A(F3)]
        for i in range(20):
            alg = algebras[i % 2]
            mod = random_full_bimodule(alg, rng.randint(1, 3), rng)
            rep = chop(mod)
            oracle = oracle_composition_factors(mod)
            assert multiset(rep.factors) == multiset(oracle), f"case {i}"
            assert rep.certified

    def test_chop_matches_oracle_on_hard_cases(self):
        # rotation matrix: charpoly t^2 + 1 has no root in F_3
        e3 = make_e(F3)
        irr2 = symmetrize(e3, [Matrix.from_ints(F3, [[0, 2], [1, 0]])])
        mod = conjugate(
            direct_sum(irr2, antisymmetrize(e3, [Matrix.from_ints(F3, [[1]])])),
            random_invertible(F3, 3, random.Random(5)),
        )
        rep = chop(mod)
        assert multiset(rep.factors) == multiset(oracle_composition_factors(mod))
        assert rep.certified
        assert sorted(rep.dims) == [1, 2]
