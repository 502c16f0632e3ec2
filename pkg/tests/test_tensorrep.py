import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from thoma_lab import perm, tensorrep, thoma
from thoma_lab.errors import CapExceededError
from thoma_lab.tensorrep import TensorOperator

UNIFORM2 = thoma.validate(alpha=["1/2", "1/2"])
ASYM = thoma.validate(alpha=["2/3", "1/3"])
MIXED = thoma.validate(alpha=["1/2"], beta=["1/2"])
THREE = thoma.validate(alpha=["1/3", "1/3"], beta=["1/3"])
GROUPED = thoma.validate(alpha=["1/2", "1/4", "1/4"])
BATTERY = (UNIFORM2, ASYM, MIXED, THREE)


def brute_sign(s, x):
    # Direct transcription of the definition, as the oracle.
    count = 0
    for k in range(len(x)):
        for l in range(k + 1, len(x)):
            if x[k] < 0 and x[l] < 0 and s.act(k) > s.act(l):
                count += 1
    return (-1) ** count


def test_index_set_layout():
    space = tensorrep.index_set(THREE)
    assert space.points == (-1, 1, 2)
    assert space.density[-1] == Fraction(1, 3)
    assert sum(space.density.values()) == 1
    with pytest.raises(ValueError):
        tensorrep.index_set(thoma.validate(alpha=["1/2"], gamma="1/2"))


def test_sign_factor_examples():
    swap = perm.transposition(2, 0, 1)
    assert tensorrep.sign_factor(perm.identity(2), (-1, -1)) == 1
    assert tensorrep.sign_factor(swap, (-1, -1)) == -1
    assert tensorrep.sign_factor(swap, (1, -1)) == 1


@settings(deadline=None)
@given(
    st.integers(min_value=1, max_value=5).flatmap(
        lambda n: st.tuples(
            st.permutations(range(n)).map(lambda w: perm.Permutation(tuple(w))),
            st.lists(st.sampled_from([-2, -1, 1, 2]), min_size=n, max_size=n).map(tuple),
        )
    )
)
def test_sign_factor_matches_brute_force(case):
    s, x = case
    assert tensorrep.sign_factor(s, x) == brute_sign(s, x)


def test_represent_identity_and_point_masses():
    space = tensorrep.index_set(UNIFORM2)
    one = TensorOperator.identity(space.points, 3)
    assert tensorrep.represent(UNIFORM2, perm.identity(3), 3) == one

    # A single positive point: everything represents as the identity.
    pos = thoma.validate(alpha=[1])
    for s in perm.enumerate_group(3):
        got = tensorrep.represent(pos, s, 3)
        assert got == TensorOperator.identity((1,), 3)

    # A single negative point: the sign representation.
    neg = thoma.validate(beta=[1])
    for s in perm.enumerate_group(3):
        got = tensorrep.represent(neg, s, 3)
        assert got == s.sign() * TensorOperator.identity((-1,), 3)


def test_represent_multiplicative_and_unitary_exhaustive():
    for kappa in BATTERY:
        space = tensorrep.index_set(kappa)
        for n in (2, 3, 4):
            one = TensorOperator.identity(space.points, n)
            group = list(perm.enumerate_group(n))
            reps = {s: tensorrep.represent(kappa, s, n) for s in group}
            for s in group:
                assert reps[s].adjoint() @ reps[s] == one
                for t in group:
                    assert reps[perm.compose(s, t)] == reps[s] @ reps[t]


def test_represent_multiplicative_randomized_degrees_five_and_six():
    rng = random.Random(7)
    for kappa in (MIXED, THREE):
        for n in (5, 6):
            group = list(perm.enumerate_group(n))
            for _ in range(8):
                s, t = rng.choice(group), rng.choice(group)
                lhs = tensorrep.represent(kappa, perm.compose(s, t), n)
                rhs = tensorrep.represent(kappa, s, n) @ tensorrep.represent(kappa, t, n)
                assert lhs == rhs


def test_represent_dimension_cap():
    with pytest.raises(CapExceededError):
        tensorrep.represent(UNIFORM2, perm.identity(2), 21)


def test_state_pullback_examples():
    assert tensorrep.state_value(UNIFORM2, TensorOperator.identity((1, 2), 2)) == 1
    swap = tensorrep.represent(UNIFORM2, perm.transposition(2, 0, 1), 2)
    assert tensorrep.state_value(UNIFORM2, swap) == Fraction(1, 2)
    cycle = tensorrep.represent(UNIFORM2, perm.from_cycles([(0, 1, 2)]), 3)
    assert tensorrep.state_value(UNIFORM2, cycle) == Fraction(1, 4)


def test_state_pullback_exhaustive_degree_five():
    for kappa in BATTERY:
        for s in perm.enumerate_group(5):
            got = tensorrep.state_value(kappa, tensorrep.represent(kappa, s, 5))
            assert got == thoma.character(kappa, s.cycle_type())


def test_limit_operator_entries():
    limit = tensorrep.limit_commutant_operator(ASYM, 1)
    assert limit.entries == {((1,), (1,)): Fraction(2, 3), ((2,), (2,)): Fraction(1, 3)}
    limit_mixed = tensorrep.limit_commutant_operator(MIXED, 1)
    assert limit_mixed.entries[((-1,), (-1,))] == Fraction(-1, 2)


def test_stage_average_deviation_closed_form():
    for kappa in BATTERY:
        m3 = sum(a ** 3 for a in kappa.alpha) + sum(b ** 3 for b in kappa.beta)
        for k in (3, 4, 5):
            _, dev = tensorrep.relcomm_expectation_matrix(kappa, k, k)
            assert dev == (1 - m3) / (k - 1)
    _, dev6 = tensorrep.relcomm_expectation_matrix(UNIFORM2, 6, 6)
    assert dev6 == Fraction(3, 20)


def test_stage_average_uniform_limit_is_scalar():
    limit = tensorrep.limit_commutant_operator(UNIFORM2, 2)
    assert limit == Fraction(1, 2) * TensorOperator.identity((1, 2), 2)


def test_slice_expectation_basics():
    one = TensorOperator.identity((1, 2), 3)
    assert tensorrep.slice_expectation(ASYM, one) == one
    for t in perm.enumerate_group(3, fixing=1):
        rep_t = tensorrep.represent(ASYM, t, 3)
        assert tensorrep.slice_expectation(ASYM, rep_t) == rep_t


def test_slice_expectation_idempotent():
    for kappa in (ASYM, MIXED):
        for s in perm.enumerate_group(3):
            once = tensorrep.slice_expectation(kappa, tensorrep.represent(kappa, s, 3))
            assert tensorrep.slice_expectation(kappa, once) == once


def test_slice_of_swap_is_shifted_diagonal():
    got = tensorrep.slice_expectation(ASYM, tensorrep.represent(ASYM, perm.transposition(2, 0, 1), 2))
    expected = {
        ((a, b), (a, b)): ASYM.alpha[b - 1] for a in (1, 2) for b in (1, 2)
    }
    assert got == TensorOperator(2, (1, 2), expected)


def test_slice_membership_residual_uniform_rows_and_columns():
    for kappa in (UNIFORM2, thoma.validate(beta=["1/2", "1/2"])):
        for n in (2, 3, 4):
            assert tensorrep.slice_membership_residual(kappa, n) <= 1e-10


def test_slice_membership_fails_away_from_uniform():
    # The sliced transposition is a non-scalar diagonal; no finite stabilizer
    # stage spans it, so the residual must stay visibly positive.
    assert tensorrep.slice_membership_residual(ASYM, 3) > 1e-3


def test_slice_factorization_all_parameters():
    for kappa in BATTERY + (GROUPED,):
        for n in (2, 3, 4):
            assert tensorrep.slice_factorization_holds(kappa, n)


def test_spectral_blocks_grouping():
    blocks = tensorrep.spectral_blocks(GROUPED)
    assert [(b.label, b.points, b.value) for b in blocks] == [
        (1, (1,), Fraction(1, 2)),
        (2, (2, 3), Fraction(1, 4)),
    ]
    blocks = tensorrep.spectral_blocks(THREE)
    assert [(b.label, b.points) for b in blocks] == [(1, (1, 2)), (-1, (-1,))]


def test_minimal_projection_suite_uniform_single_block():
    report = tensorrep.minimal_projection_suite(UNIFORM2, 3)
    assert len(report.blocks) == 1
    space = tensorrep.index_set(UNIFORM2)
    assert tensorrep.block_projection(
        report.blocks[0], space.points, 3
    ) == TensorOperator.identity(space.points, 3)
    assert report.all_ok


def test_minimal_projection_suite_two_blocks():
    report = tensorrep.minimal_projection_suite(ASYM, 3)
    assert [b.points for b in report.blocks] == [(1,), (2,)]
    assert report.partition_ok and report.commutation_ok and report.psi_all_exact


def test_compressed_scalar_example():
    block = tensorrep.spectral_blocks(ASYM)[0]
    got = tensorrep.compressed_slice_scalar(ASYM, perm.from_cycles([(0, 1)]), block)
    assert got == Fraction(2, 3)


def test_compressed_scalar_matches_matrix_battery():
    for kappa in BATTERY + (GROUPED,):
        for n in (2, 3, 4):
            report = tensorrep.minimal_projection_suite(kappa, n)
            assert report.all_ok
            assert report.psi_max_deviation <= 1e-10


def test_jones_projection_relations():
    for alpha1 in (Fraction(3, 5), Fraction(2, 3)):
        chain, report = tensorrep.jones_projections(alpha1, 4)
        assert len(chain) == 4
        assert report.delta == alpha1 * (1 - alpha1)
        assert report.passes(1e-12)


def test_jones_braid_value_three_fifths():
    chain, report = tensorrep.jones_projections(Fraction(3, 5), 2)
    p1, p2 = chain
    assert (p1 @ p2 @ p1 - float(Fraction(6, 25)) * p1).max_abs() <= 1e-12


def test_jones_far_commutation_is_exact():
    chain, report = tensorrep.jones_projections(Fraction(9, 10), 4)
    assert chain[0].commutator(chain[2]).is_zero()
    assert report.far_commutation_dev == 0.0


def test_jones_rejects_bad_weight():
    with pytest.raises(ValueError):
        tensorrep.jones_projections(Fraction(1, 2), 3)
    with pytest.raises(ValueError):
        tensorrep.jones_projections(Fraction(7, 6), 3)


def test_index_bound_values():
    got = tensorrep.pimsner_popa_bound(UNIFORM2)
    assert (got.finite, got.constant, got.index_bound) == (True, Fraction(1, 8), 8)
    assert tensorrep.pimsner_popa_bound(ASYM).constant == Fraction(1, 12)
    assert not tensorrep.pimsner_popa_bound(thoma.validate(gamma=1)).finite
    assert not tensorrep.pimsner_popa_bound(
        thoma.validate(alpha=["1/2"], gamma="1/2")
    ).finite


def test_slice_dominates_scaled_positive_operators():
    # E(y) - C y must stay positive semidefinite for positive y.
    space = tensorrep.index_set(UNIFORM2)
    constant = float(tensorrep.pimsner_popa_bound(UNIFORM2).constant)
    rng = np.random.default_rng(0)
    dim = space.size ** 2
    for _ in range(10):
        square_root = rng.standard_normal((dim, dim))
        y = TensorOperator.from_dense(square_root.T @ square_root, space.points, 2)
        sliced = tensorrep.slice_expectation(UNIFORM2, y)
        gap = (sliced - constant * y).to_dense()
        assert np.linalg.eigvalsh((gap + gap.T) / 2).min() >= -1e-10


def test_operator_export_round_trip():
    op = tensorrep.represent(MIXED, perm.transposition(2, 0, 1), 2)
    dense = op.to_dense()
    again = TensorOperator.from_dense(dense, op.points, op.degree)
    assert np.array_equal(again.to_dense(), dense)


def test_operator_coordinate_text_round_trip():
    for op in (
        tensorrep.represent(MIXED, perm.from_cycles([(0, 1, 2)]), 3),
        tensorrep.limit_commutant_operator(THREE, 2),
    ):
        again = TensorOperator.from_coordinate_text(op.to_coordinate_text())
        assert again == op
    text = tensorrep.limit_commutant_operator(MIXED, 1).to_coordinate_text()
    assert text.splitlines()[0] == "degree 1 points -1 1"
    assert "-1 -1 -1/2" in text
