"""Acceptance suite: every stated closed-form value and bound at desk scale.

Each test prints one PASS/FAIL line (visible with ``pytest -s``); tolerances
are pinned where a computation is floating point, and everything rational is
compared exactly.
"""
import math
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
from oracles import entropy_by_regular_bimodule

from thoma_lab import entropy, groupalg, perm, tensorrep, thoma, young
from thoma_lab.groupalg import delta
from thoma_lab.tensorrep import TensorOperator

UNIFORM2 = thoma.validate(alpha=["1/2", "1/2"])
UNIFORM2_COLUMNS = thoma.validate(beta=["1/2", "1/2"])
ASYM = thoma.validate(alpha=["2/3", "1/3"])
MIXED = thoma.validate(alpha=["1/2"], beta=["1/2"])
THREE = thoma.validate(alpha=["1/3", "1/3"], beta=["1/3"])
GROUPED = thoma.validate(alpha=["1/2", "1/4", "1/4"])
REGULAR = thoma.validate(gamma=1)
TENSOR_BATTERY = (UNIFORM2, ASYM, MIXED, THREE)

T01 = perm.from_cycles([(0, 1)])


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"{name}: FAIL")
        raise
    print(f"{name}: PASS")


def test_trace_pullback_on_degree_six():
    with criterion("state pullback equals character on all of S_6"):
        start = time.monotonic()
        for kappa in TENSOR_BATTERY:
            for s in perm.enumerate_group(6):
                value = tensorrep.state_value(kappa, tensorrep.represent(kappa, s, 6))
                assert value == thoma.character(kappa, s.cycle_type())
        assert time.monotonic() - start < 120


def test_stage_expectation_of_transposition():
    with criterion("stage expectation of (0,1) averages the point transpositions"):
        for n in range(3, 8):
            got = groupalg.cond_exp_relcomm_Tk(delta(T01), n)
            expected = Fraction(1, n - 1) * sum(
                (delta(perm.from_cycles([(0, j)])) for j in range(2, n)),
                delta(T01),
            )
            assert got == expected


def test_stage_expectation_norm_identity():
    with criterion("squared norm of the stage expectation matches the closed form"):
        for kappa in TENSOR_BATTERY + (REGULAR, GROUPED):
            tau3 = thoma.character(kappa, (3,))
            for n in range(3, 7):
                avg = groupalg.cond_exp_relcomm_Tk(delta(T01), n)
                assert groupalg.two_norm_sq(kappa, avg) == (1 + (n - 2) * tau3) / (n - 1)
        avg4 = groupalg.cond_exp_relcomm_Tk(delta(T01), 4)
        assert groupalg.two_norm_sq(UNIFORM2, avg4) == Fraction(1, 2)


def test_irreducible_forms_match_moment_identity():
    with criterion("listed parameter forms coincide with the cubic moment identity"):
        battery = thoma.standard_battery()
        assert len(battery) >= 50
        for kappa in battery:
            got = thoma.classify_irreducible(kappa)
            assert got.moment_identity_holds == got.irreducible


def test_stage_average_deviation_rate():
    with criterion("stage averages approach the limit diagonal at rate (1-m3)/(k-1)"):
        for kappa in TENSOR_BATTERY:
            m3 = sum(a ** 3 for a in kappa.alpha) + sum(b ** 3 for b in kappa.beta)
            for k in range(3, 8):
                _, deviation_sq = tensorrep.relcomm_expectation_matrix(kappa, k, k)
                assert deviation_sq == (1 - m3) / (k - 1)
        _, at_six = tensorrep.relcomm_expectation_matrix(UNIFORM2, 6, 6)
        assert at_six == Fraction(3, 20)


def test_slice_membership_and_block_scalars():
    with criterion("sliced elements stay in the stabilizer span (uniform cases)"):
        for kappa in (UNIFORM2, UNIFORM2_COLUMNS):
            for n in (2, 3, 4):
                assert tensorrep.slice_membership_residual(kappa, n) <= 1e-10
    with criterion("slice factors exactly through the double-coset decomposition"):
        for kappa in TENSOR_BATTERY:
            for n in (2, 3, 4):
                assert tensorrep.slice_factorization_holds(kappa, n)
    with criterion("block projections commute and compressed scalars match"):
        for kappa in TENSOR_BATTERY + (GROUPED,):
            assert tensorrep.index_set(kappa).size <= 3
            for n in (2, 3, 4, 5):
                report = tensorrep.minimal_projection_suite(kappa, n)
                assert report.partition_ok and report.commutation_ok
                assert report.psi_max_deviation <= 1e-10


def test_temperley_lieb_relations():
    with criterion("projection chain satisfies the Temperley-Lieb relations"):
        for alpha1 in (Fraction(3, 5), Fraction(2, 3), Fraction(9, 10)):
            chain, report = tensorrep.jones_projections(alpha1, 4)
            assert report.delta == alpha1 * (1 - alpha1)
            assert report.idempotent_dev <= 1e-12
            assert report.braid_dev <= 1e-12
            assert report.far_commutation_dev <= 1e-12
            for p in chain:
                assert (p @ p - p).max_abs() <= 1e-12


def test_block_weight_normalization_and_support():
    with criterion("block weights are a probability vector with two-row support"):
        for kappa in TENSOR_BATTERY + (REGULAR,):
            for n in range(1, 9):
                weights = groupalg.block_weights(kappa, n).weights
                assert sum(weights.values()) == 1
                assert all(w >= 0 for w in weights.values())
        for n in range(1, 9):
            for diagram, w in groupalg.block_weights(UNIFORM2, n).weights.items():
                assert (w == 0) == (len(diagram) > 2)
        two_box = groupalg.block_weights(UNIFORM2, 2).weights
        assert two_box[(2,)] == Fraction(3, 4) and two_box[(1, 1)] == Fraction(1, 4)


def test_small_projection_search_regular_trace():
    with criterion("staircase search finds the ten-box block of tiny trace"):
        start = time.monotonic()
        found = groupalg.find_small_projection(REGULAR, Fraction(1, 2))
        assert found is not None
        assert found.degree == 10 and found.diagram == (4, 3, 2, 1)
        assert found.trace == Fraction(768, 3628800)
        assert found.trace < Fraction(1, 2) ** 10
        assert time.monotonic() - start < 10
        assert groupalg.find_small_projection(UNIFORM2, Fraction(1, 2)) is None


def test_staircase_bound_decay():
    with criterion("staircase bound falls below 1 then below 1e-6"):
        assert young.triangle_bound_exact(4, 7) < 1
        assert young.triangle_bound_exact(4, 9) < Fraction(1, 10 ** 6)


def test_index_bound_and_operator_inequality():
    with criterion("index constant 1/8 and slice domination on positive operators"):
        bound = tensorrep.pimsner_popa_bound(UNIFORM2)
        assert bound.constant == Fraction(1, 8) and bound.index_bound == 8
        space = tensorrep.index_set(UNIFORM2)
        constant = float(bound.constant)
        rng = np.random.default_rng(2024)
        dim = space.size ** 2
        for _ in range(100):
            square_root = rng.standard_normal((dim, dim))
            y = TensorOperator.from_dense(square_root.T @ square_root, space.points, 2)
            gap = (tensorrep.slice_expectation(UNIFORM2, y) - constant * y).to_dense()
            assert np.linalg.eigvalsh((gap + gap.T) / 2).min() >= -1e-10


def test_entropy_values_and_growth():
    with criterion("shift entropy, bound, and growth totals match the known values"):
        assert abs(entropy.shift_entropy(UNIFORM2) - math.log(2)) <= 1e-12
        report = entropy.relative_entropy_bounds(UNIFORM2)
        assert abs(report.upper_bound - 2 * math.log(2)) <= 1e-12
        rows = entropy.entropy_growth_experiment(UNIFORM2, 5)
        assert abs(rows[1].total - 0.56234) <= 1e-5
        assert abs(rows[2].total - 1.03972) <= 1e-5
        for row in rows[1:]:
            oracle_total, oracle_center = entropy_by_regular_bimodule(UNIFORM2, row.degree)
            assert abs(row.total - oracle_total) <= 1e-9
            assert abs(row.center - oracle_center) <= 1e-9
