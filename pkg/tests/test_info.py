import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topoinfo import (
    DegenerateInputError,
    DiscreteDistribution,
    InvalidArgumentError,
    discrete_mutual_information,
    discrete_summary,
    info_summary,
    kl_entropy,
    knn_dual_total_correlation,
    knn_oinformation,
    knn_total_correlation,
    ksg_mutual_information,
    pairwise_mutual_informations,
    sample_line,
    sample_sphere,
    xor_distribution,
)
from oracles import (
    dense_joint,
    dense_tc_dtc,
    gaussian_tc_dtc,
    random_correlation_matrix,
    random_discrete_states,
)


def _gauss(cov, n, seed):
    rng = np.random.default_rng(seed)
    return rng.multivariate_normal(np.zeros(len(cov)), cov, size=n, method="cholesky")


# continuous entropy


def test_kl_entropy_uniform():
    rng = np.random.default_rng(0)
    x = rng.random((10000, 1))
    assert abs(kl_entropy(x, 4)) < 0.05


def test_kl_entropy_scaling_adds_log2():
    rng = np.random.default_rng(1)
    x = rng.random((10000, 1))
    assert kl_entropy(2.0 * x, 4) - kl_entropy(x, 4) == pytest.approx(math.log(2), abs=0.01)


def test_kl_entropy_standard_normal():
    rng = np.random.default_rng(2)
    x = rng.standard_normal((10000, 1))
    expected = 0.5 * math.log(2 * math.pi * math.e)
    assert kl_entropy(x, 4) == pytest.approx(expected, abs=0.05)


def test_kl_entropy_validation():
    with pytest.raises(InvalidArgumentError):
        kl_entropy(np.zeros((4, 1)), 4)


# mutual information


def test_ksg_independent_uniforms():
    rng = np.random.default_rng(3)
    x = rng.random((10000, 2))
    assert abs(ksg_mutual_information(x, ([0], [1]), 4)) < 0.03


def test_ksg_gaussian_closed_form():
    cov = np.array([[1.0, 0.6], [0.6, 1.0]])
    x = _gauss(cov, 10000, 4)
    expected = -0.5 * math.log(1 - 0.36)
    assert ksg_mutual_information(x, ([0], [1]), 4) == pytest.approx(expected, abs=0.03)


def test_ksg_grows_as_noise_vanishes():
    rng = np.random.default_rng(5)
    x1 = rng.random(5000)
    values = []
    for noise in (1e-2, 1e-4):
        x2 = x1 + noise * rng.standard_normal(5000)
        values.append(ksg_mutual_information(np.column_stack([x1, x2]), ([0], [1]), 4))
    assert values[0] > 1.0
    assert values[1] > values[0]


def test_ksg_split_validation():
    x = np.random.default_rng(6).random((100, 3))
    with pytest.raises(InvalidArgumentError):
        ksg_mutual_information(x, ([0], []), 4)
    with pytest.raises(InvalidArgumentError):
        ksg_mutual_information(x, ([0], [1]), 4)  # not a partition of 3 columns
    with pytest.raises(InvalidArgumentError):
        ksg_mutual_information(x, ([0, 1], [1, 2]), 4)


# TC / DTC / O


def test_independent_columns_near_zero():
    rng = np.random.default_rng(7)
    x = rng.random((10000, 3))
    assert abs(knn_total_correlation(x, 4)) < 0.05
    assert abs(knn_dual_total_correlation(x, 4)) < 0.05
    assert abs(knn_oinformation(x, 4)) < 0.05


def test_two_column_reduction_to_mutual_information():
    # TC, DTC and the KSG estimate coincide exactly on shared counts
    cov = np.array([[1.0, 0.7], [0.7, 1.0]])
    x = _gauss(cov, 3000, 8)
    tc = knn_total_correlation(x, 4, jitter_seed=11)
    dtc = knn_dual_total_correlation(x, 4, jitter_seed=11)
    mi = ksg_mutual_information(x, ([0], [1]), 4, jitter_seed=11)
    assert tc == pytest.approx(dtc, abs=1e-9)
    assert tc == pytest.approx(mi, abs=1e-9)


def test_gaussian_triple_log_determinant_oracle():
    cov = np.array([[1.0, 0.9, 0.9], [0.9, 1.0, 0.9], [0.9, 0.9, 1.0]])
    x = _gauss(cov, 10000, 9)
    tc_true, dtc_true = gaussian_tc_dtc(cov)
    assert knn_oinformation(x, 4) == pytest.approx(tc_true - dtc_true, abs=0.1)
    assert knn_total_correlation(x, 4) == pytest.approx(tc_true, abs=0.1)
    assert knn_dual_total_correlation(x, 4) == pytest.approx(dtc_true, abs=0.1)


def test_identity_chain_exact():
    x = sample_sphere(2000, seed=3)
    summary = info_summary(x, 4)
    assert summary.o == pytest.approx(summary.tc - summary.dtc, abs=1e-9)
    assert summary.s == pytest.approx(summary.tc + summary.dtc, abs=1e-9)
    o_direct = knn_oinformation(x, 4)
    assert o_direct == pytest.approx(summary.o, abs=1e-9)


def test_line_cloud_matches_digamma_identity():
    # exact copies: counts collapse and the estimate is psi(n) - psi(k+1)
    from topoinfo import digamma

    x = sample_line(5000, seed=7)
    expected = digamma(5000.0) - digamma(5.0)
    assert knn_oinformation(x, 4) == pytest.approx(expected, abs=1e-6)


def test_permutation_and_reflection_invariance():
    rng = np.random.default_rng(10)
    for cloud in (rng.standard_normal((2000, 3)), sample_line(1000, seed=7)):
        base = knn_oinformation(cloud, 4, jitter_seed=3)
        permuted = cloud[:, [2, 0, 1]]
        reflected = cloud.copy()
        reflected[:, 1] = -reflected[:, 1]
        assert abs(knn_oinformation(permuted, 4, jitter_seed=3) - base) < 1e-9
        assert abs(knn_oinformation(reflected, 4, jitter_seed=3) - base) < 1e-9


def test_oinformation_requires_three_columns():
    x = np.random.default_rng(11).random((100, 2))
    with pytest.raises(InvalidArgumentError):
        knn_oinformation(x, 4)
    with pytest.raises(InvalidArgumentError):
        info_summary(x, 4)
    with pytest.raises(InvalidArgumentError):
        knn_total_correlation(x[:, :1], 4)


def test_degenerate_without_jitter_raises():
    x = np.zeros((50, 3))
    with pytest.raises(DegenerateInputError):
        knn_oinformation(x, 4, jitter=0.0)


def test_summary_fields_and_json():
    x = sample_sphere(1500, seed=3)
    summary = info_summary(x, 4, jitter_seed=2)
    assert summary.n == 1500
    assert summary.k == 4
    assert summary.units == "nats"
    assert summary.jitter_seed == 2
    payload = summary.to_json()
    assert payload.index('"tc"') < payload.index('"dtc"') < payload.index('"o"')


def test_raw_convention_switch_changes_values():
    x = sample_sphere(1500, seed=3)
    a = knn_oinformation(x, 4, convention="add-one")
    b = knn_oinformation(x, 4, convention="raw")
    assert a != b


# discrete


def test_xor_summary_exact_bits():
    summary = discrete_summary(xor_distribution(), base=2)
    assert summary.tc == 1.0
    assert summary.dtc == 2.0
    assert summary.o == -1.0
    assert summary.s == 3.0
    assert summary.o_norm == pytest.approx(-1.0 / 3.0, abs=1e-15)
    assert summary.units == "bits"


def test_xor_pairwise_and_joint_information():
    dist = xor_distribution()
    for pair, mi in pairwise_mutual_informations(dist, base=2).items():
        assert mi == pytest.approx(0.0, abs=1e-15)
    for k in range(3):
        rest = [i for i in range(3) if i != k]
        assert discrete_mutual_information(dist, rest, [k], base=2) == pytest.approx(
            1.0, abs=1e-15
        )


def test_three_independent_bits():
    states = [
        ((a, b, c), 0.125) for a in (0, 1) for b in (0, 1) for c in (0, 1)
    ]
    summary = discrete_summary(DiscreteDistribution(tuple(states)), base=2)
    assert summary.tc == pytest.approx(0.0, abs=1e-15)
    assert summary.dtc == pytest.approx(0.0, abs=1e-15)
    assert summary.o == pytest.approx(0.0, abs=1e-15)
    assert summary.o_norm is None  # S = 0: undefined, never clamped


def test_discrete_matches_dense_bruteforce():
    rng = np.random.default_rng(12)
    for _ in range(20):
        states = random_discrete_states(rng, arity=3, levels=2)
        dist = DiscreteDistribution(states)
        table = dense_joint(states, [(0, 1)] * 3)
        tc_ref, dtc_ref = dense_tc_dtc(table, base=2.0)
        summary = discrete_summary(dist, base=2)
        assert summary.tc == pytest.approx(tc_ref, abs=1e-12)
        assert summary.dtc == pytest.approx(dtc_ref, abs=1e-12)


def test_trivariate_whole_minus_sum_identity():
    rng = np.random.default_rng(13)
    for _ in range(20):
        dist = DiscreteDistribution(random_discrete_states(rng, arity=3, levels=2))
        summary = discrete_summary(dist, base=2)
        pairwise = pairwise_mutual_informations(dist, base=2)
        whole_minus_sum = -(summary.tc - math.fsum(pairwise.values()))
        assert summary.o == pytest.approx(whole_minus_sum, abs=1e-12)


def test_discrete_summary_nats_base():
    summary = discrete_summary(xor_distribution(), base=math.e)
    assert summary.units == "nats"
    assert summary.tc == pytest.approx(math.log(2), abs=1e-12)


def test_discrete_validation():
    with pytest.raises(InvalidArgumentError):
        DiscreteDistribution((((0, 0), 0.5), ((0, 1), 0.6)))
    with pytest.raises(InvalidArgumentError):
        DiscreteDistribution((((0, 0), 0.5), ((0, 1, 2), 0.5)))
    with pytest.raises(InvalidArgumentError):
        discrete_summary(xor_distribution(), base=10)


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=15, deadline=None)
def test_discrete_o_norm_bounded(seed):
    rng = np.random.default_rng(seed)
    dist = DiscreteDistribution(random_discrete_states(rng, arity=3, levels=2))
    summary = discrete_summary(dist, base=2)
    if summary.o_norm is not None:
        assert -1.0 - 1e-12 <= summary.o_norm <= 1.0 + 1e-12
