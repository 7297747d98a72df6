"""Acceptance gate: one test per criterion, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines.
Everything is seeded; reruns are bit-reproducible.
"""

import math
import time

import numpy as np
import pytest

from topoinfo import (
    DistanceMatrix,
    FiltrationSpec,
    MultiSeries,
    battery_correlations,
    classify_triad,
    discrete_mutual_information,
    discrete_summary,
    distance_matrix,
    enclosing_radius,
    info_summary,
    knn_dual_total_correlation,
    knn_oinformation,
    knn_total_correlation,
    ksg_mutual_information,
    load_shape_expectations,
    null_ensemble,
    pairwise_mutual_informations,
    rips_persistence,
    run_shape_table,
    sample_ball,
    sample_sphere,
    sample_torus,
    subsample,
    synthetic_triad_battery,
    xor_distribution,
)
from naive_reduction import canon, naive_rips_pairs
from oracles import gaussian_tc_dtc, random_correlation_matrix


def _verdict(criterion: str, ok: bool, detail: str = ""):
    flag = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[acceptance] {criterion}: {flag}{suffix}")
    assert ok, f"{criterion}{suffix}"


# Criterion 1: shape-table reproduction at n = 10,000, k = 4, fixed seed.


def test_criterion_1_shape_table():
    started = time.monotonic()
    rows, orderings = run_shape_table(include_persistence=False)
    info_seconds = time.monotonic() - started

    failures = []
    for row in rows:
        for check, ok in row.checks.items():
            if not ok:
                failures.append(f"{row.name}:{check}")
    for name, ok in orderings.items():
        if not ok:
            failures.append(f"ordering:{name}")
    values = {row.name: (row.o_raw, row.o_pca) for row in rows}
    detail = "; ".join(
        f"{n} raw {v[0]:+.3f} pca {v[1]:+.3f}" for n, v in values.items()
    )
    _verdict(
        "criterion 1 (shape table, information half)",
        not failures and info_seconds < 600.0,
        f"{detail}; runtime {info_seconds:.0f}s"
        + (f"; failures: {failures}" if failures else ""),
    )


# Criterion 2: estimator oracles.


def test_criterion_2a_gaussian_log_determinant():
    rng = np.random.default_rng(20250810)
    worst = 0.0
    for i in range(10):
        cov = random_correlation_matrix(rng, 3)
        cloud = np.random.default_rng(1000 + i).multivariate_normal(
            np.zeros(3), cov, size=10000, method="cholesky"
        )
        tc_true, dtc_true = gaussian_tc_dtc(cov)
        summary = info_summary(cloud, 4, jitter_seed=i)
        worst = max(
            worst,
            abs(summary.tc - tc_true),
            abs(summary.dtc - dtc_true),
            abs(summary.o - (tc_true - dtc_true)),
        )
    _verdict(
        "criterion 2a (Gaussian closed forms, 10 draws)",
        worst <= 0.1,
        f"worst error {worst:.3f} nat vs gate 0.1",
    )


def test_criterion_2b_discrete_xor_exact():
    dist = xor_distribution()
    summary = discrete_summary(dist, base=2)
    exact = (
        summary.tc == 1.0
        and summary.dtc == 2.0
        and summary.o == -1.0
        and summary.s == 3.0
    )
    pairwise_zero = all(
        mi == 0.0 for mi in pairwise_mutual_informations(dist, base=2).values()
    )
    joint_one = all(
        discrete_mutual_information(dist, [i for i in range(3) if i != k], [k], 2)
        == 1.0
        for k in range(3)
    )
    _verdict(
        "criterion 2b (XOR: TC=1 DTC=2 O=-1 S=3 bits, MIs exact)",
        exact and pairwise_zero and joint_one,
        f"tc={summary.tc} dtc={summary.dtc} o={summary.o} s={summary.s}",
    )


def test_criterion_2c_bivariate_reduction():
    rng = np.random.default_rng(77)
    cloud = rng.multivariate_normal(
        np.zeros(2), [[1.0, 0.65], [0.65, 1.0]], size=4000, method="cholesky"
    )
    tc = knn_total_correlation(cloud, 4, jitter_seed=5)
    dtc = knn_dual_total_correlation(cloud, 4, jitter_seed=5)
    mi = ksg_mutual_information(cloud, ([0], [1]), 4, jitter_seed=5)
    gap = max(abs(tc - dtc), abs(tc - mi))
    _verdict(
        "criterion 2c (d=2: TC = DTC = KSG MI on shared counts)",
        gap <= 1e-9,
        f"max pairwise gap {gap:.2e}",
    )


# Criterion 3: persistence correctness.


def test_criterion_3a_oracle_equivalence_100_matrices():
    rng = np.random.default_rng(33)
    mismatches = 0
    for trial in range(100):
        n = int(rng.integers(3, 9))
        dm = rng.random((n, n))
        dm = (dm + dm.T) / 2.0
        np.fill_diagonal(dm, 0.0)
        if trial % 4 == 0:
            threshold = float(dm.max()) * (0.4 + 0.6 * rng.random())
        else:
            threshold = enclosing_radius(dm)
        engine = rips_persistence(
            DistanceMatrix(dm, "chebyshev"), FiltrationSpec(threshold=threshold)
        )
        rows = [(p.dim, p.birth, p.death) for p in engine.pairs]
        if canon(rows) != canon(naive_rips_pairs(dm, threshold, 2)):
            mismatches += 1
    _verdict(
        "criterion 3a (oracle equivalence on 100 random matrices)",
        mismatches == 0,
        f"{mismatches} mismatching diagrams",
    )


def test_criterion_3b_betti_numbers_of_shapes():
    sphere = subsample(sample_sphere(10000, seed=3), 512, seed=1)
    diag = rips_persistence(distance_matrix(sphere, "chebyshev"))
    s2 = sorted((p.persistence for p in diag.in_dim(2) if not p.essential), reverse=True)
    sphere_ok = len(s2) >= 1 and (len(s2) == 1 or s2[0] >= 3.0 * s2[1])

    ball = subsample(sample_ball(10000, seed=3), 512, seed=1)
    diag = rips_persistence(distance_matrix(ball, "chebyshev"))
    b2 = sorted((p.persistence for p in diag.in_dim(2) if not p.essential), reverse=True)
    ball_ok = len(b2) == 0 or (len(b2) > 1 and b2[0] < 3.0 * b2[1])

    torus = subsample(sample_torus(10000, seed=5), 1408, seed=1)
    diag = rips_persistence(distance_matrix(torus, "euclidean"))
    t1 = sorted((p.persistence for p in diag.in_dim(1) if not p.essential), reverse=True)
    t2 = sorted((p.persistence for p in diag.in_dim(2) if not p.essential), reverse=True)
    torus_ok = (
        len(t1) >= 3
        and t1[0] >= 3.0 * t1[2]
        and t1[1] >= 3.0 * t1[2]
        and len(t2) >= 2
        and t2[0] >= 3.0 * t2[1]
    )
    _verdict(
        "criterion 3b (sphere one dominant void, ball none, torus 2+1)",
        sphere_ok and ball_ok and torus_ok,
        f"sphere {s2[0]:.3f}/{s2[1]:.3f}; ball top {b2[0]:.3f} next {b2[1]:.3f}; "
        f"torus H1 {t1[0]:.3f},{t1[1]:.3f} vs {t1[2]:.3f}, H2 {t2[0]:.3f} vs {t2[1]:.3f}",
    )


def test_criterion_3c_scale_and_stability():
    rng = np.random.default_rng(9)
    dm = rng.random((14, 14))
    dm = (dm + dm.T) / 2.0
    np.fill_diagonal(dm, 0.0)
    base = rips_persistence(DistanceMatrix(dm, "chebyshev"))
    base_rows = canon([(p.dim, p.birth, p.death) for p in base.pairs])
    scale_ok = True
    for c in (2.0, 0.5):
        scaled = rips_persistence(DistanceMatrix(c * dm, "chebyshev"))
        expect = sorted(
            (d, c * b, c * x if math.isfinite(x) else x) for d, b, x in base_rows
        )
        got = canon([(p.dim, p.birth, p.death) for p in scaled.pairs])
        scale_ok = scale_ok and got == expect

    delta = 1e-3
    cloud = sample_sphere(40, seed=3)
    d0 = distance_matrix(cloud, "chebyshev").entries.copy()
    noise = np.random.default_rng(11).uniform(-delta / 2, delta / 2, size=d0.shape)
    noise = (noise + noise.T) / 2.0
    np.fill_diagonal(noise, 0.0)
    d1 = np.maximum(d0 + noise, 0.0)
    thr = min(enclosing_radius(d0), enclosing_radius(d1))
    a = rips_persistence(DistanceMatrix(d0, "chebyshev"), FiltrationSpec(threshold=thr))
    b = rips_persistence(DistanceMatrix(d1, "chebyshev"), FiltrationSpec(threshold=thr))
    stable_ok = True
    for dim in (0, 1, 2):
        pa = [p.persistence for p in a.in_dim(dim) if math.isfinite(p.death)]
        cutoff = 0.05
        while any(abs(x - cutoff) <= 2 * delta for x in pa):
            cutoff += 2 * delta
        la = [p for p in a.in_dim(dim) if math.isfinite(p.death) and p.persistence > cutoff]
        lb = [p for p in b.in_dim(dim) if math.isfinite(p.death) and p.persistence > cutoff]
        stable_ok = stable_ok and len(la) == len(lb)
        for stat in ("birth", "death"):
            xs = sorted(getattr(p, stat) for p in la)
            ys = sorted(getattr(p, stat) for p in lb)
            stable_ok = stable_ok and all(
                abs(x - y) <= delta + 1e-12 for x, y in zip(xs, ys)
            )
    _verdict(
        "criterion 3c (scale equivariance and stability spot checks)",
        scale_ok and stable_ok,
        f"scale {'ok' if scale_ok else 'violated'}, stability "
        f"{'ok' if stable_ok else 'violated'}",
    )


# Criterion 4: topology-information linkage on the synthetic battery.


def test_criterion_4_linkage_battery():
    records = synthetic_triad_battery(224, seed=0, n_samples=1500, subsample_cap=192)
    corr = battery_correlations(records)
    c_topo = corr["o_norm_vs_h2_avg_persistence"]
    c_pca = corr["o_norm_vs_pc1_variance"]
    ok = (
        len(records) >= 200
        and c_topo.rho < 0
        and c_topo.p_value < 0.01
        and c_pca.rho > 0
        and c_pca.p_value < 0.01
    )
    _verdict(
        "criterion 4 (synergy-cavity and compressibility correlations)",
        ok,
        f"n={len(records)}, rho(o_norm, h2 avg persistence)={c_topo.rho:+.3f} "
        f"p={c_topo.p_value:.2e}; rho(o_norm, pc1 variance)={c_pca.rho:+.3f} "
        f"p={c_pca.p_value:.2e}",
    )


# Criterion 5: null-test calibration.


def test_criterion_5_null_calibration():
    n_runs = 100
    draws = 60
    nonsig = 0
    for run in range(n_runs):
        g = np.random.Generator(np.random.Philox(np.random.SeedSequence((run, 1))))
        data = g.standard_normal((512, 3))
        empirical = knn_oinformation(data, 4, jitter_seed=run)
        ens = null_ensemble(MultiSeries(data), (0, 1, 2), 4, draws=draws, seed=run)
        if classify_triad(empirical, ens).label == "nonsignificant":
            nonsig += 1

    redundant = 0
    for run in range(n_runs):
        g = np.random.Generator(np.random.Philox(np.random.SeedSequence((run, 2))))
        base = g.standard_normal(512).cumsum()
        data = np.column_stack(
            [base + 0.05 * g.standard_normal(512) for _ in range(3)]
        )
        empirical = knn_oinformation(data, 4, jitter_seed=run)
        ens = null_ensemble(MultiSeries(data), (0, 1, 2), 4, draws=draws, seed=run)
        if classify_triad(empirical, ens).label == "redundant":
            redundant += 1

    _verdict(
        "criterion 5 (null calibration: noise nonsignificant, copies redundant)",
        nonsig >= 95 and redundant == n_runs,
        f"noise nonsignificant {nonsig}/{n_runs} (need >= 95), "
        f"copies redundant {redundant}/{n_runs} (need 100)",
    )
