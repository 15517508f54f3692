"""Acceptance criteria, one test per criterion, one printed line each.

Run with `pytest -s tests/test_acceptance.py` to see the PASS/FAIL lines.
Every tolerance and runtime budget is pinned here; seeds are fixed so the
whole suite is deterministic.
"""
import itertools
import math
import time

import numpy as np
import pytest
from scipy.stats import chisquare

import framemeasures as fm
from framemeasures.dpp import _subset_minors
from framemeasures.report import ExperimentConfig
from framemeasures.suites import run as run_suite

MASTER_SEED = 20250809


def _report(num, name, ok, detail=""):
    print(f"ACCEPTANCE {num:02d} {name}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, f"criterion {num} ({name}) failed: {detail}"


@pytest.fixture(scope="module")
def ens32():
    # shared across criteria 5, 6, 8, 9, 10
    return fm.WhiteNoiseEnsemble.generate(32, 1_000_000, seed=MASTER_SEED)


def random_frame(rng, max_dim=8, max_n=16, spanning=False):
    dim = int(rng.integers(2, max_dim + 1))
    lo = dim if spanning else 1
    n = int(rng.integers(lo, max_n + 1))
    return fm.build_frame(rng.normal(size=(n, dim)))


def test_criterion_01_frame_bounds_sandwich():
    t0 = time.perf_counter()
    rng = np.random.default_rng(MASTER_SEED + 1)
    worst = -np.inf
    for _ in range(200):
        f = random_frame(rng)
        xs = rng.normal(size=(1000, f.dim))
        energy = ((xs @ f.vectors.T) ** 2).sum(axis=1)
        nsq = (xs * xs).sum(axis=1)
        worst = max(
            worst,
            float((f.lower_bound * nsq - energy).max()),
            float((energy - f.upper_bound * nsq).max()),
        )
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 5.0
    _report(1, "frame-bounds sandwich", ok,
            f"(worst violation {worst:.2e}, {elapsed:.2f}s)")


def test_criterion_02_markov_structure():
    t0 = time.perf_counter()
    rng = np.random.default_rng(MASTER_SEED + 2)
    worst_row = worst_rev = worst_bound = 0.0
    for _ in range(100):
        f = random_frame(rng, spanning=True)
        chain = fm.build_chain(f)
        p = chain.transition_matrix
        c = chain.normalizers
        worst_row = max(worst_row, float(np.abs(p.sum(axis=1) - 1.0).max()))
        flux = c[:, None] * p
        scale = np.maximum(np.maximum(np.abs(flux), np.abs(flux.T)), 1e-300)
        worst_rev = max(worst_rev, float((np.abs(flux - flux.T) / scale).max()))
        norms_sq = (f.vectors**2).sum(axis=1)
        worst_bound = max(
            worst_bound, float((p - norms_sq[None, :] / f.lower_bound).max())
        )
    elapsed = time.perf_counter() - t0
    ok = worst_row <= 1e-12 and worst_rev <= 1e-12 and worst_bound <= 1e-12 and elapsed < 5.0
    _report(2, "markov row/reversibility/bound", ok,
            f"(row {worst_row:.1e}, rev {worst_rev:.1e}, bound {worst_bound:.1e}, {elapsed:.2f}s)")


def test_criterion_03_path_space_measure():
    t0 = time.perf_counter()
    mb = fm.mercedes_benz_frame()
    chain = fm.build_chain(mb)
    m = 200_000
    idx, _ = fm.sample_path_indices(chain, mb.vectors[0], 2, m, seed=MASTER_SEED + 3)
    counts = np.bincount(idx[:, 0] * 3 + idx[:, 1], minlength=9)
    expected = np.array(
        [fm.path_probability(chain, mb.vectors[0], [a, b])
         for a in range(3) for b in range(3)]
    )
    pvalue = float(chisquare(counts, expected * m).pvalue)

    onb = fm.orthonormal_basis_frame(2)
    samples = fm.sample_paths(fm.build_chain(onb), [1.0, 0.0], 5, 200, seed=0)
    onb_det = all(s.indices == (0,) * 5 and s.probability == 1.0 for s in samples)
    elapsed = time.perf_counter() - t0
    ok = pvalue >= 0.001 and onb_det and elapsed < 10.0
    _report(3, "path-space measure", ok,
            f"(chi2 p = {pvalue:.3f}, ONB deterministic = {onb_det}, {elapsed:.2f}s)")


def test_criterion_04_determinantal_measure():
    t0 = time.perf_counter()
    rng = np.random.default_rng(MASTER_SEED + 4)
    m = 200_000
    worst_minor = 0.0
    worst_sum = worst_empty = 0.0
    worst_tv = 0.0
    worst_card_z = 0.0
    for trial in range(50):
        n = int(rng.integers(2, 7))
        a = rng.normal(size=(n, n))
        g = a @ a.T
        scale = 0.6 + 0.4 * rng.random()
        kernel = fm.kernel_from_matrix(g / np.linalg.eigvalsh(g)[-1] * scale)

        minors = _subset_minors(kernel)
        worst_minor = max(worst_minor, float(-minors.min()))
        table = fm.subset_distribution_bruteforce(kernel)
        worst_sum = max(worst_sum, abs(float(table.sum()) - 1.0))
        worst_empty = max(
            worst_empty, abs(float(table[0]) - fm.empty_probability(kernel))
        )
        masks = fm.sample_masks(kernel, m, seed=MASTER_SEED + 5000 + trial)
        emp = fm.empirical_subset_distribution(masks)
        worst_tv = max(worst_tv, fm.total_variation(emp, table))
        card = masks.sum(axis=1).astype(float)
        sigma = card.std(ddof=1) / math.sqrt(m)
        worst_card_z = max(worst_card_z, abs(card.mean() - kernel.trace()) / sigma)
    elapsed = time.perf_counter() - t0
    ok = (
        worst_minor <= 1e-10 and worst_sum <= 1e-9 and worst_empty <= 1e-9
        and worst_tv <= 0.02 and worst_card_z <= 3.0 and elapsed < 60.0
    )
    _report(4, "determinantal measure", ok,
            f"(minor {worst_minor:.1e}, sum {worst_sum:.1e}, empty {worst_empty:.1e}, "
            f"TV {worst_tv:.4f}, card z {worst_card_z:.2f}, {elapsed:.1f}s)")


def test_criterion_05_ito_isometry_and_char_functional(ens32):
    t0 = time.perf_counter()
    rng = np.random.default_rng(MASTER_SEED + 5)
    worst_z = 0.0
    for _ in range(20):
        x = rng.normal(size=32)
        x /= np.linalg.norm(x)
        worst_z = max(worst_z, abs(fm.ito_isometry_check(x, ens32).z_score))
        re, im = fm.char_functional_check(x, ens32)
        worst_z = max(worst_z, abs(re.z_score), abs(im.z_score))

    x1 = rng.normal(size=32)
    x1 /= np.linalg.norm(x1)
    re1, _ = fm.char_functional_check(x1, ens32)
    re2, _ = fm.char_functional_check(x1 * math.sqrt(2.0), ens32)
    targets_ok = (
        re1.target == pytest.approx(math.exp(-0.5), rel=1e-12)
        and re2.target == pytest.approx(math.exp(-1.0), rel=1e-12)
        and abs(re1.z_score) <= 4 and abs(re2.z_score) <= 4
    )
    elapsed = time.perf_counter() - t0
    ok = worst_z <= 4.0 and targets_ok and elapsed < 60.0
    _report(5, "Ito isometry + characteristic functional", ok,
            f"(max |z| = {worst_z:.2f}, targets e^-1/2={re1.value:.4f}, "
            f"e^-1={re2.value:.4f}, {elapsed:.1f}s)")


def test_criterion_06_moments(ens32):
    t0 = time.perf_counter()
    rng = np.random.default_rng(MASTER_SEED + 6)
    x = rng.normal(size=32)
    x /= np.linalg.norm(x)
    worst_z = 0.0
    targets = []
    for order in (2, 4, 6, 3, 5, 7):
        est = fm.moment_check(x, order, ens32)
        worst_z = max(worst_z, abs(est.z_score))
        targets.append(est.target)
    elapsed = time.perf_counter() - t0
    even_ok = targets[:3] == [pytest.approx(1.0), pytest.approx(3.0), pytest.approx(15.0)]
    odd_ok = targets[3:] == [0.0, 0.0, 0.0]
    ok = worst_z <= 4.0 and even_ok and odd_ok and elapsed < 30.0
    _report(6, "Gaussian moments", ok, f"(max |z| = {worst_z:.2f}, {elapsed:.1f}s)")


def test_criterion_07_frame_decomposition():
    t0 = time.perf_counter()
    d, m = 16, 1_000_000
    band = 4.0 * math.sqrt((d + 1.0) / m)
    errs_full, errs_half = [], []
    for trial in range(20):
        ens = fm.WhiteNoiseEnsemble.generate(d, m, seed=MASTER_SEED + 70 + trial)
        rng = np.random.default_rng(MASTER_SEED + 700 + trial)
        x = rng.normal(size=d)
        x /= np.linalg.norm(x)
        _, err = fm.reconstruct_mc(x, ens)
        errs_full.append(err)
        _, err_half = fm.reconstruct_mc(x, ens.restrict(m // 2))
        errs_half.append(err_half)
    ratio = float(np.median(errs_half) / np.median(errs_full))
    elapsed = time.perf_counter() - t0
    ok = max(errs_full) <= band and 1.2 <= ratio <= 1.7 and elapsed < 60.0
    _report(7, "frame decomposition (reconstruction)", ok,
            f"(max err {max(errs_full):.4f} <= {band:.4f}, halving ratio {ratio:.3f}, "
            f"{elapsed:.1f}s)")


def test_criterion_08_gramian_covariance(ens32):
    t0 = time.perf_counter()
    mb = fm.mercedes_benz_frame()
    proc = fm.gaussian_process_from_frame(mb, ens32)
    dist = float(np.linalg.norm(
        fm.empirical_covariance(proc) - fm.gram(mb).entries
    ))
    bound = 5.0 * mb.n_frame / math.sqrt(ens32.sample_count)
    elapsed = time.perf_counter() - t0
    ok = dist <= bound and elapsed < 20.0
    _report(8, "Gramian covariance", ok,
            f"(Frobenius {dist:.5f} <= {bound:.5f}, {elapsed:.1f}s)")


def test_criterion_09_translation(ens32):
    t0 = time.perf_counter()
    rng = np.random.default_rng(MASTER_SEED + 9)
    worst_rel = 0.0
    for _ in range(1000):
        x1, x2, w = rng.normal(size=(3, 8))
        lhs, rhs = fm.cocycle_check(x1, x2, w)
        worst_rel = max(worst_rel, abs(lhs - rhs) / abs(rhs))

    x = rng.normal(size=32)
    x /= np.linalg.norm(x)
    y = rng.normal(size=32)
    y -= float(y @ x) * x
    y /= np.linalg.norm(y)
    z_mean = fm.rn_mean_check(x, ens32).z_score
    est_zero = fm.translated_second_moment(np.zeros(32), y, ens32)
    est_perp = fm.translated_second_moment(x, y, ens32)
    est_same = fm.translated_second_moment(x, x, ens32)
    targets_ok = (
        est_zero.target == pytest.approx(1.0)
        and est_perp.target == pytest.approx(1.0)
        and est_same.target == pytest.approx(2.0)
    )
    worst_z = max(abs(z_mean), abs(est_zero.z_score), abs(est_perp.z_score),
                  abs(est_same.z_score))
    elapsed = time.perf_counter() - t0
    ok = worst_rel <= 1e-12 and targets_ok and worst_z <= 4.0 and elapsed < 30.0
    _report(9, "translation identities", ok,
            f"(cocycle rel {worst_rel:.1e}, max |z| = {worst_z:.2f}, {elapsed:.1f}s)")


def test_criterion_10_karhunen_loeve(ens32):
    t0 = time.perf_counter()
    pf = fm.parseval_rescale(fm.mercedes_benz_frame())
    rng = np.random.default_rng(MASTER_SEED + 10)
    worst_z = 0.0
    for _ in range(10):
        x = rng.normal(size=2)
        x /= np.linalg.norm(x)
        est = fm.kl_variance_check(pf, x, ens32)
        assert est.target == pytest.approx(1.0, abs=1e-10)
        worst_z = max(worst_z, abs(est.z_score))
    elapsed = time.perf_counter() - t0
    ok = worst_z <= 4.0 and elapsed < 20.0
    _report(10, "Karhunen-Loeve expansion", ok,
            f"(max |z| = {worst_z:.2f}, {elapsed:.1f}s)")


def test_criterion_11_decay_demonstrator():
    t0 = time.perf_counter()
    rng = np.random.default_rng(MASTER_SEED + 11)
    worst_tail = 0.0
    worst_sum = 0.0
    for _ in range(20):
        dim = int(rng.integers(1, 9))
        n = int(rng.integers(1, 7))
        mu = fm.DiscreteMeasure.normalized(rng.normal(size=(n, dim)), rng.random(n) + 0.1)
        seq = fm.lower_bound_decay(mu, 64)
        worst_tail = max(worst_tail, float(np.abs(seq[dim:]).max()))
        worst_sum = max(worst_sum, abs(float(seq.sum()) - fm.second_moment(mu)))
    elapsed = time.perf_counter() - t0
    ok = worst_tail == 0.0 and worst_sum <= 1e-12 and elapsed < 2.0
    _report(11, "no-frame-measure decay demonstrator", ok,
            f"(tail {worst_tail:.1e}, sum residual {worst_sum:.1e}, {elapsed:.2f}s)")


def test_criterion_12_wasserstein_exactness():
    t0 = time.perf_counter()
    rng = np.random.default_rng(MASTER_SEED + 12)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 7))
        dim = int(rng.integers(1, 4))
        mu = fm.DiscreteMeasure.uniform(rng.normal(size=(n, dim)))
        nu = fm.DiscreteMeasure.uniform(rng.normal(size=(n, dim)))
        d, _ = fm.wasserstein2(mu, nu)
        diff = mu.atoms[:, None, :] - nu.atoms[None, :, :]
        cost = (diff * diff).sum(axis=2)
        best = min(
            sum(cost[i, p[i]] for i in range(n)) / n
            for p in itertools.permutations(range(n))
        )
        worst = max(worst, abs(d * d - best))

    # metric axioms on random triples
    axiom_ok = True
    for _ in range(20):
        a, b, c = (
            fm.DiscreteMeasure.uniform(rng.normal(size=(int(rng.integers(1, 6)), 2)))
            for _ in range(3)
        )
        dab, _ = fm.wasserstein2(a, b)
        dba, _ = fm.wasserstein2(b, a)
        dac, _ = fm.wasserstein2(a, c)
        dcb, _ = fm.wasserstein2(c, b)
        axiom_ok = axiom_ok and abs(dab - dba) <= 1e-9 and dab <= dac + dcb + 1e-9
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and axiom_ok and elapsed < 30.0
    _report(12, "Wasserstein-2 exactness", ok,
            f"(worst |solver - bruteforce| = {worst:.1e}, axioms {axiom_ok}, {elapsed:.1f}s)")


def test_invariant_all_check_ops_z_band(ens32):
    # module invariant rather than a numbered criterion: every McEstimate
    # from the four check operations on unit-norm inputs at M = 1e6 stays
    # inside |z| <= 4
    rng = np.random.default_rng(MASTER_SEED + 99)
    x = rng.normal(size=32)
    x /= np.linalg.norm(x)
    y = rng.normal(size=32)
    y /= np.linalg.norm(y)
    zs = [fm.ito_isometry_check(x, ens32).z_score]
    re, im = fm.char_functional_check(x, ens32)
    zs += [re.z_score, im.z_score]
    zs += [fm.moment_check(x, order, ens32).z_score for order in range(1, 7)]
    zs += [fm.projection_check(x, y, ens32).z_score,
           fm.projection_check(x, x, ens32).z_score]
    assert max(abs(z) for z in zs) <= 4.0


def test_criterion_13_reproducibility(monkeypatch):
    t0 = time.perf_counter()
    cfg = ExperimentConfig(command="verify-all", seed=7, samples=100_000, dim=32)
    first = run_suite(cfg).payload_json()
    second = run_suite(cfg).payload_json()
    same_config = first == second

    monkeypatch.setenv("FRAMES_THREADS", "1")
    one = run_suite(cfg).payload_json()
    monkeypatch.setenv("FRAMES_THREADS", "8")
    eight = run_suite(cfg).payload_json()
    threads_same = one == eight and one == first
    elapsed = time.perf_counter() - t0
    ok = same_config and threads_same
    _report(13, "verify-all reproducibility", ok,
            f"(same-config identical {same_config}, threads 1 vs 8 identical "
            f"{threads_same}, {elapsed:.1f}s)")
