import math

import numpy as np
import pytest

import smeval


def random_gt(rng, h=8, w=8):
    while True:
        gt = rng.random((h, w)) < 0.5
        if gt.any() and not gt.all():
            return gt


def test_structure_measure_identity():
    rng = np.random.default_rng(1)
    for _ in range(10):
        gt = random_gt(rng)
        assert smeval.structure_measure(gt.astype(float), gt) == pytest.approx(1.0, abs=1e-12)


def test_structure_measure_degenerate_gt():
    empty = np.zeros((4, 4), dtype=bool)
    assert smeval.structure_measure(np.zeros((4, 4)), empty) == 1.0
    assert smeval.structure_measure(np.ones((4, 4)), empty) == 0.0


def test_object_component_hand_value():
    assert smeval.object_component([0.5] * 4, lambda_=0.5) == pytest.approx(0.8, abs=1e-12)


def test_spearman_hand_value():
    assert smeval.spearman_rho([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(0.8, abs=1e-12)


def test_rank_ties():
    assert smeval.rank_descending([0.7, 0.7]) == [1.5, 1.5]


def test_baselines_agree_on_perfection():
    rng = np.random.default_rng(2)
    gt = random_gt(rng)
    sm = gt.astype(float)
    assert smeval.f_beta(gt, gt) == 1.0
    assert smeval.fbw(sm, gt) == 1.0
    assert smeval.auc(sm, gt) == pytest.approx(1.0, abs=1e-12)
    assert smeval.average_precision(sm, gt) == pytest.approx(1.0, abs=1e-12)


def test_curves_are_arrays():
    rng = np.random.default_rng(3)
    gt = random_gt(rng)
    sm = rng.random(gt.shape)
    roc = smeval.roc_curve(sm, gt)
    assert roc.ndim == 2 and roc.shape[1] == 2
    assert roc[:, 0].min() == 0.0 and roc[:, 0].max() == 1.0


def test_gaussian_baseline_peak():
    g = smeval.gaussian_baseline_map(7, 9)
    assert g.shape == (9, 7)
    assert g[4, 3] == 1.0


def test_perturb_deterministic():
    rng = np.random.default_rng(4)
    gt = random_gt(rng, 12, 12)
    a = smeval.perturb_gt(gt, radius=2, mode="mixed", seed=9)
    b = smeval.perturb_gt(gt, radius=2, mode="mixed", seed=9)
    assert (a == b).all()


def test_image_round_trip(tmp_path):
    rng = np.random.default_rng(5)
    values = rng.integers(0, 256, size=(6, 5)) / 255.0
    path = str(tmp_path / "map.png")
    smeval.save_gray_map(values, path)
    back = smeval.load_gray_map(path)
    assert np.array_equal(back, values)


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        smeval.structure_measure(np.zeros((3, 3)), np.zeros((4, 4), dtype=bool))


def test_centroid():
    gt = np.zeros((4, 5), dtype=bool)
    gt[2, 3] = True
    assert smeval.foreground_centroid(gt) == (2.0, 3.0)


def test_measure_names():
    assert set(smeval.measures) == {"s", "fbeta", "fbw", "ap", "auc"}
