"""Smoke tests for the python bindings.

Run either against an installed `zsmap` wheel or against a build tree with
PYTHONPATH pointing at the directory holding the `_zsmap` extension.
"""

import numpy as np
import pytest

try:
    import _zsmap as z
except ImportError:
    import zsmap as z


def make_dataset(drift=0.0, noise=0.0, seed=0):
    spec = z.SyntheticSpec()
    spec.feature_dim = 20
    spec.semantic_dim = 10
    spec.num_seen = 8
    spec.num_unseen = 3
    spec.instances_per_category = 10
    spec.mapping_drift = drift
    spec.noise_sigma = noise
    spec.seed = seed
    return z.generate_synthetic(spec)


def test_dataset_shapes_and_validation():
    ds = make_dataset()
    ds.validate()
    assert ds.seen_features.shape == (20, 80)
    assert ds.seen_labels.shape == (80, 8)
    assert ds.seen_semantics.shape == (10, 8)
    assert ds.unseen_features.shape == (20, 30)
    assert ds.unseen_labels.shape == (30, 3)
    # Prototypes are nonnegative and unit normalized.
    assert ds.seen_semantics.min() >= 0.0
    np.testing.assert_allclose(
        np.linalg.norm(ds.seen_semantics, axis=0), 1.0, atol=1e-12)


def test_dataset_determinism_and_roundtrip(tmp_path):
    a, b = make_dataset(seed=5), make_dataset(seed=5)
    np.testing.assert_array_equal(a.seen_features, b.seen_features)
    manifest = tmp_path / "data.json"
    z.save_dataset(manifest, a)
    back = z.load_dataset(manifest)
    np.testing.assert_array_equal(back.unseen_features, a.unseen_features)
    assert back.seen_categories == a.seen_categories


def test_sylvester_against_numpy():
    rng = np.random.default_rng(0)
    l = rng.standard_normal((6, 6))
    l = l @ l.T + 0.1 * np.eye(6)
    t = rng.standard_normal((4, 4))
    t = t @ t.T + 0.1 * np.eye(4)
    n = rng.standard_normal((6, 4))
    mu = 0.7
    w = z.solve_special_sylvester(l, t, n, mu)
    big = np.kron(t.T, np.eye(6)) @ np.kron(np.eye(4), l) + mu * np.eye(24)
    oracle = np.linalg.solve(big, n.flatten(order="F")).reshape((6, 4), order="F")
    np.testing.assert_allclose(w, oracle, atol=1e-8)


def test_eszsl_noiseless_train_accuracy():
    ds = make_dataset()
    model = z.fit_eszsl(ds, 1.0, 1.0)
    scores = z.predict_compatibility(model.mapping, ds.seen_features,
                                     ds.seen_semantics)
    pred = z.argmax_rows(scores)
    truth = list(np.argmax(ds.seen_labels, axis=1))
    assert z.multiclass_accuracy(pred, truth) == 1.0


def test_aezsl_and_refinement():
    ds = make_dataset(drift=0.4, noise=0.3, seed=3)
    opts = z.AezslOptions()
    opts.lambda3 = 1.0
    model = z.fit_aezsl(ds, opts)
    assert len(model.mappings) == 3
    obj = model.objective_per_update
    assert all(b <= a + 1e-10 for a, b in zip(obj, obj[1:]))

    scores = ds.unseen_features.T @ model.classifiers
    truth = list(np.argmax(ds.unseen_labels, axis=1))
    base_acc = z.multiclass_accuracy(z.argmax_rows(scores), truth)

    ropts = z.RefineOptions()
    result = z.refine_labels(ds.unseen_features, model.classifiers,
                             ds.unseen_semantics, 5, ropts)
    refined = list(np.argmax(result.labels, axis=1))
    refined_acc = z.multiclass_accuracy(refined, truth)
    assert len(result.moved_per_iteration) == 6  # ceil(30 / 5)
    assert refined_acc >= base_acc - 0.1


def test_gzsl_calibration():
    ds = make_dataset(drift=0.3, noise=0.2, seed=4)
    opts = z.AezslOptions()
    opts.lambda3 = 1.0
    joint = z.fit_aezsl_gzsl(ds, opts)
    scores = ds.unseen_features.T @ joint.classifiers
    mask = [True] * 8 + [False] * 3
    assert z.calibrated_stack(scores, mask, 0.0) == z.argmax_rows(scores)
    # Calibration needs instances from both sides of the split.
    val_feats = np.hstack([ds.seen_features, ds.unseen_features])
    val_scores = val_feats.T @ joint.classifiers
    labels = list(np.argmax(ds.seen_labels, axis=1))
    labels += [8 + t for t in np.argmax(ds.unseen_labels, axis=1)]
    gamma, ausuc, curve = z.select_gamma_ausuc(val_scores, labels, mask)
    assert 0.0 <= ausuc <= 1.0
    assert len(curve) > 0


def test_daezsl_training_and_prediction():
    ds = make_dataset(drift=0.3, noise=0.2, seed=6)
    opts = z.DaezslTrainOptions()
    opts.epochs = 5
    opts.seed = 1
    params, trace = z.train_daezsl(ds, opts)
    assert len(trace) == 5
    pred = z.predict_daezsl_all(params, ds.unseen_features,
                                ds.unseen_semantics)
    assert len(pred) == 30
    assert all(0 <= p < 3 for p in pred)
    assert params.mapping.shape == (20, 10)


def test_metrics():
    scores = np.array([[0.9, 0.1, 0.0], [0.2, 0.3, 0.5]])
    assert z.flat_hit_at_k(scores, [0, 2], 1) == 1.0
    assert z.flat_hit_at_k(scores, [1, 0], 1) == 0.0
    assert z.flat_hit_at_k(scores, [1, 0], 3) == 1.0
    with pytest.raises(Exception):
        z.flat_hit_at_k(scores, [0, 0], 4)
