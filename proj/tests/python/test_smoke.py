import csv
import json
import math
import os

import numpy as np
import pytest

import hqgan

THETA_STAR = [0.35, 2.10, 5.06]


def test_kraus_operators_are_complete():
    for ops in (
        hqgan.amplitude_damping_kraus(0.3),
        hqgan.dephasing_kraus(0.2),
        hqgan.combined_kraus(0.0033, 0.0022),
    ):
        total = sum(k.conj().T @ k for k in ops)
        assert np.allclose(total, np.eye(2), atol=1e-12)


def test_noise_probabilities():
    assert hqgan.damping_probability(50e-9, 15e-6) == pytest.approx(0.0033, abs=1e-4)
    assert hqgan.dephasing_probability(50e-9, 15e-6, 18e-6) == pytest.approx(0.0022, abs=1e-4)
    assert hqgan.readout_corrected_expectation(1.0, 0.91, 0.91) == pytest.approx(0.82)


def test_final_state_is_a_density_matrix():
    g = hqgan.Generator(hqgan.NoiseParams(damping=True, dephasing=True))
    rho = g.final_state(0.3, THETA_STAR)
    assert rho.shape == (4, 4)
    assert np.allclose(rho, rho.conj().T, atol=1e-12)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.eigvalsh(rho).min() > -1e-10


def test_parameter_shift_matches_finite_differences():
    g = hqgan.Generator()
    exact = hqgan.EstimatorConfig(hqgan.EstimatorMode.EXACT, 1)
    grad = g.param_shift_gradient(0.2, THETA_STAR, exact)
    h = 1e-6
    for k in range(3):
        up = list(THETA_STAR)
        down = list(THETA_STAR)
        up[k] += h
        down[k] -= h
        fd = (g.exact_expectation(0.2, up) - g.exact_expectation(0.2, down)) / (2 * h)
        assert grad[k] == pytest.approx(fd, abs=1e-6)


def test_shot_batches_are_reproducible():
    g = hqgan.Generator()
    zs = np.linspace(-0.9, 0.9, 20).tolist()
    a = g.generate_batch(zs, THETA_STAR, seed=3)
    b = g.generate_batch(zs, THETA_STAR, seed=3, workers=2)
    assert a == b
    assert all(-1.0 <= x <= 1.0 for x in a)


def test_discriminator_and_losses():
    p = hqgan.init_mlp(1)
    assert len(p) == 2701
    d = hqgan.mlp_forward(p, 0.4)
    assert 0.0 < d < 1.0
    assert hqgan.discriminator_loss([0.5], [0.5], 1.0) == pytest.approx(2 * math.log(2))
    assert hqgan.generator_loss([0.5]) == pytest.approx(math.log(2))
    with pytest.raises(ValueError):
        hqgan.discriminator_loss([1.0], [0.5], 1.0)


def test_metrics():
    samples = np.random.default_rng(0).uniform(-1, 1, 500).tolist()
    h = hqgan.histogram(samples)
    assert h.bin_count == 20
    assert sum(h.counts) == 500
    assert hqgan.kl_divergence(h, h) == 0.0
    s = hqgan.summarize([1.0, 2.0, 3.0, 4.0, 5.0])
    assert (s.q1, s.median, s.q3) == (2.0, 3.0, 4.0)


def test_short_training_run():
    cfg = hqgan.TrainConfig()
    cfg.epochs = 5
    cfg.n_samples = 10
    cfg.metric_sample_count = 20
    cfg.estimator = hqgan.EstimatorConfig(hqgan.EstimatorMode.SHOTS, 100)
    target = hqgan.make_target(THETA_STAR, 100)
    records = hqgan.Trainer(cfg, target).run()
    assert [r.epoch for r in records] == list(range(6))
    assert all(r.kl >= 0.0 for r in records)
    again = hqgan.Trainer(cfg, target).run()
    assert [r.theta for r in again] == [r.theta for r in records]


def test_config_errors():
    cfg = hqgan.parse_config("[run]\nepochs = 3\n")
    assert cfg.train.epochs == 3
    assert "epochs = 3" in hqgan.format_config(cfg)
    with pytest.raises(hqgan.ConfigError, match="run.bogus"):
        hqgan.parse_config("[run]\nbogus = 1\n")


def test_train_resume_report(tmp_path):
    text = (
        "[run]\nepochs = {epochs}\nn_samples = 8\nmetric_sample_count = 16\n"
        "checkpoint_every = 2\n\n[estimator]\nn_shots = 50\n\n[target]\nn = 100\n"
    )
    (tmp_path / "short.ini").write_text(text.format(epochs=3))
    (tmp_path / "long.ini").write_text(text.format(epochs=6))
    run = tmp_path / "run"
    assert hqgan.cmd_train(str(tmp_path / "short.ini"), str(run)) == 3
    assert hqgan.cmd_resume(str(run / "checkpoint.json"), str(tmp_path / "long.ini")) == 6
    report = hqgan.cmd_report(str(run))
    with open(report / "metrics.csv") as f:
        rows = list(csv.DictReader(f))
    assert [int(r["epoch"]) for r in rows] == list(range(7))
    summary = json.loads((report / "summary.json").read_text())
    assert summary["epoch"] == 6
    with pytest.raises(hqgan.IoError):
        hqgan.cmd_report(str(tmp_path / "missing"))


def test_imports_the_expected_build():
    tree = os.environ.get("HQGAN_BUILD_TREE")
    if tree:
        assert hqgan._core.__file__.startswith(tree)
