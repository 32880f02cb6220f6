"""Hybrid quantum GAN: 2-qubit density-matrix generator, MLP discriminator."""

from ._core import (
    AdamState,
    ConfigError,
    DistributionSummary,
    EpochRecord,
    EstimatorConfig,
    EstimatorMode,
    Generator,
    Histogram,
    IoError,
    MlpParams,
    NoiseParams,
    NumericalError,
    Overrides,
    RunConfig,
    TargetSpec,
    TrainConfig,
    Trainer,
    adam_step,
    amplitude_damping_kraus,
    cmd_report,
    cmd_resume,
    cmd_target,
    cmd_train,
    combined_kraus,
    damping_probability,
    dephasing_kraus,
    dephasing_probability,
    discriminator_loss,
    fingerprint,
    format_config,
    generator_loss,
    histogram,
    init_mlp,
    kl_divergence,
    make_target,
    mlp_forward,
    mlp_input_gradient,
    parse_config,
    readout_corrected_expectation,
    summarize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
