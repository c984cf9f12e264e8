"""Equivariant Toeplitz spectral projectors on CP1 and the Fock plane."""

import json

from ._tzband import (
    ChartPoint,
    CirclePoint,
    DecayFit,
    Model,
    ModelId,
    SectionBasis,
    Spectrum,
    Symbol,
    TestFunctionChi,
    band_kernel,
    circle_act,
    default_config_json,
    eigenfunctions_at,
    experiment_names,
    first_order_spectrum,
    fit_decay,
    heisenberg_point,
    psi2,
    spectral_function,
    szego_kernel,
    toeplitz_spectrum,
    verify_normalization,
)


def default_config():
    return json.loads(default_config_json())


def run(name, out_dir="", **overrides):
    """Run one experiment with the default configuration updated by `overrides`."""
    cfg = default_config()
    cfg.update(overrides)
    return _tzband.run_experiment(name, json.dumps(cfg), out_dir)


from . import _tzband  # noqa: E402
