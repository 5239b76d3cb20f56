"""Simulator and optimizer for a movable-antenna full-duplex link.

The heavy lifting lives in the compiled `_core` extension; this package
re-exports its public surface.
"""

from ._core import (
    AntennaLayout,
    BaselineResult,
    ChannelRealization,
    FitnessTrace,
    LinkGains,
    Mode,
    Position,
    PpsoConfig,
    PpsoResult,
    SystemParams,
    __version__,
    brute_force,
    canonical_config,
    derive_seed,
    hd_min_rate_fitness,
    link_gains,
    min_rate_fitness,
    normalized_cumulative_error,
    render_plot_svg,
    run_antenna_selection,
    run_apo,
    run_experiment_json,
    run_fpa,
    run_ppso,
    sample_geometry,
    substream_seed,
)

__all__ = [
    "AntennaLayout",
    "BaselineResult",
    "ChannelRealization",
    "FitnessTrace",
    "LinkGains",
    "Mode",
    "Position",
    "PpsoConfig",
    "PpsoResult",
    "SystemParams",
    "__version__",
    "brute_force",
    "canonical_config",
    "derive_seed",
    "hd_min_rate_fitness",
    "link_gains",
    "min_rate_fitness",
    "normalized_cumulative_error",
    "render_plot_svg",
    "run_antenna_selection",
    "run_apo",
    "run_experiment_json",
    "run_fpa",
    "run_ppso",
    "sample_geometry",
    "substream_seed",
]
