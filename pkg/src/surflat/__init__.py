"""surflat: surface codes on general 2D lattices.

Monte Carlo estimation of error thresholds (MWPM decoding), qubit-loss
tolerance (superstabilizers + percolation), and bond-percolation
thresholds for periodic lattices and their duals.
"""

__version__ = "0.1.0"

from .lattice import (
    Lattice,
    LatticeKind,
    build,
    build_recursive,
    canonical_form,
    dual,
    lattice_to_text,
    seam_crossing_parity,
)
from .noise import ErrorPattern, NoiseParams, sample
from .stabilizer import Syndrome, syndrome
from .decoder import DecodeOutcome, DefectGraph, decode, defect_distances, mwpm
from .loss import DamagedCode, damage, decode_damaged, logical_survives
from .analysis import (
    PercolationEstimate,
    ScalingFit,
    SweepConfig,
    SweepRow,
    SweepTable,
    fit_threshold,
    gv_residual,
    nishimori_beta,
    percolation_threshold,
    run_sweep,
)

__all__ = [
    "Lattice",
    "LatticeKind",
    "build",
    "build_recursive",
    "canonical_form",
    "dual",
    "lattice_to_text",
    "seam_crossing_parity",
    "ErrorPattern",
    "NoiseParams",
    "sample",
    "Syndrome",
    "syndrome",
    "DecodeOutcome",
    "DefectGraph",
    "decode",
    "defect_distances",
    "mwpm",
    "DamagedCode",
    "damage",
    "decode_damaged",
    "logical_survives",
    "PercolationEstimate",
    "ScalingFit",
    "SweepConfig",
    "SweepRow",
    "SweepTable",
    "fit_threshold",
    "gv_residual",
    "nishimori_beta",
    "percolation_threshold",
    "run_sweep",
    "__version__",
]
