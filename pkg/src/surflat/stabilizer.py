"""Error syndromes: parity of stabilizer violations at vertices and faces.

Z errors anticommute with the vertex (star) operators of the edges they
touch, so their defects live on primal vertices; X errors anticommute with
the face (plaquette) operators, so their defects live on faces, which are
the vertices of the dual lattice. With perfect measurements the syndrome
is plain incidence parity, no operator algebra needed.
"""

from dataclasses import dataclass

import numpy as np

from .lattice import Lattice
from .noise import ErrorPattern


@dataclass(frozen=True)
class Syndrome:
    error_type: str           # "Z" or "X"
    defects: np.ndarray       # vertex indices (Z) or face indices (X)


def _defect_sites(n_sites: int, site_a: np.ndarray, site_b: np.ndarray,
                  error_edges: np.ndarray) -> np.ndarray:
    idx = np.asarray(error_edges, dtype=np.int64)
    counts = np.bincount(site_a[idx], minlength=n_sites)
    counts += np.bincount(site_b[idx], minlength=n_sites)
    return np.flatnonzero(counts & 1).astype(np.int64)


def syndrome_from_edges(lat: Lattice, error_edges, error_type: str) -> Syndrome:
    """Syndrome of a raw error edge set on a loss-free lattice."""
    if error_type == "Z":
        defects = _defect_sites(lat.n_vertices, lat.edge_a, lat.edge_b, error_edges)
    elif error_type == "X":
        defects = _defect_sites(lat.n_faces, lat.edge_left, lat.edge_right, error_edges)
    else:
        raise ValueError(f"error_type must be 'Z' or 'X', got {error_type!r}")
    return Syndrome(error_type=error_type, defects=defects)


def syndrome(lat: Lattice, pattern: ErrorPattern, error_type: str) -> Syndrome:
    """Syndrome of a sampled pattern.

    Rejects patterns with losses: merged-stabilizer syndromes live in the
    damaged-code pipeline (see the loss module).
    """
    if len(pattern.lost):
        raise ValueError("pattern has lost qubits; use the damaged-code path")
    edges = pattern.z_errors if error_type == "Z" else pattern.x_errors
    return syndrome_from_edges(lat, edges, error_type)
