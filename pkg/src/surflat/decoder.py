"""MWPM error correction and homology-class failure detection.

Z errors are decoded on the primal vertex graph, X errors on the dual
vertex graph (faces). Defect pair distances are BFS hop counts; unit
weights are exact here because i.i.d. noise makes -log(p/(1-p)) edge
weights a uniform scale factor that cannot change the argmin matching.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _graphops
from ._matching import min_weight_perfect_matching
from .lattice import Lattice, dual
from .stabilizer import Syndrome, syndrome_from_edges


class _SiteView(NamedTuple):
    """Decoding graph for one error type: sites, endpoints, wraps, CSR."""

    n_sites: int
    site_a: np.ndarray
    site_b: np.ndarray
    wrap: np.ndarray
    indptr: np.ndarray
    nbr: np.ndarray
    eid: np.ndarray


def _site_view(lat: Lattice, error_type: str) -> _SiteView:
    g = lat if error_type == "Z" else dual(lat)
    indptr, nbr, eid = g.adjacency
    return _SiteView(g.n_vertices, g.edge_a, g.edge_b,
                     g.edge_wrap.astype(np.int64), indptr, nbr, eid)


@dataclass
class DefectGraph:
    """All-pairs shortest-path structure over the defect sites.

    dist[i, j] is the hop distance between defects i and j; the BFS
    predecessor trees stored per defect realize one canonical shortest
    path per pair (ties broken toward the lowest-index neighbor).
    """

    error_type: str
    sites: np.ndarray                 # defect site indices
    dist: np.ndarray                  # (n, n) int64
    _pred: np.ndarray = field(repr=False)       # (n, V) BFS predecessor edge ids
    _site_a: np.ndarray = field(repr=False)
    _site_b: np.ndarray = field(repr=False)

    def path(self, i: int, j: int) -> np.ndarray:
        """Edge ids of the stored shortest path between defects i and j."""
        target = self.sites[i]
        node = self.sites[j]
        edges = []
        while node != target:
            k = self._pred[i, node]
            if k < 0:
                raise ValueError("defects lie in different components")
            edges.append(k)
            node = self._site_a[k] if self._site_b[k] == node else self._site_b[k]
        return np.asarray(edges, dtype=np.int64)


def defect_distances(lat: Lattice, syn: Syndrome) -> DefectGraph:
    """BFS all-pairs distances between the syndrome's defects."""
    if len(syn.defects) % 2 != 0:
        raise ValueError("odd defect count")
    view = _site_view(lat, syn.error_type)
    sites = np.asarray(syn.defects, dtype=np.int64)
    dist_all, pred = _graphops.bfs_multi(view.indptr, view.nbr, view.eid,
                                         sites, view.n_sites)
    return DefectGraph(
        error_type=syn.error_type,
        sites=sites,
        dist=dist_all[:, sites] if len(sites) else np.zeros((0, 0), dtype=np.int64),
        _pred=pred,
        _site_a=view.site_a,
        _site_b=view.site_b,
    )


def mwpm(g: DefectGraph) -> list[tuple[int, int]]:
    """Minimum-weight perfect matching of the defect graph.

    Returns index pairs into g.sites. Exact blossom matching on the
    complete defect graph; deterministic for fixed input.
    """
    n = len(g.sites)
    if n % 2 != 0:
        raise ValueError("odd defect count indicates an upstream bug")
    if n == 0:
        return []
    return min_weight_perfect_matching(g.dist)


@dataclass(frozen=True)
class DecodeOutcome:
    """Result of one decoding trial.

    failure_class holds the seam-crossing parities of the residual; None
    means the trial failed before decoding because the decoded type's
    logical operator did not survive qubit loss.
    """

    correction: np.ndarray
    residual: np.ndarray
    failed: bool
    failure_class: tuple[int, int] | None
    failure_reason: str | None = None


def _xor_paths(n_edges: int, g: DefectGraph, pairs) -> np.ndarray:
    mask = np.zeros(n_edges, dtype=np.uint8)
    for i, j in pairs:
        for k in g.path(i, j):
            mask[k] ^= 1
    return mask


def decode(lat: Lattice, error_edges, error_type: str) -> DecodeOutcome:
    """Decode one error pattern on a loss-free lattice.

    The correction is the XOR of the stored shortest paths of all matched
    defect pairs; the residual (error XOR correction) is always a cycle,
    and the trial fails iff that cycle is homologically nontrivial.
    """
    error_edges = np.asarray(error_edges, dtype=np.int64)
    syn = syndrome_from_edges(lat, error_edges, error_type)
    g = defect_distances(lat, syn)
    pairs = mwpm(g)

    mask = _xor_paths(lat.n_edges, g, pairs)
    err = np.zeros(lat.n_edges, dtype=np.uint8)
    err[error_edges] = 1
    residual = np.flatnonzero(err ^ mask).astype(np.int64)

    if len(syndrome_from_edges(lat, residual, error_type).defects):
        raise AssertionError("residual has nonempty syndrome")

    view_wrap = lat.edge_wrap if error_type == "Z" else dual(lat).edge_wrap
    w = view_wrap[residual].astype(np.int64)
    failure_class = (int(w[:, 0].sum() % 2), int(w[:, 1].sum() % 2)) if len(residual) else (0, 0)
    return DecodeOutcome(
        correction=np.flatnonzero(mask).astype(np.int64),
        residual=residual,
        failed=failure_class != (0, 0),
        failure_class=failure_class,
    )
