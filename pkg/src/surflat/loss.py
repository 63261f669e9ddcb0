"""Qubit loss: merged stabilizers by edge contraction, survival tests,
and decoding on the damaged lattice.

Losing a qubit removes its edge from both the primal and dual pictures;
the two stabilizers that shared it merge into a superstabilizer, which is
edge contraction on the corresponding graph. Contraction keeps the torus
topology, so homology-class failure detection still works provided each
surviving edge's wrap vector is corrected by the wrap potentials of its
endpoints inside their merged clusters (equivalent to rerouting the seams
around the lost edges). If the lost edges themselves contain a
noncontractible cycle the corresponding handle of the torus is destroyed:
windings along it become trivial and failure classes are reported modulo
that killed subspace.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _graphops
from ._matching import min_weight_perfect_matching
from .decoder import DecodeOutcome
from .lattice import Lattice, dual


@dataclass
class ContractedGraph:
    """One side (primal or dual) of a damaged code.

    Sites are the original vertices of the decoding graph; supervertices
    are connected clusters of lost edges. Surviving edges keep their
    original ids; self-loop edges (both endpoints in one supervertex) are
    recorded and left out of the matching graph.
    """

    n_sites: int
    n_super: int
    super_of: np.ndarray          # site -> dense supervertex id
    pot: np.ndarray               # (n_sites, 2) wrap offset site -> cluster root
    killed: tuple[int, ...]       # GF(2) masks of destroyed handle windings
    site_a: np.ndarray            # original endpoints per lattice edge
    site_b: np.ndarray
    wrap: np.ndarray              # original wrap vectors per lattice edge
    sup_a: np.ndarray             # supervertex endpoints per lattice edge
    sup_b: np.ndarray
    eff_wrap: np.ndarray          # (E, 2) potential-corrected wraps
    surviving: np.ndarray         # surviving edge ids (sorted)
    self_loops: np.ndarray        # surviving edges internal to one supervertex
    indptr: np.ndarray = field(repr=False)
    nbr: np.ndarray = field(repr=False)
    eid: np.ndarray = field(repr=False)

    def defects(self, error_edges) -> np.ndarray:
        idx = np.asarray(error_edges, dtype=np.int64)
        counts = np.bincount(self.sup_a[idx], minlength=self.n_super)
        counts += np.bincount(self.sup_b[idx], minlength=self.n_super)
        return np.flatnonzero(counts & 1).astype(np.int64)


def _contract(site_a, site_b, wrap, n_sites, lost, surviving) -> ContractedGraph:
    wx = np.ascontiguousarray(wrap[:, 0].astype(np.int64))
    wy = np.ascontiguousarray(wrap[:, 1].astype(np.int64))
    root, potx, poty, k0, k1 = _graphops.contract_lost(
        site_a, site_b, wx, wy, lost, n_sites
    )
    roots, super_of = np.unique(root, return_inverse=True)
    sup_a = super_of[site_a]
    sup_b = super_of[site_b]
    eff = np.stack(
        [wx - potx[site_a] + potx[site_b], wy - poty[site_a] + poty[site_b]],
        axis=1,
    )
    is_loop = sup_a[surviving] == sup_b[surviving]
    self_loops = surviving[is_loop]
    graph_edges = surviving[~is_loop]

    src = np.concatenate([sup_a[graph_edges], sup_b[graph_edges]])
    dst = np.concatenate([sup_b[graph_edges], sup_a[graph_edges]])
    eid = np.concatenate([graph_edges, graph_edges])
    order = np.lexsort((eid, dst, src))
    src, dst, eid = src[order], dst[order], eid[order]
    indptr = np.zeros(len(roots) + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    np.cumsum(indptr, out=indptr)

    killed = tuple(m for m in (int(k0), int(k1)) if m)
    return ContractedGraph(
        n_sites=n_sites, n_super=len(roots), super_of=super_of,
        pot=np.stack([potx, poty], axis=1), killed=killed,
        site_a=site_a, site_b=site_b, wrap=np.stack([wx, wy], axis=1),
        sup_a=sup_a, sup_b=sup_b, eff_wrap=eff,
        surviving=surviving, self_loops=self_loops,
        indptr=indptr, nbr=dst.astype(np.int64), eid=eid.astype(np.int64),
    )


@dataclass
class DamagedCode:
    """Lattice plus loss set with both contracted stabilizer structures."""

    base: Lattice
    lost: np.ndarray
    surviving: np.ndarray
    primal: ContractedGraph
    dual: ContractedGraph
    _survives: dict = field(default_factory=dict, repr=False)


def damage(lat: Lattice, lost) -> DamagedCode:
    """Contract the lost edges on both the primal and dual graphs."""
    lost = np.unique(np.asarray(lost, dtype=np.int64))
    if len(lost) and (lost[0] < 0 or lost[-1] >= lat.n_edges):
        raise ValueError("lost edge index out of range")
    surviving = np.setdiff1d(np.arange(lat.n_edges, dtype=np.int64), lost)
    dlat = dual(lat)
    primal = _contract(lat.edge_a, lat.edge_b, lat.edge_wrap.astype(np.int64),
                       lat.n_vertices, lost, surviving)
    dual_side = _contract(dlat.edge_a, dlat.edge_b, dlat.edge_wrap.astype(np.int64),
                          dlat.n_vertices, lost, surviving)
    for side in (primal, dual_side):
        if len(side.surviving) != lat.n_edges - len(lost):
            raise AssertionError("contraction lost or duplicated edges")
    return DamagedCode(base=lat, lost=lost, surviving=surviving,
                       primal=primal, dual=dual_side)


def logical_survives(dc: DamagedCode, operator_type: str) -> bool:
    """Whether a noncontractible cycle survives on the primal (Z) or
    dual (X) subgraph of surviving edges."""
    if operator_type not in ("Z", "X"):
        raise ValueError("operator_type must be 'Z' or 'X'")
    if operator_type not in dc._survives:
        side = dc.primal if operator_type == "Z" else dc.dual
        pos = _graphops.uf_wrap_sweep(
            side.site_a, side.site_b,
            np.ascontiguousarray(side.wrap[:, 0]),
            np.ascontiguousarray(side.wrap[:, 1]),
            dc.surviving, side.n_sites,
        )
        dc._survives[operator_type] = pos >= 0
    return dc._survives[operator_type]


def _reduce_mod_killed(mask: int, killed: tuple[int, ...]) -> int:
    best = mask
    span = {0}
    for k in killed:
        span |= {s ^ k for s in span}
    for s in span:
        if mask ^ s < best:
            best = mask ^ s
    return best


def decode_damaged(dc: DamagedCode, error_edges, error_type: str) -> DecodeOutcome:
    """MWPM decoding against merged stabilizers on the damaged lattice.

    Matching runs on the contracted graph (contracted edges are free, so
    hop counts there equal the standard loss-adapted weights). A trial
    whose decoded-type logical operator did not survive the loss counts
    as failed outright: the encoded information is gone.
    """
    error_edges = np.asarray(error_edges, dtype=np.int64)
    if np.intersect1d(error_edges, dc.lost).size:
        raise ValueError("error edges must be disjoint from lost edges")
    side = dc.primal if error_type == "Z" else dc.dual
    if error_type not in ("Z", "X"):
        raise ValueError("error_type must be 'Z' or 'X'")

    if not logical_survives(dc, error_type):
        return DecodeOutcome(
            correction=np.zeros(0, dtype=np.int64),
            residual=error_edges.copy(),
            failed=True,
            failure_class=None,
            failure_reason="logical_destroyed",
        )

    defects = side.defects(error_edges)
    mask = np.zeros(dc.base.n_edges, dtype=np.uint8)
    if len(defects):
        dist_all, pred = _graphops.bfs_multi(side.indptr, side.nbr, side.eid,
                                             defects, side.n_super)
        dist = dist_all[:, defects]
        unreachable = dist < 0
        if unreachable.any():
            # even defect parity holds per component, so finite-weight
            # perfect matchings exist; price cross-component pairs out
            big = (int(dist.max()) + 1) * (len(defects) + 1)
            dist = np.where(unreachable, big, dist)
        pairs = min_weight_perfect_matching(dist)
        for i, j in pairs:
            if unreachable.size and unreachable[i, j]:
                raise AssertionError("matching crossed disconnected components")
            node = defects[j]
            target = defects[i]
            while node != target:
                k = pred[i, node]
                mask[k] ^= 1
                node = side.sup_a[k] if side.sup_b[k] == node else side.sup_b[k]

    err = np.zeros(dc.base.n_edges, dtype=np.uint8)
    err[error_edges] = 1
    residual = np.flatnonzero(err ^ mask).astype(np.int64)
    if len(side.defects(residual)):
        raise AssertionError("residual has nonempty super-syndrome")

    w = side.eff_wrap[residual]
    raw = (int(w[:, 0].sum() % 2) | (int(w[:, 1].sum() % 2) << 1)) if len(residual) else 0
    reduced = _reduce_mod_killed(raw, side.killed)
    failure_class = (reduced & 1, (reduced >> 1) & 1)
    return DecodeOutcome(
        correction=np.flatnonzero(mask).astype(np.int64),
        residual=residual,
        failed=failure_class != (0, 0),
        failure_class=failure_class,
    )
