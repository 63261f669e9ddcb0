"""Periodic 2D lattices on the torus, their duals, and recursive refinements.

A lattice is represented as a planar map instantiated from a one-cell
periodic template: vertices, edges with torus-wrap vectors, and oriented
face boundaries obtained by tracing the rotation system. Duality is exact
at the combinatorial level (dual edge k connects the two faces incident to
primal edge k), and stellation of every face yields the recursive
high-connectivity family.

Conventions:
  - L x L unit cells, row-major cell indexing; element index =
    (cy * L + cx) * per_cell + local.
  - edge wrap = integer 2-vector of torus wraps crossed traversing a -> b.
  - faces are traced with the interior on the left of each boundary dart;
    dart 2k is edge k traversed a -> b, dart 2k+1 is the reverse.
  - seams: cut_x is the set of edges wrapping in x; crossing parities of
    edge sets against (cut_x, cut_y) detect homology classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

FAMILIES = ("square", "kagome", "hexagonal", "trihexa", "recursive")

MAX_RECURSION_LEVEL = 4

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class LatticeKind:
    """Name of a lattice geometry: a base family, optionally dualized.

    level is the refinement depth for the recursive family (level 0 is the
    square lattice); dual_depth counts applications of the duality map.
    """

    family: str
    level: int = 0
    dual_depth: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown lattice family {self.family!r}")
        if self.family != "recursive" and self.level != 0:
            raise ValueError("level is only meaningful for the recursive family")
        if self.level < 0 or self.dual_depth < 0:
            raise ValueError("level and dual_depth must be nonnegative")

    def dual_of(self) -> "LatticeKind":
        return LatticeKind(self.family, self.level, self.dual_depth + 1)

    @property
    def base(self) -> "LatticeKind":
        return LatticeKind(self.family, self.level, 0)

    def __str__(self) -> str:
        name = self.family if self.family != "recursive" else f"recursive({self.level})"
        for _ in range(self.dual_depth):
            name = f"dual({name})"
        return name

    @classmethod
    def parse(cls, text: str) -> "LatticeKind":
        s = text.strip().lower()
        depth = 0
        while s.startswith("dual(") and s.endswith(")"):
            s = s[5:-1].strip()
            depth += 1
        level = 0
        family = s
        if s.startswith("recursive"):
            family = "recursive"
            inner = s[len("recursive"):].strip()
            if inner:
                if not (inner.startswith("(") and inner.endswith(")")):
                    raise ValueError(f"cannot parse lattice kind {text!r}")
                level = int(inner[1:-1])
        if family not in FAMILIES:
            raise ValueError(f"unknown lattice kind {text!r}")
        return cls(family, level, depth)


# ---------------------------------------------------------------------------
# One-cell templates (periodic planar maps)
# ---------------------------------------------------------------------------


@dataclass
class _Template:
    """One unit cell of a periodic planar map.

    edges rows are (va, vb, ox, oy): an edge from vertex va in cell (0,0)
    to vertex vb in cell (ox,oy). Face data is derived by _trace_faces.
    """

    name: str
    basis: np.ndarray          # (2,2) rows are the cell lattice vectors
    vfrac: np.ndarray          # (m,2) vertex positions, fractional coords
    edges: np.ndarray          # (e,4) int
    # derived
    n_faces: int = 0
    face_of_dart: np.ndarray = field(default=None, repr=False)
    dart_u: np.ndarray = field(default=None, repr=False)   # (2e,2) origin-cell offset within face trace
    face_cycles: list = field(default_factory=list, repr=False)  # ordered (dart, u) arrays per face class
    face_cfrac: np.ndarray = field(default=None, repr=False)     # (f,2) face centroids, fractional

    @property
    def n_vertices(self) -> int:
        return len(self.vfrac)

    @property
    def n_edges(self) -> int:
        return len(self.edges)


def _dart_origin(t: _Template, d: int) -> int:
    k = d >> 1
    return t.edges[k, 0] if d & 1 == 0 else t.edges[k, 1]


def _dart_offset(t: _Template, d: int) -> np.ndarray:
    k = d >> 1
    off = t.edges[k, 2:4]
    return off if d & 1 == 0 else -off


def _trace_faces(t: _Template) -> None:
    """Derive the face structure of a template from its embedding.

    Builds the rotation system by sorting darts counterclockwise at each
    vertex, then traces face orbits with phi(d) = rot_prev(twin(d)),
    accumulating cell offsets. Every orbit must close with zero offset.
    """
    m, e = t.n_vertices, t.n_edges
    nd = 2 * e
    cart = t.vfrac @ t.basis

    # direction of each dart at its origin
    dirs = np.empty((nd, 2))
    for d in range(nd):
        k = d >> 1
        a, b = t.edges[k, 0], t.edges[k, 1]
        off = t.edges[k, 2:4].astype(float)
        vec = (t.vfrac[b] + off) @ t.basis - cart[a]
        dirs[d] = vec if d & 1 == 0 else -vec

    rot_prev = np.full(nd, -1, dtype=np.int64)
    by_vertex: list[list[int]] = [[] for _ in range(m)]
    for d in range(nd):
        by_vertex[_dart_origin(t, d)].append(d)
    for v, ds in enumerate(by_vertex):
        if not ds:
            raise ValueError(f"template {t.name}: isolated vertex {v}")
        ang = [math.atan2(dirs[d, 1], dirs[d, 0]) for d in ds]
        order = sorted(range(len(ds)), key=lambda i: ang[i])
        gaps = [
            (ang[order[(i + 1) % len(ds)]] - ang[order[i]]) % (2 * math.pi)
            for i in range(len(ds))
        ]
        if len(ds) > 1 and min(gaps) < 1e-9:
            raise ValueError(f"template {t.name}: degenerate dart angles at vertex {v}")
        for i, oi in enumerate(order):
            rot_prev[ds[oi]] = ds[order[i - 1]]

    face_of_dart = np.full(nd, -1, dtype=np.int64)
    dart_u = np.zeros((nd, 2), dtype=np.int64)
    cycles = []
    centroids = []
    for d0 in range(nd):
        if face_of_dart[d0] >= 0:
            continue
        fid = len(cycles)
        cyc = []
        d, u = d0, np.zeros(2, dtype=np.int64)
        pts = []
        while True:
            if face_of_dart[d] >= 0:
                raise ValueError(f"template {t.name}: inconsistent face trace")
            face_of_dart[d] = fid
            dart_u[d] = u
            cyc.append((d, u.copy()))
            pts.append(t.vfrac[_dart_origin(t, d)] + u)
            u = u + _dart_offset(t, d)
            d = rot_prev[d ^ 1]
            if d == d0:
                break
        if u[0] != 0 or u[1] != 0:
            raise ValueError(f"template {t.name}: face trace did not close (non-planar embedding)")
        cycles.append(cyc)
        centroids.append(np.mean(pts, axis=0))

    t.n_faces = len(cycles)
    t.face_of_dart = face_of_dart
    t.dart_u = dart_u
    t.face_cycles = cycles
    t.face_cfrac = np.array(centroids)
    if t.n_vertices - t.n_edges + t.n_faces != 0:
        raise ValueError(f"template {t.name}: Euler characteristic != 0 per cell")


_SKEW = np.array([[1.0, 0.0], [0.5, _SQRT3 / 2.0]])


def _template_square() -> _Template:
    t = _Template(
        name="square",
        basis=np.eye(2),
        vfrac=np.array([[0.0, 0.0]]),
        edges=np.array([[0, 0, 1, 0], [0, 0, 0, 1]], dtype=np.int64),
    )
    _trace_faces(t)
    return t


def _template_hexagonal() -> _Template:
    third = 1.0 / 3.0
    t = _Template(
        name="hexagonal",
        basis=_SKEW.copy(),
        vfrac=np.array([[0.0, 0.0], [third, third]]),
        edges=np.array(
            [[1, 0, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1]], dtype=np.int64
        ),
    )
    _trace_faces(t)
    return t


def _template_kagome() -> _Template:
    t = _Template(
        name="kagome",
        basis=_SKEW.copy(),
        vfrac=np.array([[0.5, 0.0], [0.0, 0.5], [0.5, 0.5]]),
        edges=np.array(
            [
                [0, 1, 0, 0],   # up triangle
                [0, 2, 0, 0],
                [1, 2, 0, 0],
                [2, 1, 1, 0],   # down triangle
                [2, 0, 0, 1],
                [1, 0, -1, 1],
            ],
            dtype=np.int64,
        ),
    )
    _trace_faces(t)
    return t


def _template_trihexa() -> _Template:
    # truncated honeycomb: each degree-3 site becomes a small triangle
    a = np.array([0.0, 0.0])
    b = np.array([1.0, 1.0]) / 3.0
    s = 1.0 / (2.0 + _SQRT3)  # truncation fraction giving equal edge lengths
    da = [b - a, b - a - (1, 0), b - a - (0, 1)]
    db = [a - b, a - b + (1, 0), a - b + (0, 1)]
    vfrac = np.array([a + s * d for d in da] + [b + s * d for d in db])
    t = _Template(
        name="trihexa",
        basis=_SKEW.copy(),
        vfrac=vfrac,
        edges=np.array(
            [
                [0, 1, 0, 0], [1, 2, 0, 0], [2, 0, 0, 0],      # A triangle
                [3, 4, 0, 0], [4, 5, 0, 0], [5, 3, 0, 0],      # B triangle
                [0, 3, 0, 0], [1, 4, -1, 0], [2, 5, 0, -1],    # connectors
            ],
            dtype=np.int64,
        ),
    )
    _trace_faces(t)
    return t


def _stellate(t: _Template) -> _Template:
    """Insert a center vertex in every face and connect it to each corner."""
    m, e, f = t.n_vertices, t.n_edges, t.n_faces
    vfrac = np.vstack([t.vfrac, t.face_cfrac])
    new_edges = [t.edges]
    for fid, cyc in enumerate(t.face_cycles):
        spokes = np.empty((len(cyc), 4), dtype=np.int64)
        for i, (d, u) in enumerate(cyc):
            spokes[i] = (m + fid, _dart_origin(t, d), u[0], u[1])
        new_edges.append(spokes)
    out = _Template(
        name=f"stellated({t.name})",
        basis=t.basis.copy(),
        vfrac=vfrac,
        edges=np.vstack(new_edges),
    )
    _trace_faces(out)
    if out.n_edges != e + sum(len(c) for c in t.face_cycles):
        raise AssertionError("stellation edge count mismatch")
    return out


@lru_cache(maxsize=None)
def _base_template(family: str, level: int = 0) -> _Template:
    if family == "square":
        return _template_square()
    if family == "hexagonal":
        return _template_hexagonal()
    if family == "kagome":
        return _template_kagome()
    if family == "trihexa":
        return _template_trihexa()
    if family == "recursive":
        if level == 0:
            return _template_square()
        return _stellate(_base_template("recursive", level - 1))
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# Lattice instantiation
# ---------------------------------------------------------------------------


class Lattice:
    """Immutable torus lattice: incidence arrays plus oriented faces.

    Attributes (all read-only by convention):
      kind, L, n_vertices, n_edges, n_faces
      edge_a, edge_b      endpoint vertex indices, (E,)
      edge_wrap           (E,2) int8 torus wraps crossed traversing a -> b
      edge_left, edge_right  incident face indices, (E,)
      face_ptr, face_dart ordered face boundaries as dart ids (2k fwd, 2k+1 rev)
      vertex_pos          (V,2) cartesian positions (metadata)
      cut_x, cut_y        sorted edge-id arrays of the two torus seams
    """

    def __init__(self, kind, L, edge_a, edge_b, edge_wrap, edge_left, edge_right,
                 face_ptr, face_dart, n_vertices, n_faces, vertex_pos, face_pos):
        self.kind = kind
        self.L = int(L)
        self.edge_a = edge_a
        self.edge_b = edge_b
        self.edge_wrap = edge_wrap
        self.edge_left = edge_left
        self.edge_right = edge_right
        self.face_ptr = face_ptr
        self.face_dart = face_dart
        self.n_vertices = int(n_vertices)
        self.n_edges = len(edge_a)
        self.n_faces = int(n_faces)
        self.vertex_pos = vertex_pos
        self.face_pos = face_pos
        self.cut_x = np.flatnonzero(edge_wrap[:, 0] % 2 != 0).astype(np.int64)
        self.cut_y = np.flatnonzero(edge_wrap[:, 1] % 2 != 0).astype(np.int64)
        self._adjacency = None
        self._dual = None
        self._validate()

    # -- construction checks ------------------------------------------------

    def _validate(self):
        if self.n_vertices - self.n_edges + self.n_faces != 0:
            raise AssertionError("Euler characteristic nonzero on the torus")
        if np.any(self.edge_a == self.edge_b):
            raise AssertionError("self-loop edge (L too small?)")
        if np.any(self.edge_left == self.edge_right):
            raise AssertionError("edge with identical incident faces (L too small?)")
        if len(self.face_dart) != 2 * self.n_edges:
            raise AssertionError("face boundaries do not cover every dart once")

    # -- derived structure ---------------------------------------------------

    @property
    def adjacency(self):
        """Vertex CSR adjacency (indptr, neighbor, edge_id), neighbor-sorted."""
        if self._adjacency is None:
            E = self.n_edges
            src = np.concatenate([self.edge_a, self.edge_b])
            dst = np.concatenate([self.edge_b, self.edge_a])
            eid = np.concatenate([np.arange(E), np.arange(E)])
            order = np.lexsort((eid, dst, src))
            src, dst, eid = src[order], dst[order], eid[order]
            indptr = np.zeros(self.n_vertices + 1, dtype=np.int64)
            np.add.at(indptr, src + 1, 1)
            np.cumsum(indptr, out=indptr)
            self._adjacency = (indptr, dst.astype(np.int64), eid.astype(np.int64))
        return self._adjacency

    @property
    def degrees(self) -> np.ndarray:
        counts = np.bincount(self.edge_a, minlength=self.n_vertices)
        counts += np.bincount(self.edge_b, minlength=self.n_vertices)
        return counts

    @property
    def face_sizes(self) -> np.ndarray:
        return np.diff(self.face_ptr)

    def face_edges(self, f: int) -> np.ndarray:
        """Ordered boundary edge ids of face f."""
        darts = self.face_dart[self.face_ptr[f]:self.face_ptr[f + 1]]
        return darts >> 1

    def dart_head(self, d):
        k = d >> 1
        return np.where(d & 1 == 0, self.edge_b[k], self.edge_a[k])

    def dart_origin(self, d):
        k = d >> 1
        return np.where(d & 1 == 0, self.edge_a[k], self.edge_b[k])


def _instantiate(kind: LatticeKind, t: _Template, L: int) -> Lattice:
    m, e, f = t.n_vertices, t.n_edges, t.n_faces
    cells = L * L
    nV, nE, nF = m * cells, e * cells, f * cells

    cx = np.tile(np.arange(L), L)           # cell coordinates in row-major order
    cy = np.repeat(np.arange(L), L)

    def vidx(qx, qy, local):
        return ((qy % L) * L + (qx % L)) * m + local

    def fidx(qx, qy, local):
        return ((qy % L) * L + (qx % L)) * f + local

    edge_a = np.empty(nE, dtype=np.int64)
    edge_b = np.empty(nE, dtype=np.int64)
    edge_wrap = np.zeros((nE, 2), dtype=np.int8)
    edge_left = np.empty(nE, dtype=np.int64)
    edge_right = np.empty(nE, dtype=np.int64)

    for j in range(e):
        a, b, ox, oy = t.edges[j]
        ids = (cy * L + cx) * e + j
        edge_a[ids] = (cy * L + cx) * m + a
        hx, hy = cx + ox, cy + oy
        edge_b[ids] = vidx(hx, hy, b)
        edge_wrap[ids, 0] = hx // L
        edge_wrap[ids, 1] = hy // L
        fl, ul = t.face_of_dart[2 * j], t.dart_u[2 * j]
        fr, ur = t.face_of_dart[2 * j + 1], t.dart_u[2 * j + 1]
        edge_left[ids] = fidx(cx - ul[0], cy - ul[1], fl)
        edge_right[ids] = fidx(cx + ox - ur[0], cy + oy - ur[1], fr)

    # ordered face boundaries
    sizes = np.array([len(c) for c in t.face_cycles], dtype=np.int64)
    face_ptr = np.zeros(nF + 1, dtype=np.int64)
    face_ptr[1:] = np.tile(sizes, cells).cumsum()
    face_dart = np.empty(2 * nE, dtype=np.int64)
    pos = 0
    for cell in range(cells):
        qx, qy = cell % L, cell // L
        for cyc in t.face_cycles:
            for d, u in cyc:
                j = d >> 1
                if d & 1 == 0:
                    gid = ((qy + u[1]) % L * L + (qx + u[0]) % L) * e + j
                    face_dart[pos] = 2 * gid
                else:
                    ox, oy = t.edges[j, 2], t.edges[j, 3]
                    gid = ((qy + u[1] - oy) % L * L + (qx + u[0] - ox) % L) * e + j
                    face_dart[pos] = 2 * gid + 1
                pos += 1

    cell_frac = np.stack([cx, cy], axis=1).astype(float)
    vertex_pos = (cell_frac[:, None, :] + t.vfrac[None, :, :]).reshape(nV, 2) @ t.basis
    face_pos = (cell_frac[:, None, :] + t.face_cfrac[None, :, :]).reshape(nF, 2) @ t.basis

    return Lattice(kind, L, edge_a, edge_b, edge_wrap, edge_left, edge_right,
                   face_ptr, face_dart, nV, nF, vertex_pos, face_pos)


def build(kind: LatticeKind | str, L: int, max_level: int = MAX_RECURSION_LEVEL) -> Lattice:
    """Build the torus lattice of the given kind with L x L unit cells."""
    if isinstance(kind, str):
        kind = LatticeKind.parse(kind)
    if L < 2:
        raise ValueError("L must be >= 2 (smaller tori degenerate to self-loops)")
    if kind.family == "recursive" and kind.level > max_level:
        raise ValueError(
            f"recursion level {kind.level} exceeds maximum {max_level} "
            "(edge count grows geometrically)"
        )
    lat = _instantiate(kind.base, _base_template(kind.family, kind.level), L)
    for _ in range(kind.dual_depth):
        lat = dual(lat)
    return lat


def build_recursive(n: int, L: int, max_level: int = MAX_RECURSION_LEVEL) -> Lattice:
    """Level-n stellation refinement of the square lattice (level 0)."""
    if n < 0:
        raise ValueError("recursion level must be nonnegative")
    return build(LatticeKind("recursive", level=n), L, max_level=max_level)


# ---------------------------------------------------------------------------
# Duality
# ---------------------------------------------------------------------------


def _face_trace_offsets(lat: Lattice) -> np.ndarray:
    """Wrap offset of each dart's origin within its face trace (2E, 2)."""
    o = np.zeros((2 * lat.n_edges, 2), dtype=np.int64)
    wrap = lat.edge_wrap.astype(np.int64)
    for fp in range(lat.n_faces):
        acc = np.zeros(2, dtype=np.int64)
        for d in lat.face_dart[lat.face_ptr[fp]:lat.face_ptr[fp + 1]]:
            o[d] = acc
            k, rev = d >> 1, d & 1
            acc = acc - wrap[k] if rev else acc + wrap[k]
        if acc[0] != 0 or acc[1] != 0:
            raise AssertionError("face boundary has nonzero net wrap")
    return o


def dual(lat: Lattice) -> Lattice:
    """The dual lattice: vertices and faces exchanged, edge ids preserved.

    Dual vertex i is primal face i; dual face i is primal vertex i; dual
    edge k connects the two faces incident to primal edge k.
    """
    if lat._dual is not None:
        return lat._dual
    E = lat.n_edges
    o = _face_trace_offsets(lat)
    d_a = lat.edge_left.copy()
    d_b = lat.edge_right.copy()
    # left/right face lifts of one edge lift anchor at -o[2k] and
    # wrap_k - o[2k+1]; their difference is the dual edge's wrap
    d_wrap = (o[0::2] - o[1::2] + lat.edge_wrap.astype(np.int64)).astype(np.int8)
    d_left = lat.edge_b.copy()
    d_right = lat.edge_a.copy()

    # prev_in_face permutation of the primal gives the rotation system:
    # sigma(d) = prev_in_face(d) ^ 1, and the dual face around primal vertex
    # v lists dual darts (d ^ 1) following sigma.
    prev_in_face = np.empty(2 * E, dtype=np.int64)
    for fp in range(lat.n_faces):
        darts = lat.face_dart[lat.face_ptr[fp]:lat.face_ptr[fp + 1]]
        prev_in_face[darts] = np.roll(darts, 1)

    first_dart = np.full(lat.n_vertices, 2 * E, dtype=np.int64)
    origins = np.empty(2 * E, dtype=np.int64)
    origins[0::2] = lat.edge_a
    origins[1::2] = lat.edge_b
    np.minimum.at(first_dart, origins, np.arange(2 * E))

    deg = np.bincount(origins, minlength=lat.n_vertices)
    dface_ptr = np.zeros(lat.n_vertices + 1, dtype=np.int64)
    np.cumsum(deg, out=dface_ptr[1:])
    dface_dart = np.empty(2 * E, dtype=np.int64)
    for v in range(lat.n_vertices):
        d = d0 = first_dart[v]
        pos = dface_ptr[v]
        while True:
            dface_dart[pos] = d ^ 1
            pos += 1
            d = prev_in_face[d] ^ 1  # sigma
            if d == d0:
                break
        if pos != dface_ptr[v + 1]:
            raise AssertionError("rotation orbit does not match vertex degree")

    lat._dual = Lattice(lat.kind.dual_of(), lat.L, d_a, d_b, d_wrap, d_left, d_right,
                        dface_ptr, dface_dart, lat.n_faces, lat.n_vertices,
                        lat.face_pos, lat.vertex_pos)
    return lat._dual


# ---------------------------------------------------------------------------
# Homology bookkeeping
# ---------------------------------------------------------------------------


def seam_crossing_parity(lat: Lattice, edge_set) -> tuple[int, int]:
    """Crossing parities of an edge set against the two torus seams."""
    idx = np.asarray(edge_set, dtype=np.int64)
    if idx.size == 0:
        return (0, 0)
    w = lat.edge_wrap[idx].astype(np.int64)
    return (int(w[:, 0].sum() % 2), int(w[:, 1].sum() % 2))


def homology_representative(lat: Lattice, klass: tuple[int, int]) -> np.ndarray:
    """Edge ids of a cycle whose seam-crossing parity equals klass.

    Fundamental cycles of a BFS tree span the homology group, so the
    requested class is reached by XOR-ing at most two of them. Used as
    the canonical logical-operator representative.
    """
    from . import _graphops

    target = (klass[0] & 1) | ((klass[1] & 1) << 1)
    if target == 0:
        raise ValueError("klass must be a nontrivial homology class")
    indptr, nbr, eid = lat.adjacency
    wrap = lat.edge_wrap.astype(np.int64)
    wx, wy = np.ascontiguousarray(wrap[:, 0]), np.ascontiguousarray(wrap[:, 1])
    dist, pred, potx, poty = _graphops.bfs_potential(
        indptr, nbr, eid, lat.edge_a, lat.edge_b, wx, wy, 0, lat.n_vertices
    )
    if np.any(dist < 0):
        raise AssertionError("lattice is not connected")
    masks = {}
    for k in range(lat.n_edges):
        a, b = lat.edge_a[k], lat.edge_b[k]
        if pred[a] == k or pred[b] == k:
            continue
        m = int((potx[a] + wx[k] - potx[b]) & 1) | (int((poty[a] + wy[k] - poty[b]) & 1) << 1)
        if m != 0 and m not in masks:
            masks[m] = k
        if target in masks:
            break
    if target in masks:
        picks = [masks[target]]
    else:
        picks = None
        for m1 in masks:
            for m2 in masks:
                if m1 < m2 and (m1 ^ m2) == target:
                    picks = [masks[m1], masks[m2]]
                    break
            if picks:
                break
        if picks is None:
            raise AssertionError(f"no cycle of class {klass} found")
    sel = np.zeros(lat.n_edges, dtype=np.uint8)
    for k in picks:
        sel[k] ^= 1
        for v in (lat.edge_a[k], lat.edge_b[k]):
            node = v
            while pred[node] >= 0:
                e = pred[node]
                sel[e] ^= 1
                node = lat.edge_a[e] if lat.edge_b[e] == node else lat.edge_b[e]
    return np.flatnonzero(sel).astype(np.int64)


# ---------------------------------------------------------------------------
# Canonical form (map isomorphism)
# ---------------------------------------------------------------------------


def canonical_form(lat: Lattice) -> bytes:
    """Canonical encoding of the lattice as an embedded map.

    Two lattices are isomorphic as cell complexes iff their canonical
    forms are equal. The encoding is the lexicographic minimum over all
    starting darts and both orientations of a rotation-respecting BFS
    label sequence; quadratic in the number of darts, intended for
    test-sized lattices.
    """
    E = lat.n_edges
    nd = 2 * E
    prev_in_face = np.empty(nd, dtype=np.int64)
    for fp in range(lat.n_faces):
        darts = lat.face_dart[lat.face_ptr[fp]:lat.face_ptr[fp + 1]]
        prev_in_face[darts] = np.roll(darts, 1)
    sigma = prev_in_face ^ 1  # sigma(d) = prev_in_face(d) ^ 1
    sigma_inv = np.empty(nd, dtype=np.int64)
    sigma_inv[sigma] = np.arange(nd)
    origin = np.empty(nd, dtype=np.int64)
    origin[0::2] = lat.edge_a
    origin[1::2] = lat.edge_b

    def head(d):
        return origin[d ^ 1]

    best = None
    for rot in (sigma, sigma_inv):
        for start in range(nd):
            label = np.full(lat.n_vertices, -1, dtype=np.int64)
            ref = np.empty(lat.n_vertices, dtype=np.int64)
            label[origin[start]] = 0
            ref[origin[start]] = start
            order = [origin[start]]
            code = bytearray()
            qi = 0
            while qi < len(order):
                v = order[qi]
                qi += 1
                d = d0 = ref[v]
                while True:
                    w = head(d)
                    if label[w] < 0:
                        label[w] = len(order)
                        ref[w] = d ^ 1
                        order.append(w)
                    code += int(label[w]).to_bytes(4, "big")
                    d = rot[d]
                    if d == d0:
                        break
                code += b"\xff\xff\xff\xff"
            enc = bytes(code)
            if best is None or enc < best:
                best = enc
    return best


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------


def lattice_to_text(lat: Lattice) -> str:
    """Serialize a lattice to the documented line-per-record text format."""
    from . import __version__

    out = []
    out.append("# surflat lattice format v1")
    out.append(f"# generated by surflat {__version__}")
    out.append(f"lattice {lat.kind}")
    out.append(f"size {lat.L}")
    out.append(f"counts vertices={lat.n_vertices} edges={lat.n_edges} faces={lat.n_faces}")
    indptr, _, eid = lat.adjacency
    for v in range(lat.n_vertices):
        es = ",".join(str(k) for k in sorted(eid[indptr[v]:indptr[v + 1]]))
        x, y = lat.vertex_pos[v]
        out.append(f"vertex {v} pos={x:.6f},{y:.6f} edges={es}")
    for k in range(lat.n_edges):
        out.append(
            f"edge {k} a={lat.edge_a[k]} b={lat.edge_b[k]} "
            f"left={lat.edge_left[k]} right={lat.edge_right[k]} "
            f"wrap={lat.edge_wrap[k, 0]},{lat.edge_wrap[k, 1]}"
        )
    for fp in range(lat.n_faces):
        es = ",".join(str(k) for k in lat.face_edges(fp))
        out.append(f"face {fp} size={lat.face_ptr[fp + 1] - lat.face_ptr[fp]} edges={es}")
    out.append("seam x " + ",".join(str(k) for k in lat.cut_x))
    out.append("seam y " + ",".join(str(k) for k in lat.cut_y))
    return "\n".join(out) + "\n"
