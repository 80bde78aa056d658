"""Deterministic structured triangulation of the unit disk.

The mesh is a polar tensor grid: concentric rings sharing one angular
node set, a fan of triangles around the origin, and each annular quad
split into two triangles with an alternating diagonal pattern. Every
partition endpoint (Dirichlet-Neumann junction) is an angular node, so
boundary edges never straddle a junction.

Two refinement devices target the r^(1/2)-type singularity at the
junctions: the angular grid is geometrically clustered toward each
junction angle, and the outermost radial interval is geometrically
subdivided toward the boundary circle (ratio `grading_ratio`,
`grading_levels` steps each). Angular node counts are even per
partition interval, which makes the triangulation itself (not just the
vertex set) invariant under the reflection theta -> -theta whenever the
partition is, and under rotations by an even number of angular steps.
Vertex coordinates of mirror-partner nodes are forced bitwise symmetric
so the assembled operators commute with the reflection to rounding
accuracy.

Identical inputs produce bit-identical meshes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .angles import ANGLE_TOL, PiAngle, norm, rad, to_pi
from .geometry import BoundaryPartition, Label

__all__ = [
    "BoundaryEdge",
    "DiskMesh",
    "MeshSizeError",
    "MeshSymmetryError",
    "reflection_vertex_map",
    "rotation_vertex_map",
    "symmetrize_angular",
    "triangle_angles",
    "triangle_areas",
    "triangulate",
    "write_mesh",
    "y_reflection_vertex_map",
]

MAX_VERTICES = 1_500_000
MAX_ANGULAR = 16_384


class MeshSizeError(RuntimeError):
    """Requested resolution exceeds the vertex budget."""


class MeshSymmetryError(RuntimeError):
    """The mesh does not carry the requested symmetry."""


@dataclass(frozen=True)
class BoundaryEdge:
    v0: int
    v1: int
    label: Label
    arc_id: int  # index into partition arcs (Dirichlet) or gaps (Neumann)


@dataclass(frozen=True, eq=False)
class DiskMesh:
    vertices: np.ndarray  # (N, 2) float
    triangles: np.ndarray  # (T, 3) int, counterclockwise
    boundary_edges: tuple[BoundaryEdge, ...]
    junction_vertices: np.ndarray  # vertex ids of partition endpoints
    h: float
    grading_levels: int
    grading_ratio: float
    partition: BoundaryPartition
    theta_pi: tuple[PiAngle, ...]  # angular nodes, pi units, ascending
    ring_radii: np.ndarray  # ascending, last entry 1.0
    angular_spacing_pi: Optional[Fraction]  # set when the grid is uniform
    graded_triangles: np.ndarray  # bool mask of triangles in graded zones

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def n_angular(self) -> int:
        return len(self.theta_pi)

    @property
    def n_rings(self) -> int:
        return len(self.ring_radii)

    @property
    def theta(self) -> np.ndarray:
        return np.array([rad(t) for t in self.theta_pi])

    def vertex_id(self, ring: int, j: int) -> int:
        return 1 + ring * self.n_angular + (j % self.n_angular)

    @property
    def outer_ring_ids(self) -> np.ndarray:
        a = self.n_angular
        return 1 + (self.n_rings - 1) * a + np.arange(a)

    def boundary_vertex_mask(self) -> np.ndarray:
        mask = np.zeros(self.n_vertices, dtype=bool)
        mask[self.outer_ring_ids] = True
        return mask


def _interval_cuts(length_rad: float, h: float, levels: int, ratio: float) -> list[float]:
    """Interior cut positions (radians from the interval start).

    Symmetric about the interval midpoint, an even number of
    subintervals, geometric clustering of `levels` steps toward both
    ends when the interval is long enough.
    """
    if length_rad <= ANGLE_TOL:
        return []
    cluster = levels > 0 and length_rad > 4.0 * h * ratio
    if not cluster:
        m = max(2, 2 * math.ceil(length_rad / (2.0 * h)))
        return [length_rad * i / m for i in range(1, m)]
    side = [h * ratio**j for j in range(levels, 0, -1)]  # ascending offsets
    inner = length_rad - 2.0 * h * ratio
    m = max(2, 2 * math.ceil(inner / (2.0 * h)))
    left = side
    middle = [h * ratio + inner * i / m for i in range(1, m)]
    right = [length_rad - o for o in reversed(side)]
    return left + middle + right


def _angular_layout(
    partition: BoundaryPartition,
    h: float,
    levels: int,
    ratio: float,
    extra_angles: Sequence,
    uniform_multiple: Optional[int],
):
    """Angular nodes plus per-subinterval labels.

    Returns (theta_pi list, labels, arc_ids, clustered mask,
    junction node indices, spacing_pi or None).
    """
    breakpoints: list[PiAngle] = list(partition.endpoints_pi())
    for e in extra_angles:
        t = norm(to_pi(e))
        if not any(abs(float(t - b)) <= ANGLE_TOL for b in breakpoints):
            breakpoints.append(t)
    breakpoints.sort(key=float)
    junction_set = {float(b) for b in partition.endpoints_pi()}

    if uniform_multiple is not None:
        return _uniform_layout(partition, h, breakpoints, junction_set, uniform_multiple)

    if not breakpoints:
        breakpoints = [Fraction(0)]

    theta: list[PiAngle] = []
    labels: list[Label] = []
    arc_ids: list[int] = []
    clustered: list[bool] = []
    junction_nodes: list[int] = []

    nb = len(breakpoints)
    for i, b in enumerate(breakpoints):
        nxt = breakpoints[(i + 1) % nb]
        length_pi = norm(nxt - b) if nb > 1 else Fraction(2)
        if nb > 1 and float(length_pi) <= ANGLE_TOL:
            length_pi = 2  # two breakpoints mod-2 equal cannot happen post-dedupe
        length_rad = rad(length_pi)
        mid = b + length_pi / 2
        lab, aid = _interval_label(partition, mid)
        if float(b) in junction_set or not junction_set:
            junction_nodes.append(len(theta))
        theta.append(norm(b))
        cuts = _interval_cuts(length_rad, h, levels, ratio)
        widths = np.diff([0.0] + cuts + [length_rad])
        # subinterval starting at the breakpoint
        labels.append(lab)
        arc_ids.append(aid)
        clustered.append(bool(cuts) and widths[0] < 0.75 * h)
        for c, w in zip(cuts, widths[1:]):
            theta.append(norm(b + c / math.pi))
            labels.append(lab)
            arc_ids.append(aid)
            clustered.append(w < 0.75 * h)
        if len(theta) > MAX_ANGULAR:
            raise MeshSizeError(f"angular node count exceeds {MAX_ANGULAR}")
    junction_nodes = junction_nodes if junction_set else []
    return theta, labels, arc_ids, clustered, junction_nodes, None


def _interval_label(partition: BoundaryPartition, mid: PiAngle) -> tuple[Label, int]:
    lab = partition.contains(mid)
    if lab == Label.ENDPOINT:  # cannot happen: midpoints are interior
        raise RuntimeError("interval midpoint classified as endpoint")
    if lab == Label.DIRICHLET:
        for k, a in enumerate(partition.dirichlet_arcs):
            d = float(norm(mid - a.start_pi))
            if d < float(a.length_pi):
                return lab, k
        return lab, 0
    for k, g in enumerate(partition.gaps()):
        d = float(norm(mid - g.start_pi))
        if d < float(g.length_pi):
            return lab, k
    return lab, 0


def _uniform_layout(partition, h, breakpoints, junction_set, multiple):
    """Equally spaced angular nodes; every breakpoint must be a node."""
    need = max(2, int(multiple))
    for b in breakpoints:
        if isinstance(b, float):
            cand = Fraction(b).limit_denominator(8192)
            if abs(float(cand) - b) > ANGLE_TOL:
                raise MeshSymmetryError(
                    f"junction angle {b}*pi is not commensurate with a uniform grid"
                )
            b = cand
        # node spacing is 2/A in pi units; b must be a multiple of it
        q = (b / 2).limit_denominator()
        need = _lcm(need, q.denominator)
        if need > MAX_ANGULAR:
            raise MeshSizeError("uniform angular grid would be too fine")
    base = math.ceil(2.0 * math.pi / h)
    count = need * math.ceil(base / need)
    if count > MAX_ANGULAR:
        raise MeshSizeError(f"angular node count exceeds {MAX_ANGULAR}")
    theta = [Fraction(2 * k, count) for k in range(count)]
    labels: list[Label] = []
    arc_ids: list[int] = []
    junction_nodes = []
    for k in range(count):
        mid = Fraction(2 * k, count) + Fraction(1, count)
        lab, aid = _interval_label(partition, mid)
        labels.append(lab)
        arc_ids.append(aid)
        if float(theta[k]) in junction_set or any(
            abs(float(theta[k] - b)) <= ANGLE_TOL for b in partition.endpoints_pi()
        ):
            junction_nodes.append(k)
    clustered = [False] * count
    return theta, labels, arc_ids, clustered, junction_nodes, Fraction(2, count)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _radial_ladder(h: float, levels: int, ratio: float) -> np.ndarray:
    base = max(2, math.ceil(1.0 / h))
    radii = [i / base for i in range(1, base)]
    if levels > 0:
        dr = 1.0 / base
        radii.extend(1.0 - dr * ratio**j for j in range(1, levels + 1))
    radii.append(1.0)
    return np.array(sorted(radii))


def _mirror_partner(theta_pi: list[PiAngle]) -> np.ndarray:
    """Index of the node at -theta, or -1 when absent."""
    n = len(theta_pi)
    vals = np.array([float(t) for t in theta_pi])
    partner = np.full(n, -1, dtype=int)
    order = np.argsort(vals)
    sorted_vals = vals[order]
    for j in range(n):
        m = (2.0 - vals[j]) % 2.0
        k = np.searchsorted(sorted_vals, m)
        for cand in (k - 1, k, k + 1):
            if 0 <= cand < n:
                d = abs(sorted_vals[cand] - m)
                if min(d, 2.0 - d) <= ANGLE_TOL:
                    partner[j] = order[cand]
                    break
        if vals[j] <= ANGLE_TOL or abs(vals[j] - 1.0) <= ANGLE_TOL:
            partner[j] = j
    return partner


def _unit_coordinates(theta_pi: list[PiAngle]) -> tuple[np.ndarray, np.ndarray]:
    """cos/sin per angular node, with mirror pairs bitwise symmetric."""
    vals = np.array([float(t) for t in theta_pi])
    ux = np.cos(vals * math.pi)
    uy = np.sin(vals * math.pi)
    partner = _mirror_partner(theta_pi)
    for j in range(len(vals)):
        p = partner[j]
        if p == j:
            uy[j] = 0.0
            ux[j] = 1.0 if vals[j] <= ANGLE_TOL or vals[j] >= 2.0 - ANGLE_TOL else -1.0
        elif p >= 0 and vals[j] > 1.0:
            ux[j] = ux[p]
            uy[j] = -uy[p]
    return ux, uy


def triangulate(
    partition: BoundaryPartition,
    h: float,
    grading_levels: int = 6,
    *,
    grading_ratio: float = 0.5,
    extra_angles: Sequence = (),
    _uniform_multiple: Optional[int] = None,
) -> DiskMesh:
    """Triangulate the unit disk, conforming to `partition`.

    Parameters
    ----------
    partition : BoundaryPartition
        Dirichlet part of the boundary; its endpoints become mesh
        vertices and boundary edges are labeled accordingly.
    h : float
        Nominal element size in (0, 1].
    grading_levels : int
        Geometric refinement steps toward junction angles and toward
        the boundary circle (0 disables grading, at most 12).
    grading_ratio : float
        Shrink factor per grading step, in (0, 1).
    extra_angles : sequence
        Additional angles forced to be angular nodes (used to put the
        junctions of several partitions on one mesh).
    """
    if not (0.0 < h <= 1.0):
        raise ValueError("h must lie in (0, 1]")
    if not (0 <= grading_levels <= 12):
        raise ValueError("grading_levels must lie in [0, 12]")
    if not (0.0 < grading_ratio < 1.0):
        raise ValueError("grading_ratio must lie in (0, 1)")

    theta_pi, labels, arc_ids, clustered, junction_nodes, spacing = _angular_layout(
        partition, h, grading_levels, grading_ratio, extra_angles, _uniform_multiple
    )
    radii = _radial_ladder(h, grading_levels, grading_ratio)
    A = len(theta_pi)
    R = len(radii)
    n_vertices = 1 + A * R
    if n_vertices > MAX_VERTICES:
        raise MeshSizeError(f"vertex count {n_vertices} exceeds {MAX_VERTICES}")

    ux, uy = _unit_coordinates(theta_pi)
    vertices = np.empty((n_vertices, 2))
    vertices[0] = (0.0, 0.0)
    for k, r in enumerate(radii):
        s = 1 + k * A
        vertices[s : s + A, 0] = r * ux
        vertices[s : s + A, 1] = r * uy

    j = np.arange(A)
    jn = (j + 1) % A
    tris = [np.column_stack([np.zeros(A, dtype=int), 1 + j, 1 + jn])]
    for k in range(R - 1):
        v00 = 1 + k * A + j
        v01 = 1 + k * A + jn
        v10 = 1 + (k + 1) * A + j
        v11 = 1 + (k + 1) * A + jn
        even = (j % 2) == 0
        t1 = np.column_stack([v00, v01, np.where(even, v11, v10)])
        t2 = np.where(
            even[:, None],
            np.column_stack([v00, v11, v10]),
            np.column_stack([v01, v11, v10]),
        )
        block = np.empty((2 * A, 3), dtype=int)
        block[0::2] = t1
        block[1::2] = t2
        tris.append(block)
    triangles = np.vstack(tris)

    areas = triangle_areas_of(vertices, triangles)
    if np.any(areas <= 0):
        bad = int(np.argmax(areas <= 0))
        raise RuntimeError(f"non-positive triangle area at triangle {bad}")

    outer = 1 + (R - 1) * A
    boundary_edges = tuple(
        BoundaryEdge(int(outer + jj), int(outer + (jj + 1) % A), labels[jj], arc_ids[jj])
        for jj in range(A)
    )
    junction_vertices = np.array([outer + idx for idx in junction_nodes], dtype=int)

    graded = np.zeros(len(triangles), dtype=bool)
    if grading_levels > 0:
        # outermost base radial interval plus clustered angular columns
        first_graded_ring = max(0, R - 1 - (grading_levels + 1))
        ring_of = np.full(len(triangles), -1, dtype=int)
        ring_of[A:] = np.repeat(np.arange(R - 1), 2 * A)
        graded |= ring_of >= first_graded_ring
        col = np.empty(len(triangles), dtype=int)
        col[:A] = j
        col[A:] = np.tile(np.repeat(j, 2).reshape(-1), R - 1)[: len(triangles) - A]
        graded |= np.array(clustered, dtype=bool)[col]

    return DiskMesh(
        vertices=vertices,
        triangles=triangles,
        boundary_edges=boundary_edges,
        junction_vertices=junction_vertices,
        h=h,
        grading_levels=grading_levels,
        grading_ratio=grading_ratio,
        partition=partition,
        theta_pi=tuple(theta_pi),
        ring_radii=radii,
        angular_spacing_pi=spacing,
        graded_triangles=graded,
    )


def symmetrize_angular(mesh: DiskMesh, n: int) -> DiskMesh:
    """Rebuild `mesh` on a uniform angular grid with count a multiple of 2n.

    The vertex set of the result is invariant under rotation by 2pi/n
    and under the reflection across the x-axis. Junction angles must be
    exact rational multiples of pi for a commensurate grid to exist;
    otherwise a MeshSymmetryError is raised.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rebuilt = triangulate(
        mesh.partition,
        mesh.h,
        mesh.grading_levels,
        grading_ratio=mesh.grading_ratio,
        _uniform_multiple=2 * n,
    )
    # contract check: the rotation and reflection really map nodes to nodes
    rotation_vertex_map(rebuilt, Fraction(2, n))
    reflection_vertex_map(rebuilt)
    return rebuilt


# ---------------------------------------------------------------------------
# symmetry maps

def _angular_index_map(mesh: DiskMesh, image_pi) -> np.ndarray:
    """j -> j' such that theta[j'] == image_pi(theta[j]), or raise."""
    vals = np.array([float(t) for t in mesh.theta_pi])
    order = np.argsort(vals)
    sorted_vals = vals[order]
    out = np.empty(len(vals), dtype=int)
    for jj in range(len(vals)):
        target = float(norm(image_pi(mesh.theta_pi[jj])))
        k = np.searchsorted(sorted_vals, target)
        found = -1
        for cand in (k - 1, k, k + 1):
            if 0 <= cand < len(vals):
                d = abs(sorted_vals[cand] - target)
                if min(d, 2.0 - d) <= 10 * ANGLE_TOL:
                    found = order[cand]
                    break
        if found < 0:
            raise MeshSymmetryError("angular grid lacks the requested symmetry")
        out[jj] = found
    return out


def _vertex_map(mesh: DiskMesh, jmap: np.ndarray) -> np.ndarray:
    A = mesh.n_angular
    perm = np.empty(mesh.n_vertices, dtype=int)
    perm[0] = 0
    base = 1 + A * np.arange(mesh.n_rings)[:, None]
    perm[(base + np.arange(A)).ravel()] = (base + jmap).ravel()
    return perm


def reflection_vertex_map(mesh: DiskMesh) -> np.ndarray:
    """Vertex permutation realizing theta -> -theta (x-axis reflection)."""
    return _vertex_map(mesh, _angular_index_map(mesh, lambda t: -t))


def y_reflection_vertex_map(mesh: DiskMesh) -> np.ndarray:
    """Vertex permutation realizing theta -> pi - theta."""
    return _vertex_map(mesh, _angular_index_map(mesh, lambda t: 1 - t))


def rotation_vertex_map(mesh: DiskMesh, delta) -> np.ndarray:
    """Vertex permutation realizing theta -> theta + delta."""
    d = to_pi(delta)
    return _vertex_map(mesh, _angular_index_map(mesh, lambda t: t + d))


# ---------------------------------------------------------------------------
# quality and export helpers

def triangle_areas_of(vertices: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    p0 = vertices[triangles[:, 0]]
    p1 = vertices[triangles[:, 1]]
    p2 = vertices[triangles[:, 2]]
    return 0.5 * np.cross(p1 - p0, p2 - p0)


def triangle_areas(mesh: DiskMesh) -> np.ndarray:
    return triangle_areas_of(mesh.vertices, mesh.triangles)


def triangle_angles(mesh: DiskMesh) -> np.ndarray:
    """Interior angles (radians), shape (T, 3)."""
    p = [mesh.vertices[mesh.triangles[:, i]] for i in range(3)]
    out = np.empty((len(mesh.triangles), 3))
    for i in range(3):
        a = p[(i + 1) % 3] - p[i]
        b = p[(i + 2) % 3] - p[i]
        cosv = np.sum(a * b, axis=1) / (
            np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1)
        )
        out[:, i] = np.arccos(np.clip(cosv, -1.0, 1.0))
    return out


def write_mesh(mesh: DiskMesh, path) -> None:
    """Write the mesh in Medit ASCII format (.mesh).

    Sections: Vertices (x y ref), Triangles (three 1-based vertex ids,
    ref 0) and Edges (labeled boundary edges, ref 1 = Dirichlet,
    ref 2 = Neumann). Vertex refs: 0 interior, 1 Dirichlet boundary,
    2 Neumann boundary, 3 junction.
    """
    vref = np.zeros(mesh.n_vertices, dtype=int)
    for e in mesh.boundary_edges:
        r = 1 if e.label == Label.DIRICHLET else 2
        for v in (e.v0, e.v1):
            if vref[v] in (0, r):
                vref[v] = r
            else:
                vref[v] = 3
    vref[mesh.junction_vertices] = 3
    lines = ["MeshVersionFormatted 2", "", "Dimension 2", "", "Vertices",
             str(mesh.n_vertices)]
    for (x, y), r in zip(mesh.vertices, vref):
        lines.append(f"{x:.17g} {y:.17g} {r}")
    lines += ["", "Triangles", str(len(mesh.triangles))]
    for t in mesh.triangles:
        lines.append(f"{t[0] + 1} {t[1] + 1} {t[2] + 1} 0")
    lines += ["", "Edges", str(len(mesh.boundary_edges))]
    for e in mesh.boundary_edges:
        r = 1 if e.label == Label.DIRICHLET else 2
        lines.append(f"{e.v0 + 1} {e.v1 + 1} {r}")
    lines += ["", "End", ""]
    with open(path, "w") as f:
        f.write("\n".join(lines))
