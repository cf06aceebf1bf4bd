"""F2-linear structure of the eight-vertex model.

Eight-vertex admissibility asks only that the four edge values at each
vertex have even sum, so the admissible states are exactly the kernel
of a per-vertex parity map on the F2 edge space.  Everything in this
module leans on that linearity: total and fixed-boundary counts come
from rank-nullity, a state extending a given boundary is written down
in closed form, and enumeration spans the kernel instead of searching.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import GF2, FieldMatrix, nullspace_basis, rank
from .grid import (
    BoundarySpec,
    GridShape,
    LatticeState,
    edges_at_vertex,
    f_edge_index,
    g_edge_index,
    guard_size,
    vertex_index,
)


@dataclass(frozen=True)
class DefectMap:
    """Per-vertex parity map as an mn x (edge count) matrix over F2.

    Row vertex_index(i, j) has 1-entries at exactly the four incident
    edges f[i][j], f[i][j+1], g[i][j], g[i+1][j]; a state is admissible
    iff its edge vector lies in the kernel.
    """

    shape: GridShape
    matrix: FieldMatrix


def defect_map(shape: GridShape) -> DefectMap:
    rows = []
    for i in range(1, shape.m + 1):
        for j in range(1, shape.n + 1):
            row = [0] * shape.edge_count
            row[f_edge_index(shape, i, j)] = 1
            row[f_edge_index(shape, i, j + 1)] = 1
            row[g_edge_index(shape, i, j)] = 1
            row[g_edge_index(shape, i + 1, j)] = 1
            rows.append(row)
    return DefectMap(shape, FieldMatrix.from_rows(GF2, rows))


def _require_binary(values) -> None:
    if any(x not in (0, 1) for x in values):
        raise ValueError("eight-vertex parity is defined for edge values in {0, 1} only")


def defect_vector(state: LatticeState) -> tuple:
    """Per-vertex parity of the four incident edges, in vertex_index order."""
    _require_binary(state.edge_tuple())
    m, n = state.shape.m, state.shape.n
    return tuple(
        sum(edges_at_vertex(state, i, j)) % 2
        for i in range(1, m + 1)
        for j in range(1, n + 1)
    )


def is_admissible_eight(state: LatticeState) -> bool:
    """True iff every interior vertex has an even edge sum."""
    return not any(defect_vector(state))


def count_total(shape: GridShape) -> int:
    """Number of admissible states, 2^(m + n + mn).

    Computed from the closed form and from rank-nullity of the defect
    map; the two must agree or something is deeply wrong.
    """
    closed_form = 2 ** (shape.m + shape.n + shape.m * shape.n)
    nullity = shape.edge_count - rank(defect_map(shape).matrix)
    if closed_form != 2 ** nullity:
        raise RuntimeError(
            f"count mismatch at ({shape.m}, {shape.n}): "
            f"closed form {closed_form}, kernel dimension {nullity}"
        )
    return closed_form


def boundary_parity(b: BoundarySpec) -> int:
    """Total parity of the 2m + 2n boundary values.

    Admissible extensions exist iff this is 0: summing the vertex
    parity conditions cancels every interior edge twice.
    """
    values = b.edge_tuple()
    _require_binary(values)
    return sum(values) % 2


def construct_state(b: BoundarySpec) -> LatticeState:
    """Closed-form admissible state extending an even-parity boundary.

    Interior horizontal edges vanish except along the bottom row, where
    each accumulates the parity of all boundary data strictly to its
    left plus the left side.  Interior vertical edges copy the top
    boundary straight down, except in the first and last columns, which
    absorb the left and right sides from the top.  Raises ValueError on
    an odd-parity boundary, which admits no extension at all.
    """
    if b.field is not GF2:
        raise ValueError("construct_state expects an F2 boundary")
    if boundary_parity(b) != 0:
        raise ValueError("no admissible extension exists: boundary parity is odd")
    m, n = b.shape.m, b.shape.n
    fb, ft, gl, gr = b.f_bottom, b.f_top, b.g_left, b.g_right

    f = [[0] * (n + 1) for _ in range(m)]
    g = [[0] * n for _ in range(m + 1)]
    for i in range(m):
        f[i][0] = fb[i]
        f[i][n] = ft[i]
    for j in range(n):
        g[0][j] = gl[j]
        g[m][j] = gr[j]

    for i in range(2, m + 1):  # bottom-row interior horizontals
        g[i - 1][0] = (sum(gl) + sum(fb[a] + ft[a] for a in range(i - 1))) % 2
    for i in range(2, m):  # middle columns copy the top value down
        for j in range(2, n + 1):
            f[i - 1][j - 1] = ft[i - 1]
    for j in range(2, n + 1):  # first and last columns absorb the sides
        f[0][j - 1] = (ft[0] + sum(gl[j - 1 :])) % 2
        f[m - 1][j - 1] = (ft[m - 1] + sum(gr[j - 1 :])) % 2

    state = LatticeState(shape=b.shape, field=GF2, f=f, g=g)
    if not is_admissible_eight(state):
        raise RuntimeError("internal error: constructed state fails the parity check")
    return state


def count_with_boundary(b: BoundarySpec) -> int:
    """Number of admissible states with the given boundary.

    2^((m-1)(n-1)) when the boundary parity is even, zero otherwise;
    beyond the parity the count does not depend on the boundary values.
    """
    if boundary_parity(b) != 0:
        return 0
    return 2 ** ((b.shape.m - 1) * (b.shape.n - 1))


def count_valid_boundaries(shape: GridShape) -> int:
    """Number of boundaries admitting an extension: half of all of them."""
    return 2 ** (2 * shape.m + 2 * shape.n - 1)


def _boundary_columns(b: BoundarySpec):
    m, n = b.shape.m, b.shape.n
    for i in range(1, m + 1):
        yield f_edge_index(b.shape, i, 1), b.f_bottom[i - 1]
        yield f_edge_index(b.shape, i, n + 1), b.f_top[i - 1]
    for j in range(1, n + 1):
        yield g_edge_index(b.shape, 1, j), b.g_left[j - 1]
        yield g_edge_index(b.shape, m + 1, j), b.g_right[j - 1]


def _state_from_bits(shape: GridShape, bits) -> LatticeState:
    width = shape.n + 1
    f = [bits[i * width : (i + 1) * width] for i in range(shape.m)]
    off = shape.f_edge_count
    g = [bits[off + i * shape.n : off + (i + 1) * shape.n] for i in range(shape.m + 1)]
    return LatticeState(shape=shape, field=GF2, f=f, g=g)


def _enumerate_brute(shape: GridShape, boundary, force: bool) -> list:
    guard_size(shape.edge_count, force)
    vertex_masks = []
    for i in range(1, shape.m + 1):
        for j in range(1, shape.n + 1):
            vertex_masks.append(
                (1 << f_edge_index(shape, i, j))
                | (1 << f_edge_index(shape, i, j + 1))
                | (1 << g_edge_index(shape, i, j))
                | (1 << g_edge_index(shape, i + 1, j))
            )
    want_mask = want_bits = 0
    if boundary is not None:
        for col, val in _boundary_columns(boundary):
            want_mask |= 1 << col
            want_bits |= val << col
    out = []
    for assignment in range(1 << shape.edge_count):
        if (assignment & want_mask) != want_bits:
            continue
        if any((assignment & vm).bit_count() & 1 for vm in vertex_masks):
            continue
        bits = [(assignment >> k) & 1 for k in range(shape.edge_count)]
        out.append(_state_from_bits(shape, bits))
    return out


def _enumerate_kernel(shape: GridShape, boundary, force: bool) -> list:
    rows = defect_map(shape).matrix.to_rows()
    base = 0
    if boundary is None:
        guard_size(shape.m + shape.n + shape.m * shape.n, force)
    else:
        if boundary_parity(boundary) != 0:
            return []
        guard_size((shape.m - 1) * (shape.n - 1), force)
        for col, _ in _boundary_columns(boundary):
            pin = [0] * shape.edge_count  # pin boundary edges to 0 in the kernel
            pin[col] = 1
            rows.append(pin)
        particular = construct_state(boundary).edge_tuple()
        base = sum(bit << k for k, bit in enumerate(particular))
    basis = nullspace_basis(FieldMatrix.from_rows(GF2, rows))
    vecs = [sum(bit << k for k, bit in enumerate(v)) for v in basis]
    out = []
    for combo in range(1 << len(vecs)):
        acc = base
        rem = combo
        idx = 0
        while rem:
            if rem & 1:
                acc ^= vecs[idx]
            rem >>= 1
            idx += 1
        bits = [(acc >> k) & 1 for k in range(shape.edge_count)]
        out.append(_state_from_bits(shape, bits))
    return out


def enumerate_eight(shape: GridShape, boundary: BoundarySpec | None = None,
                    method: str = "kernel", force: bool = False) -> list:
    """All admissible states, optionally restricted to one boundary.

    "kernel" spans the solution space of the parity equations (plus a
    particular solution when a boundary is fixed); "brute" sweeps every
    edge assignment and filters.  Both produce the same states, sorted
    by edge_tuple.  An odd-parity boundary yields the empty list.
    """
    if boundary is not None:
        if boundary.shape != shape:
            raise ValueError("boundary shape does not match the requested shape")
        if boundary.field is not GF2:
            raise ValueError("enumerate_eight expects an F2 boundary")
    if method == "brute":
        states = _enumerate_brute(shape, boundary, force)
    elif method == "kernel":
        states = _enumerate_kernel(shape, boundary, force)
    else:
        raise ValueError(f"unknown enumeration method {method!r}")
    return sorted(states, key=lambda s: s.edge_tuple())
