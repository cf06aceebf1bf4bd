"""Discrete differential forms over F3 on a rectangular lattice.

A scalar field assigns an F3 value to each vertex of the (m+1) x (n+1)
grid of plaquette corners; a 1-form assigns values to edges, split into
an x-part (same index ranges as the f edges of a state) and a y-part
(same ranges as the g edges).  The discrete partial derivatives are

    (D_x h)[i][j] = h[i+1][j] - h[i][j]
    (D_y h)[i][j] = h[i][j+1] - h[i][j]

and a 1-form  w = fx dx + gy dy  is closed when D_y fx = D_x gy at every
interior vertex.  On a rectangle every closed form is exact, with an
explicit antiderivative summed along a bottom-then-up path.

Six-vertex states over {0, 1} correspond to closed 1-forms, and these in
turn correspond to proper 3-colorings of the corner grid; both
directions are implemented here and used for exact counting.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .algebra import GF3, FieldMatrix, nullspace_basis
from .grid import (
    GridShape,
    LatticeState,
    SizeGuardError,
    f_edge_index,
    g_edge_index,
    guard_size,
    vertex_index,
)


def _freeze_table(values: Sequence[Sequence[int]], rows: int, cols: int, label: str) -> tuple:
    if len(values) != rows:
        raise ValueError(f"{label} must have {rows} rows, got {len(values)}")
    out = []
    for r in values:
        if len(r) != cols:
            raise ValueError(f"{label} rows must have {cols} entries, got {len(r)}")
        for x in r:
            if not isinstance(x, int) or not (0 <= x < 3):
                raise ValueError(f"{label} entries must be ints in [0, 3)")
        out.append(tuple(r))
    return tuple(out)


@dataclass(frozen=True)
class ScalarField:
    """F3 values on the (m+1) x (n+1) vertex grid, indexed [i][j], 1-based access."""

    shape: GridShape
    h: tuple

    def __post_init__(self):
        m, n = self.shape.m, self.shape.n
        object.__setattr__(self, "h", _freeze_table(self.h, m + 1, n + 1, "h"))

    def at(self, i: int, j: int) -> int:
        return self.h[i - 1][j - 1]


@dataclass(frozen=True)
class OneForm:
    """F3 1-form: fx on the m x (n+1) vertical-edge grid, gy on (m+1) x n."""

    shape: GridShape
    fx: tuple
    gy: tuple

    def __post_init__(self):
        m, n = self.shape.m, self.shape.n
        object.__setattr__(self, "fx", _freeze_table(self.fx, m, n + 1, "fx"))
        object.__setattr__(self, "gy", _freeze_table(self.gy, m + 1, n, "gy"))

    def fx_at(self, i: int, j: int) -> int:
        return self.fx[i - 1][j - 1]

    def gy_at(self, i: int, j: int) -> int:
        return self.gy[i - 1][j - 1]


@dataclass(frozen=True)
class Coloring:
    """Z/3 labels on the (m+1) x (n+1) vertex grid, indexed like ScalarField."""

    shape: GridShape
    cells: tuple

    def __post_init__(self):
        m, n = self.shape.m, self.shape.n
        object.__setattr__(self, "cells", _freeze_table(self.cells, m + 1, n + 1, "cells"))

    def at(self, i: int, j: int) -> int:
        return self.cells[i - 1][j - 1]


def partial_x(field: ScalarField) -> tuple:
    """(D_x h)[i][j] = h[i+1][j] - h[i][j], shape m x (n+1)."""
    m, n = field.shape.m, field.shape.n
    h = field.h
    return tuple(
        tuple((h[i + 1][j] - h[i][j]) % 3 for j in range(n + 1)) for i in range(m)
    )


def partial_y(field: ScalarField) -> tuple:
    """(D_y h)[i][j] = h[i][j+1] - h[i][j], shape (m+1) x n."""
    m, n = field.shape.m, field.shape.n
    h = field.h
    return tuple(
        tuple((h[i][j + 1] - h[i][j]) % 3 for j in range(n)) for i in range(m + 1)
    )


def exterior_derivative(field: ScalarField) -> OneForm:
    """d(h) = (D_x h) dx + (D_y h) dy."""
    return OneForm(shape=field.shape, fx=partial_x(field), gy=partial_y(field))


def is_closed(w: OneForm) -> bool:
    """True when D_y fx = D_x gy at every interior vertex."""
    m, n = w.shape.m, w.shape.n
    fx, gy = w.fx, w.gy
    for i in range(m):
        for j in range(n):
            if (fx[i][j + 1] - fx[i][j]) % 3 != (gy[i + 1][j] - gy[i][j]) % 3:
                return False
    return True


def antiderivative(w: OneForm) -> ScalarField:
    """The scalar field h with dh = w and h[1][1] = 0.

    h[i][j] is the sum of fx along the bottom row up to column i, plus
    gy up column i to height j.  Requires the form to be closed.
    """
    if not is_closed(w):
        raise ValueError("antiderivative requires a closed form")
    m, n = w.shape.m, w.shape.n
    fx, gy = w.fx, w.gy
    h = []
    for i in range(m + 1):
        col = []
        base = 0
        for a in range(i):
            base = (base + fx[a][0]) % 3
        acc = base
        col.append(acc)
        for b in range(n):
            acc = (acc + gy[i][b]) % 3
            col.append(acc)
        h.append(tuple(col))
    return ScalarField(shape=w.shape, h=tuple(h))


def closedness_matrix(shape: GridShape) -> FieldMatrix:
    """mn x edge_count matrix over F3 whose kernel is the closed forms.

    The row of vertex (i, j) encodes fx[i][j+1] - fx[i][j] - gy[i+1][j]
    + gy[i][j]; columns follow the edge_tuple layout.
    """
    rows = [[0] * shape.edge_count for _ in range(shape.vertex_count)]
    for i in range(1, shape.m + 1):
        for j in range(1, shape.n + 1):
            row = rows[vertex_index(shape, i, j)]
            row[f_edge_index(shape, i, j + 1)] = 1
            row[f_edge_index(shape, i, j)] = 2
            row[g_edge_index(shape, i + 1, j)] = 2
            row[g_edge_index(shape, i, j)] = 1
    return FieldMatrix.from_rows(GF3, rows)


def _form_from_vector(shape: GridShape, vec: Sequence[int]) -> OneForm:
    m, n = shape.m, shape.n
    fx = tuple(
        tuple(vec[f_edge_index(shape, i, j)] for j in range(1, n + 2))
        for i in range(1, m + 1)
    )
    gy = tuple(
        tuple(vec[g_edge_index(shape, i, j)] for j in range(1, n + 1))
        for i in range(1, m + 2)
    )
    return OneForm(shape=shape, fx=fx, gy=gy)


def _closed_basis(shape: GridShape) -> list:
    return nullspace_basis(closedness_matrix(shape))


def enumerate_closed(shape: GridShape, force: bool = False) -> list[OneForm]:
    """All closed 1-forms on the shape, spanned from a kernel basis.

    The closedness conditions are F3-linear in the edge values, so the
    closed forms are exactly the kernel of closedness_matrix; there are
    3^(mn + m + n) of them.
    """
    basis = _closed_basis(shape)
    guard_size(2 * len(basis), force)
    forms = []
    for coeffs in product((0, 1, 2), repeat=len(basis)):
        vec = [0] * shape.edge_count
        for c, b in zip(coeffs, basis):
            if c:
                for k, x in enumerate(b):
                    vec[k] = (vec[k] + c * x) % 3
        forms.append(_form_from_vector(shape, vec))
    forms.sort(key=lambda w: (w.fx, w.gy))
    return forms


def random_closed_form(shape: GridShape, rng: random.Random) -> OneForm:
    """A uniformly random closed 1-form: random coefficients on the kernel basis."""
    basis = _closed_basis(shape)
    vec = [0] * shape.edge_count
    for b in basis:
        c = rng.randrange(3)
        if c:
            for k, x in enumerate(b):
                vec[k] = (vec[k] + c * x) % 3
    return _form_from_vector(shape, vec)


def is_admissible_form(w: OneForm) -> bool:
    """Closed, and no edge value equals 2 (all values in {0, 1})."""
    if any(x == 2 for row in w.fx for x in row):
        return False
    if any(x == 2 for row in w.gy for x in row):
        return False
    return is_closed(w)


def is_admissible_six(state: LatticeState) -> bool:
    """Every vertex satisfies the six-vertex rule.

    The rule at vertex (i, j) is g[i+1][j] - g[i][j] = f[i][j+1] - f[i][j]
    mod 3, with all edge values in {0, 1}.  A state containing the value
    2 is rejected with an error rather than judged inadmissible.
    """
    if state.field is not GF3:
        raise ValueError("six-vertex states live over F3")
    if any(x == 2 for row in state.f for x in row) or any(
        x == 2 for row in state.g for x in row
    ):
        raise ValueError("six-vertex states carry edge values in {0, 1} only")
    m, n = state.shape.m, state.shape.n
    f, g = state.f, state.g
    for i in range(m):
        for j in range(n):
            if (g[i + 1][j] - g[i][j]) % 3 != (f[i][j + 1] - f[i][j]) % 3:
                return False
    return True


def state_to_form(state: LatticeState) -> OneForm:
    """Reinterpret a six-vertex state's edge labels as a 1-form over F3."""
    if state.field is not GF3:
        raise ValueError("expected an F3 state")
    return OneForm(shape=state.shape, fx=state.f, gy=state.g)


def form_to_state(w: OneForm) -> LatticeState:
    """Inverse of state_to_form; requires an admissible form."""
    if not is_admissible_form(w):
        raise ValueError("form is not admissible (closed with values in {0, 1})")
    return LatticeState(shape=w.shape, field=GF3, f=w.fx, g=w.gy)


def is_proper(c: Coloring) -> bool:
    """No two horizontally or vertically adjacent grid vertices share a label."""
    m, n = c.shape.m, c.shape.n
    cells = c.cells
    for i in range(m + 1):
        for j in range(n + 1):
            if i < m and cells[i][j] == cells[i + 1][j]:
                return False
            if j < n and cells[i][j] == cells[i][j + 1]:
                return False
    return True


def coloring_from_form(w: OneForm, t: int) -> Coloring:
    """Proper coloring from an admissible closed form and a base label t.

    The color at grid vertex (i, j) is h[i][j] + t + i + j - 2 mod 3,
    where h is the normalized antiderivative of w.
    """
    if t not in (0, 1, 2):
        raise ValueError("base label t must be in {0, 1, 2}")
    if not is_admissible_form(w):
        raise ValueError("coloring_from_form requires an admissible closed form")
    h = antiderivative(w)
    m, n = w.shape.m, w.shape.n
    cells = tuple(
        tuple((h.h[i][j] + t + (i + 1) + (j + 1) - 2) % 3 for j in range(n + 1))
        for i in range(m + 1)
    )
    return Coloring(shape=w.shape, cells=cells)


def form_from_coloring(c: Coloring) -> tuple:
    """(admissible closed form, base label) recovering the coloring.

    The form is d(c) - dx - dy and the base label is the color at the
    bottom-left vertex.  Requires a proper coloring.
    """
    if not is_proper(c):
        raise ValueError("form_from_coloring requires a proper coloring")
    m, n = c.shape.m, c.shape.n
    as_field = ScalarField(shape=c.shape, h=c.cells)
    dx = partial_x(as_field)
    dy = partial_y(as_field)
    fx = tuple(tuple((x - 1) % 3 for x in row) for row in dx)
    gy = tuple(tuple((x - 1) % 3 for x in row) for row in dy)
    w = OneForm(shape=c.shape, fx=fx, gy=gy)
    return w, c.cells[0][0]


def _iter_six_states(shape: GridShape) -> Iterator[tuple]:
    """Yield (f, g) value tables of all admissible six-vertex states.

    Bottom f edges and left g edges range freely over {0, 1}; every
    other edge is forced or binary-branched by the vertex rule, worked
    through the vertices row by row.  At a vertex with bottom value fb
    and left value gl, the (top, right) completions are (fb, gl) when
    fb != gl, and {(0, 0), (1, 1)} when fb == gl.
    """
    m, n = shape.m, shape.n
    f = [[0] * (n + 1) for _ in range(m)]
    g = [[0] * n for _ in range(m + 1)]

    def fill_vertex(k: int) -> Iterator[tuple]:
        if k == m * n:
            yield tuple(map(tuple, f)), tuple(map(tuple, g))
            return
        j, i = divmod(k, m)
        fb, gl = f[i][j], g[i][j]
        if fb != gl:
            options = ((fb, gl),)
        else:
            options = ((0, 0), (1, 1))
        for top, right in options:
            f[i][j + 1] = top
            g[i + 1][j] = right
            yield from fill_vertex(k + 1)

    for bottom in range(1 << m):
        for i in range(m):
            f[i][0] = (bottom >> i) & 1
        for left in range(1 << n):
            for j in range(n):
                g[0][j] = (left >> j) & 1
            yield from fill_vertex(0)


def enumerate_six(shape: GridShape, force: bool = False) -> list[LatticeState]:
    """All admissible six-vertex states, sorted by edge tuple (f block, g block)."""
    guard_size(shape.edge_count, force)
    states = [
        LatticeState(shape=shape, field=GF3, f=f, g=g)
        for f, g in _iter_six_states(shape)
    ]
    states.sort(key=lambda s: s.edge_tuple())
    return states


def count_six(shape: GridShape, force: bool = False) -> int:
    """Number of admissible six-vertex states of the given shape."""
    guard_size(shape.edge_count, force)
    return sum(1 for _ in _iter_six_states(shape))


def count_colorings(width: int, height: int, force: bool = False) -> int:
    """Proper 3-colorings of the width x height grid graph, by backtracking.

    Cells are scanned row-major; each cell tries the labels differing
    from its already-colored left and lower neighbors.  The backtracking
    tree has at most 3 * 2^(cells - 1) nodes, so the guard is on the
    cell count.
    """
    if width < 1 or height < 1:
        raise ValueError("grid dimensions must be positive")
    guard_size(width * height, force)
    grid = [[0] * height for _ in range(width)]

    def fill(k: int) -> int:
        if k == width * height:
            return 1
        j, i = divmod(k, width)
        total = 0
        for color in (0, 1, 2):
            if i > 0 and grid[i - 1][j] == color:
                continue
            if j > 0 and grid[i][j - 1] == color:
                continue
            grid[i][j] = color
            total += fill(k + 1)
        return total

    return fill(0)


def random_proper_coloring(shape: GridShape, rng: random.Random) -> Coloring:
    """A proper coloring sampled cell by cell with random admissible labels."""
    m, n = shape.m, shape.n
    cells = [[0] * (n + 1) for _ in range(m + 1)]
    for j in range(n + 1):
        for i in range(m + 1):
            banned = set()
            if i > 0:
                banned.add(cells[i - 1][j])
            if j > 0:
                banned.add(cells[i][j - 1])
            cells[i][j] = rng.choice([c for c in (0, 1, 2) if c not in banned])
    return Coloring(shape=shape, cells=tuple(map(tuple, cells)))
