"""Rectangular lattice states and their boundaries.

A lattice with m columns and n rows of interior vertices carries two
families of edge labels:

* ``f[i][j]`` for i in [1, m], j in [1, n+1]: the vertical edge in
  column i at height j (j = 1 is the bottom boundary, j = n+1 the top).
* ``g[i][j]`` for i in [1, m+1], j in [1, n]: the horizontal edge in
  row j at position i (i = 1 is the left boundary, i = m+1 the right).

Vertex (i, j) sits in column i, row j, counted from the bottom left.
Its four incident edges, in (left, top, right, bottom) order, are
g[i][j], f[i][j+1], g[i+1][j], f[i][j].

All indices are 1-based in this documentation and in the JSON format;
internal tuples are stored 0-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .algebra import GF2, GF3, PrimeField

_FIELD_NAMES = {"F2": GF2, "F3": GF3}

SIZE_GUARD_BITS = 26


class StateFormatError(ValueError):
    """Raised when a serialized state or boundary fails to parse."""


class SizeGuardError(RuntimeError):
    """Raised when a brute-force space exceeds the desk-scale guard."""


def guard_size(log2_count: int, force: bool = False) -> None:
    """Refuse searches larger than 2^SIZE_GUARD_BITS unless forced."""
    if log2_count > SIZE_GUARD_BITS and not force:
        raise SizeGuardError(
            f"search space of 2^{log2_count} exceeds the 2^{SIZE_GUARD_BITS} guard; "
            "pass force=True (CLI: --force) to override"
        )


@dataclass(frozen=True)
class GridShape:
    """Number of interior columns (m) and rows (n); both at least 2."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise ValueError(f"grid shape requires m, n >= 2, got ({self.m}, {self.n})")

    @property
    def f_edge_count(self) -> int:
        return self.m * (self.n + 1)

    @property
    def g_edge_count(self) -> int:
        return (self.m + 1) * self.n

    @property
    def edge_count(self) -> int:
        return self.f_edge_count + self.g_edge_count

    @property
    def vertex_count(self) -> int:
        return self.m * self.n


def _freeze_grid(values: Sequence[Sequence[int]], rows: int, cols: int,
                 field: PrimeField, label: str) -> tuple:
    if len(values) != rows:
        raise ValueError(f"{label} must have {rows} rows, got {len(values)}")
    out = []
    for r in values:
        if len(r) != cols:
            raise ValueError(f"{label} rows must have {cols} entries, got {len(r)}")
        for x in r:
            if not isinstance(x, int) or not (0 <= x < field.p):
                raise ValueError(f"{label} entries must be ints in [0, {field.p})")
        out.append(tuple(r))
    return tuple(out)


@dataclass(frozen=True)
class LatticeState:
    """Edge labeling of the full lattice over F2 or F3.

    ``f`` is indexed [i][j] with shape m x (n+1), ``g`` is
    (m+1) x n, both 0-based internally.
    """

    shape: GridShape
    field: PrimeField
    f: tuple
    g: tuple

    def __post_init__(self):
        m, n = self.shape.m, self.shape.n
        object.__setattr__(self, "f", _freeze_grid(self.f, m, n + 1, self.field, "f"))
        object.__setattr__(self, "g", _freeze_grid(self.g, m + 1, n, self.field, "g"))

    def f_at(self, i: int, j: int) -> int:
        """f[i][j] with 1-based indices, i in [1, m], j in [1, n+1]."""
        return self.f[i - 1][j - 1]

    def g_at(self, i: int, j: int) -> int:
        """g[i][j] with 1-based indices, i in [1, m+1], j in [1, n]."""
        return self.g[i - 1][j - 1]

    def edge_tuple(self) -> tuple:
        """All edge values, f block then g block, row-major; a total order key."""
        return tuple(x for row in self.f for x in row) + tuple(
            x for row in self.g for x in row
        )


@dataclass(frozen=True)
class BoundarySpec:
    """The 2m + 2n boundary edge values of a lattice of the given shape."""

    shape: GridShape
    field: PrimeField
    f_bottom: tuple
    f_top: tuple
    g_left: tuple
    g_right: tuple

    def __post_init__(self):
        m, n = self.shape.m, self.shape.n
        for name, seq, length in (
            ("f_bottom", self.f_bottom, m),
            ("f_top", self.f_top, m),
            ("g_left", self.g_left, n),
            ("g_right", self.g_right, n),
        ):
            if len(seq) != length:
                raise ValueError(f"{name} must have {length} entries, got {len(seq)}")
            for x in seq:
                if not isinstance(x, int) or not (0 <= x < self.field.p):
                    raise ValueError(f"{name} entries must be ints in [0, {self.field.p})")
            object.__setattr__(self, name, tuple(seq))

    def edge_tuple(self) -> tuple:
        return self.f_bottom + self.f_top + self.g_left + self.g_right


def edges_at_vertex(state: LatticeState, i: int, j: int) -> tuple:
    """(left, top, right, bottom) edge values at interior vertex (i, j)."""
    m, n = state.shape.m, state.shape.n
    if not (1 <= i <= m and 1 <= j <= n):
        raise ValueError(f"vertex ({i}, {j}) out of range for shape ({m}, {n})")
    return (
        state.g_at(i, j),
        state.f_at(i, j + 1),
        state.g_at(i + 1, j),
        state.f_at(i, j),
    )


def vertex_index(shape: GridShape, i: int, j: int) -> int:
    """Row of vertex (i, j) in vertex-major order; i outer, j inner."""
    return (i - 1) * shape.n + (j - 1)


def f_edge_index(shape: GridShape, i: int, j: int) -> int:
    """Position of f[i][j] in edge_tuple order."""
    return (i - 1) * (shape.n + 1) + (j - 1)


def g_edge_index(shape: GridShape, i: int, j: int) -> int:
    """Position of g[i][j]; the g block follows the full f block."""
    return shape.f_edge_count + (i - 1) * shape.n + (j - 1)


def boundary_of(state: LatticeState) -> BoundarySpec:
    """Extract the boundary edge values of a state."""
    m, n = state.shape.m, state.shape.n
    return BoundarySpec(
        shape=state.shape,
        field=state.field,
        f_bottom=tuple(state.f_at(i, 1) for i in range(1, m + 1)),
        f_top=tuple(state.f_at(i, n + 1) for i in range(1, m + 1)),
        g_left=tuple(state.g_at(1, j) for j in range(1, n + 1)),
        g_right=tuple(state.g_at(m + 1, j) for j in range(1, n + 1)),
    )


def _field_name(field: PrimeField) -> str:
    return field.name


def _parse_field(doc: dict, where: str) -> PrimeField:
    name = doc.get("field")
    if name not in _FIELD_NAMES:
        raise StateFormatError(
            f"{where}: 'field' must be one of {sorted(_FIELD_NAMES)}, got {name!r}"
        )
    return _FIELD_NAMES[name]


def _parse_shape(doc: dict, where: str) -> GridShape:
    try:
        m, n = doc["m"], doc["n"]
    except KeyError as e:
        raise StateFormatError(f"{where}: missing required key {e.args[0]!r}") from None
    if not isinstance(m, int) or not isinstance(n, int):
        raise StateFormatError(f"{where}: 'm' and 'n' must be integers")
    try:
        return GridShape(m, n)
    except ValueError as e:
        raise StateFormatError(f"{where}: {e}") from None


def serialize_state(state: LatticeState) -> str:
    """State as a JSON document with keys m, n, field, f, g."""
    doc = {
        "m": state.shape.m,
        "n": state.shape.n,
        "field": _field_name(state.field),
        "f": [list(row) for row in state.f],
        "g": [list(row) for row in state.g],
    }
    return json.dumps(doc, sort_keys=True)


def deserialize_state(text: str) -> LatticeState:
    """Parse a state document; raises StateFormatError with diagnostics."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise StateFormatError(f"state document: invalid JSON at line {e.lineno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise StateFormatError("state document: top level must be a JSON object")
    shape = _parse_shape(doc, "state document")
    field = _parse_field(doc, "state document")
    for key in ("f", "g"):
        if key not in doc:
            raise StateFormatError(f"state document: missing required key {key!r}")
        if not isinstance(doc[key], list):
            raise StateFormatError(f"state document: {key!r} must be an array of arrays")
    try:
        return LatticeState(shape=shape, field=field, f=doc["f"], g=doc["g"])
    except (ValueError, TypeError) as e:
        raise StateFormatError(f"state document: {e}") from None


def serialize_boundary(b: BoundarySpec) -> str:
    """Boundary as JSON with keys m, n, field, f_bottom, f_top, g_left, g_right."""
    doc = {
        "m": b.shape.m,
        "n": b.shape.n,
        "field": _field_name(b.field),
        "f_bottom": list(b.f_bottom),
        "f_top": list(b.f_top),
        "g_left": list(b.g_left),
        "g_right": list(b.g_right),
    }
    return json.dumps(doc, sort_keys=True)


def deserialize_boundary(text: str) -> BoundarySpec:
    """Parse a boundary document; raises StateFormatError with diagnostics."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise StateFormatError(
            f"boundary document: invalid JSON at line {e.lineno}: {e.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise StateFormatError("boundary document: top level must be a JSON object")
    shape = _parse_shape(doc, "boundary document")
    field = _parse_field(doc, "boundary document")
    sides = {}
    for key in ("f_bottom", "f_top", "g_left", "g_right"):
        if key not in doc:
            raise StateFormatError(f"boundary document: missing required key {key!r}")
        if not isinstance(doc[key], list):
            raise StateFormatError(f"boundary document: {key!r} must be an array")
        sides[key] = doc[key]
    try:
        return BoundarySpec(shape=shape, field=field, **sides)
    except (ValueError, TypeError) as e:
        raise StateFormatError(f"boundary document: {e}") from None
