"""Doubly periodic forms, cohomology decomposition, and sparse potentials.

Functions and forms here live on a torus with periods (m, n): values are
stored on the fundamental domain [1, m] x [1, n] and looked up anywhere
through index reduction.  The decomposition machinery requires that
neither period is divisible by 3; without that, dx or dy becomes exact
and the decomposition below loses both existence and uniqueness, so the
types reject such shapes outright.

Every closed toroidal 1-form w then splits uniquely as

    w = r dx + s dy + dh,   h doubly periodic, h[1][1] = 0,

with r the average of fx over a row of the fundamental domain and s the
average of gy over a column.  Apply the construction to an admissible
toroidal six-vertex state and the resulting h is "sparse": neither of
its partial derivatives attains every F3 value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .forms_rect import is_admissible_six
from .grid import GridShape, LatticeState, guard_size
from .algebra import GF3

_INV3 = {1: 1, 2: 2}


def index_reduce(i: int, period: int) -> int:
    """The representative of i in [1, period] modulo the period."""
    if period < 1:
        raise ValueError("period must be positive")
    return (i - 1) % period + 1


def _check_periods(shape: GridShape) -> None:
    if shape.m % 3 == 0 or shape.n % 3 == 0:
        raise ValueError(
            f"toroidal shape ({shape.m}, {shape.n}) rejected: periods divisible "
            "by 3 break the cohomology decomposition (dx or dy becomes exact)"
        )


def _freeze_domain(values: Sequence[Sequence[int]], m: int, n: int, label: str) -> tuple:
    if len(values) != m:
        raise ValueError(f"{label} must have {m} rows, got {len(values)}")
    out = []
    for r in values:
        if len(r) != n:
            raise ValueError(f"{label} rows must have {n} entries, got {len(r)}")
        for x in r:
            if not isinstance(x, int) or not (0 <= x < 3):
                raise ValueError(f"{label} entries must be ints in [0, 3)")
        out.append(tuple(r))
    return tuple(out)


@dataclass(frozen=True)
class PeriodicField:
    """Doubly periodic F3 function given by its fundamental-domain values."""

    shape: GridShape
    values: tuple

    def __post_init__(self):
        _check_periods(self.shape)
        object.__setattr__(
            self, "values",
            _freeze_domain(self.values, self.shape.m, self.shape.n, "values"),
        )

    def at(self, i: int, j: int) -> int:
        """Value at any integer pair, through index reduction."""
        return self.values[index_reduce(i, self.shape.m) - 1][
            index_reduce(j, self.shape.n) - 1
        ]


@dataclass(frozen=True)
class ToroidalOneForm:
    """Doubly periodic 1-form, fx and gy both on the m x n fundamental domain."""

    shape: GridShape
    fx: tuple
    gy: tuple

    def __post_init__(self):
        _check_periods(self.shape)
        m, n = self.shape.m, self.shape.n
        object.__setattr__(self, "fx", _freeze_domain(self.fx, m, n, "fx"))
        object.__setattr__(self, "gy", _freeze_domain(self.gy, m, n, "gy"))

    def fx_at(self, i: int, j: int) -> int:
        return self.fx[index_reduce(i, self.shape.m) - 1][
            index_reduce(j, self.shape.n) - 1
        ]

    def gy_at(self, i: int, j: int) -> int:
        return self.gy[index_reduce(i, self.shape.m) - 1][
            index_reduce(j, self.shape.n) - 1
        ]


@dataclass(frozen=True)
class CohomologyDecomposition:
    """w = r dx + s dy + dh with h normalized to vanish at (1, 1)."""

    r: int
    s: int
    h: PeriodicField


def toroidal_derivatives(h: PeriodicField) -> ToroidalOneForm:
    """d(h) as a toroidal form: forward differences with wraparound."""
    m, n = h.shape.m, h.shape.n
    fx = tuple(
        tuple((h.at(i + 2, j + 1) - h.at(i + 1, j + 1)) % 3 for j in range(n))
        for i in range(m)
    )
    gy = tuple(
        tuple((h.at(i + 1, j + 2) - h.at(i + 1, j + 1)) % 3 for j in range(n))
        for i in range(m)
    )
    return ToroidalOneForm(shape=h.shape, fx=fx, gy=gy)


def is_closed_toroidal(w: ToroidalOneForm) -> bool:
    """D_y fx = D_x gy at every vertex of the fundamental domain (with wrap)."""
    m, n = w.shape.m, w.shape.n
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            lhs = (w.fx_at(i, j + 1) - w.fx_at(i, j)) % 3
            rhs = (w.gy_at(i + 1, j) - w.gy_at(i, j)) % 3
            if lhs != rhs:
                return False
    return True


def decompose(w: ToroidalOneForm) -> CohomologyDecomposition:
    """Split a closed toroidal form as r dx + s dy + dh.

    r is (1/m) times a row sum of fx, s is (1/n) times a column sum of
    gy, and h accumulates the residuals along a bottom-then-up path:

        h[i][j] = sum_{a<i} (fx[a][1] - r) + sum_{b<j} (gy[i][b] - s).

    The divisions are exact because the periods are prime to 3.
    """
    if not is_closed_toroidal(w):
        raise ValueError("decompose requires a closed toroidal form")
    m, n = w.shape.m, w.shape.n
    r = (_INV3[m % 3] * sum(w.fx_at(a, 1) for a in range(1, m + 1))) % 3
    s = (_INV3[n % 3] * sum(w.gy_at(1, b) for b in range(1, n + 1))) % 3
    values = []
    base = 0
    for i in range(1, m + 1):
        acc = base
        col = [acc]
        for b in range(1, n):
            acc = (acc + w.gy_at(i, b) - s) % 3
            col.append(acc)
        values.append(tuple(col))
        base = (base + w.fx_at(i, 1) - r) % 3
    h = PeriodicField(shape=w.shape, values=tuple(values))
    return CohomologyDecomposition(r=r, s=s, h=h)


def reconstruct(d: CohomologyDecomposition) -> ToroidalOneForm:
    """The form r dx + s dy + dh determined by a decomposition."""
    dh = toroidal_derivatives(d.h)
    m, n = d.h.shape.m, d.h.shape.n
    fx = tuple(
        tuple((d.r + dh.fx[i][j]) % 3 for j in range(n)) for i in range(m)
    )
    gy = tuple(
        tuple((d.s + dh.gy[i][j]) % 3 for j in range(n)) for i in range(m)
    )
    return ToroidalOneForm(shape=d.h.shape, fx=fx, gy=gy)


def partial_images(h: PeriodicField) -> tuple:
    """(set of D_x h values, set of D_y h values) over the fundamental domain."""
    dh = toroidal_derivatives(h)
    return (
        {x for row in dh.fx for x in row},
        {x for row in dh.gy for x in row},
    )


def is_sparse(h: PeriodicField) -> bool:
    """Neither partial derivative is surjective onto F3, and h[1][1] = 0."""
    if h.at(1, 1) != 0:
        return False
    im_x, im_y = partial_images(h)
    return len(im_x) < 3 and len(im_y) < 3


def has_toroidal_boundary(state: LatticeState) -> bool:
    """Left/right g columns agree and bottom/top f rows agree."""
    m, n = state.shape.m, state.shape.n
    if any(state.g_at(1, j) != state.g_at(m + 1, j) for j in range(1, n + 1)):
        return False
    return all(state.f_at(i, 1) == state.f_at(i, n + 1) for i in range(1, m + 1))


def state_to_toroidal_form(state: LatticeState) -> ToroidalOneForm:
    """Fundamental-domain form of an admissible state with toroidal boundary."""
    if not has_toroidal_boundary(state):
        raise ValueError("state does not satisfy toroidal boundary conditions")
    if not is_admissible_six(state):
        raise ValueError("state is not admissible")
    m, n = state.shape.m, state.shape.n
    fx = tuple(tuple(state.f_at(i, j) for j in range(1, n + 1)) for i in range(1, m + 1))
    gy = tuple(tuple(state.g_at(i, j) for j in range(1, n + 1)) for i in range(1, m + 1))
    return ToroidalOneForm(shape=state.shape, fx=fx, gy=gy)


def state_to_sparse(state: LatticeState) -> PeriodicField:
    """The sparse potential of an admissible toroidal six-vertex state.

    Extends the state periodically, decomposes the resulting closed
    form, and returns the normalized h, which is always sparse: the
    partial derivative images are the {0, 1}-valued state shifted by
    -r and -s, so each misses a value of F3.
    """
    w = state_to_toroidal_form(state)
    return decompose(w).h


def enumerate_six_toroidal(shape: GridShape, force: bool = False) -> list[LatticeState]:
    """All admissible six-vertex states with toroidal boundary conditions.

    Brute force over the 2 * m * n fundamental-domain edges; the
    periodic extension fixes the remaining boundary edges.
    """
    _check_periods(shape)
    m, n = shape.m, shape.n
    bits = 2 * m * n
    guard_size(bits, force)
    states = []
    for mask in range(1 << bits):
        fvals = [[(mask >> (i * n + j)) & 1 for j in range(n)] for i in range(m)]
        gvals = [
            [(mask >> (m * n + i * n + j)) & 1 for j in range(n)] for i in range(m)
        ]
        f = [row + [row[0]] for row in fvals]
        g = [list(row) for row in gvals] + [list(gvals[0])]
        state = LatticeState(shape=shape, field=GF3, f=f, g=g)
        if is_admissible_six(state):
            states.append(state)
    states.sort(key=lambda s: s.edge_tuple())
    return states


@dataclass(frozen=True)
class FiberEntry:
    """One sparse potential with the admissible states mapping onto it."""

    h: PeriodicField
    states: tuple
    r_choices: tuple
    s_choices: tuple

    @property
    def fiber_size(self) -> int:
        return len(self.states)


def admissible_shifts(h: PeriodicField) -> tuple:
    """(r choices, s choices) keeping r + D_x h and s + D_y h inside {0, 1}.

    A shift r is admissible exactly when 2 - r is outside the image of
    D_x h, and likewise for s with D_y h.
    """
    im_x, im_y = partial_images(h)
    r_choices = tuple(r for r in (0, 1, 2) if (2 - r) % 3 not in im_x)
    s_choices = tuple(s for s in (0, 1, 2) if (2 - s) % 3 not in im_y)
    return r_choices, s_choices


def sparse_fibers(shape: GridShape, force: bool = False) -> list[FiberEntry]:
    """Group all admissible toroidal states by their sparse potential.

    Entries are sorted by the potential's value table.  Each entry also
    carries the admissible (r, s) shift choices for its potential; the
    fiber is exactly {r dx + s dy + dh} over those choices, so its size
    is the product of the two choice counts.
    """
    _check_periods(shape)
    groups: dict = {}
    for state in enumerate_six_toroidal(shape, force=force):
        h = state_to_sparse(state)
        groups.setdefault(h.values, []).append(state)
    entries = []
    for values in sorted(groups):
        h = PeriodicField(shape=shape, values=values)
        r_choices, s_choices = admissible_shifts(h)
        entries.append(
            FiberEntry(
                h=h,
                states=tuple(groups[values]),
                r_choices=r_choices,
                s_choices=s_choices,
            )
        )
    return entries
