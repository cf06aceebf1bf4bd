"""Boltzmann weights, R-matrices, and the Yang-Baxter commutator.

A weight assignment gives every admissible vertex configuration a
rational Boltzmann weight (a, b, c, d families, each with a +1 and a -1
variant).  Packed into a 4x4 matrix acting on V (x) V it becomes an
R-matrix, and a triple (R, S, T) satisfies the star-triangle relation
exactly when the commutator R12 S13 T23 - T23 S13 R12 vanishes.  This
module computes both sides of that equivalence exactly, evaluates the
28 polynomial residuals the commutator condenses to, checks the
necessary conditions on (S, T) for a solution R with nonzero c and d
weights to exist, solves for R by linear algebra, and evaluates
partition functions.

Component convention: component(w, nu, beta, theta, gamma) is the
matrix entry in row (theta gamma), column (nu beta).  On a lattice
vertex the four arguments are read (left, top, right, bottom), which
makes component(w, 0, 1, 1, 0) = c_neg1 the anchor for the whole
layout.

All arithmetic is exact; weights are Fractions and floats are refused.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebra import QQ, FieldMatrix, mat_sub, matmul, nullspace_basis
from .eightvertex import enumerate_eight
from .forms_rect import enumerate_six
from .grid import BoundarySpec, GridShape, boundary_of, edges_at_vertex

WEIGHT_KEYS = ("a1", "a-1", "b1", "b-1", "c1", "c-1", "d1", "d-1")

_KEY_TO_ATTR = {
    "a1": "a1", "a-1": "a_neg1",
    "b1": "b1", "b-1": "b_neg1",
    "c1": "c1", "c-1": "c_neg1",
    "d1": "d1", "d-1": "d_neg1",
}


class WeightFormatError(ValueError):
    """Raised when serialized weights fail to parse."""


def _exact(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("weights must be exact (int, str, or Fraction), not float")
    return Fraction(x)


@dataclass(frozen=True)
class VertexWeights:
    """The eight Boltzmann weights of one vertex type, as exact rationals."""

    a1: Fraction
    a_neg1: Fraction
    b1: Fraction
    b_neg1: Fraction
    c1: Fraction
    c_neg1: Fraction
    d1: Fraction
    d_neg1: Fraction

    def __post_init__(self):
        for key in WEIGHT_KEYS:
            attr = _KEY_TO_ATTR[key]
            object.__setattr__(self, attr, _exact(getattr(self, attr)))

    @classmethod
    def from_pairs(cls, a, b, c, d) -> "VertexWeights":
        """Build from (plus, minus) pairs, one per letter."""
        return cls(a[0], a[1], b[0], b[1], c[0], c[1], d[0], d[1])

    @classmethod
    def identity(cls) -> "VertexWeights":
        """a and b weights 1, c and d weights 0: the identity R-matrix."""
        return cls(1, 1, 1, 1, 0, 0, 0, 0)

    def weight(self, letter: str, sign: int) -> Fraction:
        """Signed lookup: weight("c", -1) is c_neg1."""
        if letter not in "abcd" or sign not in (1, -1):
            raise ValueError(f"no weight {letter}_{sign}")
        return getattr(self, letter + ("1" if sign == 1 else "_neg1"))

    def as_vector(self) -> tuple:
        """The eight weights in WEIGHT_KEYS order."""
        return tuple(getattr(self, _KEY_TO_ATTR[k]) for k in WEIGHT_KEYS)


def weights_from_vector(v) -> VertexWeights:
    """Inverse of as_vector: eight entries in WEIGHT_KEYS order."""
    if len(v) != 8:
        raise ValueError("weight vector must have 8 entries")
    return VertexWeights(*v)


def serialize_weights(w: VertexWeights) -> str:
    """Weights as JSON with keys a1, a-1, ..., values as rational strings."""
    doc = {k: str(getattr(w, _KEY_TO_ATTR[k])) for k in WEIGHT_KEYS}
    return json.dumps(doc, sort_keys=True)


def deserialize_weights(text: str) -> VertexWeights:
    """Parse a weights document; accepts ints or "p/q" strings per entry."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise WeightFormatError(f"weights document: invalid JSON at line {e.lineno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise WeightFormatError("weights document: top level must be a JSON object")
    values = {}
    for key in WEIGHT_KEYS:
        if key not in doc:
            raise WeightFormatError(f"weights document: missing required key {key!r}")
        raw = doc[key]
        try:
            values[_KEY_TO_ATTR[key]] = _exact(raw)
        except (TypeError, ValueError, ZeroDivisionError):
            raise WeightFormatError(
                f"weights document: {key!r} must be an integer or 'p/q' string, got {raw!r}"
            ) from None
    return VertexWeights(**values)


# Matrix layout: row index is the output pair (theta gamma), column index
# the input pair (nu beta), both read as two-bit numbers.
_MATRIX_SLOTS = {
    ("a", 1): (0, 0), ("a", -1): (3, 3),
    ("b", 1): (1, 1), ("b", -1): (2, 2),
    ("c", 1): (1, 2), ("c", -1): (2, 1),
    ("d", 1): (0, 3), ("d", -1): (3, 0),
}

_COMPONENT_TABLE = {
    (0, 0, 0, 0): ("a", 1), (1, 1, 1, 1): ("a", -1),
    (0, 1, 0, 1): ("b", 1), (1, 0, 1, 0): ("b", -1),
    (1, 0, 0, 1): ("c", 1), (0, 1, 1, 0): ("c", -1),
    (1, 1, 0, 0): ("d", 1), (0, 0, 1, 1): ("d", -1),
}


def weights_to_matrix(w: VertexWeights) -> FieldMatrix:
    """The 4x4 R-matrix over the rationals, basis v0v0, v0v1, v1v0, v1v1."""
    rows = [[Fraction(0)] * 4 for _ in range(4)]
    for (letter, sign), (r, c) in _MATRIX_SLOTS.items():
        rows[r][c] = w.weight(letter, sign)
    return FieldMatrix.from_rows(QQ, rows)


def matrix_to_weights(m: FieldMatrix) -> VertexWeights:
    """Read the eight weights back; rejects entries off the zero pattern."""
    if (m.rows, m.cols) != (4, 4):
        raise ValueError("R-matrix must be 4x4")
    allowed = set(_MATRIX_SLOTS.values())
    for r in range(4):
        for c in range(4):
            if (r, c) not in allowed and m.at(r, c) != 0:
                raise ValueError(
                    f"matrix violates the eight-vertex zero pattern at ({r}, {c})"
                )
    values = {}
    for (letter, sign), (r, c) in _MATRIX_SLOTS.items():
        values[_KEY_TO_ATTR[letter + ("1" if sign == 1 else "-1")]] = m.at(r, c)
    return VertexWeights(**values)


def component(w: VertexWeights, nu: int, beta: int, theta: int, gamma: int) -> Fraction:
    """Matrix entry for inputs (nu, beta) and outputs (theta, gamma).

    Nonzero only on the eight admissible label patterns.  For a vertex
    of the lattice the arguments are its (left, top, right, bottom)
    edge values.
    """
    for x in (nu, beta, theta, gamma):
        if x not in (0, 1):
            raise ValueError("component labels must be bits")
    slot = _COMPONENT_TABLE.get((nu, beta, theta, gamma))
    if slot is None:
        return Fraction(0)
    return w.weight(*slot)


def embed(m: FieldMatrix, slot: int) -> FieldMatrix:
    """Promote a two-site operator to V (x) V (x) V on the given site pair.

    Basis index of v_a (x) v_b (x) v_c is 4a + 2b + c.  slot 12 leaves
    the third site alone, 23 the first, and 13 the middle.
    """
    if (m.rows, m.cols) != (4, 4):
        raise ValueError("embed expects a 4x4 matrix")
    if slot not in (12, 13, 23):
        raise ValueError("slot must be one of 12, 13, 23")
    zero = m.field.zero
    entries = []
    for ap, bp, cp in product((0, 1), repeat=3):
        for a, b, c in product((0, 1), repeat=3):
            if slot == 12:
                val = m.at(2 * ap + bp, 2 * a + b) if cp == c else zero
            elif slot == 13:
                val = m.at(2 * ap + cp, 2 * a + c) if bp == b else zero
            else:
                val = m.at(2 * bp + cp, 2 * b + c) if ap == a else zero
            entries.append(val)
    return FieldMatrix(m.field, 8, 8, tuple(entries))


def yb_commutator(r: VertexWeights, s: VertexWeights, t: VertexWeights) -> FieldMatrix:
    """R12 S13 T23 - T23 S13 R12 as an exact 8x8 operator."""
    r12 = embed(weights_to_matrix(r), 12)
    s13 = embed(weights_to_matrix(s), 13)
    t23 = embed(weights_to_matrix(t), 23)
    return mat_sub(matmul(matmul(r12, s13), t23), matmul(matmul(t23, s13), r12))


@dataclass(frozen=True)
class BoundaryHex:
    """The six external labels of the star-triangle hexagon.

    sigma and tau enter the crossing vertex, beta enters from above;
    theta, rho, alpha leave.  Internal labels are summed over inside
    star_triangle_residual.
    """

    sigma: int
    tau: int
    beta: int
    theta: int
    rho: int
    alpha: int

    def bits(self) -> tuple:
        return (self.sigma, self.tau, self.beta, self.theta, self.rho, self.alpha)


def star_triangle_residual(r: VertexWeights, s: VertexWeights, t: VertexWeights,
                           ext: BoundaryHex) -> Fraction:
    """Crossing-first side minus crossing-last side, one external labeling.

    Each side sums the weight products over the 8 assignments of its
    three internal edge labels.
    """
    sg, ta, be, th, rh, al = ext.bits()
    lhs = Fraction(0)
    for gamma, mu, nu in product((0, 1), repeat=3):
        lhs += (component(r, sg, ta, nu, mu)
                * component(s, nu, be, th, gamma)
                * component(t, mu, gamma, rh, al))
    rhs = Fraction(0)
    for delta, phi, psi in product((0, 1), repeat=3):
        rhs += (component(t, ta, be, psi, delta)
                * component(s, sg, delta, phi, al)
                * component(r, phi, psi, th, rh))
    return lhs - rhs


def star_triangle_residuals(r: VertexWeights, s: VertexWeights,
                            t: VertexWeights) -> tuple:
    """All 64 residuals, external labels in lexicographic order.

    The vector is zero exactly when yb_commutator(r, s, t) vanishes:
    the residual at (sigma, tau, beta, theta, rho, alpha) is minus the
    commutator entry in row (theta, rho, alpha), column (sigma, tau,
    beta).
    """
    return tuple(
        star_triangle_residual(r, s, t, BoundaryHex(*bits))
        for bits in product((0, 1), repeat=6)
    )


def _eq1to6(r, s, t, k, i, j):
    W = lambda party, letter, sign: party.weight(letter, sign)
    if k == 1:
        return (W(t, "a", j) * W(s, "a", j) * W(r, "d", i)
                + W(t, "d", i) * W(s, "c", i) * W(r, "a", -j)
                - W(t, "c", i) * W(s, "d", i) * W(r, "a", j)
                - W(t, "b", -j) * W(s, "b", -j) * W(r, "d", i))
    if k == 2:
        return (W(t, "d", i) * W(s, "b", j) * W(r, "c", i)
                + W(t, "a", j) * W(s, "d", i) * W(r, "b", -j)
                - W(t, "b", j) * W(s, "d", i) * W(r, "a", j)
                - W(t, "c", -i) * W(s, "b", -j) * W(r, "d", i))
    if k == 3:
        return (W(t, "d", i) * W(s, "b", j) * W(r, "b", j)
                + W(t, "a", j) * W(s, "d", i) * W(r, "c", -i)
                - W(t, "d", i) * W(s, "a", j) * W(r, "a", j)
                - W(t, "a", -j) * W(s, "c", -i) * W(r, "d", i))
    if k == 4:
        return (W(t, "c", i) * W(s, "a", j) * W(r, "c", i)
                + W(t, "b", j) * W(s, "c", i) * W(r, "b", -j)
                - W(t, "a", j) * W(s, "c", i) * W(r, "a", j)
                - W(t, "d", -i) * W(s, "a", -j) * W(r, "d", i))
    if k == 5:
        return (W(t, "c", i) * W(s, "a", j) * W(r, "b", j)
                + W(t, "b", j) * W(s, "c", i) * W(r, "c", -i)
                - W(t, "c", i) * W(s, "b", j) * W(r, "a", j)
                - W(t, "b", -j) * W(s, "d", -i) * W(r, "d", i))
    if k == 6:
        return (W(t, "b", -j) * W(s, "a", j) * W(r, "c", i)
                + W(t, "c", -i) * W(s, "c", i) * W(r, "b", -j)
                - W(t, "d", -i) * W(s, "d", i) * W(r, "b", j)
                - W(t, "a", j) * W(s, "b", -j) * W(r, "c", i))
    raise ValueError(k)


def _eq7to10(r, s, t, k):
    if k == 7:
        return t.c1 * s.c_neg1 * r.c1 - t.c_neg1 * s.c1 * r.c_neg1
    if k == 8:
        return t.d1 * s.c1 * r.d_neg1 - t.d_neg1 * s.c_neg1 * r.d1
    if k == 9:
        return t.c1 * s.d1 * r.d_neg1 - t.c_neg1 * s.d_neg1 * r.d1
    if k == 10:
        return t.d1 * s.d_neg1 * r.c1 - t.d_neg1 * s.d1 * r.c_neg1
    raise ValueError(k)


_EQ_TEXT = {
    1: "a_j(T) a_j(S) d_i(R) + d_i(T) c_i(S) a_-j(R) = c_i(T) d_i(S) a_j(R) + b_-j(T) b_-j(S) d_i(R)",
    2: "d_i(T) b_j(S) c_i(R) + a_j(T) d_i(S) b_-j(R) = b_j(T) d_i(S) a_j(R) + c_-i(T) b_-j(S) d_i(R)",
    3: "d_i(T) b_j(S) b_j(R) + a_j(T) d_i(S) c_-i(R) = d_i(T) a_j(S) a_j(R) + a_-j(T) c_-i(S) d_i(R)",
    4: "c_i(T) a_j(S) c_i(R) + b_j(T) c_i(S) b_-j(R) = a_j(T) c_i(S) a_j(R) + d_-i(T) a_-j(S) d_i(R)",
    5: "c_i(T) a_j(S) b_j(R) + b_j(T) c_i(S) c_-i(R) = c_i(T) b_j(S) a_j(R) + b_-j(T) d_-i(S) d_i(R)",
    6: "b_-j(T) a_j(S) c_i(R) + c_-i(T) c_i(S) b_-j(R) = d_-i(T) d_i(S) b_j(R) + a_j(T) b_-j(S) c_i(R)",
    7: "c_1(T) c_-1(S) c_1(R) = c_-1(T) c_1(S) c_-1(R)",
    8: "d_1(T) c_1(S) d_-1(R) = d_-1(T) c_-1(S) d_1(R)",
    9: "c_1(T) d_1(S) d_-1(R) = c_-1(T) d_-1(S) d_1(R)",
    10: "d_1(T) d_-1(S) c_1(R) = d_-1(T) d_1(S) c_-1(R)",
}

RESIDUALS28_LABELS = tuple(
    f"eq{k} (i={i}, j={j}): {_EQ_TEXT[k]}"
    for k in range(1, 7) for i in (1, -1) for j in (1, -1)
) + tuple(f"eq{k}: {_EQ_TEXT[k]}" for k in range(7, 11))


def residuals28(r: VertexWeights, s: VertexWeights, t: VertexWeights) -> tuple:
    """LHS - RHS of the 28-equation system, in RESIDUALS28_LABELS order.

    Equations 1-6 are instantiated at (i, j) in (1,1), (1,-1), (-1,1),
    (-1,-1); equations 7-10 have no parameters.  The joint vanishing of
    all 28 is equivalent to the vanishing of the commutator.
    """
    out = [
        _eq1to6(r, s, t, k, i, j)
        for k in range(1, 7) for i in (1, -1) for j in (1, -1)
    ]
    out.extend(_eq7to10(r, s, t, k) for k in range(7, 11))
    return tuple(out)


def f_invariant(w: VertexWeights) -> Fraction:
    """a1 a-1 + b1 b-1 - c1 c-1 - d1 d-1."""
    return w.a1 * w.a_neg1 + w.b1 * w.b_neg1 - w.c1 * w.c_neg1 - w.d1 * w.d_neg1


def g_invariant(i: int, s: VertexWeights, t: VertexWeights) -> Fraction:
    """The bracket pairing c_-i d_i of one party with a/b cross terms of the other.

    Antisymmetric under swapping s and t; vanishes when they coincide.
    """
    def half(x, y):
        return x.weight("c", -i) * x.weight("d", i) * (
            y.b_neg1 * y.a1 + y.a_neg1 * y.b1)
    return half(t, s) - half(s, t)


@dataclass(frozen=True)
class ConditionReport:
    """Necessary conditions on (S, T) for a YBE solution R with all c, d nonzero.

    The five booleans are, in order: the two ab-balance identities
    (products a1 b1 and a-1 b-1 against the other party's F), the
    squared-G identity at i = +1 and at i = -1, and the c/d ratio
    match.  minors_plus and minors_minus list all six 2x2 minors of the
    4x2 coefficient matrix in (c_i(R), d_i(R)) at i = +1 and i = -1;
    only three of them feed the booleans, the rest are informational.
    """

    ab_balance_t: bool
    ab_balance_s: bool
    g_squared_plus: bool
    g_squared_minus: bool
    cd_ratio: bool
    f_s: Fraction
    f_t: Fraction
    g_plus: Fraction
    g_minus: Fraction
    alpha: tuple
    beta: tuple
    minors_plus: tuple
    minors_minus: tuple

    @property
    def conditions(self) -> tuple:
        return (self.ab_balance_t, self.ab_balance_s,
                self.g_squared_plus, self.g_squared_minus, self.cd_ratio)

    @property
    def all_hold(self) -> bool:
        return all(self.conditions)

    def as_dict(self) -> dict:
        """JSON-ready form with rationals rendered as strings."""
        return {
            "ab_balance_t": self.ab_balance_t,
            "ab_balance_s": self.ab_balance_s,
            "g_squared_plus": self.g_squared_plus,
            "g_squared_minus": self.g_squared_minus,
            "cd_ratio": self.cd_ratio,
            "all_hold": self.all_hold,
            "F(S)": str(self.f_s),
            "F(T)": str(self.f_t),
            "G(+1)": str(self.g_plus),
            "G(-1)": str(self.g_minus),
            "alpha": [str(x) for x in self.alpha],
            "beta": [str(x) for x in self.beta],
            "minors_plus": [str(x) for x in self.minors_plus],
            "minors_minus": [str(x) for x in self.minors_minus],
        }


def _coefficient_minors(i, s, t, alpha, beta):
    # rows of the 4x2 matrix annihilating (c_i(R), d_i(R))
    cg = t.weight("c", i) / t.weight("c", -i) * g_invariant(i, s, t)
    dg = t.weight("d", -i) / t.weight("d", i) * g_invariant(i, s, t)
    rows = [(cg, -alpha[0]), (cg, -alpha[1]), (beta[0], -dg), (beta[1], -dg)]
    out = []
    for r1 in range(4):
        for r2 in range(r1 + 1, 4):
            out.append(rows[r1][0] * rows[r2][1] - rows[r2][0] * rows[r1][1])
    return tuple(out)


def check_necessary_conditions(s: VertexWeights, t: VertexWeights) -> ConditionReport:
    """Evaluate the necessary conditions for solvability in R.

    Requires all sixteen weights of s and t nonzero; the conditions are
    derived under that hypothesis and divide by several of them.  The
    booleans hold whenever some R with c_1, c_-1, d_1, d_-1 all nonzero
    satisfies the YBE against (s, t); nothing is claimed conversely.
    """
    for party, name in ((s, "S"), (t, "T")):
        if any(x == 0 for x in party.as_vector()):
            raise ValueError(f"necessary conditions need all weights of {name} nonzero")
    f_s, f_t = f_invariant(s), f_invariant(t)
    g_plus, g_minus = g_invariant(1, s, t), g_invariant(-1, s, t)
    alpha = tuple(
        t.weight("a", j) * t.weight("b", j) * f_s
        - s.weight("a", -j) * s.weight("b", -j) * f_t
        for j in (1, -1)
    )
    beta = tuple(
        t.weight("a", j) * t.weight("b", j) * f_s
        - s.weight("a", j) * s.weight("b", j) * f_t
        for j in (1, -1)
    )
    rhs = (t.a1 * t.b1 * f_s - s.a1 * s.b1 * f_t) ** 2
    g_sq = {}
    for i in (1, -1):
        ratio = (t.weight("c", i) * t.weight("d", -i)) / (
            t.weight("c", -i) * t.weight("d", i))
        g_sq[i] = ratio * g_invariant(i, s, t) ** 2 == rhs
    return ConditionReport(
        ab_balance_t=(t.a1 * t.b1 * f_s == t.a_neg1 * t.b_neg1 * f_s),
        ab_balance_s=(s.a1 * s.b1 * f_t == s.a_neg1 * s.b_neg1 * f_t),
        g_squared_plus=g_sq[1],
        g_squared_minus=g_sq[-1],
        cd_ratio=(t.c1 * s.c_neg1 / (t.c_neg1 * s.c1)
                  == t.d1 * s.d_neg1 / (t.d_neg1 * s.d1)),
        f_s=f_s,
        f_t=f_t,
        g_plus=g_plus,
        g_minus=g_minus,
        alpha=alpha,
        beta=beta,
        minors_plus=_coefficient_minors(1, s, t, alpha, beta),
        minors_minus=_coefficient_minors(-1, s, t, alpha, beta),
    )


@dataclass(frozen=True)
class SolveReport:
    """Solution space of [[R, S, T]] = 0 viewed as linear in R's weights.

    basis spans the space, vectors in WEIGHT_KEYS order.  witness is a
    scanned element with c_1, c_-1, d_1, d_-1 all nonzero, or None if
    the scan found none; a None witness means "none found in scan",
    never a proof of nonexistence.
    """

    basis: tuple
    witness: VertexWeights | None
    scanned: int

    @property
    def dimension(self) -> int:
        return len(self.basis)


def solve_R(s: VertexWeights, t: VertexWeights, scan_range: int = 2) -> SolveReport:
    """Find all R with [[R, S, T]] = 0, and scan for a fully twisted one.

    The commutator is linear in R's eight weights, so its vanishing is
    a 64-equation linear system; the basis of solutions is exact.  The
    witness scan tries integer coefficient combinations of the basis in
    [-scan_range, scan_range], stopping at the first combination whose
    c and d weights are all nonzero.
    """
    columns = []
    for k in range(8):
        unit = weights_from_vector(tuple(1 if idx == k else 0 for idx in range(8)))
        columns.append(yb_commutator(unit, s, t).entries)
    rows = [[columns[k][r] for k in range(8)] for r in range(64)]
    basis = tuple(nullspace_basis(FieldMatrix.from_rows(QQ, rows)))

    cd = [v[4:8] for v in basis]  # c1, c-1, d1, d-1 coordinates per basis vector
    witness = None
    scanned = 0
    span = range(-scan_range, scan_range + 1)
    for coeffs in product(span, repeat=len(basis)):
        scanned += 1
        twisted = True
        for pos in range(4):
            if sum(c * v[pos] for c, v in zip(coeffs, cd)) == 0:
                twisted = False
                break
        if twisted:
            vec = [sum(c * v[k] for c, v in zip(coeffs, basis)) for k in range(8)]
            witness = weights_from_vector(vec)
            break
    return SolveReport(basis=basis, witness=witness, scanned=scanned)


def partition_function(w: VertexWeights, shape: GridShape, model: str,
                       boundary: BoundarySpec | None = None,
                       force: bool = False) -> Fraction:
    """Sum over admissible states of the product of vertex weights.

    model "six" enumerates six-vertex states and requires both d
    weights to be zero; "eight" enumerates eight-vertex states.  A
    None boundary means free boundary, otherwise states are restricted
    to it.  Exact.
    """
    if model == "six":
        if w.d1 != 0 or w.d_neg1 != 0:
            raise ValueError("six-vertex partition function requires d1 = d-1 = 0")
        states = enumerate_six(shape, force=force)
        if boundary is not None:
            if boundary.shape != shape:
                raise ValueError("boundary shape does not match the requested shape")
            states = [st for st in states if boundary_of(st) == boundary]
    elif model == "eight":
        states = enumerate_eight(shape, boundary=boundary, force=force)
    else:
        raise ValueError(f"unknown model {model!r}")
    total = Fraction(0)
    for st in states:
        prod = Fraction(1)
        for i in range(1, shape.m + 1):
            for j in range(1, shape.n + 1):
                left, top, right, bottom = edges_at_vertex(st, i, j)
                prod *= component(w, left, top, right, bottom)
        total += prod
    return total
