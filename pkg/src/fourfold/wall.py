"""Wall's correction term for signatures of manifolds glued along boundary pieces.

Everything runs over exact rationals.  The ambient space is Q^4, the direct
sum of the first homology of the two gluing tori with its intersection
pairing; a triple of Lagrangian subspaces feeds Wall's quotient pairing, and
the signature of that pairing is the correction by which the signature fails
to add under the cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import ConsistencyError
from .sl2z import MatrixZ, TAU

Vec = tuple[Fraction, ...]


def _vec(values: Sequence) -> Vec:
    return tuple(Fraction(v) for v in values)


def _rref(rows: Iterable[Sequence]) -> list[list[Fraction]]:
    """Reduced row echelon form; returns the nonzero rows."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        pivot = next((r for r in range(pivot_row, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[pivot_row], mat[pivot] = mat[pivot], mat[pivot_row]
        inv = 1 / mat[pivot_row][col]
        mat[pivot_row] = [x * inv for x in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return [row for row in mat[:pivot_row]]


def _nullspace(rows: Iterable[Sequence], ncols: int) -> list[Vec]:
    """Basis of the exact rational null space, one vector per free column."""
    red = _rref(rows)
    pivots = []
    for row in red:
        lead = next(i for i, x in enumerate(row) if x != 0)
        pivots.append(lead)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(tuple(v))
    return basis


def _solve(rows: list[Sequence], rhs: Sequence, free_values: Optional[dict[int, Fraction]] = None) -> Optional[list[Fraction]]:
    """One exact solution of rows * x = rhs, or None; free variables default to 0."""
    ncols = len(rows[0]) if rows else len(tuple(rhs))
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    red = _rref(aug)
    pivots = []
    for row in red:
        lead = next(i for i, x in enumerate(row) if x != 0)
        if lead == ncols:
            return None  # inconsistent system
        pivots.append(lead)
    x = [Fraction(0)] * ncols
    if free_values:
        for col, val in free_values.items():
            if col not in pivots:
                x[col] = Fraction(val)
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols] - sum(row[c] * x[c] for c in range(ncols) if c != pc)
    return x


# ---------------------------------------------------------------- subspaces


@dataclass(frozen=True)
class QSubspace:
    """Subspace of Q^n stored as canonical reduced row echelon basis rows."""

    ambient: int
    rows: tuple[Vec, ...]

    @classmethod
    def of_vectors(cls, vectors: Iterable[Sequence], ambient: int = 4) -> "QSubspace":
        vecs = [_vec(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise ValueError(f"expected vectors of length {ambient}")
        return cls(ambient, tuple(tuple(r) for r in _rref(vecs)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> tuple[Vec, ...]:
        return self.rows

    def contains(self, v: Sequence) -> bool:
        probe = _rref(list(self.rows) + [_vec(v)])
        return len(probe) == self.dim

    def intersection(self, other: "QSubspace") -> "QSubspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimensions differ")
        # x in both spans: stack [self^T | -other^T] and read self-coefficients
        n1, n2 = self.dim, other.dim
        if n1 == 0 or n2 == 0:
            return QSubspace.of_vectors([], self.ambient)
        rows = []
        for i in range(self.ambient):
            rows.append([self.rows[r][i] for r in range(n1)] + [-other.rows[r][i] for r in range(n2)])
        vecs = []
        for coeff in _nullspace(rows, n1 + n2):
            v = [Fraction(0)] * self.ambient
            for r in range(n1):
                for i in range(self.ambient):
                    v[i] += coeff[r] * self.rows[r][i]
            vecs.append(v)
        return QSubspace.of_vectors(vecs, self.ambient)

    def sum_with(self, other: "QSubspace") -> "QSubspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimensions differ")
        return QSubspace.of_vectors(list(self.rows) + list(other.rows), self.ambient)

    def __contains__(self, v: Sequence) -> bool:
        return self.contains(v)


def kernel_subspace(rows: Sequence[Sequence[int]]) -> QSubspace:
    """Exact null space of an integer (or rational) matrix with 4 columns."""
    rows = [list(r) for r in rows]
    for r in rows:
        if len(r) != 4:
            raise ValueError("expected rows of length 4")
    return QSubspace.of_vectors(_nullspace(rows, 4), 4)


# ---------------------------------------------------------------- the form


@dataclass(frozen=True)
class SymplecticForm:
    """Antisymmetric pairing on Q^4: each torus plane carries its standard
    intersection form.  This is the convention under which the kernel
    subspaces of the regluing maps come out Lagrangian, which Wall's theorem
    needs; the quotient pairing below is symmetric exactly because of it."""

    gram: tuple[Vec, ...] = (
        _vec((0, 1, 0, 0)),
        _vec((-1, 0, 0, 0)),
        _vec((0, 0, 0, 1)),
        _vec((0, 0, -1, 0)),
    )

    def pairing(self, x: Sequence, y: Sequence) -> Fraction:
        xv, yv = _vec(x), _vec(y)
        return sum(xv[i] * self.gram[i][j] * yv[j] for i in range(4) for j in range(4))


INTERSECTION_FORM = SymplecticForm()


def symplectic_pairing(x: Sequence, y: Sequence) -> Fraction:
    return INTERSECTION_FORM.pairing(x, y)


# ---------------------------------------------------------------- signatures


def symmetric_signature(gram: Sequence[Sequence]) -> int:
    """Signature of an exact symmetric rational matrix by congruence diagonalization."""
    n = len(gram)
    m = [[Fraction(x) for x in row] for row in gram]
    for row in m:
        if len(row) != n:
            raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i},{j})")
    pos = neg = 0
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][i] != 0), None)
        if pivot is None:
            pair = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if m[i][j] != 0),
                None,
            )
            if pair is None:
                break  # remaining block is zero
            i, j = pair
            # congruence: add row/col j to row/col i, making m[i][i] = 2*m[i][j] != 0
            for c in range(n):
                m[i][c] += m[j][c]
            for r in range(n):
                m[r][i] += m[r][j]
            pivot = i
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            for r in range(n):
                m[r][k], m[r][pivot] = m[r][pivot], m[r][k]
        d = m[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for r in range(k + 1, n):
            if m[r][k] != 0:
                f = m[r][k] / d
                for c in range(n):
                    m[r][c] -= f * m[k][c]
                for c in range(n):
                    m[c][r] -= f * m[c][k]
    return pos - neg


# ---------------------------------------------------------------- Wall triples


@dataclass(frozen=True)
class WallTriple:
    """Ordered triple of subspaces of Q^4 feeding the correction pairing."""

    a_minus: QSubspace
    b_core: QSubspace
    c_plus: QSubspace

    def __post_init__(self) -> None:
        for space in (self.a_minus, self.b_core, self.c_plus):
            if space.ambient != 4:
                raise ValueError("Wall triples live in Q^4")


def wall_correction_form(t: WallTriple) -> tuple[tuple[Vec, ...], tuple[tuple[Fraction, ...], ...]]:
    """Representatives and Gram matrix of Wall's pairing on A cap (B+C) modulo
    (A cap B) + (A cap C)."""
    a, bsp, c = t.a_minus, t.b_core, t.c_plus
    top = a.intersection(bsp.sum_with(c))
    bottom = a.intersection(bsp).sum_with(a.intersection(c))
    # coset representatives: top basis vectors that enlarge the bottom
    reps: list[Vec] = []
    span = list(bottom.rows)
    rank = len(_rref(span)) if span else 0
    for v in top.rows:
        probe = _rref(span + [list(v)])
        if len(probe) > rank:
            reps.append(v)
            span.append(list(v))
            rank = len(probe)
    # for each representative a', solve a' + b' + c' = 0 with b' in B, c' in C
    b_parts: list[Vec] = []
    bb, cb = bsp.rows, c.rows
    for v in reps:
        cols = len(bb) + len(cb)
        rows = []
        for i in range(4):
            rows.append([bb[r][i] for r in range(len(bb))] + [cb[r][i] for r in range(len(cb))])
        sol = _solve(rows, [-x for x in v])
        if sol is None:
            raise ConsistencyError("representative is not in B + C")
        bpart = [Fraction(0)] * 4
        for r in range(len(bb)):
            for i in range(4):
                bpart[i] += sol[r] * bb[r][i]
        b_parts.append(tuple(bpart))
    gram = tuple(
        tuple(INTERSECTION_FORM.pairing(reps[i], b_parts[j]) for j in range(len(reps)))
        for i in range(len(reps))
    )
    for i in range(len(reps)):
        for j in range(len(reps)):
            if gram[i][j] != gram[j][i]:
                raise ConsistencyError("Wall pairing came out non-symmetric")
    return tuple(reps), gram


def wall_correction(t: WallTriple) -> int:
    """Signature of Wall's pairing; the defect of signature additivity."""
    _, gram = wall_correction_form(t)
    return symmetric_signature(gram)


# ---------------------------------------------------------------- semi-bundles


def _block_rows(left: MatrixZ, right: MatrixZ) -> list[list[int]]:
    return [
        [left.a, left.b, right.a, right.b],
        [left.c, left.d, right.c, right.d],
    ]


def semibundle_wall_data(phi: MatrixZ) -> WallTriple:
    """The Wall triple of the double-twist regluing for monodromy phi."""
    if phi.det != 1:
        raise ValueError("not in SL2(Z): determinant is -1")
    a = kernel_subspace(_block_rows(TAU, phi.inverse()))
    b = QSubspace.of_vectors([(0, 1, 0, 0), (0, 0, 0, 1)], 4)
    c = kernel_subspace(_block_rows(phi, TAU))
    for name, space in (("A", a), ("B", b), ("C", c)):
        for u in space.rows:
            for v in space.rows:
                if INTERSECTION_FORM.pairing(u, v) != 0:
                    raise ConsistencyError(f"subspace {name} is not isotropic")
    return WallTriple(a, b, c)


def semibundle_trick_signature(phi: MatrixZ) -> int:
    """Signature of the closed-up double mapping torus piece: both halves
    contribute 0, so the total is minus the Wall correction."""
    return -wall_correction(semibundle_wall_data(phi))
