"""Exact sparse linear algebra over the rational numbers.

Every coefficient in this package is a :class:`fractions.Fraction`; no
floating point arithmetic occurs anywhere.  Matrices are stored
column-major as dictionaries mapping row index to a nonzero value, which
suits the chain-level operators of the package: they are extremely sparse
(a handful of entries per column) and are almost always built and consumed
column by column.

Conventions
-----------
* A matrix represents a linear map acting on column coordinate vectors;
  the matrix of a composite ``g after f`` is ``matrix(g) * matrix(f)``.
* All reduction routines are deterministic: identical input produces an
  identical result, entry for entry, with no randomness and no dependence
  on dict iteration order beyond the sorted traversals used explicitly.
* Elimination keeps exact fractions throughout.  Pivots are chosen to be
  simple (unit entries preferred, then entries with small numerator and
  denominator, then lowest row index) so that the rational numbers
  produced by boundary-type matrices stay tiny.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Scalar = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "NoSolution",
    "ComposabilityViolation",
    "scalar_from_string",
    "scalar_to_string",
    "SparseVector",
    "SparseMatrix",
    "kernel_basis",
    "rank",
    "column_pivots",
    "solve",
    "solve_on_subspace",
    "homology_dimension",
    "CokernelPresentation",
    "cokernel",
    "HomologyBasis",
    "homology_basis",
]


class NoSolution(Exception):
    """Raised when a linear system has no exact rational solution."""


class ComposabilityViolation(Exception):
    """Raised when a homology computation is fed maps that do not compose
    to zero (the would-be complex is not a complex)."""


def scalar_from_string(text: str) -> Scalar:
    """Parse ``"p"`` or ``"p/q"`` into an exact scalar."""
    return Fraction(text.strip())


def scalar_to_string(value: Scalar) -> str:
    """Format a scalar as ``"p"`` or ``"p/q"`` in lowest terms."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _pivot_quality(value: Scalar) -> tuple[int, int]:
    """Sort key preferring ±1 pivots, then small numerator/denominator."""
    num = value.numerator
    den = value.denominator
    unit = 0 if (num in (1, -1) and den == 1) else 1
    return (unit, abs(num).bit_length() + den.bit_length())


class SparseVector:
    """A sparse column vector of fixed dimension over the rationals."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: Mapping[int, Scalar] | None = None):
        self.dim = dim
        self.entries: dict[int, Scalar] = {}
        if entries:
            for i, v in entries.items():
                if v:
                    if not 0 <= i < dim:
                        raise IndexError(f"index {i} out of range for dim {dim}")
                    self.entries[i] = Fraction(v)

    @classmethod
    def unit(cls, dim: int, index: int) -> "SparseVector":
        return cls(dim, {index: ONE})

    @classmethod
    def from_dense(cls, values: Sequence[Scalar | int]) -> "SparseVector":
        return cls(len(values), {i: Fraction(v) for i, v in enumerate(values) if v})

    def to_dense(self) -> list[Scalar]:
        out = [ZERO] * self.dim
        for i, v in self.entries.items():
            out[i] = v
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def get(self, i: int) -> Scalar:
        return self.entries.get(i, ZERO)

    def scaled(self, c: Scalar) -> "SparseVector":
        if not c:
            return SparseVector(self.dim)
        return SparseVector(self.dim, {i: c * v for i, v in self.entries.items()})

    def __add__(self, other: "SparseVector") -> "SparseVector":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out = dict(self.entries)
        for i, v in other.entries.items():
            s = out.get(i, ZERO) + v
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        res = SparseVector(self.dim)
        res.entries = out
        return res

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + other.scaled(-ONE)

    def __neg__(self) -> "SparseVector":
        return self.scaled(-ONE)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SparseVector)
            and self.dim == other.dim
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        items = ", ".join(
            f"{i}: {scalar_to_string(v)}" for i, v in sorted(self.entries.items())
        )
        return f"SparseVector(dim={self.dim}, {{{items}}})"


class SparseMatrix:
    """A sparse matrix stored as a list of column dictionaries."""

    __slots__ = ("rows", "cols", "_cols")

    def __init__(self, rows: int, cols: int):
        self.rows = rows
        self.cols = cols
        self._cols: list[dict[int, Scalar]] = [{} for _ in range(cols)]

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        m = cls(n, n)
        for i in range(n):
            m._cols[i][i] = ONE
        return m

    @classmethod
    def scalar(cls, n: int, value: Scalar) -> "SparseMatrix":
        m = cls(n, n)
        if value:
            for i in range(n):
                m._cols[i][i] = Fraction(value)
        return m

    @classmethod
    def from_entries(
        cls, rows: int, cols: int, entries: Iterable[tuple[int, int, Scalar | int]]
    ) -> "SparseMatrix":
        m = cls(rows, cols)
        for r, c, v in entries:
            if v:
                m.add_to(r, c, Fraction(v))
        return m

    @classmethod
    def from_dense(cls, table: Sequence[Sequence[Scalar | int]]) -> "SparseMatrix":
        rows = len(table)
        cols = len(table[0]) if rows else 0
        m = cls(rows, cols)
        for r, row in enumerate(table):
            for c, v in enumerate(row):
                if v:
                    m._cols[c][r] = Fraction(v)
        return m

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[SparseVector]) -> "SparseMatrix":
        m = cls(rows, len(columns))
        for j, col in enumerate(columns):
            if col.dim != rows:
                raise ValueError("column dimension mismatch")
            m._cols[j] = dict(col.entries)
        return m

    @staticmethod
    def block(
        row_dims: Sequence[int],
        col_dims: Sequence[int],
        blocks: Mapping[tuple[int, int], "SparseMatrix"],
    ) -> "SparseMatrix":
        """Assemble a block matrix; missing blocks are zero.

        ``blocks[(i, j)]`` must be a ``row_dims[i] x col_dims[j]`` matrix.
        """
        row_off = [0]
        for d in row_dims:
            row_off.append(row_off[-1] + d)
        col_off = [0]
        for d in col_dims:
            col_off.append(col_off[-1] + d)
        out = SparseMatrix(row_off[-1], col_off[-1])
        for (bi, bj), blk in blocks.items():
            if blk.rows != row_dims[bi] or blk.cols != col_dims[bj]:
                raise ValueError(
                    f"block ({bi},{bj}) is {blk.rows}x{blk.cols}, "
                    f"expected {row_dims[bi]}x{col_dims[bj]}"
                )
            ro = row_off[bi]
            co = col_off[bj]
            for j, col in enumerate(blk._cols):
                if col:
                    tgt = out._cols[co + j]
                    for r, v in col.items():
                        s = tgt.get(ro + r, ZERO) + v
                        if s:
                            tgt[ro + r] = s
                        else:
                            tgt.pop(ro + r, None)
        return out

    def copy(self) -> "SparseMatrix":
        m = SparseMatrix(self.rows, self.cols)
        m._cols = [dict(c) for c in self._cols]
        return m

    # ------------------------------------------------------------------
    # element access
    # ------------------------------------------------------------------

    def entry(self, r: int, c: int) -> Scalar:
        return self._cols[c].get(r, ZERO)

    def set_entry(self, r: int, c: int, v: Scalar) -> None:
        if not 0 <= r < self.rows:
            raise IndexError(f"row {r} out of range")
        if v:
            self._cols[c][r] = Fraction(v)
        else:
            self._cols[c].pop(r, None)

    def add_to(self, r: int, c: int, v: Scalar) -> None:
        if not 0 <= r < self.rows:
            raise IndexError(f"row {r} out of range")
        s = self._cols[c].get(r, ZERO) + v
        if s:
            self._cols[c][r] = s
        else:
            self._cols[c].pop(r, None)

    def column(self, j: int) -> SparseVector:
        v = SparseVector(self.rows)
        v.entries = dict(self._cols[j])
        return v

    def set_column(self, j: int, col: SparseVector) -> None:
        if col.dim != self.rows:
            raise ValueError("column dimension mismatch")
        self._cols[j] = dict(col.entries)

    def columns(self) -> Iterator[SparseVector]:
        for j in range(self.cols):
            yield self.column(j)

    def entries(self) -> Iterator[tuple[int, int, Scalar]]:
        for j, col in enumerate(self._cols):
            for r, v in col.items():
                yield (r, j, v)

    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    def is_zero(self) -> bool:
        return all(not c for c in self._cols)

    def row_dicts(self) -> list[dict[int, Scalar]]:
        """Rows of the matrix as dictionaries keyed by column index."""
        rows: list[dict[int, Scalar]] = [{} for _ in range(self.rows)]
        for j, col in enumerate(self._cols):
            for r, v in col.items():
                rows[r][j] = v
        return rows

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        out = self.copy()
        for j, col in enumerate(other._cols):
            tgt = out._cols[j]
            for r, v in col.items():
                s = tgt.get(r, ZERO) + v
                if s:
                    tgt[r] = s
                else:
                    tgt.pop(r, None)
        return out

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scaled(-ONE)

    def scaled(self, c: Scalar) -> "SparseMatrix":
        out = SparseMatrix(self.rows, self.cols)
        if c:
            out._cols = [{r: c * v for r, v in col.items()} for col in self._cols]
        return out

    def __neg__(self) -> "SparseMatrix":
        return self.scaled(-ONE)

    def __mul__(self, other):
        if isinstance(other, SparseMatrix):
            if self.cols != other.rows:
                raise ValueError(
                    f"cannot compose {self.rows}x{self.cols} with "
                    f"{other.rows}x{other.cols}"
                )
            out = SparseMatrix(self.rows, other.cols)
            mine = self._cols
            for j, col in enumerate(other._cols):
                if not col:
                    continue
                acc: dict[int, Scalar] = {}
                for k, v in col.items():
                    src = mine[k]
                    if not src:
                        continue
                    for r, u in src.items():
                        s = acc.get(r, ZERO) + u * v
                        if s:
                            acc[r] = s
                        else:
                            del acc[r]
                out._cols[j] = acc
            return out
        if isinstance(other, SparseVector):
            if self.cols != other.dim:
                raise ValueError("shape mismatch")
            acc: dict[int, Scalar] = {}
            for k, v in other.entries.items():
                for r, u in self._cols[k].items():
                    s = acc.get(r, ZERO) + u * v
                    if s:
                        acc[r] = s
                    else:
                        del acc[r]
            res = SparseVector(self.rows)
            res.entries = acc
            return res
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SparseMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._cols == other._cols
        )

    def transpose(self) -> "SparseMatrix":
        out = SparseMatrix(self.cols, self.rows)
        for j, col in enumerate(self._cols):
            for r, v in col.items():
                out._cols[r][j] = v
        return out

    def select_columns(self, indices: Sequence[int]) -> "SparseMatrix":
        out = SparseMatrix(self.rows, len(indices))
        for k, j in enumerate(indices):
            out._cols[k] = dict(self._cols[j])
        return out

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        out = SparseMatrix(self.rows, self.cols + other.cols)
        out._cols = [dict(c) for c in self._cols] + [dict(c) for c in other._cols]
        return out

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def pretty(self) -> str:
        """Small dense rendering, for tests and demos on tiny matrices."""
        lines = []
        for r in range(self.rows):
            lines.append(
                "[" + "  ".join(scalar_to_string(self.entry(r, c)) for c in range(self.cols)) + "]"
            )
        return "\n".join(lines)


# ----------------------------------------------------------------------
# elimination engine
# ----------------------------------------------------------------------


class _Echelon:
    """Deterministic row echelon reduction of a list of sparse rows.

    Rows are dictionaries keyed by column index.  Columns are scanned in
    increasing order; within a column the pivot row is chosen among the
    still-unused rows by (pivot quality, row sparsity, row index), a
    deterministic rule that keeps fractions small and fill-in low.  With
    ``full_reduce`` the result is the reduced row echelon form: every pivot
    is 1 and is the only nonzero entry in its column.
    """

    def __init__(
        self,
        rows: list[dict[int, Scalar]],
        ncols: int,
        rhs: list[dict[int, Scalar]] | None = None,
        full_reduce: bool = True,
    ):
        self.rows = rows
        self.ncols = ncols
        self.rhs = rhs if rhs is not None else [{} for _ in rows]
        self.full_reduce = full_reduce
        # column -> set of row indices with a nonzero entry there
        self.col_index: dict[int, set[int]] = {}
        for ri, row in enumerate(rows):
            for c in row:
                self.col_index.setdefault(c, set()).add(ri)
        self.pivots: list[tuple[int, int]] = []  # (column, row)
        self.pivot_rows: set[int] = set()
        self._run()

    def _axpy(self, target: int, source: int, factor: Scalar) -> None:
        """row[target] -= factor * row[source]; maintain the column index."""
        trow = self.rows[target]
        for c, v in self.rows[source].items():
            s = trow.get(c, ZERO) - factor * v
            if s:
                if c not in trow:
                    self.col_index.setdefault(c, set()).add(target)
                trow[c] = s
            else:
                if c in trow:
                    del trow[c]
                    self.col_index[c].discard(target)
        trhs = self.rhs[target]
        for c, v in self.rhs[source].items():
            s = trhs.get(c, ZERO) - factor * v
            if s:
                trhs[c] = s
            else:
                trhs.pop(c, None)

    def _run(self) -> None:
        for col in range(self.ncols):
            rows_here = self.col_index.get(col)
            if not rows_here:
                continue
            candidates = [r for r in rows_here if r not in self.pivot_rows]
            if not candidates:
                continue
            pivot = min(
                candidates,
                key=lambda r: (_pivot_quality(self.rows[r][col]), len(self.rows[r]), r),
            )
            pval = self.rows[pivot][col]
            if pval != ONE:
                inv = ONE / pval
                self.rows[pivot] = {c: v * inv for c, v in self.rows[pivot].items()}
                self.rhs[pivot] = {c: v * inv for c, v in self.rhs[pivot].items()}
            if self.full_reduce:
                victims = [r for r in rows_here if r != pivot]
            else:
                victims = [r for r in rows_here if r != pivot and r not in self.pivot_rows]
            for r in victims:
                self._axpy(r, pivot, self.rows[r][col])
            self.pivot_rows.add(pivot)
            self.pivots.append((col, pivot))

    @property
    def pivot_columns(self) -> list[int]:
        return [c for c, _ in self.pivots]


def _echelon_of_matrix(
    m: SparseMatrix,
    rhs: SparseMatrix | None = None,
    full_reduce: bool = True,
) -> _Echelon:
    rows = m.row_dicts()
    rhs_rows = rhs.row_dicts() if rhs is not None else None
    return _Echelon(rows, m.cols, rhs_rows, full_reduce)


def rank(m: SparseMatrix) -> int:
    """Exact rank.  Reduces over the smaller of the two orientations."""
    if m.rows == 0 or m.cols == 0:
        return 0
    work = m if m.cols <= m.rows else m.transpose()
    return len(_echelon_of_matrix(work, full_reduce=False).pivots)


def column_pivots(m: SparseMatrix) -> list[int]:
    """Indices of the lexicographically first maximal independent set of
    columns (each column is kept iff it is independent of the kept columns
    to its left).  Deterministic."""
    return _echelon_of_matrix(m, full_reduce=False).pivot_columns


def kernel_basis(m: SparseMatrix) -> list[SparseVector]:
    """Deterministic basis of the null space.

    One basis vector per free column ``f`` (in increasing order): it has a
    1 in position ``f``, the forced values in the pivot positions, zeros in
    the other free positions.
    """
    ech = _echelon_of_matrix(m, full_reduce=True)
    pivot_cols = set(ech.pivot_columns)
    out: list[SparseVector] = []
    for f in range(m.cols):
        if f in pivot_cols:
            continue
        vec = SparseVector(m.cols, {f: ONE})
        for c, r in ech.pivots:
            coeff = ech.rows[r].get(f)
            if coeff:
                vec.entries[c] = -coeff
        out.append(vec)
    return out


def nullity(m: SparseMatrix) -> int:
    return m.cols - rank(m)


def solve(m: SparseMatrix, rhs: SparseMatrix) -> SparseMatrix:
    """One exact solution ``X`` of ``m * X = rhs`` (free variables zero).

    Raises :class:`NoSolution` if any right-hand column is outside the
    column space.  The solution is the deterministic particular solution
    read off the reduced echelon form.
    """
    if rhs.rows != m.rows:
        raise ValueError("right-hand side row mismatch")
    ech = _echelon_of_matrix(m, rhs, full_reduce=True)
    for ri in range(m.rows):
        if ri not in ech.pivot_rows and ech.rhs[ri]:
            bad = sorted(ech.rhs[ri])[0]
            raise NoSolution(f"right-hand column {bad} is not in the column space")
    out = SparseMatrix(m.cols, rhs.cols)
    for c, r in ech.pivots:
        for j, v in ech.rhs[r].items():
            out._cols[j][c] = v
    return out


def solve_vector(m: SparseMatrix, rhs: SparseVector) -> SparseVector:
    mat = SparseMatrix(rhs.dim, 1)
    mat._cols[0] = dict(rhs.entries)
    return solve(m, mat).column(0)


def solve_on_subspace(
    m: SparseMatrix, rhs: SparseVector, subspace: Sequence[SparseVector]
) -> SparseVector:
    """The solution of ``m x = rhs`` constrained to ``span(subspace)``.

    Returns some exact solution inside the span; raises
    :class:`NoSolution` if none exists there.
    """
    basis = SparseMatrix.from_columns(m.cols, list(subspace))
    coeffs = solve_vector(m * basis, rhs)
    return basis * coeffs


def homology_dimension(
    outgoing: SparseMatrix, incoming: SparseMatrix
) -> int:
    """dim ker(outgoing) − rank(incoming) for one link of a chain complex.

    ``incoming`` maps into the space that ``outgoing`` maps out of.  The
    composite ``outgoing * incoming`` must vanish; otherwise
    :class:`ComposabilityViolation` is raised.
    """
    if incoming.rows != outgoing.cols:
        raise ComposabilityViolation(
            f"incoming lands in dimension {incoming.rows}, "
            f"outgoing starts from dimension {outgoing.cols}"
        )
    if not (outgoing * incoming).is_zero():
        raise ComposabilityViolation("boundary of boundary is nonzero")
    cycles = outgoing.cols - rank(outgoing)
    boundaries = rank(incoming)
    return cycles - boundaries


# ----------------------------------------------------------------------
# quotients
# ----------------------------------------------------------------------


class CokernelPresentation:
    """The quotient of ``Q^n`` by the column space of a matrix.

    Produces an explicit surjection matrix ``projection`` (quotient
    coordinates of a vector) and an injective ``section`` with
    ``projection * section = identity``.  The kernel of ``projection`` is
    exactly the given column space.  The construction is deterministic:
    the section hits the lexicographically first coordinate subspace
    complementary to the column space.
    """

    __slots__ = ("ambient_dim", "dim", "projection", "section", "complement_coords")

    def __init__(self, relations: SparseMatrix):
        n = relations.rows
        self.ambient_dim = n
        # Pivot columns of [relations | identity] that land in the identity
        # part give the complementary coordinate subspace.
        aug = relations.hstack(SparseMatrix.identity(n))
        pivots = column_pivots(aug)
        comp = [c - relations.cols for c in pivots if c >= relations.cols]
        self.complement_coords = comp
        self.dim = len(comp)
        self.section = SparseMatrix(n, self.dim)
        for j, c in enumerate(comp):
            self.section._cols[j][c] = ONE
        # Solve [basis(relations) | section] * y = e_i for all i and keep the
        # section part of y: that is the quotient coordinate map.
        rel_basis = relations.select_columns(column_pivots(relations))
        mixed = rel_basis.hstack(self.section)
        coords = solve(mixed, SparseMatrix.identity(n))
        self.projection = SparseMatrix(self.dim, n)
        for j in range(n):
            col = coords._cols[j]
            for r, v in col.items():
                if r >= rel_basis.cols:
                    self.projection._cols[j][r - rel_basis.cols] = v

    def induced_map(
        self,
        operator: SparseMatrix,
        target: "CokernelPresentation",
        relations: SparseMatrix,
    ) -> SparseMatrix:
        """The map induced on quotients by ``operator``.

        ``operator`` maps this presentation's ambient space to the
        target's ambient space; it must send the given relation columns
        into the target relations (checked exactly), otherwise
        :class:`InductionFailure` is raised.
        """
        pushed = target.projection * (operator * relations)
        if not pushed.is_zero():
            raise InductionFailure(
                "operator does not descend: it moves a relation out of the "
                "target relations"
            )
        return target.projection * (operator * self.section)


class InductionFailure(Exception):
    """Raised when an operator fails to descend to a quotient."""


def cokernel(relations: SparseMatrix) -> CokernelPresentation:
    return CokernelPresentation(relations)


# ----------------------------------------------------------------------
# homology with representatives
# ----------------------------------------------------------------------


class HomologyBasis:
    """A homology space with explicit cycle representatives.

    Built from the outgoing boundary ``d_n`` and incoming boundary
    ``d_{n+1}`` of one chain space.  ``representatives`` are cycle columns
    whose classes form a basis; :meth:`coordinates` expresses any cycle's
    class in that basis (exactly).
    """

    __slots__ = ("space_dim", "dim", "representatives", "_express")

    def __init__(self, outgoing: SparseMatrix, incoming: SparseMatrix):
        if incoming.rows != outgoing.cols:
            raise ComposabilityViolation(
                "incoming/outgoing boundaries act on different spaces"
            )
        if not (outgoing * incoming).is_zero():
            raise ComposabilityViolation("boundary of boundary is nonzero")
        self.space_dim = outgoing.cols
        cycles = kernel_basis(outgoing)
        cycle_mat = SparseMatrix.from_columns(self.space_dim, cycles)
        boundary_basis = incoming.select_columns(column_pivots(incoming))
        # Extend the boundary basis to a basis of the cycles; the added
        # cycle columns represent a homology basis.
        aug = boundary_basis.hstack(cycle_mat)
        pivots = column_pivots(aug)
        rep_cols = [c - boundary_basis.cols for c in pivots if c >= boundary_basis.cols]
        reps = cycle_mat.select_columns(rep_cols)
        self.dim = reps.cols
        self.representatives = reps
        self._express = boundary_basis.hstack(reps)

    def coordinates(self, cycle: SparseVector) -> SparseVector:
        """Coordinates of the class of ``cycle`` in the representative basis."""
        full = solve_vector(self._express, cycle)
        skip = self._express.cols - self.dim
        out = SparseVector(self.dim)
        for i, v in full.entries.items():
            if i >= skip:
                out.entries[i - skip] = v
        return out

    def induced_matrix(
        self, operator: SparseMatrix, target: "HomologyBasis"
    ) -> SparseMatrix:
        """Matrix of the map induced on homology by a chain-level operator."""
        out = SparseMatrix(target.dim, self.dim)
        for j in range(self.dim):
            image = operator * self.representatives.column(j)
            out.set_column(j, target.coordinates(image))
        return out


def homology_basis(outgoing: SparseMatrix, incoming: SparseMatrix) -> HomologyBasis:
    return HomologyBasis(outgoing, incoming)
