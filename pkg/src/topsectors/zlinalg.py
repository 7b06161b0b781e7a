"""Exact integer linear algebra: Smith normal form, Diophantine systems,
and lattice quotients with canonical coset representatives.

Everything is arbitrary-precision (plain Python ints); there is no floating
point anywhere.  Matrices here are tiny, so the implementation favors
exactness and clarity over speed; the only performance concession is the
smallest-nonzero-pivot strategy in the Smith reduction, which keeps
intermediate entries from blowing up.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


Vector = tuple[int, ...]


class SublatticeError(Exception):
    """A claimed sublattice is not contained in the ambient lattice."""


class IntMatrix:
    """An immutable integer matrix; supports empty shapes (0 x n, n x 0)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("cols does not match row width")
            cols = width
        elif cols is None:
            cols = 0
        self.data = rows
        self.rows = len(rows)
        self.cols = cols

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(m: int, n: int) -> "IntMatrix":
        return IntMatrix([[0] * n for _ in range(m)], cols=n)

    @staticmethod
    def from_columns(columns: Sequence[Sequence[int]], height: int | None = None) -> "IntMatrix":
        columns = [tuple(c) for c in columns]
        if columns:
            height = len(columns[0])
            if any(len(c) != height for c in columns):
                raise ValueError("ragged columns")
        elif height is None:
            height = 0
        return IntMatrix(
            [[columns[j][i] for j in range(len(columns))] for i in range(height)],
            cols=len(columns),
        )

    @staticmethod
    def diagonal(entries: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        m = rows if rows is not None else len(entries)
        n = cols if cols is not None else len(entries)
        return IntMatrix(
            [[entries[i] if i == j and i < len(entries) else 0 for j in range(n)] for i in range(m)],
            cols=n,
        )

    # -- arithmetic ---------------------------------------------------------

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return IntMatrix(
            [
                [
                    sum(self.data[i][k] * other.data[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                ]
                for i in range(self.rows)
            ],
            cols=other.cols,
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)],
            cols=self.cols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-x for x in row] for row in self.data], cols=self.cols)

    def scaled(self, n: int) -> "IntMatrix":
        return IntMatrix([[n * x for x in row] for row in self.data], cols=self.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def apply(self, vec: Sequence[int]) -> Vector:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(row[j] * vec[j] for j in range(self.cols)) for row in self.data)

    # -- queries -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(row) for row in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    @property
    def is_unimodular(self) -> bool:
        return self.is_square and self.det() in (1, -1)

    def inverse_unimodular(self) -> "IntMatrix":
        """Exact inverse of a unimodular matrix."""
        if not self.is_unimodular:
            raise ValueError("matrix is not unimodular")
        n = self.rows
        cols = []
        for j in range(n):
            e = tuple(1 if i == j else 0 for i in range(n))
            sol = solve(self, e)
            assert sol is not None
            cols.append(sol[0])
        return IntMatrix.from_columns(cols, height=n)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.shape, self.data))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.data]!r}, cols={self.cols})"


@dataclass(frozen=True)
class SmithDecomposition:
    """A = U @ S @ V with U, V unimodular and S diagonal, d1 | d2 | ... >= 0."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> Vector:
        k = min(self.S.rows, self.S.cols)
        return tuple(self.S.data[i][i] for i in range(k))


class _SmithState:
    """Mutable workspace for the Smith reduction, tracking U, V and inverses.

    Invariants maintained by every elementary operation:
        A = U @ D @ V,   Uinv @ U = I,   V @ Vinv = I.
    """

    def __init__(self, A: IntMatrix):
        self.m, self.n = A.rows, A.cols
        self.D = [list(row) for row in A.data]
        self.U = [list(row) for row in IntMatrix.identity(self.m).data]
        self.Uinv = [list(row) for row in IntMatrix.identity(self.m).data]
        self.V = [list(row) for row in IntMatrix.identity(self.n).data]
        self.Vinv = [list(row) for row in IntMatrix.identity(self.n).data]

    # Row op D -> L @ D  requires  U -> U @ L^-1,  Uinv -> L @ Uinv.
    def row_add(self, i: int, j: int, q: int) -> None:
        """row i += q * row j."""
        D, U, Uinv = self.D, self.U, self.Uinv
        for c in range(self.n):
            D[i][c] += q * D[j][c]
        for r in range(self.m):
            U[r][j] -= q * U[r][i]
        for c in range(self.m):
            Uinv[i][c] += q * Uinv[j][c]

    def row_swap(self, i: int, j: int) -> None:
        self.D[i], self.D[j] = self.D[j], self.D[i]
        for r in range(self.m):
            self.U[r][i], self.U[r][j] = self.U[r][j], self.U[r][i]
        self.Uinv[i], self.Uinv[j] = self.Uinv[j], self.Uinv[i]

    def row_negate(self, i: int) -> None:
        self.D[i] = [-x for x in self.D[i]]
        for r in range(self.m):
            self.U[r][i] = -self.U[r][i]
        self.Uinv[i] = [-x for x in self.Uinv[i]]

    # Col op D -> D @ R  requires  V -> R^-1 @ V,  Vinv -> Vinv @ R.
    def col_add(self, j: int, i: int, q: int) -> None:
        """col j += q * col i."""
        D, V, Vinv = self.D, self.V, self.Vinv
        for r in range(self.m):
            D[r][j] += q * D[r][i]
        for c in range(self.n):
            V[i][c] -= q * V[j][c]
        for r in range(self.n):
            Vinv[r][j] += q * Vinv[r][i]

    def col_swap(self, i: int, j: int) -> None:
        for r in range(self.m):
            self.D[r][i], self.D[r][j] = self.D[r][j], self.D[r][i]
        self.V[i], self.V[j] = self.V[j], self.V[i]
        for r in range(self.n):
            self.Vinv[r][i], self.Vinv[r][j] = self.Vinv[r][j], self.Vinv[r][i]

    def col_negate(self, j: int) -> None:
        for r in range(self.m):
            self.D[r][j] = -self.D[r][j]
        self.V[j] = [-x for x in self.V[j]]
        for r in range(self.n):
            self.Vinv[r][j] = -self.Vinv[r][j]


def _smith_with_inverses(A: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, S, V, Uinv, Vinv) with A = U S V."""
    st = _SmithState(A)
    m, n, D = st.m, st.n, st.D

    def pick_pivot(k: int) -> Optional[tuple[int, int]]:
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        return best

    for k in range(min(m, n)):
        while True:
            pos = pick_pivot(k)
            if pos is None:
                break
            i, j = pos
            if i != k:
                st.row_swap(k, i)
            if j != k:
                st.col_swap(k, j)
            if D[k][k] < 0:
                st.row_negate(k)
            dirty = False
            for i in range(k + 1, m):
                if D[i][k]:
                    q = D[i][k] // D[k][k]
                    st.row_add(i, k, -q)
                    dirty = dirty or D[i][k] != 0
            for j in range(k + 1, n):
                if D[k][j]:
                    q = D[k][j] // D[k][k]
                    st.col_add(j, k, -q)
                    dirty = dirty or D[k][j] != 0
            if dirty:
                continue
            # Pivot must divide the rest of the block for the invariant
            # factors to come out in divisibility order.
            offender = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if D[i][j] % D[k][k]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            st.row_add(k, offender, 1)
        if pick_pivot(k) is None:
            break

    for k in range(min(m, n)):
        if D[k][k] < 0:
            st.row_negate(k)

    return (
        IntMatrix(st.U, cols=m),
        IntMatrix(st.D, cols=n),
        IntMatrix(st.V, cols=n),
        IntMatrix(st.Uinv, cols=m),
        IntMatrix(st.Vinv, cols=n),
    )


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form A = U @ S @ V over the integers, exactly."""
    U, S, V, _, _ = _smith_with_inverses(A)
    return SmithDecomposition(U, S, V)


def invariant_factors(A: IntMatrix) -> Vector:
    return smith_normal_form(A).diagonal


def solve(A: IntMatrix, b: Sequence[int]) -> Optional[tuple[Vector, list[Vector]]]:
    """Solve A x = b over the integers.

    Returns ``None`` when no integer solution exists, otherwise a particular
    solution together with a basis of the integer kernel of A.
    """
    if len(b) != A.rows:
        raise ValueError("right-hand side length mismatch")
    U, S, V, Uinv, Vinv = _smith_with_inverses(A)
    y = Uinv.apply(tuple(b))
    rank = min(A.rows, A.cols)
    z = [0] * A.cols
    for i in range(A.rows):
        d = S.data[i][i] if i < rank else 0
        if d:
            if y[i] % d:
                return None
            z[i] = y[i] // d
        elif y[i]:
            return None
    particular = Vinv.apply(tuple(z))
    kernel = [
        Vinv.column(j)
        for j in range(A.cols)
        if j >= rank or S.data[j][j] == 0
    ]
    return particular, kernel


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group in invariant-factor normal form.

    ``invariant_factors`` lists the cyclic orders: each nonzero factor is
    >= 2 and divides the next nonzero factor; 0 denotes an infinite cyclic
    factor and all zeros come last.  The empty tuple is the trivial group.
    """

    invariant_factors: Vector

    @staticmethod
    def from_factors(factors: Iterable[int]) -> "AbelianGroup":
        factors = [abs(int(f)) for f in factors]
        # Normalize an arbitrary cyclic decomposition via the SNF of the
        # corresponding diagonal relation matrix.
        nonzero = [f for f in factors if f not in (0, 1)]
        free = sum(1 for f in factors if f == 0)
        if nonzero:
            diag = IntMatrix.diagonal(nonzero)
            nonzero = [d for d in smith_normal_form(diag).diagonal if d != 1]
        return AbelianGroup(tuple(nonzero) + (0,) * free)

    @staticmethod
    def free(rank: int) -> "AbelianGroup":
        return AbelianGroup((0,) * rank)

    @staticmethod
    def trivial() -> "AbelianGroup":
        return AbelianGroup(())

    @property
    def rank(self) -> int:
        """Number of infinite cyclic factors."""
        return sum(1 for f in self.invariant_factors if f == 0)

    @property
    def torsion(self) -> Vector:
        return tuple(f for f in self.invariant_factors if f)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        if not self.is_finite:
            return None
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    def __str__(self) -> str:
        if self.is_trivial:
            return "1"
        return " x ".join("Z" if f == 0 else f"Z_{f}" for f in self.invariant_factors)

    def to_json(self) -> list[int]:
        return list(self.invariant_factors)


def quotient(ambient_rank: int, sublattice_generators: Iterable[Sequence[int]]) -> AbelianGroup:
    """Z^n modulo the span of the given vectors, in invariant-factor form."""
    gens = [tuple(g) for g in sublattice_generators]
    for g in gens:
        if len(g) != ambient_rank:
            raise ValueError("generator length does not match ambient rank")
    if not gens:
        return AbelianGroup.free(ambient_rank)
    mat = IntMatrix.from_columns(gens, height=ambient_rank)
    diag = smith_normal_form(mat).diagonal
    factors = [diag[i] if i < len(diag) else 0 for i in range(ambient_rank)]
    return AbelianGroup.from_factors(factors)


class Lattice:
    """An integer lattice in Z^dim kept in row Hermite normal form.

    The basis rows have strictly increasing pivot columns, positive pivots,
    and entries above each pivot reduced into [0, pivot), so ``reduce``
    returns a unique canonical representative of each coset of the lattice.
    """

    def __init__(self, dim: int, vectors: Iterable[Sequence[int]] = ()):
        self.dim = dim
        self.rows: list[list[int]] = []
        self._pivots: list[int] = []
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> list[Vector]:
        return [tuple(r) for r in self.rows]

    def _pivot_of(self, row: Sequence[int]) -> int:
        for j, x in enumerate(row):
            if x:
                return j
        return self.dim

    def add(self, vector: Sequence[int]) -> None:
        vec = [int(x) for x in vector]
        if len(vec) != self.dim:
            raise ValueError("vector length does not match lattice dimension")
        changed = False
        while True:
            p = self._pivot_of(vec)
            if p == self.dim:
                break
            if p in self._pivots:
                i = self._pivots.index(p)
                row = self.rows[i]
                a, b = row[p], vec[p]
                if b % a == 0:
                    q = b // a
                    for j in range(self.dim):
                        vec[j] -= q * row[j]
                else:
                    # Replace the pivot row by the gcd combination and keep
                    # eliminating with the remainder.
                    x, y, g = _xgcd(a, b)
                    new_row = [x * row[j] + y * vec[j] for j in range(self.dim)]
                    rem = [(-(b // g)) * row[j] + (a // g) * vec[j] for j in range(self.dim)]
                    self.rows[i] = new_row
                    vec = rem
                    changed = True
            else:
                where = 0
                while where < len(self._pivots) and self._pivots[where] < p:
                    where += 1
                self.rows.insert(where, vec)
                self._pivots.insert(where, p)
                changed = True
                break
        if changed:
            self._normalize()

    def add_all(self, vectors: Iterable[Sequence[int]]) -> None:
        for v in vectors:
            self.add(v)

    def _normalize(self) -> None:
        # Positive pivots, entries above pivots reduced mod the pivot.
        # Pivots are processed left to right: reducing at pivot i only
        # touches columns >= that pivot, so earlier columns stay reduced
        # and later ones are fixed by subsequent passes.
        for i, p in enumerate(self._pivots):
            if self.rows[i][p] < 0:
                self.rows[i] = [-x for x in self.rows[i]]
        for i in range(len(self.rows)):
            p = self._pivots[i]
            piv = self.rows[i][p]
            for above in range(i):
                q = self.rows[above][p] // piv
                if q:
                    self.rows[above] = [
                        a - q * b for a, b in zip(self.rows[above], self.rows[i])
                    ]

    def reduce(self, vector: Sequence[int]) -> Vector:
        """Canonical representative of ``vector`` modulo the lattice."""
        vec = [int(x) for x in vector]
        if len(vec) != self.dim:
            raise ValueError("vector length does not match lattice dimension")
        for row, p in zip(self.rows, self._pivots):
            q = vec[p] // row[p]
            if q:
                for j in range(self.dim):
                    vec[j] -= q * row[j]
        return tuple(vec)

    def __contains__(self, vector: Sequence[int]) -> bool:
        return all(x == 0 for x in self.reduce(vector))

    def coords_in_basis(self, vector: Sequence[int]) -> Optional[Vector]:
        """Write ``vector`` as an integer combination of the basis rows."""
        vec = [int(x) for x in vector]
        if len(vec) != self.dim:
            raise ValueError("vector length does not match lattice dimension")
        coords = []
        for row, p in zip(self.rows, self._pivots):
            if vec[p] % row[p]:
                return None
            q = vec[p] // row[p]
            coords.append(q)
            for j in range(self.dim):
                vec[j] -= q * row[j]
        if any(vec):
            return None
        return tuple(coords)

    def copy(self) -> "Lattice":
        out = Lattice(self.dim)
        out.rows = [list(r) for r in self.rows]
        out._pivots = list(self._pivots)
        return out


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """x, y, g with x*a + y*b == g == gcd(a, b)."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


@dataclass(frozen=True)
class AffineLattice:
    """A coset ``particular + L`` of an integer lattice L in Z^dim."""

    dim: int
    particular: Vector
    directions: Lattice

    @staticmethod
    def from_solution(particular: Sequence[int], kernel: Iterable[Sequence[int]]) -> "AffineLattice":
        particular = tuple(int(x) for x in particular)
        lat = Lattice(len(particular), kernel)
        return AffineLattice(len(particular), particular, lat)

    def __contains__(self, vector: Sequence[int]) -> bool:
        diff = tuple(int(a) - b for a, b in zip(vector, self.particular))
        return diff in self.directions


class LatticeQuotient:
    """The quotient of an affine solution lattice by a homotopy sublattice.

    Provides the quotient group in invariant-factor form, one canonical
    representative per coset, coordinates of any solution vector in the
    quotient, and a membership test deciding coset equality.
    """

    def __init__(self, ambient: AffineLattice, sublattice_generators: Iterable[Sequence[int]]):
        self.ambient = ambient
        subgens = [tuple(int(x) for x in g) for g in sublattice_generators]
        for g in subgens:
            if g not in ambient.directions:
                raise SublatticeError(
                    f"sublattice generator {g} is not a direction of the solution lattice"
                )
        self.sub_lattice = Lattice(ambient.dim, subgens)

        basis = ambient.directions.basis()
        self._basis = basis
        m = len(basis)
        coord_cols = []
        for g in subgens:
            coords = ambient.directions.coords_in_basis(g)
            assert coords is not None
            coord_cols.append(coords)
        C = IntMatrix.from_columns(coord_cols, height=m)
        U, S, V, Uinv, Vinv = _smith_with_inverses(C)
        self._Uinv = Uinv
        rank = min(S.rows, S.cols)
        diag = [S.data[i][i] if i < rank else 0 for i in range(m)]
        self._kept = [i for i in range(m) if diag[i] != 1]
        self._kept_factors = tuple(diag[i] for i in self._kept)
        self.group = AbelianGroup(
            tuple(f for f in self._kept_factors if f) + (0,) * sum(1 for f in self._kept_factors if f == 0)
        )
        # Ambient generator vector for each kept cyclic factor.
        self.generator_vectors: list[Vector] = []
        for i in self._kept:
            vec = [0] * ambient.dim
            for j in range(m):
                coeff = U.data[j][i]
                if coeff:
                    for c in range(ambient.dim):
                        vec[c] += coeff * basis[j][c]
            self.generator_vectors.append(tuple(vec))
        self.base_point: Vector = self.sub_lattice.reduce(ambient.particular)

    # -- factor bookkeeping --------------------------------------------------

    @property
    def factors(self) -> Vector:
        """Cyclic orders of the kept quotient generators (0 = infinite)."""
        return self._kept_factors

    @property
    def is_finite(self) -> bool:
        return all(self._kept_factors)

    # -- coset machinery ------------------------------------------------------

    def same_class(self, v1: Sequence[int], v2: Sequence[int]) -> bool:
        """Do two solution vectors lie in the same coset of the sublattice?"""
        diff = tuple(int(a) - int(b) for a, b in zip(v1, v2))
        return diff in self.sub_lattice

    def class_coords(self, vector: Sequence[int]) -> Vector:
        """Coordinates of the coset of ``vector`` over the quotient generators."""
        diff = tuple(int(a) - b for a, b in zip(vector, self.ambient.particular))
        coords = self.ambient.directions.coords_in_basis(diff)
        if coords is None:
            raise ValueError("vector does not lie in the solution lattice")
        y = self._Uinv.apply(coords)
        out = []
        for i, d in zip(self._kept, self._kept_factors):
            out.append(y[i] % d if d else y[i])
        return tuple(out)

    def representative(self, coords: Sequence[int]) -> Vector:
        """Canonical solution vector for the class with the given coordinates."""
        vec = list(self.ambient.particular)
        for c, g in zip(coords, self.generator_vectors):
            for j in range(self.ambient.dim):
                vec[j] += c * g[j]
        return self.sub_lattice.reduce(vec)

    def enumerate_class_coords(self) -> Iterator[Vector]:
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite quotient")
        ranges = [range(d) for d in self._kept_factors]
        return (tuple(c) for c in itertools.product(*ranges))

    def representatives(self) -> list[Vector]:
        """Canonical coset representatives (finite quotients only)."""
        return [self.representative(c) for c in self.enumerate_class_coords()]

    def free_generator_vectors(self) -> list[Vector]:
        return [g for g, d in zip(self.generator_vectors, self._kept_factors) if d == 0]

    def torsion_shell_representatives(self) -> list[Vector]:
        """Representatives sweeping torsion coordinates with free coords 0."""
        ranges = [range(d) if d else range(1) for d in self._kept_factors]
        return [self.representative(c) for c in itertools.product(*ranges)]


def quotient_with_representatives(
    ambient: AffineLattice, sublattice_generators: Iterable[Sequence[int]]
) -> LatticeQuotient:
    """Quotient an affine solution lattice by a homotopy sublattice.

    The returned object carries the group, canonical representatives, and
    the coset-equality membership test.
    """
    return LatticeQuotient(ambient, sublattice_generators)
