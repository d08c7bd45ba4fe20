"""
Exact integer linear algebra.

This module is the substrate of every degreewise computation in the package: graded pieces,
homotopy groups and limits of towers all end up as finitely presented abelian groups which
are handled here. A group is always stored by a presentation ``Z^n / (column span of R)``
and its canonical (invariant factor) form is derived lazily from the Smith normal form of
``R``. The Smith normal form keeps the transformation witnesses so that elements given in
presentation coordinates can be traced into canonical coordinates and back.

All values are immutable and every function is pure.
"""
import logging
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from graded_kernel.errors import CompositionNotZero, DimensionMismatch, NotWellDefined

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """
    A dense matrix of arbitrary precision integers. The number of columns is stored
    explicitly so that matrices with zero rows still know their shape.
    """

    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise DimensionMismatch(
                f"entries do not form a {self.rows}x{self.cols} matrix"
            )

    # ~ constructors

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        entries = tuple(tuple(int(value) for value in row) for row in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        columns = [tuple(int(value) for value in column) for column in columns]
        if any(len(column) != rows for column in columns):
            raise DimensionMismatch(f"every column has to have {rows} entries")
        entries = tuple(tuple(column[i] for column in columns) for i in range(rows))
        return cls(rows, len(columns), entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, size: int) -> "IntMatrix":
        return cls(size, size, tuple(
            tuple(1 if i == j else 0 for j in range(size)) for i in range(size)
        ))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: Optional[int] = None,
                 cols: Optional[int] = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        return cls(rows, cols, tuple(
            tuple(values[i] if i == j and i < len(values) else 0 for j in range(cols))
            for i in range(rows)
        ))

    # ~ access

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.entries]

    # ~ arithmetic

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        other_columns = other.columns()
        return IntMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(row, column) if a) for column in other_columns)
            for row in self.entries
        ))

    def apply(self, vector: Sequence[int]) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vector)} for {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(row, vector) if a) for row in self.entries)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)
        ))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, factor: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(
            tuple(factor * a for a in row) for row in self.entries
        ))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self.columns()))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise DimensionMismatch("hstack needs equal row counts")
        return IntMatrix(self.rows, self.cols + other.cols, tuple(
            r + s for r, s in zip(self.entries, other.entries)
        ))

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise DimensionMismatch("vstack needs equal column counts")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(self.rows * other.rows, self.cols * other.cols, tuple(
            tuple(a * b for a in row_a for b in row_b)
            for row_a in self.entries for row_b in other.entries
        ))

    def select_rows(self, indices: Iterable[int]) -> "IntMatrix":
        return IntMatrix.from_rows([self.entries[i] for i in indices], cols=self.cols)

    def select_columns(self, indices: Iterable[int]) -> "IntMatrix":
        indices = list(indices)
        return IntMatrix(self.rows, len(indices), tuple(
            tuple(row[j] for j in indices) for row in self.entries
        ))

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.entries for a in row)

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_lists()
        sign, previous = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
            previous = a[k][k]
        return sign * a[n - 1][n - 1]

    def _check_same_shape(self, other: "IntMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(
                f"shapes {self.rows}x{self.cols} and {other.rows}x{other.cols} differ"
            )


def block_diagonal(*matrices: IntMatrix) -> IntMatrix:
    rows = sum(m.rows for m in matrices)
    cols = sum(m.cols for m in matrices)
    entries: List[Tuple[int, ...]] = []
    offset = 0
    for m in matrices:
        for row in m.entries:
            entries.append((0,) * offset + row + (0,) * (cols - offset - m.cols))
        offset += m.cols
    return IntMatrix(rows, cols, tuple(entries))


# == Smith normal form ==

class SmithForm(NamedTuple):
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix


@dataclass(frozen=True)
class _SmithData:
    U: IntMatrix
    U_inverse: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @cached_property
    def diagonal(self) -> Tuple[int, ...]:
        """Nonzero diagonal entries d_1 | d_2 | ... (the rank is their count)."""
        size = min(self.D.rows, self.D.cols)
        return tuple(d for d in (self.D[i, i] for i in range(size)) if d != 0)

    @property
    def rank(self) -> int:
        return len(self.diagonal)


@lru_cache(maxsize=4096)
def _smith(matrix: IntMatrix) -> _SmithData:
    """
    Computes ``U * A * V = D`` and also tracks ``U^{-1}``. The pivot of every step is the
    nonzero entry of smallest absolute value of the remaining block, ties broken by the lowest
    (row, column) position, which makes the output deterministic.
    """
    m, n = matrix.rows, matrix.cols
    a = matrix.to_lists()
    u = IntMatrix.identity(m).to_lists()
    u_inv = IntMatrix.identity(m).to_lists()
    v = IntMatrix.identity(n).to_lists()

    def swap_rows(i: int, j: int) -> None:
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for row in u_inv:
            row[i], row[j] = row[j], row[i]

    def add_row(target: int, source: int, factor: int) -> None:
        # row_target += factor * row_source; the inverse gets the opposite column operation
        a[target] = [x + factor * y for x, y in zip(a[target], a[source])]
        u[target] = [x + factor * y for x, y in zip(u[target], u[source])]
        for row in u_inv:
            row[source] -= factor * row[target]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for row in u_inv:
            row[i] = -row[i]

    def swap_columns(i: int, j: int) -> None:
        if i == j:
            return
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_column(target: int, source: int, factor: int) -> None:
        for row in a:
            row[target] += factor * row[source]
        for row in v:
            row[target] += factor * row[source]

    t = 0
    while t < min(m, n):
        pivot: Optional[Tuple[int, int]] = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break

        swap_rows(t, pivot[0])
        swap_columns(t, pivot[1])
        p = a[t][t]
        for i in range(t + 1, m):
            if a[i][t]:
                add_row(i, t, -(a[i][t] // p))
        for j in range(t + 1, n):
            if a[t][j]:
                add_column(j, t, -(a[t][j] // p))

        # remainders smaller than the pivot are left behind: search again
        if any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
            continue

        offending = next(
            (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
            None,
        )
        if offending is not None:
            add_row(t, offending, 1)
            continue

        if p < 0:
            negate_row(t)
        t += 1

    data = _SmithData(
        U=IntMatrix.from_rows(u, cols=m),
        U_inverse=IntMatrix.from_rows(u_inv, cols=m),
        D=IntMatrix.from_rows(a, cols=n),
        V=IntMatrix.from_rows(v, cols=n),
    )
    if m * n > 400:
        logger.debug("smith normal form of a %dx%d matrix, rank %d", m, n, data.rank)
    return data


def smith_normal_form(matrix: IntMatrix) -> SmithForm:
    """
    Returns unimodular ``U``, ``V`` and the diagonal ``D`` with ``U * A * V = D``, where the
    nonzero diagonal entries are positive and form a divisibility chain.

    Example:
        >>> U, D, V = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
        >>> D.to_lists()
        [[2, 0], [0, 4]]
    """
    data = _smith(matrix)
    return SmithForm(data.U, data.D, data.V)


def nullspace(matrix: IntMatrix) -> IntMatrix:
    """A basis (as columns) of the integer kernel ``{x in Z^cols : A x = 0}``."""
    data = _smith(matrix)
    return data.V.select_columns(range(data.rank, matrix.cols))


# == lattices ==

@dataclass(frozen=True)
class Lattice:
    """The subgroup of ``Z^n`` spanned by the columns of ``generators``."""

    generators: IntMatrix

    @property
    def ambient_rank(self) -> int:
        return self.generators.rows

    @cached_property
    def _data(self) -> _SmithData:
        return _smith(self.generators)

    @property
    def rank(self) -> int:
        return self._data.rank

    @cached_property
    def basis(self) -> IntMatrix:
        """A Z-basis of the lattice, ``d_i * (U^{-1})_{:, i}``."""
        data = self._data
        columns = [
            tuple(d * x for x in data.U_inverse.column(i))
            for i, d in enumerate(data.diagonal)
        ]
        return IntMatrix.from_columns(columns, rows=self.ambient_rank)

    def coordinates(self, vector: Sequence[int]) -> Optional[Vector]:
        """Coordinates of ``vector`` in ``basis``, or None if it is not in the lattice."""
        data = self._data
        image = data.U.apply(vector)
        coords = []
        for i, value in enumerate(image):
            if i < data.rank:
                d = data.diagonal[i]
                if value % d:
                    return None
                coords.append(value // d)
            elif value:
                return None
        return tuple(coords)

    def contains(self, vector: Sequence[int]) -> bool:
        return self.coordinates(vector) is not None

    def coordinate_matrix(self, vectors: IntMatrix) -> IntMatrix:
        columns = []
        for column in vectors.columns():
            coords = self.coordinates(column)
            if coords is None:
                raise NotWellDefined(f"vector {column} does not lie in the lattice")
            columns.append(coords)
        return IntMatrix.from_columns(columns, rows=self.rank)


# == finitely presented abelian groups ==

@dataclass(frozen=True, eq=False)
class FpAbGroup:
    """
    The abelian group ``Z^generators / (column span of relations)``.

    Equality and hashing only look at the canonical form ``(rank, torsion)``, so two groups
    compare equal exactly when they are isomorphic. The presentation is kept as the witness
    that relates elements (vectors in presentation coordinates) to canonical coordinates.
    """

    generators: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise DimensionMismatch(
                f"relation matrix has {self.relations.rows} rows for {self.generators} generators"
            )

    # ~ constructors

    @classmethod
    def presented(cls, relations: IntMatrix) -> "FpAbGroup":
        return cls(relations.rows, relations)

    @classmethod
    def free(cls, rank: int) -> "FpAbGroup":
        return cls(rank, IntMatrix.zeros(rank, 0))

    @classmethod
    def zero(cls) -> "FpAbGroup":
        return cls.free(0)

    @classmethod
    def cyclic(cls, order: int) -> "FpAbGroup":
        """Z/order, where order 0 means Z."""
        return cls(1, IntMatrix.from_rows([[order]]))

    @classmethod
    def from_invariants(cls, rank: int, torsion: Sequence[int] = ()) -> "FpAbGroup":
        orders = [0] * rank + list(torsion)
        return direct_sum(*(cls.cyclic(order) for order in orders))

    # ~ canonical form

    @cached_property
    def _data(self) -> _SmithData:
        return _smith(self.relations)

    @cached_property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self._data.diagonal if d >= 2)

    @cached_property
    def rank(self) -> int:
        return self.generators - self._data.rank

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> Optional[int]:
        return math.prod(self.torsion) if self.rank == 0 else None

    @cached_property
    def _components(self) -> Tuple[Tuple[int, int], ...]:
        """Canonical components as (row of U, order), free ones (order 0) first."""
        data = self._data
        free = tuple((i, 0) for i in range(data.rank, self.generators))
        torsion = tuple((i, d) for i, d in enumerate(data.diagonal) if d >= 2)
        return free + torsion

    def canonical_coordinates(self, vector: Sequence[int]) -> Vector:
        """Coordinates in ``Z^rank + Z/d_1 + ...``; torsion coordinates reduced mod d_i."""
        image = self._data.U.apply(vector)
        return tuple(image[i] % d if d else image[i] for i, d in self._components)

    def canonical_generators(self) -> List[Vector]:
        """Presentation vectors of the canonical generators, aligned with the coordinates."""
        return [self._data.U_inverse.column(i) for i, _ in self._components]

    def component_orders(self) -> Tuple[int, ...]:
        return tuple(d for _, d in self._components)

    def is_zero_element(self, vector: Sequence[int]) -> bool:
        return not any(self.canonical_coordinates(vector))

    def invariants(self) -> Tuple[int, Tuple[int, ...]]:
        return self.rank, self.torsion

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FpAbGroup):
            return NotImplemented
        return self.invariants() == other.invariants()

    def __hash__(self) -> int:
        return hash(self.invariants())

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"FpAbGroup({self})"


def cokernel(matrix: IntMatrix) -> FpAbGroup:
    """Z^rows modulo the column span of ``matrix``."""
    return FpAbGroup.presented(matrix)


def direct_sum(*groups: FpAbGroup) -> FpAbGroup:
    return FpAbGroup.presented(block_diagonal(*(group.relations for group in groups)))


def tensor(a: FpAbGroup, b: FpAbGroup) -> FpAbGroup:
    """A ⊗ B presented on the products of presentation generators."""
    relations = a.relations.kron(IntMatrix.identity(b.generators)).hstack(
        IntMatrix.identity(a.generators).kron(b.relations)
    )
    return FpAbGroup.presented(relations)


# == homomorphisms ==

@dataclass(frozen=True)
class AbMap:
    """
    A homomorphism between presented groups, given by the images of the source's presentation
    generators (the columns of ``matrix``) in the target's presentation coordinates.
    """

    source: FpAbGroup
    target: FpAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if (self.matrix.rows, self.matrix.cols) != (self.target.generators, self.source.generators):
            raise DimensionMismatch(
                f"a map from {self.source.generators} to {self.target.generators} generators "
                f"needs a {self.target.generators}x{self.source.generators} matrix"
            )

    @classmethod
    def identity(cls, group: FpAbGroup) -> "AbMap":
        return cls(group, group, IntMatrix.identity(group.generators))

    @classmethod
    def zero(cls, source: FpAbGroup, target: FpAbGroup) -> "AbMap":
        return cls(source, target, IntMatrix.zeros(target.generators, source.generators))

    @classmethod
    def multiplication(cls, group: FpAbGroup, factor: int) -> "AbMap":
        return cls(group, group, IntMatrix.identity(group.generators).scale(factor))

    def is_well_defined(self) -> bool:
        image = self.matrix @ self.source.relations
        return all(self.target.is_zero_element(column) for column in image.columns())

    def check_well_defined(self) -> "AbMap":
        if not self.is_well_defined():
            raise NotWellDefined("the map does not send relations of the source to zero")
        return self

    def compose(self, inner: "AbMap") -> "AbMap":
        """``self ∘ inner``."""
        if inner.target.generators != self.source.generators:
            raise DimensionMismatch("maps are not composable")
        return AbMap(inner.source, self.target, self.matrix @ inner.matrix)

    def __add__(self, other: "AbMap") -> "AbMap":
        return AbMap(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "AbMap") -> "AbMap":
        return AbMap(self.source, self.target, self.matrix - other.matrix)

    def scale(self, factor: int) -> "AbMap":
        return AbMap(self.source, self.target, self.matrix.scale(factor))

    def image_of(self, vector: Sequence[int]) -> Vector:
        return self.matrix.apply(vector)

    def is_zero(self) -> bool:
        return all(self.target.is_zero_element(column) for column in self.matrix.columns())

    def equals(self, other: "AbMap") -> bool:
        """Equality as homomorphisms (the matrices may differ by relations of the target)."""
        return (self - other).is_zero()

    def kernel(self) -> "Subquotient":
        return kernel(self)

    def cokernel(self) -> FpAbGroup:
        return FpAbGroup.presented(self.target.relations.hstack(self.matrix))

    def is_injective(self) -> bool:
        return self.kernel().group.is_zero()

    def is_surjective(self) -> bool:
        return self.cokernel().is_zero()

    def is_isomorphism(self) -> bool:
        return self.is_surjective() and self.is_injective()


def direct_sum_map(*maps: AbMap) -> AbMap:
    return AbMap(
        direct_sum(*(f.source for f in maps)),
        direct_sum(*(f.target for f in maps)),
        block_diagonal(*(f.matrix for f in maps)),
    )


# == kernels, homology and subquotients ==

@dataclass(frozen=True)
class Subquotient:
    """
    ``L / (relations of the ambient group + extra)`` for a lattice ``L`` in the ambient
    presentation coordinates that contains the ambient relations. Kernels have no extra
    vectors; homology groups use the boundaries as extra vectors.
    """

    ambient: FpAbGroup
    lattice: Lattice
    extra: IntMatrix

    @cached_property
    def group(self) -> FpAbGroup:
        vectors = self.ambient.relations.hstack(self.extra)
        return FpAbGroup.presented(self.lattice.coordinate_matrix(vectors))

    def class_of(self, vector: Sequence[int]) -> Vector:
        """Presentation coordinates (in ``group``) of an element of the lattice."""
        coords = self.lattice.coordinates(vector)
        if coords is None:
            raise NotWellDefined(f"vector {tuple(vector)} does not lie in the subgroup")
        return coords

    def inclusion(self) -> AbMap:
        """The map of the subgroup into the ambient group (meaningful when extra is zero)."""
        return AbMap(self.group, self.ambient, self.lattice.basis)


def kernel(f: AbMap) -> Subquotient:
    """
    The kernel of ``f: A -> B``. Its lattice is the preimage ``{x : f(x) in im(R_B)}`` in the
    presentation coordinates of ``A``.
    """
    a = f.source.generators
    stacked = f.matrix.hstack(f.target.relations)
    solutions = nullspace(stacked).select_rows(range(a))
    lattice = Lattice(solutions.hstack(f.source.relations))
    return Subquotient(f.source, lattice, IntMatrix.zeros(a, 0))


def homology_data(d_in: AbMap, d_out: AbMap) -> Subquotient:
    """``ker(d_out) / im(d_in)`` together with the cycle lattice used to trace classes."""
    middle_in, middle_out = d_in.target, d_out.source
    if middle_in.generators != middle_out.generators or middle_in.relations != middle_out.relations:
        raise DimensionMismatch("the target of d_in is not the source of d_out")
    if not d_out.compose(d_in).is_zero():
        raise CompositionNotZero("d_out ∘ d_in is not zero")
    cycles = kernel(d_out)
    return Subquotient(middle_out, cycles.lattice, d_in.matrix)


def homology(d_in: AbMap, d_out: AbMap) -> FpAbGroup:
    """
    The canonical form of ``ker(d_out) / im(d_in)``.

    Raises:
        CompositionNotZero: if ``d_out ∘ d_in`` is not the zero map.
    """
    return homology_data(d_in, d_out).group


def induced_map(f: AbMap, source: Subquotient, target: Subquotient) -> AbMap:
    """The map between subquotients induced by ``f`` on the ambient groups."""
    columns = [
        target.class_of(f.image_of(vector)) for vector in source.lattice.basis.columns()
    ]
    return AbMap(source.group, target.group, IntMatrix.from_columns(columns, rows=target.lattice.rank))


def is_exact(f: AbMap, g: AbMap) -> bool:
    """Exactness of ``A -f-> B -g-> C`` at B."""
    try:
        return homology(f, g).is_zero()
    except CompositionNotZero:
        return False


# == Hom groups ==

class HomGroup(NamedTuple):
    group: FpAbGroup
    generators: List[AbMap]


def hom_group(a: FpAbGroup, b: FpAbGroup) -> HomGroup:
    """
    The group ``Hom(A, B)`` in canonical form together with one representing map per
    presentation generator of the returned group.

    Every pair of canonical components contributes a cyclic summand:
    ``Hom(Z, Z) = Z``, ``Hom(Z, Z/e) = Z/e``, ``Hom(Z/d, Z) = 0`` and
    ``Hom(Z/d, Z/e) = Z/gcd(d, e)`` generated by ``1 -> e / gcd(d, e)``.
    """
    rows_a = [a._data.U.row(i) for i, _ in a._components]
    vectors_b = b.canonical_generators()
    orders: List[int] = []
    generators: List[AbMap] = []
    for row, order_a in zip(rows_a, a.component_orders()):
        for vector, order_b in zip(vectors_b, b.component_orders()):
            if order_a == 0:
                factor, order = 1, order_b
            elif order_b == 0:
                continue
            else:
                order = math.gcd(order_a, order_b)
                if order == 1:
                    continue
                factor = order_b // order
            matrix = IntMatrix.from_rows([
                [factor * x * y for y in row] for x in vector
            ], cols=a.generators)
            orders.append(order)
            generators.append(AbMap(a, b, matrix))
    return HomGroup(FpAbGroup.presented(IntMatrix.diagonal(orders)), generators)


def assemble_map(sources: Sequence[FpAbGroup], targets: Sequence[FpAbGroup],
                 blocks: Mapping[Tuple[int, int], AbMap]) -> AbMap:
    """
    The map ``⊕ sources -> ⊕ targets`` whose block ``(target index, source index)`` is given
    by ``blocks``; missing blocks are zero.
    """
    row_offsets = [0]
    for group in targets:
        row_offsets.append(row_offsets[-1] + group.generators)
    col_offsets = [0]
    for group in sources:
        col_offsets.append(col_offsets[-1] + group.generators)

    entries = [[0] * col_offsets[-1] for _ in range(row_offsets[-1])]
    for (t, s), block in blocks.items():
        if (block.matrix.rows, block.matrix.cols) != (targets[t].generators, sources[s].generators):
            raise DimensionMismatch(f"block ({t}, {s}) has the wrong shape")
        for i, row in enumerate(block.matrix.entries):
            for j, value in enumerate(row):
                if value:
                    entries[row_offsets[t] + i][col_offsets[s] + j] += value
    return AbMap(
        direct_sum(*sources),
        direct_sum(*targets),
        IntMatrix.from_rows(entries, cols=col_offsets[-1]),
    )
