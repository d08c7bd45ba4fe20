"""
Graded polynomial rings, finitely presented graded modules and graded maps.

A ring is a polynomial ring over Z with graded variables modulo a homogeneous ideal. A module
is a quotient of a free module ``⊕_j R(-a_j)`` by homogeneous relation columns. Nothing here
is ever computed symbolically: every question about a graded object is answered in a single
degree ``g`` by *realizing* the object there, which turns the degree-``g`` piece into a
finitely presented abelian group on the monomial basis of that degree.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from graded_kernel.abelian import (
    AbMap,
    FpAbGroup,
    IntMatrix,
    Vector,
    assemble_map,
    direct_sum as direct_sum_groups,
    induced_map,
    kernel,
    tensor,
)
from graded_kernel.errors import (
    DimensionMismatch,
    NotHomogeneous,
    NotWellDefined,
    RingMismatch,
    UnboundedDecomposition,
)
from graded_kernel.grading import (
    Degree,
    Exponents,
    GradingSignature,
    Rational,
    Window,
    degree_sort_key,
    degrees_in_window,
    monomials_of_degree,
    to_fraction,
    validate_signature,
)
from graded_kernel.helpers import map_degrees
from graded_kernel.polynomials import Polynomial, parse_polynomial

logger = logging.getLogger(__name__)

# An element of a module is one polynomial coefficient per generator.
ModuleElement = Tuple[Polynomial, ...]
# A basis element ``m * e_j`` of a realized piece is labelled by ``(j, exponents of m)``.
Label = Tuple[int, Exponents]

DEFAULT_VARIABLE_NAMES = "xyzuvw"


def _as_degree(value: Union[Degree, Sequence[Rational], Rational]) -> Degree:
    return value if isinstance(value, Degree) else Degree.parse(value)


# == rings ==

class RingPresentation(NamedTuple):
    variables: Tuple[str, ...]
    relations: Tuple[Polynomial, ...]


@dataclass(frozen=True)
class GradedRing:
    """
    ``Z[x_1, ..., x_n] / I`` graded by ``sig``. ``ideal`` holds the nonzero homogeneous
    generators of I and ``ideal_degrees`` their degrees.
    """

    sig: GradingSignature
    variables: Tuple[str, ...]
    ideal: Tuple[Polynomial, ...]
    ideal_degrees: Tuple[Degree, ...]

    @classmethod
    def create(cls,
               sig: GradingSignature,
               variables: Optional[Sequence[str]] = None,
               ideal: Sequence[Union[str, Polynomial]] = (),
               ) -> "GradedRing":
        """
        Validates the signature, parses the ideal generators and checks that every one of
        them is homogeneous.

        Raises:
            NotPointed: if the weight functional does not certify a pointed grading.
            NotHomogeneous: if an ideal generator mixes degrees.
        """
        validate_signature(sig)
        n = len(sig.generator_degrees)
        if variables is None:
            variables = DEFAULT_VARIABLE_NAMES[:n] if n <= len(DEFAULT_VARIABLE_NAMES) else [f"x{i}" for i in range(n)]
        variables = tuple(variables)
        if len(variables) != n:
            raise DimensionMismatch(f"{len(variables)} variable names for {n} generator degrees")

        generators: List[Polynomial] = []
        degrees: List[Degree] = []
        for value in ideal:
            f = parse_polynomial(value, variables) if isinstance(value, str) else value
            if f.nvars != n:
                raise DimensionMismatch(f"ideal generator {f} is not a polynomial in {n} variables")
            if f.is_zero():
                continue
            if not f.is_homogeneous(sig):
                raise NotHomogeneous(f"ideal generator {f.format(variables)} is not homogeneous")
            generators.append(f)
            degrees.append(f.degree(sig))

        return cls(sig, variables, tuple(generators), tuple(degrees))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def presentation(self) -> RingPresentation:
        return RingPresentation(self.variables, self.ideal)

    def parse(self, text: Union[str, int, Polynomial]) -> Polynomial:
        if isinstance(text, Polynomial):
            return text
        return parse_polynomial(str(text), self.variables)

    def one(self) -> Polynomial:
        return Polynomial.constant(self.nvars, 1)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.nvars)

    def variable(self, name: Union[str, int]) -> Polynomial:
        index = self.variables.index(name) if isinstance(name, str) else name
        return Polynomial.variable(self.nvars, index)

    def format(self, polynomial: Polynomial) -> str:
        return polynomial.format(self.variables)

    def degree(self, polynomial: Polynomial) -> Degree:
        """
        Raises:
            NotHomogeneous: if ``polynomial`` is zero or mixes degrees.
        """
        if not polynomial.is_homogeneous(self.sig) or polynomial.is_zero():
            raise NotHomogeneous(f"{self.format(polynomial)} is not a nonzero homogeneous element")
        return polynomial.degree(self.sig)

    def quotient(self, *relations: Union[str, Polynomial]) -> "GradedRing":
        return GradedRing.create(self.sig, self.variables, self.ideal + tuple(relations))

    def as_module(self) -> "GradedModule":
        return free_module(self, [self.sig.zero()])

    def is_zero_ring(self) -> bool:
        return ring_piece(self, self.sig.zero()).is_zero()


def decompose(ring: GradedRing, element: Union[str, Polynomial]) -> Dict[Degree, Polynomial]:
    """
    The homogeneous components of ``element``, ordered by weight. The zero element has no
    components.

    Example:
        ``a + b*x`` with ``deg x = 1`` decomposes into ``{0: a, 1: b*x}``.
    """
    components = ring.parse(element).homogeneous_components(ring.sig)
    return {g: components[g] for g in sorted(components, key=degree_sort_key(ring.sig))}


# == modules ==

@dataclass(frozen=True)
class GradedModule:
    """
    The cokernel of ``⊕_c R(-b_c) -> ⊕_j R(-a_j)``. ``generator_shifts`` are the degrees
    ``a_j`` of the generators and ``relations`` are the columns of the relation matrix, each
    with one entry per generator. Column ``c`` has degree ``relation_degrees[c] = b_c``.
    """

    ring: GradedRing
    generator_shifts: Tuple[Degree, ...]
    relations: Tuple[ModuleElement, ...] = ()
    relation_degrees: Tuple[Degree, ...] = ()

    @classmethod
    def create(cls,
               ring: GradedRing,
               shifts: Sequence[Union[Degree, Sequence[Rational], Rational]],
               relations: Sequence[Sequence[Union[str, Polynomial]]] = (),
               relation_degrees: Optional[Sequence[Union[Degree, Sequence[Rational], Rational]]] = None,
               ) -> "GradedModule":
        """
        Builds a module from its shifts and relation columns. The degree of a relation column
        is inferred from its first nonzero entry unless it is given explicitly; zero columns
        without a given degree are dropped.

        Raises:
            NotHomogeneous: if some entry ``P[j][c]`` is not homogeneous of degree ``b_c - a_j``.
        """
        shifts = tuple(_as_degree(a) for a in shifts)
        for a in shifts:
            if a.dimension != ring.sig.dimension:
                raise DimensionMismatch(f"generator shift {a} is not in Q^{ring.sig.dimension}")
        if relation_degrees is not None and len(relation_degrees) != len(relations):
            raise DimensionMismatch(f"{len(relation_degrees)} relation degrees for {len(relations)} relations")

        columns: List[ModuleElement] = []
        degrees: List[Degree] = []
        for c, raw in enumerate(relations):
            column = tuple(ring.parse(entry) for entry in raw)
            if len(column) != len(shifts):
                raise DimensionMismatch(f"relation {c} has {len(column)} entries for {len(shifts)} generators")

            degree = _as_degree(relation_degrees[c]) if relation_degrees is not None else None
            for j, entry in enumerate(column):
                if entry.is_zero():
                    continue
                if not entry.is_homogeneous(ring.sig):
                    raise NotHomogeneous(f"relation {c}, generator {j}: {ring.format(entry)} is not homogeneous")
                if degree is None:
                    degree = entry.degree(ring.sig) + shifts[j]
                expected = degree - shifts[j]
                if entry.degree(ring.sig) != expected:
                    raise NotHomogeneous(
                        f"relation {c}, generator {j}: {ring.format(entry)} has degree "
                        f"{entry.degree(ring.sig)}, expected {expected}"
                    )
            if degree is None:
                continue
            columns.append(column)
            degrees.append(degree)

        return cls(ring, shifts, tuple(columns), tuple(degrees))

    @property
    def ngens(self) -> int:
        return len(self.generator_shifts)

    @property
    def sig(self) -> GradingSignature:
        return self.ring.sig

    @property
    def relation_matrix(self) -> Tuple[Tuple[Polynomial, ...], ...]:
        """The relation matrix ``P`` by rows, ``P[j][c]``."""
        return tuple(tuple(column[j] for column in self.relations) for j in range(self.ngens))

    def is_free(self) -> bool:
        return not self.relations

    @property
    def min_weight(self) -> Optional[Fraction]:
        """The smallest weight a nonzero piece can have, None for a module without generators."""
        if not self.generator_shifts:
            return None
        return min(self.sig.weight_of(a) for a in self.generator_shifts)

    def candidate_degrees(self, window: Window) -> List[Degree]:
        """The degrees in ``window`` where the module can be nonzero."""
        return degrees_in_window(self.sig, window, self.generator_shifts)

    def piece(self, g: Degree) -> FpAbGroup:
        return module_piece(self, g)

    # ~ elements

    def zero_element(self) -> ModuleElement:
        return tuple(self.ring.zero() for _ in range(self.ngens))

    def generator(self, j: int) -> ModuleElement:
        return self.basis_element((j, (0,) * self.ring.nvars))

    def basis_element(self, label: Label, factor: Optional[Polynomial] = None) -> ModuleElement:
        """The element ``factor * m * e_j`` for the label ``(j, m)``."""
        j, exponents = label
        value = Polynomial.monomial(exponents)
        if factor is not None:
            value = value * factor
        return tuple(value if i == j else self.ring.zero() for i in range(self.ngens))


def add_elements(a: ModuleElement, b: ModuleElement) -> ModuleElement:
    return tuple(x + y for x, y in zip(a, b))


def scale_element(factor: Polynomial, element: ModuleElement) -> ModuleElement:
    return tuple(factor * x for x in element)


def free_module(ring: GradedRing, shifts: Sequence[Union[Degree, Sequence[Rational], Rational]]) -> GradedModule:
    return GradedModule.create(ring, shifts)


def shift(module: GradedModule, g: Union[Degree, Sequence[Rational], Rational]) -> GradedModule:
    """
    The shifted module ``M(g)`` with ``M(g)_h = M_{g+h}``: every generator and relation degree
    moves by ``-g``.
    """
    g = _as_degree(g)
    return GradedModule(
        module.ring,
        tuple(a - g for a in module.generator_shifts),
        module.relations,
        tuple(b - g for b in module.relation_degrees),
    )


def direct_sum(*modules: GradedModule) -> GradedModule:
    """
    Raises:
        RingMismatch: if the modules live over different rings.
    """
    if not modules:
        raise DimensionMismatch("the direct sum needs at least one module")
    ring = modules[0].ring
    if any(module.ring != ring for module in modules):
        raise RingMismatch("direct sum of modules over different rings")

    shifts: List[Degree] = []
    columns: List[ModuleElement] = []
    degrees: List[Degree] = []
    total = sum(module.ngens for module in modules)
    offset = 0
    for module in modules:
        shifts.extend(module.generator_shifts)
        for column, degree in zip(module.relations, module.relation_degrees):
            padded = [ring.zero()] * total
            padded[offset:offset + module.ngens] = column
            columns.append(tuple(padded))
            degrees.append(degree)
        offset += module.ngens

    return GradedModule(ring, tuple(shifts), tuple(columns), tuple(degrees))


def quotient_by_elements(module: GradedModule, elements: Sequence[ModuleElement]) -> GradedModule:
    """``M`` modulo the submodule generated by homogeneous ``elements``."""
    extra = [tuple(element) for element in elements]
    return GradedModule.create(
        module.ring,
        module.generator_shifts,
        list(module.relations) + extra,
        list(module.relation_degrees) + [_element_degree(module, element) for element in extra],
    )


def quotient_by_ideal_power(module: GradedModule,
                            generators: Sequence[Union[str, Polynomial]],
                            power: int,
                            ) -> GradedModule:
    """
    ``M / I^power M`` for ``I = (f_1, ..., f_r)``: adds the relations ``f^alpha e_j`` for all
    multi-indices of length ``power``. ``I^0 = R``, so the zeroth power kills the module.
    """
    ring = module.ring
    fs = [ring.parse(f) for f in generators]
    products: List[Polynomial] = []
    for combination in itertools.combinations_with_replacement(range(len(fs)), power):
        product = ring.one()
        for index in combination:
            product = product * fs[index]
        if not product.is_zero():
            products.append(product)

    columns: List[ModuleElement] = []
    degrees: List[Degree] = []
    for product in products:
        degree = ring.degree(product)
        for j, a in enumerate(module.generator_shifts):
            columns.append(module.basis_element((j, (0,) * ring.nvars), product))
            degrees.append(degree + a)

    return GradedModule(
        ring,
        module.generator_shifts,
        module.relations + tuple(columns),
        module.relation_degrees + tuple(degrees),
    )


def _element_degree(module: GradedModule, element: ModuleElement) -> Degree:
    degrees = {
        module.ring.degree(component) + a
        for a, entry in zip(module.generator_shifts, element)
        for component in entry.homogeneous_components(module.sig).values()
    }
    if len(degrees) != 1:
        raise NotHomogeneous("the element is not a nonzero homogeneous module element")
    return degrees.pop()


# == degreewise realization ==

@dataclass(frozen=True)
class PieceRealization:
    """
    The degree-``g`` piece of a module as the abelian group on the basis labels ``(j, m)``
    with ``deg m + a_j = g``, modulo the realized relations.
    """

    degree: Degree
    basis: Tuple[Label, ...]
    relations: IntMatrix

    @cached_property
    def index(self) -> Dict[Label, int]:
        return {label: i for i, label in enumerate(self.basis)}

    @cached_property
    def group(self) -> FpAbGroup:
        return FpAbGroup(len(self.basis), self.relations)

    def coordinates(self, element: ModuleElement) -> Vector:
        """
        Coordinates of the degree-``g`` component of ``element``. Terms of other degrees are
        dropped, so this is also the projection ``p_g`` of the total space onto the piece.
        """
        vector = [0] * len(self.basis)
        for j, polynomial in enumerate(element):
            for exponents, coefficient in polynomial:
                position = self.index.get((j, exponents))
                if position is not None:
                    vector[position] += coefficient
        return tuple(vector)

    def element(self, vector: Sequence[int], module: GradedModule) -> ModuleElement:
        result = module.zero_element()
        for value, label in zip(vector, self.basis):
            if value:
                result = add_elements(result, module.basis_element(label, Polynomial.constant(module.ring.nvars, value)))
        return result


@lru_cache(maxsize=4096)
def realize(module: GradedModule, g: Degree) -> PieceRealization:
    """
    Realizes ``module`` in degree ``g``. The relations are the ideal relations ``m * f * e_j``
    and the module relations ``m * P[:, c]`` for every monomial ``m`` of the fitting degree.
    """
    sig = module.sig
    basis: List[Label] = [
        (j, m)
        for j, a in enumerate(module.generator_shifts)
        for m in monomials_of_degree(sig, g - a)
    ]
    index = {label: i for i, label in enumerate(basis)}

    seen = set()
    columns: List[Vector] = []

    def add(element: ModuleElement) -> None:
        vector = [0] * len(basis)
        for j, polynomial in enumerate(element):
            for exponents, coefficient in polynomial:
                vector[index[(j, exponents)]] += coefficient
        vector = tuple(vector)
        if any(vector) and vector not in seen:
            seen.add(vector)
            columns.append(vector)

    ring = module.ring
    for j, a in enumerate(module.generator_shifts):
        for f, d in zip(ring.ideal, ring.ideal_degrees):
            for m in monomials_of_degree(sig, g - a - d):
                add(module.basis_element((j, m), f))

    for column, b in zip(module.relations, module.relation_degrees):
        for m in monomials_of_degree(sig, g - b):
            add(scale_element(Polynomial.monomial(m), column))

    if len(basis) * len(columns) > 400:
        logger.debug("realized degree %s: %d basis elements, %d relations", g, len(basis), len(columns))
    return PieceRealization(g, tuple(basis), IntMatrix.from_columns(columns, rows=len(basis)))


def module_piece(module: GradedModule, g: Degree) -> FpAbGroup:
    """The degree-``g`` piece ``M_g`` as a finitely presented abelian group."""
    return realize(module, g).group


def ring_piece(ring: GradedRing, g: Degree) -> FpAbGroup:
    """
    ``R_g``: the free group on the monomials of degree ``g`` modulo the multiples ``m * f`` of
    the ideal generators that land in degree ``g``.
    """
    return module_piece(ring.as_module(), g)


def support(obj: Union[GradedRing, GradedModule], window: Window) -> List[Degree]:
    """The degrees of ``window`` with a nonzero piece, ordered by weight."""
    module = obj.as_module() if isinstance(obj, GradedRing) else obj
    degrees = module.candidate_degrees(window)
    pieces = map_degrees(module.piece, degrees)
    return [g for g, piece in zip(degrees, pieces) if not piece.is_zero()]


def hilbert_function(obj: Union[GradedRing, GradedModule],
                     window: Window,
                     ) -> Dict[Degree, Tuple[int, Tuple[int, ...]]]:
    """The invariants ``(rank, torsion)`` of every piece over the candidate degrees of ``window``."""
    module = obj.as_module() if isinstance(obj, GradedRing) else obj
    degrees = module.candidate_degrees(window)
    pieces = map_degrees(module.piece, degrees)
    return {g: piece.invariants() for g, piece in zip(degrees, pieces)}


def total_space(module: GradedModule, bound: Rational) -> FpAbGroup:
    """The direct sum of all pieces of weight at most ``bound``."""
    if module.min_weight is None:
        return FpAbGroup.zero()
    degrees = module.candidate_degrees(Window(module.min_weight, to_fraction(bound)))
    return direct_sum_groups(*map_degrees(module.piece, degrees))


# == maps ==

@dataclass(frozen=True)
class GradedMap:
    """
    An R-linear map ``source -> target`` raising degrees by ``degree_offset``. ``matrix`` has
    one row per target generator and one column per source generator; entry ``[i][j]`` is
    homogeneous of degree ``a_j + offset - b_i``.
    """

    source: GradedModule
    target: GradedModule
    matrix: Tuple[Tuple[Polynomial, ...], ...]
    degree_offset: Degree

    @classmethod
    def create(cls,
               source: GradedModule,
               target: GradedModule,
               matrix: Sequence[Sequence[Union[str, Polynomial]]],
               degree_offset: Optional[Union[Degree, Sequence[Rational], Rational]] = None,
               ) -> "GradedMap":
        """
        Raises:
            RingMismatch: if source and target live over different rings.
            NotHomogeneous: if an entry does not have the degree that the shifts demand.
        """
        if source.ring != target.ring:
            raise RingMismatch("source and target of a graded map live over different rings")
        ring = source.ring
        offset = ring.sig.zero() if degree_offset is None else _as_degree(degree_offset)

        rows = tuple(tuple(ring.parse(entry) for entry in row) for row in matrix)
        if len(rows) != target.ngens or any(len(row) != source.ngens for row in rows):
            raise DimensionMismatch(
                f"a map from {source.ngens} to {target.ngens} generators needs a "
                f"{target.ngens}x{source.ngens} matrix"
            )
        for i, row in enumerate(rows):
            for j, entry in enumerate(row):
                if entry.is_zero():
                    continue
                expected = source.generator_shifts[j] + offset - target.generator_shifts[i]
                if not entry.is_homogeneous(ring.sig) or entry.degree(ring.sig) != expected:
                    raise NotHomogeneous(
                        f"entry [{i}][{j}] = {ring.format(entry)} is not homogeneous of degree {expected}"
                    )
        return cls(source, target, rows, offset)

    @classmethod
    def identity(cls, module: GradedModule) -> "GradedMap":
        ring = module.ring
        rows = tuple(
            tuple(ring.one() if i == j else ring.zero() for j in range(module.ngens))
            for i in range(module.ngens)
        )
        return cls(module, module, rows, ring.sig.zero())

    @classmethod
    def zero(cls, source: GradedModule, target: GradedModule,
             degree_offset: Optional[Degree] = None) -> "GradedMap":
        ring = source.ring
        rows = tuple(tuple(ring.zero() for _ in range(source.ngens)) for _ in range(target.ngens))
        return cls(source, target, rows, degree_offset or ring.sig.zero())

    @classmethod
    def multiplication(cls, module: GradedModule, factor: Union[str, Polynomial],
                       degree: Optional[Degree] = None) -> "GradedMap":
        """
        Multiplication by a homogeneous ring element, raising degrees by its degree. For the
        zero element the degree has to be given.
        """
        ring = module.ring
        factor = ring.parse(factor)
        if degree is None:
            degree = ring.degree(factor)
        rows = tuple(
            tuple(factor if i == j else ring.zero() for j in range(module.ngens))
            for i in range(module.ngens)
        )
        return cls(module, module, rows, degree)

    @classmethod
    def from_images(cls, source: GradedModule, target: GradedModule,
                    images: Sequence[ModuleElement],
                    degree_offset: Optional[Degree] = None) -> "GradedMap":
        """The map sending the j-th generator of ``source`` to ``images[j]``."""
        rows = [[images[j][i] for j in range(source.ngens)] for i in range(target.ngens)]
        return cls.create(source, target, rows, degree_offset)

    def column(self, j: int) -> ModuleElement:
        return tuple(row[j] for row in self.matrix)

    def apply(self, element: ModuleElement) -> ModuleElement:
        result = self.target.zero_element()
        for j, coefficient in enumerate(element):
            if not coefficient.is_zero():
                result = add_elements(result, scale_element(coefficient, self.column(j)))
        return result

    def realize(self, g: Degree) -> AbMap:
        """The map ``M_g -> N_{g + offset}`` on realized pieces."""
        return _realize_map(self, g)

    def compose(self, inner: "GradedMap") -> "GradedMap":
        """``self ∘ inner``."""
        if inner.target != self.source:
            raise DimensionMismatch("graded maps are not composable")
        ring = self.source.ring
        rows = tuple(
            tuple(
                sum((self.matrix[i][k] * inner.matrix[k][j] for k in range(self.source.ngens)), ring.zero())
                for j in range(inner.source.ngens)
            )
            for i in range(self.target.ngens)
        )
        return GradedMap(inner.source, self.target, rows, self.degree_offset + inner.degree_offset)

    def __add__(self, other: "GradedMap") -> "GradedMap":
        rows = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix))
        return GradedMap(self.source, self.target, rows, self.degree_offset)

    def __neg__(self) -> "GradedMap":
        rows = tuple(tuple(-a for a in row) for row in self.matrix)
        return GradedMap(self.source, self.target, rows, self.degree_offset)

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + (-other)

    def degrees(self, window: Window) -> List[Degree]:
        return self.source.candidate_degrees(window)

    def is_well_defined(self, window: Window) -> bool:
        return all(self.realize(g).is_well_defined() for g in self.degrees(window))

    def check_well_defined(self, window: Window) -> "GradedMap":
        """
        Raises:
            NotWellDefined: naming the first degree of ``window`` where a relation of the source
                is not sent into the relations of the target.
        """
        for g in self.degrees(window):
            if not self.realize(g).is_well_defined():
                raise NotWellDefined(f"the graded map does not respect the relations in degree {g}")
        return self

    def is_zero_on(self, window: Window) -> bool:
        return all(self.realize(g).is_zero() for g in self.degrees(window))

    def equals_on(self, other: "GradedMap", window: Window) -> bool:
        return all(self.realize(g).equals(other.realize(g)) for g in self.degrees(window))


@lru_cache(maxsize=4096)
def _realize_map(graded_map: GradedMap, g: Degree) -> AbMap:
    source = realize(graded_map.source, g)
    target = realize(graded_map.target, g + graded_map.degree_offset)
    columns = [
        target.coordinates(graded_map.apply(graded_map.source.basis_element(label)))
        for label in source.basis
    ]
    return AbMap(source.group, target.group, IntMatrix.from_columns(columns, rows=len(target.basis)))


# == Day convolution ==

class DayTensor:
    """
    The Day convolution of two graded abelian groups, ``(A ⊗ B)_g = ⊕_{s+t=g} A_s ⊗ B_t``.
    The factors are graded modules or again ``DayTensor`` objects. With a ``support_bound``
    only factor degrees of weight at most the bound contribute.
    """

    def __init__(self, left, right, support_bound: Optional[Rational] = None):
        if not left.sig.compatible_with(right.sig):
            raise UnboundedDecomposition(
                "the factors are not graded by a common pointed signature, so the decompositions "
                "g = s + t cannot be certified finite"
            )
        self.left = left
        self.right = right
        self.support_bound = None if support_bound is None else to_fraction(support_bound)

    @property
    def sig(self) -> GradingSignature:
        return self.left.sig

    @property
    def min_weight(self) -> Optional[Fraction]:
        if self.left.min_weight is None or self.right.min_weight is None:
            return None
        return self.left.min_weight + self.right.min_weight

    def _cap(self, weight: Fraction) -> Fraction:
        return weight if self.support_bound is None else min(weight, self.support_bound)

    def decompositions(self, g: Degree) -> List[Tuple[Degree, Degree]]:
        """The finitely many pairs ``(s, t)`` with ``s + t = g`` where both factors can be nonzero."""
        if self.min_weight is None:
            return []
        weight = self.sig.weight_of(g)
        window = Window(self.left.min_weight, self._cap(weight - self.right.min_weight))
        pairs = []
        for s in self.left.candidate_degrees(window):
            t = g - s
            t_weight = self.sig.weight_of(t)
            if self.right.min_weight <= t_weight and t_weight == self._cap(t_weight):
                pairs.append((s, t))
        return pairs

    def candidate_degrees(self, window: Window) -> List[Degree]:
        if self.min_weight is None:
            return []
        left = self.left.candidate_degrees(Window(self.left.min_weight, self._cap(window.hi - self.right.min_weight)))
        right = self.right.candidate_degrees(Window(self.right.min_weight, self._cap(window.hi - self.left.min_weight)))
        found = {s + t for s in left for t in right if window.contains(self.sig.weight_of(s + t))}
        return sorted(found, key=degree_sort_key(self.sig))

    def piece(self, g: Degree) -> FpAbGroup:
        groups = [tensor(self.left.piece(s), self.right.piece(t)) for s, t in self.decompositions(g)]
        return direct_sum_groups(*groups)


def day_tensor_piece(left: GradedModule, right: GradedModule, g: Degree,
                     support_bound: Optional[Rational] = None) -> FpAbGroup:
    """
    The degree-``g`` piece of the Day convolution ``left ⊗ right`` over Z.

    Raises:
        UnboundedDecomposition: if the two signatures do not share the weight functional that
            makes the decomposition set finite.
    """
    return DayTensor(left, right, support_bound).piece(g)


class ForgetfulTensorReport(NamedTuple):
    passed: bool
    day_total: FpAbGroup
    plain_tensor: FpAbGroup


def forgetful_tensor_check(left: GradedModule, right: GradedModule, bound: Rational) -> ForgetfulTensorReport:
    """
    Compares the direct sum of all Day tensor pieces built from factor degrees of weight at most
    ``bound`` with the plain tensor product of the two truncated total spaces.
    """
    bound = to_fraction(bound)
    day = DayTensor(left, right, bound)
    if day.min_weight is None:
        day_total = FpAbGroup.zero()
    else:
        degrees = day.candidate_degrees(Window(day.min_weight, 2 * bound))
        day_total = direct_sum_groups(*map_degrees(day.piece, degrees))
    plain = tensor(total_space(left, bound), total_space(right, bound))
    return ForgetfulTensorReport(day_total == plain, day_total, plain)


# == ungraded maps and their retraction ==

@dataclass(frozen=True)
class UngradedMap:
    """
    An additive map between the total spaces of two modules, truncated to the source degrees
    of weight at most ``bound``. It is given by the image of every monomial basis element.
    """

    source: GradedModule
    target: GradedModule
    bound: Fraction
    images: Tuple[Tuple[Label, ModuleElement], ...]

    @classmethod
    def from_matrix(cls, source: GradedModule, target: GradedModule,
                    matrix: Sequence[Sequence[Union[str, Polynomial]]],
                    bound: Rational) -> "UngradedMap":
        """The R-linear map with (possibly inhomogeneous) matrix ``matrix``, rows indexed by target generators."""
        ring = source.ring
        rows = [[ring.parse(entry) for entry in row] for row in matrix]
        columns = [tuple(row[j] for row in rows) for j in range(source.ngens)]
        images = []
        for label in source_labels(source, bound):
            j, exponents = label
            images.append((label, scale_element(Polynomial.monomial(exponents), columns[j])))
        return cls(source, target, to_fraction(bound), tuple(images))

    @classmethod
    def include(cls, graded_map: GradedMap, bound: Rational) -> "UngradedMap":
        """The underlying ungraded map of a graded map."""
        return cls.from_matrix(graded_map.source, graded_map.target, graded_map.matrix, bound)

    @cached_property
    def _lookup(self) -> Dict[Label, ModuleElement]:
        return dict(self.images)

    def image(self, label: Label) -> ModuleElement:
        return self._lookup.get(label, self.target.zero_element())


def source_degrees(module: GradedModule, bound: Rational) -> List[Degree]:
    if module.min_weight is None:
        return []
    return module.candidate_degrees(Window(module.min_weight, to_fraction(bound)))


def source_labels(module: GradedModule, bound: Rational) -> List[Label]:
    labels: List[Label] = []
    for g in source_degrees(module, bound):
        labels.extend(realize(module, g).basis)
    return labels


def retract_components(phi: UngradedMap) -> Dict[Degree, AbMap]:
    """The components ``p_{N,g} ∘ phi ∘ i_{M,g}`` for every source degree within the bound."""
    components = {}
    for g in source_degrees(phi.source, phi.bound):
        source = realize(phi.source, g)
        target = realize(phi.target, g)
        columns = [target.coordinates(phi.image(label)) for label in source.basis]
        components[g] = AbMap(source.group, target.group, IntMatrix.from_columns(columns, rows=len(target.basis)))
    return components


def retract_map(phi: UngradedMap) -> GradedMap:
    """
    The degree-preserving part of ``phi`` as a graded map: the j-th generator goes to the
    degree ``a_j`` component of its image. For an R-linear ``phi`` this realizes to
    ``retract_components(phi)`` in every degree, and a graded map is retracted to itself.
    Generators beyond the bound have no known image and are sent to zero.
    """
    source, target = phi.source, phi.target
    ring = source.ring
    sig = ring.sig
    rows = []
    for i, b in enumerate(target.generator_shifts):
        row = []
        for j, a in enumerate(source.generator_shifts):
            image = phi.image((j, (0,) * ring.nvars))[i]
            component = image.homogeneous_components(sig).get(a - b, ring.zero())
            row.append(component)
        rows.append(row)
    return GradedMap.create(source, target, rows)


# == graded Hom versus degreewise R-linear maps ==

@dataclass
class HomFiberReport:
    passed: bool
    graded: FpAbGroup
    degreewise: FpAbGroup
    kernel: FpAbGroup
    cokernel: FpAbGroup
    degrees: List[Degree]


def graded_hom_fiber_check(source: GradedModule, target: GradedModule, bound: Rational) -> HomFiberReport:
    """
    Compares the graded R-linear maps ``M -> N`` with the families of additive maps
    ``M_g -> N_g`` (over the source degrees of weight at most ``bound``) that commute with
    multiplication by every variable.

    The first group is the kernel of ``⊕_j N_{a_j} -> ⊕_c N_{b_c}`` (generator images that
    satisfy the relations). The second group is the kernel of the constraint map on
    ``⊕_g N_g^{p_g}`` (one image per basis element of ``M_g``): the images have to respect the
    relations of every ``M_g`` and be compatible with every variable. The comparison map
    sends generator images to the family they determine; the check passes when it is an
    isomorphism, which requires every generator degree to lie within the bound.
    """
    if source.ring != target.ring:
        raise RingMismatch("graded_hom_fiber_check needs modules over the same ring")
    ring = source.ring
    sig = ring.sig

    # ~ graded maps: images of the generators
    generator_groups = [module_piece(target, a) for a in source.generator_shifts]
    relation_groups = [module_piece(target, b) for b in source.relation_degrees]
    blocks = {}
    for c, (column, b) in enumerate(zip(source.relations, source.relation_degrees)):
        for j, entry in enumerate(column):
            a = source.generator_shifts[j]
            blocks[(c, j)] = GradedMap.multiplication(target, entry, b - a).realize(a)
    relation_map = assemble_map(generator_groups, relation_groups, blocks)
    graded = kernel(relation_map)

    # ~ degreewise maps: one image per basis element of every source piece
    degrees = source_degrees(source, bound)
    position = {g: k for k, g in enumerate(degrees)}
    pieces = {g: realize(source, g) for g in degrees}
    family_groups: List[FpAbGroup] = []
    slot: Dict[Tuple[Degree, Label], int] = {}
    for g in degrees:
        for label in pieces[g].basis:
            slot[(g, label)] = len(family_groups)
            family_groups.append(module_piece(target, g))

    constraint_groups: List[FpAbGroup] = []
    constraint_blocks = {}
    for g in degrees:
        piece = pieces[g]
        target_piece = module_piece(target, g)
        for relation in piece.relations.columns():
            t = len(constraint_groups)
            constraint_groups.append(target_piece)
            for label, coefficient in zip(piece.basis, relation):
                if coefficient:
                    constraint_blocks[(t, slot[(g, label)])] = AbMap.multiplication(target_piece, coefficient)
        for i, d in enumerate(sig.generator_degrees):
            h = g + d
            if h not in position:
                continue
            x = ring.variable(i)
            multiply = GradedMap.multiplication(target, x).realize(g)
            for label in piece.basis:
                t = len(constraint_groups)
                constraint_groups.append(module_piece(target, h))
                constraint_blocks[(t, slot[(g, label)])] = multiply
                shifted = pieces[h].coordinates(source.basis_element(label, x))
                for other, coefficient in zip(pieces[h].basis, shifted):
                    if coefficient:
                        constraint_blocks[(t, slot[(h, other)])] = AbMap.multiplication(
                            module_piece(target, h), -coefficient
                        )
    constraint_map = assemble_map(family_groups, constraint_groups, constraint_blocks)
    degreewise = kernel(constraint_map)

    # ~ comparison: generator images -> the family they determine
    comparison_blocks = {}
    for g in degrees:
        for label in pieces[g].basis:
            j, exponents = label
            a = source.generator_shifts[j]
            comparison_blocks[(slot[(g, label)], j)] = GradedMap.multiplication(
                target, Polynomial.monomial(exponents), g - a
            ).realize(a)
    comparison = assemble_map(generator_groups, family_groups, comparison_blocks)
    induced = induced_map(comparison, graded, degreewise)

    logger.debug("hom fiber check: graded %s, degreewise %s", graded.group, degreewise.group)
    return HomFiberReport(
        passed=induced.is_isomorphism(),
        graded=graded.group,
        degreewise=degreewise.group,
        kernel=induced.kernel().group,
        cokernel=induced.cokernel(),
        degrees=degrees,
    )
