"""
Bounded complexes of graded modules and derived quotients.

Objects of the graded derived category are represented by bounded complexes of finitely
presented graded modules. Derived quotients are formed by tensoring with Koszul complexes,
which are bounded complexes of graded free modules, so every term of a derived quotient is a
finite direct sum of shifted copies of the terms of the input and no resolution is ever
needed. Homological indices are lower indices: the differential ``d_i`` maps ``C_i`` to
``C_{i-1}``.
"""
import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from graded_kernel.abelian import (
    AbMap,
    FpAbGroup,
    Subquotient,
    homology_data,
    induced_map as induced_subquotient_map,
    is_exact,
    kernel,
)
from graded_kernel.errors import (
    CompositionNotZero,
    DimensionMismatch,
    NotPerfect,
    RingMismatch,
)
from graded_kernel.graded_algebra import (
    GradedMap,
    GradedModule,
    GradedRing,
    direct_sum,
    free_module,
    shift,
)
from graded_kernel.grading import Degree, Window, degree_sort_key
from graded_kernel.helpers import map_degrees
from graded_kernel.polynomials import Polynomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GradedComplex:
    """
    A bounded complex. ``terms`` and ``differentials`` are stored as sorted ``(index, value)``
    pairs; a missing term is the zero module and a missing differential is the zero map.
    """

    ring: GradedRing
    terms: Tuple[Tuple[int, GradedModule], ...]
    differentials: Tuple[Tuple[int, GradedMap], ...] = ()

    @classmethod
    def create(cls,
               terms: Mapping[int, GradedModule],
               differentials: Optional[Mapping[int, GradedMap]] = None,
               ring: Optional[GradedRing] = None,
               window: Optional[Window] = None,
               ) -> "GradedComplex":
        """
        Raises:
            RingMismatch: if the terms do not share one ring.
            DimensionMismatch: if a differential does not map ``C_i`` to ``C_{i-1}`` or changes degrees.
            CompositionNotZero: if a ``window`` is given and ``d ∘ d`` is not zero on it.
        """
        differentials = dict(differentials or {})
        if ring is None:
            if not terms:
                raise DimensionMismatch("a complex without terms needs an explicit ring")
            ring = next(iter(terms.values())).ring
        if any(module.ring != ring for module in terms.values()):
            raise RingMismatch("the terms of a complex live over different rings")

        complex_ = cls(
            ring,
            tuple(sorted(terms.items())),
            tuple(sorted((i, d) for i, d in differentials.items())),
        )
        for i, d in differentials.items():
            if d.source != complex_.term(i) or d.target != complex_.term(i - 1):
                raise DimensionMismatch(f"d_{i} does not map C_{i} to C_{i - 1}")
            if not d.degree_offset.is_zero():
                raise DimensionMismatch(f"d_{i} is not degree preserving")

        if window is not None:
            complex_.check(window)
        return complex_

    @classmethod
    def concentrated(cls, module: GradedModule, index: int = 0) -> "GradedComplex":
        return cls(module.ring, ((index, module),), ())

    # ~ structure

    @property
    def indices(self) -> List[int]:
        return [i for i, _ in self.terms]

    def term(self, i: int) -> GradedModule:
        for index, module in self.terms:
            if index == i:
                return module
        return GradedModule(self.ring, ())

    def differential(self, i: int) -> GradedMap:
        for index, d in self.differentials:
            if index == i:
                return d
        return GradedMap.zero(self.term(i), self.term(i - 1))

    def is_perfect(self) -> bool:
        return all(module.is_free() for _, module in self.terms)

    def degrees(self, i: int, window: Window) -> List[Degree]:
        """The degrees of ``window`` where ``C_i`` can be nonzero."""
        return self.term(i).candidate_degrees(window)

    def all_degrees(self, window: Window) -> List[Degree]:
        found = {g for i in self.indices for g in self.degrees(i, window)}
        return sorted(found, key=degree_sort_key(self.ring.sig))

    def check(self, window: Window) -> "GradedComplex":
        """
        Raises:
            CompositionNotZero: naming the index and degree where ``d_{i-1} ∘ d_i`` is not zero.
        """
        for i in self.indices:
            for g in self.degrees(i, window):
                if not self.differential(i - 1).realize(g).compose(self.differential(i).realize(g)).is_zero():
                    raise CompositionNotZero(f"d_{i - 1} ∘ d_{i} is not zero in degree {g}")
        return self

    # ~ homology

    def homology_data(self, i: int, g: Degree) -> Subquotient:
        return _homology_data(self, i, g)

    def homology(self, i: int, g: Degree) -> FpAbGroup:
        """The degree-``g`` piece of ``π_i``."""
        return self.homology_data(i, g).group


@lru_cache(maxsize=4096)
def _homology_data(complex_: GradedComplex, i: int, g: Degree) -> Subquotient:
    return homology_data(complex_.differential(i + 1).realize(g), complex_.differential(i).realize(g))


def as_complex(value: Union[GradedModule, GradedComplex]) -> GradedComplex:
    if isinstance(value, GradedComplex):
        return value
    return GradedComplex.concentrated(value)


def homotopy_groups(complex_: Union[GradedModule, GradedComplex], i: int, window: Window) -> Dict[Degree, FpAbGroup]:
    """
    The pieces of ``π_i`` over the degrees of ``window`` where ``C_i`` can be nonzero.

    Raises:
        CompositionNotZero: if ``d ∘ d`` is not zero in one of these degrees.
    """
    complex_ = as_complex(complex_)
    degrees = complex_.degrees(i, window)
    return dict(zip(degrees, map_degrees(lambda g: complex_.homology(i, g), degrees)))


def suspend(complex_: GradedComplex, k: int = 1) -> GradedComplex:
    """``C[k]`` with ``C[k]_i = C_{i-k}`` and differentials multiplied by ``(-1)^k``."""
    return _reindex(complex_, k, (-1) ** k)


def _reindex(complex_: GradedComplex, k: int, sign: int) -> GradedComplex:
    differentials = []
    for i, d in complex_.differentials:
        differentials.append((i + k, d if sign == 1 else -d))
    return GradedComplex(
        complex_.ring,
        tuple((i + k, module) for i, module in complex_.terms),
        tuple(differentials),
    )


def shift_complex(complex_: GradedComplex, g: Degree) -> GradedComplex:
    """Applies the degree shift ``M -> M(g)`` to every term."""
    terms = {i: shift(module, g) for i, module in complex_.terms}
    differentials = {
        i: GradedMap(terms[i] if i in terms else shift(complex_.term(i), g),
                     terms[i - 1] if i - 1 in terms else shift(complex_.term(i - 1), g),
                     d.matrix, d.degree_offset)
        for i, d in complex_.differentials
    }
    return GradedComplex(complex_.ring, tuple(sorted(terms.items())), tuple(sorted(differentials.items())))


# == chain maps ==

@dataclass(frozen=True)
class ChainMap:
    """A family of graded maps ``C_i -> D_i`` commuting with the differentials."""

    source: GradedComplex
    target: GradedComplex
    components: Tuple[Tuple[int, GradedMap], ...]
    degree_offset: Degree

    @classmethod
    def create(cls, source: GradedComplex, target: GradedComplex,
               components: Mapping[int, GradedMap],
               degree_offset: Optional[Degree] = None) -> "ChainMap":
        offset = source.ring.sig.zero() if degree_offset is None else degree_offset
        for i, component in components.items():
            if component.source != source.term(i) or component.target != target.term(i):
                raise DimensionMismatch(f"component {i} does not map C_{i} to D_{i}")
            if component.degree_offset != offset:
                raise DimensionMismatch(f"component {i} has degree offset {component.degree_offset}, expected {offset}")
        return cls(source, target, tuple(sorted(components.items())), offset)

    @classmethod
    def identity(cls, complex_: GradedComplex) -> "ChainMap":
        return cls.create(complex_, complex_, {i: GradedMap.identity(module) for i, module in complex_.terms})

    @classmethod
    def multiplication(cls, complex_: GradedComplex, factor: Polynomial) -> "ChainMap":
        """Multiplication by a homogeneous ring element on every term."""
        degree = complex_.ring.degree(factor)
        components = {
            i: GradedMap.multiplication(module, factor, degree) for i, module in complex_.terms
        }
        return cls.create(complex_, complex_, components, degree)

    def component(self, i: int) -> GradedMap:
        for index, component in self.components:
            if index == i:
                return component
        return GradedMap.zero(self.source.term(i), self.target.term(i), self.degree_offset)

    def is_chain_map(self, window: Window) -> bool:
        for i in self.source.indices:
            for g in self.source.degrees(i, window):
                left = self.target.differential(i).realize(g + self.degree_offset).compose(self.component(i).realize(g))
                right = self.component(i - 1).realize(g).compose(self.source.differential(i).realize(g))
                if not left.equals(right):
                    return False
        return True


def induced_map(chain_map: ChainMap, i: int, g: Degree) -> AbMap:
    """The map ``π_i(C)_g -> π_i(D)_{g + offset}`` induced by ``chain_map``."""
    source = chain_map.source.homology_data(i, g)
    target = chain_map.target.homology_data(i, g + chain_map.degree_offset)
    return induced_subquotient_map(chain_map.component(i).realize(g), source, target)


def torsion_exponent(complex_: Union[GradedModule, GradedComplex],
                     i: int,
                     generators: Sequence[Polynomial],
                     g: Degree,
                     bound: int,
                     ) -> Optional[int]:
    """
    The smallest ``n <= bound`` such that ``f^n`` annihilates ``π_i(C)_g`` for every generator
    ``f``, or None if there is no such ``n`` within the bound.
    """
    complex_ = as_complex(complex_)
    for n in range(bound + 1):
        if all(induced_map(ChainMap.multiplication(complex_, f ** n), i, g).is_zero() for f in generators):
            return n
    return None


# == Koszul complexes ==

@dataclass(frozen=True)
class KoszulData:
    ring: GradedRing
    sequence: Tuple[Polynomial, ...]
    exponent: int = 1

    @classmethod
    def create(cls, ring: GradedRing, sequence: Sequence[Union[str, Polynomial]], exponent: int = 1) -> "KoszulData":
        """
        Raises:
            NotHomogeneous: if some element of the sequence is zero or not homogeneous.
        """
        if exponent < 1:
            raise DimensionMismatch(f"the Koszul exponent has to be at least 1, got {exponent}")
        elements = tuple(ring.parse(f) for f in sequence)
        for f in elements:
            ring.degree(f)
        return cls(ring, elements, exponent)

    @property
    def degrees(self) -> Tuple[Degree, ...]:
        return tuple(self.ring.degree(f) for f in self.sequence)


def koszul_complex(data: KoszulData) -> GradedComplex:
    """
    The Koszul complex of ``f_1^n, ..., f_r^n``. Its term in index ``p`` has one generator
    ``e_S`` per ``p``-subset ``S`` (in lexicographic order) in degree ``n * Σ_{i∈S} deg f_i``
    and the differential is ``e_S -> Σ_k (-1)^k f_{s_k}^n e_{S - s_k}``.
    """
    return _koszul(data.ring, data.sequence, data.exponent)


@lru_cache(maxsize=256)
def _koszul(ring: GradedRing, sequence: Tuple[Polynomial, ...], exponent: int) -> GradedComplex:
    r = len(sequence)
    degrees = [ring.degree(f) for f in sequence]
    powers = [f ** exponent for f in sequence]
    subsets = {p: list(itertools.combinations(range(r), p)) for p in range(r + 1)}

    def subset_degree(subset) -> Degree:
        total = ring.sig.zero()
        for s in subset:
            total = total + degrees[s] * exponent
        return total

    terms = {p: free_module(ring, [subset_degree(S) for S in subsets[p]]) for p in range(r + 1)}
    differentials = {}
    for p in range(1, r + 1):
        position = {T: row for row, T in enumerate(subsets[p - 1])}
        rows = [[ring.zero() for _ in subsets[p]] for _ in subsets[p - 1]]
        for col, S in enumerate(subsets[p]):
            for k, s in enumerate(S):
                T = S[:k] + S[k + 1:]
                rows[position[T]][col] = rows[position[T]][col] + powers[s].scale((-1) ** k)
        differentials[p] = GradedMap.create(terms[p], terms[p - 1], rows)

    return GradedComplex(ring, tuple(sorted(terms.items())), tuple(sorted(differentials.items())))


# == tensor with perfect complexes ==

Block = Tuple[int, int, int]


def _layout(complex_: GradedComplex, perfect: GradedComplex) -> Dict[int, List[Block]]:
    """
    For every total index ``n`` the blocks ``(i, j, k)``: a copy of ``C_i`` tensored with the
    k-th generator of ``P_j``, ordered by ``i`` ascending and then by ``k``.
    """
    layout: Dict[int, List[Block]] = {}
    for i, _ in complex_.terms:
        for j, term in perfect.terms:
            for k in range(term.ngens):
                layout.setdefault(i + j, []).append((i, j, k))
    for n in layout:
        layout[n].sort()
    return layout


def block_offsets(complex_: GradedComplex, perfect: GradedComplex, n: int) -> Dict[Block, int]:
    """Generator offset of every block of the total term of index ``n``."""
    offsets = {}
    offset = 0
    for block in _layout(complex_, perfect).get(n, []):
        offsets[block] = offset
        offset += complex_.term(block[0]).ngens
    return offsets


def tensor_with_perfect(value: Union[GradedModule, GradedComplex], perfect: GradedComplex) -> GradedComplex:
    """
    The total complex of ``C ⊗ P`` for a complex ``P`` of graded free modules, with the
    differential ``d_C ⊗ 1 + (-1)^i 1 ⊗ d_P`` on ``C_i ⊗ P_j``.

    Raises:
        NotPerfect: if some term of ``perfect`` has relations.
        RingMismatch: if the complexes live over different rings.
    """
    complex_ = as_complex(value)
    if complex_.ring != perfect.ring:
        raise RingMismatch("a complex can only be tensored with a perfect complex over the same ring")
    for j, term in perfect.terms:
        if not term.is_free():
            raise NotPerfect(f"term {j} of the perfect complex has relations")

    ring = complex_.ring
    layout = _layout(complex_, perfect)
    terms: Dict[int, GradedModule] = {}
    for n, blocks in layout.items():
        terms[n] = direct_sum(*(
            shift(complex_.term(i), -perfect.term(j).generator_shifts[k]) for i, j, k in blocks
        ))

    differentials: Dict[int, GradedMap] = {}
    for n in layout:
        if n - 1 not in layout:
            continue
        source_offsets = block_offsets(complex_, perfect, n)
        target_offsets = block_offsets(complex_, perfect, n - 1)
        rows = [[ring.zero() for _ in range(terms[n].ngens)] for _ in range(terms[n - 1].ngens)]

        for (i, j, k), source_offset in source_offsets.items():
            # d_C ⊗ 1
            if (i - 1, j, k) in target_offsets:
                target_offset = target_offsets[(i - 1, j, k)]
                for r, row in enumerate(complex_.differential(i).matrix):
                    for c, entry in enumerate(row):
                        if not entry.is_zero():
                            rows[target_offset + r][source_offset + c] += entry
            # (-1)^i 1 ⊗ d_P
            d_perfect = perfect.differential(j)
            for k2 in range(perfect.term(j - 1).ngens):
                entry = d_perfect.matrix[k2][k]
                if entry.is_zero() or (i, j - 1, k2) not in target_offsets:
                    continue
                target_offset = target_offsets[(i, j - 1, k2)]
                for a in range(complex_.term(i).ngens):
                    rows[target_offset + a][source_offset + a] += entry.scale((-1) ** i)

        differentials[n] = GradedMap.create(terms[n], terms[n - 1], rows)

    logger.debug("tensor with perfect complex: total indices %s", sorted(terms))
    return GradedComplex(ring, tuple(sorted(terms.items())), tuple(sorted(differentials.items())))


def tensor_chain_map(value: Union[GradedModule, GradedComplex], chain_map: ChainMap) -> ChainMap:
    """``1 ⊗ ψ: C ⊗ P -> C ⊗ P'`` for a degree preserving chain map ``ψ`` of perfect complexes."""
    complex_ = as_complex(value)
    source = tensor_with_perfect(complex_, chain_map.source)
    target = tensor_with_perfect(complex_, chain_map.target)
    ring = complex_.ring

    components = {}
    for n, _ in source.terms:
        source_offsets = block_offsets(complex_, chain_map.source, n)
        target_offsets = block_offsets(complex_, chain_map.target, n)
        rows = [[ring.zero() for _ in range(source.term(n).ngens)] for _ in range(target.term(n).ngens)]
        for (i, j, k), source_offset in source_offsets.items():
            component = chain_map.component(j)
            for k2 in range(chain_map.target.term(j).ngens):
                entry = component.matrix[k2][k]
                if entry.is_zero() or (i, j, k2) not in target_offsets:
                    continue
                target_offset = target_offsets[(i, j, k2)]
                for a in range(complex_.term(i).ngens):
                    rows[target_offset + a][source_offset + a] += entry
        components[n] = GradedMap.create(source.term(n), target.term(n), rows)
    return ChainMap.create(source, target, components)


def derived_quotient(value: Union[GradedModule, GradedComplex], data: KoszulData) -> GradedComplex:
    """
    ``M /^L (f_1^n, ..., f_r^n)`` as the total complex of ``M ⊗ K(f^n)``.

    Raises:
        RingMismatch: if ``M`` and the sequence live over different rings.
    """
    complex_ = as_complex(value)
    if complex_.ring != data.ring:
        raise RingMismatch("the module and the Koszul sequence live over different rings")
    return tensor_with_perfect(complex_, koszul_complex(data))


def koszul_transition(ring: GradedRing, sequence: Sequence[Polynomial], exponent: int) -> ChainMap:
    """
    The chain map ``K(f^{n+1}) -> K(f^n)`` sending ``e_S`` to ``(Π_{i∈S} f_i) e_S``; exponent 0
    is allowed as a target and gives the contractible complex ``K(1, ..., 1)``.
    """
    sequence = tuple(sequence)
    source = _koszul(ring, sequence, exponent + 1)
    target = _koszul(ring, sequence, exponent)
    components = {}
    for p, module in source.terms:
        subsets = list(itertools.combinations(range(len(sequence)), p))
        rows = [[ring.zero() for _ in subsets] for _ in subsets]
        for index, S in enumerate(subsets):
            product = ring.one()
            for s in S:
                product = product * sequence[s]
            rows[index][index] = product
        components[p] = GradedMap.create(module, target.term(p), rows)
    return ChainMap.create(source, target, components)


# == the exact sequence of a derived quotient ==

@dataclass
class QuotientSesRow:
    degree: Degree
    quotient: FpAbGroup
    middle: FpAbGroup
    torsion: FpAbGroup
    injective: bool
    exact: bool
    surjective: bool

    @property
    def passed(self) -> bool:
        return self.injective and self.exact and self.surjective


@dataclass
class QuotientSesReport:
    index: int
    rows: List[QuotientSesRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)


def verify_quotient_ses(value: Union[GradedModule, GradedComplex],
                        f: Union[str, Polynomial],
                        i: int,
                        window: Window,
                        ) -> QuotientSesReport:
    """
    Checks the short exact sequence ``0 -> π_i(M)/f -> π_i(M/^L f) -> π_{i-1}(M)[f] -> 0`` in
    every degree of ``window``.

    With ``d = deg f`` the sequence comes from the five maps
    ``π_i(M)_{g-d} -f-> π_i(M)_g -> π_i(M/^L f)_g -> π_{i-1}(M)_{g-d} -f-> π_{i-1}(M)_g``, the
    middle ones induced by the inclusion of ``M`` and the projection onto ``M(-d)[1]``. A
    degree passes when this sequence is exact at its three inner places.
    """
    complex_ = as_complex(value)
    ring = complex_.ring
    f = ring.parse(f)
    d = ring.degree(f)
    data = KoszulData.create(ring, [f])
    koszul = koszul_complex(data)
    quotient = derived_quotient(complex_, data)

    # C_n sits in the block (n, 0, 0) of the total term n, C_{n-1}(-d) in the block (n-1, 1, 0)
    shifted = _reindex(shift_complex(complex_, -d), 1, 1)
    inclusion_components = {}
    projection_components = {}
    for n, total in quotient.terms:
        offsets = block_offsets(complex_, koszul, n)
        if (n, 0, 0) in offsets:
            size = complex_.term(n).ngens
            rows = [[ring.zero() for _ in range(size)] for _ in range(total.ngens)]
            for a in range(size):
                rows[offsets[(n, 0, 0)] + a][a] = ring.one()
            inclusion_components[n] = GradedMap.create(complex_.term(n), total, rows)
        if (n - 1, 1, 0) in offsets:
            size = complex_.term(n - 1).ngens
            rows = [[ring.zero() for _ in range(total.ngens)] for _ in range(size)]
            for a in range(size):
                rows[a][offsets[(n - 1, 1, 0)] + a] = ring.one()
            projection_components[n] = GradedMap.create(total, shifted.term(n), rows)
    inclusion = ChainMap.create(complex_, quotient, inclusion_components)
    projection = ChainMap.create(quotient, shifted, projection_components)
    multiplication = ChainMap.multiplication(complex_, f)

    def check(g: Degree) -> QuotientSesRow:
        times_f = induced_map(multiplication, i, g - d)
        include = induced_map(inclusion, i, g)
        project = induced_map(projection, i, g)
        times_f_below = induced_map(multiplication, i - 1, g - d)
        return QuotientSesRow(
            degree=g,
            quotient=times_f.cokernel(),
            middle=quotient.homology(i, g),
            torsion=kernel(times_f_below).group,
            injective=is_exact(times_f, include),
            exact=is_exact(include, project),
            surjective=is_exact(project, times_f_below),
        )

    degrees = quotient.degrees(i, window)
    report = QuotientSesReport(index=i, rows=map_degrees(check, degrees))
    logger.debug("quotient exact sequence for index %d: %d degrees, passed %s", i, len(degrees), report.passed)
    return report
