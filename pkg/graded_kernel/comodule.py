"""
The group-ring coalgebra ``R[G]`` and the correspondence between gradings and coactions.

A grading of a ring or module is the same data as a coaction ``ρ: M -> M ⊗ Z[G]`` that
satisfies coassociativity and the counit law. Elements of ``Z[G]``-comodules are written as
finite formal sums ``Σ r_g t^g``. Everything here works on finitely presented carriers, and
every comparison is exact: either equality of polynomial representatives (for bare ring
presentations) or vanishing in the realized pieces of a graded carrier.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from graded_kernel.abelian import (
    AbMap,
    FpAbGroup,
    IntMatrix,
    Subquotient,
    assemble_map,
    direct_sum as direct_sum_groups,
    kernel,
)
from graded_kernel.errors import AxiomViolation, DimensionMismatch, MixedGeneratorImage, NotHomogeneous
from graded_kernel.graded_algebra import (
    GradedMap,
    GradedModule,
    GradedRing,
    ModuleElement,
    RingPresentation,
    add_elements,
    decompose,
    direct_sum,
    module_piece,
    quotient_by_ideal_power,
    realize,
    scale_element,
    shift,
)
from graded_kernel.grading import (
    Degree,
    GradingSignature,
    Rational,
    Window,
    degree_sort_key,
    degrees_in_window,
    monomials_of_degree,
)
from graded_kernel.helpers import map_degrees
from graded_kernel.polynomials import Polynomial, parse_polynomial

logger = logging.getLogger(__name__)

# Coefficients of group ring elements are ring elements, or module elements for M[G].
Coefficient = Union[Polynomial, ModuleElement]
Carrier = Union[RingPresentation, GradedRing, GradedModule]
# A formal sum over pairs (g, h) standing for Σ r_{g,h} t^g ⊗ t^h.
TensorExpansion = Dict[Tuple[Degree, Degree], Coefficient]


def _is_zero(coefficient: Coefficient) -> bool:
    if isinstance(coefficient, Polynomial):
        return coefficient.is_zero()
    return all(entry.is_zero() for entry in coefficient)


def _add(a: Coefficient, b: Coefficient) -> Coefficient:
    if isinstance(a, Polynomial):
        return a + b
    return add_elements(a, b)


def _scale_int(coefficient: Coefficient, factor: int) -> Coefficient:
    if isinstance(coefficient, Polynomial):
        return coefficient.scale(factor)
    return tuple(entry.scale(factor) for entry in coefficient)


def _times(factor: Polynomial, coefficient: Coefficient) -> Coefficient:
    if isinstance(coefficient, Polynomial):
        return factor * coefficient
    return scale_element(factor, coefficient)


def _format_coefficient(coefficient: Coefficient, names: Sequence[str]) -> str:
    if isinstance(coefficient, Polynomial):
        return coefficient.format(names)
    return "(" + ", ".join(entry.format(names) for entry in coefficient) + ")"


# == the group ring ==

@dataclass(frozen=True)
class GroupRingElement:
    """
    A finite formal sum ``Σ r_g t^g``. ``terms`` is sorted by degree and never holds a zero
    coefficient, so two elements are equal exactly when their formal sums agree.
    """

    terms: Tuple[Tuple[Degree, Coefficient], ...] = ()

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Degree, Coefficient]]) -> "GroupRingElement":
        collected: Dict[Degree, Coefficient] = {}
        for g, coefficient in terms:
            collected[g] = _add(collected[g], coefficient) if g in collected else coefficient
        kept = [(g, c) for g, c in collected.items() if not _is_zero(c)]
        return cls(tuple(sorted(kept, key=lambda term: term[0].coords)))

    @classmethod
    def single(cls, coefficient: Coefficient, g: Degree) -> "GroupRingElement":
        return cls.from_terms([(g, coefficient)])

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> List[Degree]:
        return [g for g, _ in self.terms]

    def coefficient(self, g: Degree) -> Optional[Coefficient]:
        return dict(self.terms).get(g)

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement.from_terms(self.terms + other.terms)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        """``t^g * t^h = t^{g+h}``; the left factor has ring coefficients."""
        return GroupRingElement.from_terms(
            (g + h, _times(a, b)) for g, a in self.terms for h, b in other.terms
        )

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{_format_coefficient(c, names)}*t^{g}" for g, c in self.terms)


def comultiply(x: GroupRingElement) -> TensorExpansion:
    """``Δ(Σ r_g t^g) = Σ r_g t^g ⊗ t^g``."""
    return {(g, g): coefficient for g, coefficient in x.terms}


def counit(x: GroupRingElement,
           values: Optional[Mapping[Degree, int]] = None,
           zero: Union[Coefficient, int] = 0,
           ) -> Union[Coefficient, int]:
    """
    ``e(Σ r_g t^g) = Σ r_g``. ``values`` replaces ``e(t^g) = 1`` for the listed degrees, which
    is how broken coalgebra structures are modelled. The empty sum is ``zero``.
    """
    values = values or {}
    result = zero
    for g, coefficient in x.terms:
        term = _scale_int(coefficient, values.get(g, 1))
        result = term if isinstance(result, int) else _add(result, term)
    return result


def antipode(x: GroupRingElement) -> GroupRingElement:
    """``ι(Σ r_g t^g) = Σ r_g t^{-g}``."""
    return GroupRingElement.from_terms((-g, coefficient) for g, coefficient in x.terms)


# == coactions ==

@dataclass(frozen=True)
class CoactionData:
    """
    A coaction given by the images of the generators of its carrier: the variables of a ring
    or the generators of a module. Ring coactions are ``multiplicative`` and extend to all
    polynomials as ring maps. Module coactions extend along the coaction of the base ring
    determined by its grading, ``ρ(r m) = ρ_R(r) ρ(m)``.
    """

    carrier: Carrier
    images: Tuple[GroupRingElement, ...]
    multiplicative: bool
    counit_values: Tuple[Tuple[Degree, int], ...] = ()

    @classmethod
    def create(cls,
               carrier: Carrier,
               images: Sequence[GroupRingElement],
               counit_values: Optional[Mapping[Degree, int]] = None,
               ) -> "CoactionData":
        multiplicative = not isinstance(carrier, GradedModule)
        count = carrier.ngens if isinstance(carrier, GradedModule) else len(carrier.variables)
        if len(images) != count:
            raise DimensionMismatch(f"{len(images)} images for {count} generators")
        for image in images:
            for _, coefficient in image.terms:
                if isinstance(coefficient, Polynomial) != multiplicative:
                    raise DimensionMismatch("image coefficients do not live in the carrier")
        values = tuple(sorted((counit_values or {}).items(), key=lambda item: item[0].coords))
        return cls(carrier, tuple(images), multiplicative, values)

    @property
    def names(self) -> Tuple[str, ...]:
        carrier = self.carrier
        return carrier.ring.variables if isinstance(carrier, GradedModule) else tuple(carrier.variables)

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def dimension(self) -> int:
        carrier = self.carrier
        if isinstance(carrier, (GradedRing, GradedModule)):
            return carrier.sig.dimension
        for image in self.images:
            for g, _ in image.terms:
                return g.dimension
        return 1

    def zero_coefficient(self) -> Coefficient:
        if isinstance(self.carrier, GradedModule):
            return self.carrier.zero_element()
        return Polynomial.zero(self.nvars)

    def generators(self) -> List[Coefficient]:
        if isinstance(self.carrier, GradedModule):
            return [self.carrier.generator(j) for j in range(self.carrier.ngens)]
        return [Polynomial.variable(self.nvars, i) for i in range(self.nvars)]

    def parse(self, value: Union[str, Coefficient]) -> Coefficient:
        if isinstance(value, str):
            return parse_polynomial(value, self.names)
        return value

    def format(self, value: Coefficient) -> str:
        return _format_coefficient(value, self.names)

    def counit(self, x: GroupRingElement) -> Coefficient:
        return counit(x, dict(self.counit_values), self.zero_coefficient())


def coact(coaction: CoactionData, element: Union[str, Coefficient]) -> GroupRingElement:
    """Extends the coaction from the generators to ``element``."""
    element = coaction.parse(element)
    zero_degree = Degree.zero(coaction.dimension)
    if coaction.multiplicative:
        powers: Dict[Tuple[int, int], GroupRingElement] = {}

        def power(i: int, e: int) -> GroupRingElement:
            if (i, e) not in powers:
                base = GroupRingElement.single(Polynomial.constant(coaction.nvars, 1), zero_degree)
                powers[(i, e)] = base if e == 0 else power(i, e - 1) * coaction.images[i]
            return powers[(i, e)]

        result = GroupRingElement()
        for exponents, c in element:
            term = GroupRingElement.single(Polynomial.constant(coaction.nvars, c), zero_degree)
            for i, e in enumerate(exponents):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    ring = coaction.carrier.ring
    result = GroupRingElement()
    for j, entry in enumerate(element):
        if entry.is_zero():
            continue
        scalars = GroupRingElement.from_terms((h, part) for h, part in decompose(ring, entry).items())
        result = result + scalars * coaction.images[j]
    return result


def _module_components(module: GradedModule, element: ModuleElement) -> Dict[Degree, ModuleElement]:
    components: Dict[Degree, ModuleElement] = {}
    for j, (entry, a) in enumerate(zip(element, module.generator_shifts)):
        for d, part in entry.homogeneous_components(module.sig).items():
            single = tuple(part if i == j else Polynomial.zero(module.ring.nvars) for i in range(module.ngens))
            g = d + a
            components[g] = add_elements(components[g], single) if g in components else single
    return components


def _vanishes(coaction: CoactionData, coefficient: Coefficient) -> bool:
    """Whether ``coefficient`` is zero in the carrier, i.e. modulo its relations."""
    carrier = coaction.carrier
    if isinstance(carrier, RingPresentation):
        return _is_zero(coefficient)
    if isinstance(carrier, GradedRing):
        carrier = carrier.as_module()
        coefficient = (coefficient,)
    for g, component in _module_components(carrier, coefficient).items():
        piece = realize(carrier, g)
        if not piece.group.is_zero_element(piece.coordinates(component)):
            return False
    return True


def _agree(coaction: CoactionData, left: Mapping, right: Mapping) -> bool:
    zero = coaction.zero_coefficient()
    for key in set(left) | set(right):
        difference = _add(left.get(key, zero), _scale_int(right.get(key, zero), -1))
        if not _vanishes(coaction, difference):
            return False
    return True


# == axiom verification ==

@dataclass(frozen=True)
class AxiomRow:
    element: str
    diagram: str
    passed: bool


@dataclass(frozen=True)
class AxiomReport:
    rows: Tuple[AxiomRow, ...]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def failures(self) -> List[AxiomRow]:
        return [row for row in self.rows if not row.passed]


def _window_samples(coaction: CoactionData, window: Window) -> List[Coefficient]:
    carrier = coaction.carrier
    if isinstance(carrier, GradedRing):
        carrier = carrier.as_module()
        return [carrier.basis_element(label)[0]
                for g in carrier.candidate_degrees(window) for label in realize(carrier, g).basis]
    if isinstance(carrier, GradedModule):
        return [carrier.basis_element(label)
                for g in carrier.candidate_degrees(window) for label in realize(carrier, g).basis]
    return []


def verify_coaction_axioms(coaction: CoactionData,
                           samples: Sequence[Union[str, Coefficient]] = (),
                           window: Optional[Window] = None,
                           ) -> AxiomReport:
    """
    Checks ``(id ⊗ Δ) ∘ ρ = (ρ ⊗ id) ∘ ρ`` and ``(id ⊗ e) ∘ ρ = id`` on the generators, on
    ``samples`` and, for graded carriers, on the monomial basis of every piece in ``window``.

    Failed diagrams are reported, never raised.
    """
    elements: List[Coefficient] = coaction.generators()
    elements += [coaction.parse(sample) for sample in samples]
    if window is not None:
        elements += _window_samples(coaction, window)

    rows: List[AxiomRow] = []
    seen = set()
    for element in elements:
        if element in seen:
            continue
        seen.add(element)
        rho = coact(coaction, element)

        left = comultiply(rho)
        right: TensorExpansion = {}
        for g, coefficient in rho.terms:
            for h, inner in coact(coaction, coefficient).terms:
                right[(h, g)] = _add(right[(h, g)], inner) if (h, g) in right else inner
        label = coaction.format(element)
        rows.append(AxiomRow(label, "coassociativity", _agree(coaction, left, right)))

        difference = _add(coaction.counit(rho), _scale_int(element, -1))
        rows.append(AxiomRow(label, "counit", _vanishes(coaction, difference)))

    report = AxiomReport(tuple(rows))
    logger.debug("checked coaction axioms on %d elements, %d failures", len(seen), len(report.failures))
    return report


# == gradings <-> coactions on rings ==

def coaction_from_grading(ring: GradedRing) -> CoactionData:
    """The coaction ``ρ(v) = v t^{deg v}``; on any element ``ρ(f) = Σ f_g t^g``."""
    images = [
        GroupRingElement.single(ring.variable(i), d) for i, d in enumerate(ring.sig.generator_degrees)
    ]
    return CoactionData.create(ring, images)


@dataclass(frozen=True)
class ConsistencyRow:
    element: str
    passed: bool


@dataclass(frozen=True)
class GradingRecovery:
    """The graded ring read off a coaction together with the sample checks ``f = Σ f_g``."""

    ring: GradedRing
    rows: Tuple[ConsistencyRow, ...]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)


def grading_from_coaction(coaction: CoactionData,
                          window: Window,
                          weight: Optional[Sequence[Rational]] = None,
                          samples: Sequence[Union[str, Polynomial]] = (),
                          ) -> GradingRecovery:
    """
    Reads a grading off a ring coaction: every variable has to be sent to ``v t^{g_v}``, and
    ``g_v`` becomes its degree. The recovered ring is checked on every monomial of the window
    and on ``samples``: the coefficients of ``ρ(f)`` sum to ``f`` and each of them is
    homogeneous of the degree of its ``t``-exponent.

    Args:
        coaction: A coaction on a ring presentation (or on a graded ring).
        window: The weight window for the sample monomials.
        weight: The weight functional of the new grading, all ones by default.
        samples: Additional elements to check.

    Raises:
        MixedGeneratorImage: if a variable is sent to a sum over several degrees.
        AxiomViolation: if the axioms fail on the variables or a relation is not homogeneous
            for the recovered degrees.
        NotPointed: if ``weight`` does not certify the recovered grading as pointed.
    """
    if not coaction.multiplicative:
        raise ValueError("gradings can only be read off ring coactions")
    carrier = coaction.carrier
    presentation = carrier.presentation if isinstance(carrier, GradedRing) else carrier

    for name, image in zip(presentation.variables, coaction.images):
        if len(image.terms) > 1:
            raise MixedGeneratorImage(
                f"ρ({name}) = {image.format(presentation.variables)} is supported in degrees "
                f"{', '.join(str(g) for g in image.support())}"
            )

    report = verify_coaction_axioms(coaction)
    if not report.passed:
        failure = report.failures[0]
        raise AxiomViolation(f"the {failure.diagram} diagram fails on {failure.element}", failure.diagram)

    degrees = [image.terms[0][0] for image in coaction.images]
    sig = GradingSignature.create(coaction.dimension, degrees, weight)
    try:
        ring = GradedRing.create(sig, presentation.variables, presentation.relations)
    except NotHomogeneous as exc:
        raise AxiomViolation(f"the coaction does not send relations to relations: {exc}", "relations") from exc

    elements = [
        Polynomial.monomial(m)
        for g in degrees_in_window(sig, window) for m in monomials_of_degree(sig, g)
    ]
    elements += [ring.parse(sample) for sample in samples]

    rows: List[ConsistencyRow] = []
    for element in elements:
        rho = coact(coaction, element)
        total = sum((c for _, c in rho.terms), ring.zero())
        homogeneous = all(
            c.is_homogeneous(sig) and c.degree(sig) == g for g, c in rho.terms
        )
        rows.append(ConsistencyRow(ring.format(element), total == element and homogeneous))

    return GradingRecovery(ring, tuple(rows))


@dataclass(frozen=True)
class RingRoundtripRow:
    degree: Degree
    expected: FpAbGroup
    recovered: FpAbGroup

    @property
    def passed(self) -> bool:
        return self.expected == self.recovered


@dataclass(frozen=True)
class RingRoundtripReport:
    degrees_match: bool
    axioms: AxiomReport
    consistency: bool
    rows: Tuple[RingRoundtripRow, ...]

    @property
    def passed(self) -> bool:
        return self.degrees_match and self.axioms.passed and self.consistency and all(r.passed for r in self.rows)


def ring_roundtrip_check(ring: GradedRing, window: Window) -> RingRoundtripReport:
    """Turns the grading of ``ring`` into a coaction and back and compares the pieces."""
    coaction = coaction_from_grading(ring)
    axioms = verify_coaction_axioms(coaction, window=window)
    recovery = grading_from_coaction(coaction, window, weight=ring.sig.weight)
    recovered = recovery.ring

    degrees = ring.as_module().candidate_degrees(window)
    rows = [
        RingRoundtripRow(g, expected, found)
        for g, expected, found in zip(
            degrees,
            map_degrees(ring.as_module().piece, degrees),
            map_degrees(recovered.as_module().piece, degrees),
        )
    ]
    return RingRoundtripReport(
        recovered.sig.generator_degrees == ring.sig.generator_degrees,
        axioms,
        recovery.passed,
        tuple(rows),
    )


# == comodules ==

@dataclass(frozen=True)
class ModuleGroupRing:
    """
    The windowed realization of ``M[G] = ⊕_g M t^g`` with ``r_h (m t^g) = (r_h m) t^{g+h}``.
    The twisted action preserves the offset ``c = g - deg m``, so ``M[G]`` splits as
    ``⊕_c M(-c)``; only the offsets ``c`` between two window degrees of ``M`` are kept.
    """

    base: GradedModule
    offsets: Tuple[Degree, ...]
    module: GradedModule

    def embed(self, element: ModuleElement, offset: Degree) -> ModuleElement:
        """The element ``m t^{deg m + offset}`` of the copy with the given offset."""
        copy = self.offsets.index(offset)
        zero = self.base.ring.zero()
        before = (zero,) * (copy * self.base.ngens)
        after = (zero,) * ((len(self.offsets) - copy - 1) * self.base.ngens)
        return before + tuple(element) + after

    def coaction_map(self) -> GradedMap:
        """``ρ_M: M -> M[G]``, ``m ↦ m t^{deg m}``, as a graded map into the zero-offset copy."""
        zero = self.base.sig.zero()
        images = [self.embed(self.base.generator(j), zero) for j in range(self.base.ngens)]
        return GradedMap.from_images(self.base, self.module, images)

    def piece(self, g: Degree) -> FpAbGroup:
        return module_piece(self.module, g)


def module_group_ring(module: GradedModule, window: Window) -> ModuleGroupRing:
    degrees = module.candidate_degrees(window)
    offsets = sorted({g - h for g in degrees for h in degrees}, key=degree_sort_key(module.sig))
    if not offsets:
        return ModuleGroupRing(module, (), GradedModule(module.ring, ()))
    copies = [shift(module, -c) for c in offsets]
    return ModuleGroupRing(module, tuple(offsets), direct_sum(*copies))


def comodule_coaction(module: GradedModule) -> CoactionData:
    """``ρ_M(e_j) = e_j t^{a_j}``, extended to ``ρ_M(m_g) = m_g t^g`` on homogeneous parts."""
    images = [
        GroupRingElement.single(module.generator(j), a) for j, a in enumerate(module.generator_shifts)
    ]
    return CoactionData.create(module, images)


@dataclass(frozen=True)
class GradedPart:
    """
    ``{m : ρ(m) = m t^g}`` inside the windowed total space ``⊕_h M_h``, with its inclusion
    and the projection ``p_g`` of the total space onto the degree-``g`` piece.
    """

    degree: Degree
    subgroup: Subquotient
    projection: AbMap

    @property
    def group(self) -> FpAbGroup:
        return self.subgroup.group

    def inclusion(self) -> AbMap:
        return self.subgroup.inclusion()

    def composite_is_isomorphism(self) -> bool:
        return self.projection.compose(self.inclusion()).is_isomorphism()


def _coact_module(coaction: CoactionData, element: ModuleElement) -> GroupRingElement:
    if coaction.multiplicative:
        return GroupRingElement.from_terms((g, (c,)) for g, c in coact(coaction, element[0]).terms)
    return coact(coaction, element)


def graded_part_from_coaction(module: Union[GradedModule, GradedRing],
                              coaction: CoactionData,
                              g: Degree,
                              window: Window,
                              ) -> GradedPart:
    """
    Solves ``ρ(m) = m t^g`` on the total space of the pieces of ``module`` in ``window``. The
    equation ``ρ(m) - m t^g = 0`` is a homomorphism into ``⊕_{(k, d)} M_d t^k`` and the graded
    part is its kernel.
    """
    if isinstance(module, GradedRing):
        module = module.as_module()
    degrees = module.candidate_degrees(window)
    pieces = [realize(module, h) for h in degrees]
    total = direct_sum_groups(*(piece.group for piece in pieces))

    images: List[Dict[Tuple[Degree, Degree], List[int]]] = []
    for h, piece in zip(degrees, pieces):
        for label in piece.basis:
            element = module.basis_element(label)
            image: Dict[Tuple[Degree, Degree], List[int]] = {}
            terms = list(_coact_module(coaction, element).terms) + [(g, _scale_int(element, -1))]
            for k, coefficient in terms:
                for d, component in _module_components(module, coefficient).items():
                    target = realize(module, d)
                    vector = image.setdefault((k, d), [0] * len(target.basis))
                    for i, value in enumerate(target.coordinates(component)):
                        vector[i] += value
            images.append(image)

    sig = module.sig
    keys = sorted(
        {key for image in images for key in image},
        key=lambda key: (sig.weight_of(key[0]), key[0].coords, sig.weight_of(key[1]), key[1].coords),
    )
    targets = [realize(module, d) for _, d in keys]
    columns = [
        tuple(value for key, target in zip(keys, targets)
              for value in image.get(key, [0] * len(target.basis)))
        for image in images
    ]
    rows = sum(len(target.basis) for target in targets)
    equation = AbMap(total, direct_sum_groups(*(t.group for t in targets)), IntMatrix.from_columns(columns, rows))

    piece_g = realize(module, g)
    if g in degrees:
        position = degrees.index(g)
        projection = assemble_map(
            [piece.group for piece in pieces], [piece_g.group],
            {(0, position): AbMap.identity(piece_g.group)},
        )
        projection = AbMap(total, piece_g.group, projection.matrix)
    else:
        projection = AbMap.zero(total, piece_g.group)

    return GradedPart(g, kernel(equation), projection)


@dataclass(frozen=True)
class RoundtripRow:
    degree: Degree
    expected: FpAbGroup
    recovered: FpAbGroup
    projection_isomorphism: bool

    @property
    def passed(self) -> bool:
        return self.expected == self.recovered and self.projection_isomorphism


@dataclass(frozen=True)
class RoundtripReport:
    axioms: AxiomReport
    rows: Tuple[RoundtripRow, ...]
    action_preserved: bool

    @property
    def passed(self) -> bool:
        return self.axioms.passed and self.action_preserved and all(row.passed for row in self.rows)


def _action_preserved(module: GradedModule, degrees: List[Degree], parts: List[GradedPart]) -> bool:
    """Multiplication by every variable maps the recovered part in degree g into the one in g + deg x."""
    if not degrees:
        return True
    groups = [module_piece(module, h) for h in degrees]
    position = {h: i for i, h in enumerate(degrees)}
    for i, d in enumerate(module.sig.generator_degrees):
        multiplication = GradedMap.multiplication(module, module.ring.variable(i), d)
        blocks = {
            (position[h + d], position[h]): multiplication.realize(h)
            for h in degrees if h + d in position
        }
        total = assemble_map(groups, groups, blocks)
        for g, part in zip(degrees, parts):
            if g + d not in position:
                continue
            target = parts[position[g + d]].subgroup.lattice
            if not all(target.contains(total.image_of(v)) for v in part.inclusion().matrix.columns()):
                return False
    return True


def roundtrip_equivalence_check(module: GradedModule, window: Window) -> RoundtripReport:
    """
    Builds the comodule ``(M, ρ_M)``, checks its axioms, recovers every graded part from the
    coaction alone and compares it with the piece of ``M``. The recovered parts have to be
    closed under multiplication by the variables, so that they reassemble into ``M``.
    """
    coaction = comodule_coaction(module)
    axioms = verify_coaction_axioms(coaction, window=window)
    degrees = module.candidate_degrees(window)
    parts = map_degrees(lambda g: graded_part_from_coaction(module, coaction, g, window), degrees)
    rows = tuple(
        RoundtripRow(g, module_piece(module, g), part.group, part.composite_is_isomorphism())
        for g, part in zip(degrees, parts)
    )
    return RoundtripReport(axioms, rows, _action_preserved(module, degrees, parts))


@dataclass(frozen=True)
class ComoduleStageReport:
    """The stage ``M / I^n M`` of the completed comodule ``M⟨G⟩`` on a window."""

    precision: int
    axioms: AxiomReport
    pieces: Dict[Degree, FpAbGroup]
    coaction_well_defined: bool
    recovered: Dict[Degree, bool]

    @property
    def passed(self) -> bool:
        return self.axioms.passed and self.coaction_well_defined and all(self.recovered.values())


def completed_comodule_stage(module: GradedModule,
                             generators: Sequence[Union[str, Polynomial]],
                             precision: int,
                             window: Window,
                             ) -> ComoduleStageReport:
    """
    Verifies the coaction of ``M / I^n M`` exactly. Comparisons happen in the stage, so the
    axioms are checked as congruences modulo ``I^n``.
    """
    stage = quotient_by_ideal_power(module, generators, precision)
    coaction = comodule_coaction(stage)
    axioms = verify_coaction_axioms(coaction, window=window)
    group_ring = module_group_ring(stage, window)
    degrees = stage.candidate_degrees(window)
    recovered = {
        g: graded_part_from_coaction(stage, coaction, g, window).group == module_piece(stage, g)
        for g in degrees
    }
    return ComoduleStageReport(
        precision,
        axioms,
        {g: group_ring.piece(g) for g in degrees},
        group_ring.coaction_map().is_well_defined(window),
        recovered,
    )
