"""
Grading groups, degrees and monomial enumeration.

The grading group G is represented as the subgroup of Q^k generated by the degrees of the ring
variables. A rational weight functional that is positive on every variable degree certifies
that the grading is pointed, which makes every graded piece of a finitely generated object
finite dimensional and every enumeration below terminate.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

from graded_kernel.errors import DimensionMismatch, NotPointed

Rational = Union[int, str, Fraction]
Exponents = Tuple[int, ...]


def to_fraction(value: Rational) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(str(value).strip())


@dataclass(frozen=True, order=False)
class Degree:
    """An element of Q^k with exact rational coordinates."""

    coords: Tuple[Fraction, ...]

    @classmethod
    def of(cls, *coords: Rational) -> "Degree":
        return cls(tuple(to_fraction(c) for c in coords))

    @classmethod
    def parse(cls, value: Union[Rational, Sequence[Rational]]) -> "Degree":
        if isinstance(value, (list, tuple)):
            return cls.of(*value)
        return cls.of(value)

    @classmethod
    def zero(cls, dimension: int) -> "Degree":
        return cls((Fraction(0),) * dimension)

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Degree") -> "Degree":
        self._check(other)
        return Degree(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Degree") -> "Degree":
        self._check(other)
        return Degree(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Degree":
        return Degree(tuple(-a for a in self.coords))

    def __mul__(self, factor: int) -> "Degree":
        return Degree(tuple(a * factor for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: "Degree") -> None:
        if self.dimension != other.dimension:
            raise DimensionMismatch(f"degrees {self} and {other} live in different groups")

    def __str__(self) -> str:
        text = [str(c) for c in self.coords]
        return text[0] if len(text) == 1 else "(" + ", ".join(text) + ")"

    def __repr__(self) -> str:
        return f"Degree({self})"


@dataclass(frozen=True)
class GradingSignature:
    """
    The degrees of the ring variables together with a weight functional ``w``.
    ``generator_degrees[i]`` is the degree of the i-th variable.
    """

    dimension: int
    generator_degrees: Tuple[Degree, ...]
    weight: Tuple[Fraction, ...]

    @classmethod
    def create(cls, dimension: int, generator_degrees: Iterable[Union[Degree, Sequence[Rational], Rational]],
               weight: Sequence[Rational] = None) -> "GradingSignature":
        degrees = tuple(d if isinstance(d, Degree) else Degree.parse(d) for d in generator_degrees)
        weight = (1,) * dimension if weight is None else weight
        return cls(dimension, degrees, tuple(to_fraction(w) for w in weight))

    def weight_of(self, degree: Degree) -> Fraction:
        return sum((w * c for w, c in zip(self.weight, degree.coords)), Fraction(0))

    def zero(self) -> Degree:
        return Degree.zero(self.dimension)

    def degree_of(self, exponents: Exponents) -> Degree:
        total = self.zero()
        for e, d in zip(exponents, self.generator_degrees):
            if e:
                total = total + d * e
        return total

    def compatible_with(self, other: "GradingSignature") -> bool:
        """Both signatures grade by the same Q^k and share the pointedness certificate."""
        return self.dimension == other.dimension and self.weight == other.weight


def validate_signature(sig: GradingSignature) -> None:
    """
    Confirms that the signature describes a pointed grading.

    Raises:
        DimensionMismatch: if ``k < 1`` or some degree or the weight has the wrong length.
        NotPointed: if some generator degree has non-positive weight.
    """
    if sig.dimension < 1:
        raise DimensionMismatch("the grading group needs dimension k >= 1")
    if len(sig.weight) != sig.dimension:
        raise DimensionMismatch(f"weight functional has {len(sig.weight)} entries, expected {sig.dimension}")
    for index, degree in enumerate(sig.generator_degrees):
        if degree.dimension != sig.dimension:
            raise DimensionMismatch(f"degree {degree} of generator {index} is not in Q^{sig.dimension}")
        if sig.weight_of(degree) <= 0:
            raise NotPointed(
                f"generator {index} has degree {degree} of weight {sig.weight_of(degree)} <= 0; "
                f"the weight functional does not certify a pointed grading"
            )


def _exponent_vectors(sig: GradingSignature, bound: Fraction) -> List[Exponents]:
    """All exponent vectors whose weight is at most ``bound``."""
    weights = [sig.weight_of(d) for d in sig.generator_degrees]
    results: List[Exponents] = []

    def extend(index: int, remaining: Fraction, exponents: List[int]) -> None:
        if index == len(weights):
            results.append(tuple(exponents))
            return
        for e in range(math.floor(remaining / weights[index]) + 1):
            extend(index + 1, remaining - e * weights[index], exponents + [e])

    if bound >= 0:
        extend(0, bound, [])
    return results


def graded_lex_key(exponents: Exponents) -> Tuple:
    return sum(exponents), tuple(-e for e in exponents)


@lru_cache(maxsize=8192)
def monomials_of_degree(sig: GradingSignature, g: Degree) -> Tuple[Exponents, ...]:
    """
    Every exponent vector ``a`` with ``sum(a_i * deg(x_i)) = g`` in graded-lex order, e.g.
    ``x^2, xy, y^2`` for two variables of degree 1 and ``g = 2``.
    """
    if g.dimension != sig.dimension:
        raise DimensionMismatch(f"degree {g} is not in Q^{sig.dimension}")
    target = sig.weight_of(g)
    if target < 0:
        return ()
    n = len(sig.generator_degrees)
    weights = [sig.weight_of(d) for d in sig.generator_degrees]
    results: List[Exponents] = []

    def extend(index: int, remaining: Degree, exponents: List[int]) -> None:
        if index == n:
            if remaining.is_zero():
                results.append(tuple(exponents))
            return
        budget = sig.weight_of(remaining)
        if budget < 0:
            return
        degree = sig.generator_degrees[index]
        for e in range(math.floor(budget / weights[index]) + 1):
            extend(index + 1, remaining - degree * e, exponents + [e])

    extend(0, g, [])
    return tuple(sorted(results, key=graded_lex_key))


@dataclass(frozen=True)
class Window:
    """The closed weight range ``lo..hi``; degrees are enumerated by their weight."""

    lo: Fraction
    hi: Fraction

    @classmethod
    def parse(cls, text: Union[str, "Window"]) -> "Window":
        if isinstance(text, Window):
            return text
        parts = str(text).split("..")
        if len(parts) != 2:
            raise ValueError(f"window '{text}' is not of the form LO..HI")
        lo, hi = (to_fraction(p) for p in parts)
        if lo > hi:
            raise ValueError(f"window '{text}' is empty")
        return cls(lo, hi)

    @classmethod
    def up_to(cls, hi: Rational) -> "Window":
        return cls(Fraction(0), to_fraction(hi))

    def contains(self, weight: Fraction) -> bool:
        return self.lo <= weight <= self.hi

    def __str__(self) -> str:
        return f"{self.lo}..{self.hi}"


def degree_sort_key(sig: GradingSignature):
    return lambda degree: (sig.weight_of(degree), degree.coords)


def degrees_in_window(sig: GradingSignature, window: Window,
                      shifts: Sequence[Degree] = None) -> List[Degree]:
    """
    The degrees ``a + (monoid element)`` with weight in the window, for the given shifts
    ``a`` (the zero degree by default). This is the finite part of the support that a
    module generated in the given degrees can have inside the window.
    """
    shifts = [sig.zero()] if shifts is None else list(shifts)
    found = set()
    for shift in shifts:
        base = sig.weight_of(shift)
        for exponents in _exponent_vectors(sig, window.hi - base):
            degree = shift + sig.degree_of(exponents)
            if window.contains(sig.weight_of(degree)):
                found.add(degree)
    return sorted(found, key=degree_sort_key(sig))
