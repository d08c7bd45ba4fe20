"""
Sparse polynomials with integer coefficients.

Ring elements are kept as exponent-vector -> coefficient maps because every degreewise
computation needs direct access to the monomials and their exponent vectors. Products and
powers are computed in sympy's sparse ring, parsing and printing go through sympy as well.
"""
import tokenize
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, Mapping, Sequence, Tuple

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import ZZ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

from graded_kernel.errors import DimensionMismatch, NotHomogeneous, ParseError
from graded_kernel.grading import Degree, Exponents, GradingSignature

TRANSFORMATIONS = standard_transformations + (implicit_multiplication, convert_xor)


@lru_cache(maxsize=None)
def sparse_ring(nvars: int) -> PolyRing:
    """sympy's sparse integer polynomial ring in ``nvars`` >= 1 variables."""
    return PolyRing([f"x{i}" for i in range(nvars)], ZZ, lex)


@dataclass(frozen=True)
class Polynomial:
    """A polynomial in ``nvars`` variables; ``terms`` is sorted and has no zero coefficients."""

    nvars: int
    terms: Tuple[Tuple[Exponents, int], ...]

    # ~ constructors

    @classmethod
    def from_dict(cls, nvars: int, coefficients: Mapping[Exponents, int]) -> "Polynomial":
        for exponents in coefficients:
            if len(exponents) != nvars:
                raise DimensionMismatch(f"exponent vector {exponents} for {nvars} variables")
        terms = tuple(sorted((tuple(e), int(c)) for e, c in coefficients.items() if c))
        return cls(nvars, terms)

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, ())

    @classmethod
    def constant(cls, nvars: int, value: int) -> "Polynomial":
        return cls.from_dict(nvars, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, exponents: Exponents, coefficient: int = 1) -> "Polynomial":
        return cls.from_dict(len(exponents), {tuple(exponents): coefficient})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        return cls.monomial(tuple(1 if i == index else 0 for i in range(nvars)))

    # ~ access

    def as_dict(self) -> Dict[Exponents, int]:
        return dict(self.terms)

    def __iter__(self) -> Iterator[Tuple[Exponents, int]]:
        return iter(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponents: Exponents) -> int:
        return self.as_dict().get(tuple(exponents), 0)

    # ~ arithmetic

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        total = self.as_dict()
        for e, c in other.terms:
            total[e] = total.get(e, 0) + c
        return Polynomial.from_dict(self.nvars, total)

    def __neg__(self) -> "Polynomial":
        return self.scale(-1)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, factor: int) -> "Polynomial":
        return Polynomial.from_dict(self.nvars, {e: factor * c for e, c in self.terms})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        if self.nvars == 0:
            return Polynomial.constant(0, self.coefficient(()) * other.coefficient(()))
        return Polynomial._from_sparse(self.nvars, self._to_sparse() * other._to_sparse())

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError(f"negative exponent {exponent}")
        if self.nvars == 0:
            return Polynomial.constant(0, self.coefficient(()) ** exponent)
        return Polynomial._from_sparse(self.nvars, self._to_sparse() ** exponent)

    def _to_sparse(self) -> PolyElement:
        return sparse_ring(self.nvars).from_dict(self.as_dict())

    @classmethod
    def _from_sparse(cls, nvars: int, element: PolyElement) -> "Polynomial":
        return cls.from_dict(nvars, {tuple(int(a) for a in e): int(c) for e, c in element.items()})

    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatch("polynomials over different numbers of variables")

    # ~ grading

    def homogeneous_components(self, sig: GradingSignature) -> Dict[Degree, "Polynomial"]:
        parts: Dict[Degree, Dict[Exponents, int]] = {}
        for e, c in self.terms:
            parts.setdefault(sig.degree_of(e), {})[e] = c
        return {g: Polynomial.from_dict(self.nvars, part) for g, part in parts.items()}

    def is_homogeneous(self, sig: GradingSignature) -> bool:
        return len(self.homogeneous_components(sig)) <= 1

    def degree(self, sig: GradingSignature) -> Degree:
        """The degree of a nonzero homogeneous polynomial."""
        components = self.homogeneous_components(sig)
        if len(components) != 1:
            raise NotHomogeneous(f"{self} is not a nonzero homogeneous element")
        return next(iter(components))

    # ~ printing

    def format(self, names: Sequence[str]) -> str:
        if self.nvars == 0:
            return str(self.coefficient(()))
        symbols = sympy.symbols(list(names))
        expr = sum(
            (c * sympy.Mul(*(s ** a for s, a in zip(symbols, e))) for e, c in self.terms),
            sympy.Integer(0),
        )
        return sympy.sstr(expr)

    def __str__(self) -> str:
        return self.format([f"x{i}" for i in range(self.nvars)])


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    """
    Parses conventional infix notation with integer coefficients, e.g. ``"x^2 - x*y"`` or
    ``"3 x + 2"``, over the variables ``names``.

    Raises:
        ParseError: for syntax errors, unknown variables and non-integer coefficients.
    """
    symbols = [sympy.Symbol(name) for name in names]
    local = {name: symbol for name, symbol in zip(names, symbols)}
    try:
        expr = parse_expr(str(text), local_dict=local, transformations=TRANSFORMATIONS)
    except (SyntaxError, TypeError, ValueError, tokenize.TokenError, sympy.SympifyError) as exc:
        raise ParseError(f"cannot parse polynomial '{text}': {exc}") from exc

    unknown = sorted(str(s) for s in sympy.sympify(expr).free_symbols - set(symbols))
    if unknown:
        raise ParseError(f"polynomial '{text}' uses unknown variables {unknown}")

    expr = sympy.expand(expr)
    if not symbols:
        if not expr.is_Integer:
            raise ParseError(f"'{text}' is not an integer")
        return Polynomial.constant(0, int(expr))

    try:
        poly = sympy.Poly(expr, *symbols)
    except sympy.PolynomialError as exc:
        raise ParseError(f"'{text}' is not a polynomial: {exc}") from exc
    coefficients = {}
    for exponents, coefficient in poly.terms():
        if not coefficient.is_Integer:
            raise ParseError(f"polynomial '{text}' has the non-integer coefficient {coefficient}")
        coefficients[tuple(int(a) for a in exponents)] = int(coefficient)
    return Polynomial.from_dict(len(symbols), coefficients)
