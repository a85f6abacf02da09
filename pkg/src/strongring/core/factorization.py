"""Multiplicative primes and an explicit non-unique factorization."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .generators import complete
from .ring import RingElement, expand_product
from .stanley_reisner import stanley_reisner


@dataclass(frozen=True)
class PrimalityCertificate:
    """Why a single term is (not) a multiplicative prime.

    ``linear_monomials`` counts the degree-one monomials of the term's
    polynomial: a simplicial complex has one per vertex, while a product of
    two or more complexes has none because every monomial takes a variable
    from each factor.
    """

    factor_count: int
    linear_monomials: int
    is_unit: bool

    @property
    def has_linear_part(self) -> bool:
        return self.linear_monomials > 0


def is_multiplicative_prime(e: RingElement) -> tuple[bool, PrimalityCertificate]:
    term = e.single_term()
    poly = stanley_reisner(e)
    unit = len(term.factors) == 1 and len(term.factors[0]) == 1
    cert = PrimalityCertificate(len(term.factors), len(poly.linear_part()), unit)
    return (cert.has_linear_part and not unit and cert.factor_count == 1), cert


class FactorizationDemo(NamedTuple):
    left: RingElement
    right: RingElement
    equal: bool


def demo_factors() -> tuple[tuple[RingElement, RingElement], tuple[RingElement, RingElement]]:
    """Factor pairs mirroring ``(1+x+x^2)(1+x^3) = (1+x^2+x^4)(1+x)`` with ``x = K2``."""
    one, x = RingElement.one(), RingElement.of(complete(2))
    return (one + x + x**2, one + x**3), (one + x**2 + x**4, one + x)


def nonunique_factorization_demo() -> FactorizationDemo:
    (a, b), (c, d) = demo_factors()
    left = RingElement.from_terms(expand_product(a, b))
    right = RingElement.from_terms(expand_product(c, d))
    return FactorizationDemo(left, right, left == right)
