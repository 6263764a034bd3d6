"""Exact zeta polynomial det(Id - z T) and its vanishing order.

The characteristic polynomial is computed by the division-free Berkowitz
method over big integers, so root multiplicities at rational points are
exact.  No floating point enters this module.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .geodesics import closed_geodesics
from .spectral import transfer_operator

DEFAULT_ENUMERATION_CAP = 12


@dataclass(frozen=True)
class ZetaPolynomial:
    """det(Id - z T) with integer coefficients, constant term first.

    ``coefficients`` has trailing zeros stripped, so its length minus one is
    the true polynomial degree.  The degree falls short of the nominal one
    (the number of codimension-one cells) by exactly the multiplicity of the
    eigenvalue zero of T.
    """

    coefficients: tuple
    nominal_degree: int

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, z):
        z = Fraction(z)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc


def zeta_polynomial(operator):
    """Exact reversed characteristic polynomial of the transfer operator."""
    char = exact.charpoly([list(row) for row in operator.matrix])
    coeffs = list(char)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return ZetaPolynomial(tuple(coeffs), operator.size)


def zeta_of_complex(complex):
    return zeta_polynomial(transfer_operator(complex))


def vanishing_order(poly, z0):
    """Multiplicity of z0 as a root, by repeated exact synthetic division."""
    coeffs = list(poly.coefficients) if isinstance(poly, ZetaPolynomial) \
        else list(poly)
    if not any(coeffs):
        raise ValueError("zero polynomial has no vanishing order")
    z0 = Fraction(z0)
    order = 0
    while True:
        quotient, remainder = _synthetic_division(coeffs, z0)
        if remainder != 0:
            return order
        order += 1
        coeffs = quotient
        if not coeffs:
            return order


def _synthetic_division(coeffs, z0):
    """Divide by (z - z0): returns (quotient constant-first, remainder)."""
    acc = Fraction(0)
    quotient = []
    for c in reversed(coeffs):
        acc = acc * z0 + c
        quotient.append(acc)
    remainder = quotient.pop()
    quotient.reverse()
    return quotient, remainder


def zeta_from_geodesics(complex, max_order, cap=DEFAULT_ENUMERATION_CAP):
    """Truncated Euler product over primitive closed geodesics.

    Expands prod (1 - sign * z^length) over primitive classes of length up
    to max_order, truncated at z^max_order.  Uses only the enumeration, so
    comparing with zeta_polynomial cross-checks the product formula.
    """
    if max_order > cap:
        raise ValueError(f"max_order {max_order} exceeds enumeration cap "
                         f"{cap}")
    series = [0] * (max_order + 1)
    series[0] = 1
    for g in closed_geodesics(complex, max_order):
        if not g.is_primitive:
            continue
        # multiply by (1 - sign * z^length), truncating
        length = g.length
        for i in range(max_order, length - 1, -1):
            series[i] -= g.sign * series[i - length]
    return series
