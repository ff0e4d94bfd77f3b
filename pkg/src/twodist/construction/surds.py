"""Exact arithmetic in the quadratic field Q(sqrt(3))"""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["QuadraticSurd", "SQRT3"]


def __dir__():
    return __all__


@dataclass(frozen=True)
class QuadraticSurd:
    """
    Element :math:`a + b\\sqrt{3}` with rational :math:`a, b`.

    .. code-block:: python3

        >>> half = QuadraticSurd(Fraction(1, 2), Fraction(1, 2))
        >>> half * half
        QuadraticSurd(1 + 1/2*sqrt(3))
    """

    rational: Fraction = Fraction(0)
    irrational: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "rational", Fraction(self.rational))
        object.__setattr__(self, "irrational", Fraction(self.irrational))

    def __repr__(self):
        return f"QuadraticSurd({self})"

    def __str__(self):
        if self.irrational == 0:
            return str(self.rational)
        return f"{self.rational} + {self.irrational}*sqrt(3)"

    @staticmethod
    def _coerce(value: Union["QuadraticSurd", Rational, int]) -> "QuadraticSurd":
        if isinstance(value, QuadraticSurd):
            return value
        if isinstance(value, (int, Rational)):
            return QuadraticSurd(Fraction(value))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadraticSurd(self.rational + other.rational, self.irrational + other.irrational)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.rational, -self.irrational)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadraticSurd(
            self.rational * other.rational + 3 * self.irrational * other.irrational,
            self.rational * other.irrational + self.irrational * other.rational,
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.rational == other.rational and self.irrational == other.irrational

    def __hash__(self):
        return hash((self.rational, self.irrational))

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.rational, -self.irrational)

    def is_rational(self) -> bool:
        return self.irrational == 0

    def __float__(self):
        return float(self.rational) + float(self.irrational) * 3**0.5


SQRT3 = QuadraticSurd(0, 1)
