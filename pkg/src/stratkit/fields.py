"""Exact scalar fields: the rationals and prime fields F_p."""

from __future__ import annotations

from fractions import Fraction
import random


class ModP:
    """Element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.p = p
        self.v = v % p

    def _other(self, other):
        if isinstance(other, ModP):
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return "%d" % self.v

    __str__ = __repr__


class RationalField:
    name = "rational"
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, ModP):
            raise TypeError("cannot coerce F_p element into the rationals")
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def parse(self, text: str) -> Fraction:
        return Fraction(text.strip())

    def random_element(self, rng: random.Random, bound: int = 7) -> Fraction:
        return Fraction(rng.randint(-bound, bound))

    def elements(self):
        raise TypeError("the rational field is infinite")

    def to_int_rep(self, x):
        return x

    def render(self, x) -> str:
        return str(Fraction(x))

    def describe(self) -> str:
        return "FIELD rational"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


class PrimeField:
    name = "prime"

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError("%d is not prime" % p)
        self.p = p
        self.characteristic = p

    def __call__(self, x) -> ModP:
        if isinstance(x, ModP):
            if x.p != self.p:
                raise TypeError("mismatched prime fields")
            return x
        if isinstance(x, Fraction):
            return ModP(x.numerator, self.p) / x.denominator
        return ModP(int(x), self.p)

    @property
    def zero(self):
        return ModP(0, self.p)

    @property
    def one(self):
        return ModP(1, self.p)

    def parse(self, text: str) -> ModP:
        return self(Fraction(text.strip()))

    def random_element(self, rng: random.Random, bound: int = 7) -> ModP:
        return ModP(rng.randrange(self.p), self.p)

    def elements(self):
        return [ModP(i, self.p) for i in range(self.p)]

    def to_int_rep(self, x):
        return int(self(x))

    def render(self, x) -> str:
        return str(int(self(x)))

    def describe(self) -> str:
        return "FIELD prime %d" % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)
