"""Exact arithmetic on products of rational powers of positive rationals.

Codegree thresholds look like ``k^{ab} n^2 / (delta k n^{1+1/b} ...)`` where
the exponents are rational.  A value is stored as ``{base: exponent}`` and
every comparison is decided by raising both sides to the lcm of the exponent
denominators, which turns the question into one about big rationals.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]

#: Value used for "no threshold".  ``math.inf`` compares correctly with ints.
UNBOUNDED = math.inf


def is_unbounded(x) -> bool:
    return x == UNBOUNDED


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


def iroot_floor(x: int, q: int) -> int:
    """Largest integer r with r**q <= x, for x >= 0 (integer Newton from above)."""
    if x < 0:
        raise ValueError("negative radicand")
    if x < 2 or q == 1:
        return x
    r = 1 << -(-x.bit_length() // q)
    while True:
        s = ((q - 1) * r + x // r ** (q - 1)) // q
        if s >= r:
            return r
        r = s


def root_ceil(value: Fraction, q: int) -> int:
    """Smallest integer N >= 0 with N**q >= value (value >= 0)."""
    if value <= 0:
        return 0
    c = -((-value.numerator) // value.denominator)
    n = iroot_floor(c, q)
    while n ** q < value:
        n += 1
    while n > 0 and (n - 1) ** q >= value:
        n -= 1
    return n


def root_floor(value: Fraction, q: int) -> int:
    """Largest integer N >= 0 with N**q <= value (value >= 0)."""
    if value < 0:
        raise ValueError("negative value")
    n = iroot_floor(value.numerator // value.denominator, q)
    while (n + 1) ** q <= value:
        n += 1
    while n > 0 and n ** q > value:
        n -= 1
    return n


class Alg:
    """A positive real of the form ``prod base_i ** exp_i`` with rational data."""

    __slots__ = ("_f",)

    def __init__(self, factors: Mapping | Iterable = ()):
        items = factors.items() if isinstance(factors, Mapping) else factors
        acc: dict[Fraction, Fraction] = {}
        for base, exp in items:
            base, exp = _frac(base), _frac(exp)
            if base <= 0:
                raise ValueError("bases must be positive")
            if base == 1 or exp == 0:
                continue
            acc[base] = acc.get(base, Fraction(0)) + exp
        self._f = {b: e for b, e in acc.items() if e != 0}

    @classmethod
    def of(cls, x) -> "Alg":
        if isinstance(x, Alg):
            return x
        return cls({_frac(x): 1})

    @classmethod
    def power(cls, base, exp) -> "Alg":
        return cls({_frac(base): _frac(exp)})

    @property
    def factors(self) -> dict[Fraction, Fraction]:
        return dict(self._f)

    def __mul__(self, other) -> "Alg":
        other = Alg.of(other)
        return Alg(list(self._f.items()) + list(other._f.items()))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Alg":
        other = Alg.of(other)
        return Alg(list(self._f.items()) + [(b, -e) for b, e in other._f.items()])

    def __rtruediv__(self, other) -> "Alg":
        return Alg.of(other) / self

    def __pow__(self, exp) -> "Alg":
        exp = _frac(exp)
        return Alg({b: e * exp for b, e in self._f.items()})

    def _lift(self) -> tuple[Fraction, int]:
        """Return (R, q) with self**q == R rational."""
        q = 1
        for e in self._f.values():
            q = q * e.denominator // math.gcd(q, e.denominator)
        r = Fraction(1)
        for b, e in self._f.items():
            k = int(e * q)
            r *= b ** k
        return r, q

    def is_rational(self) -> bool:
        return all(e.denominator == 1 for e in self._f.values())

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is irrational")
        return self._lift()[0]

    def cmp(self, other) -> int:
        """Sign of self - other, exact."""
        r, q = (self / Alg.of(other))._lift()
        return (r > 1) - (r < 1)

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, (Alg, int, Fraction)):
            return NotImplemented
        return self.cmp(other) == 0

    def __hash__(self):
        r, q = self._lift()
        return hash((r, q))

    def ceil(self) -> int:
        r, q = self._lift()
        return root_ceil(r, q)

    def floor(self) -> int:
        r, q = self._lift()
        return root_floor(r, q)

    def log2(self) -> float:
        total = 0.0
        for b, e in self._f.items():
            total += float(e) * (math.log2(b.numerator) - math.log2(b.denominator))
        return total

    def __float__(self) -> float:
        try:
            return 2.0 ** self.log2()
        except OverflowError:
            return math.inf

    def __repr__(self) -> str:
        if not self._f:
            return "Alg(1)"
        parts = [f"{b}^{e}" if e != 1 else f"{b}" for b, e in sorted(self._f.items())]
        return "Alg(" + " * ".join(parts) + ")"


def ceil_alg(x) -> int:
    if isinstance(x, Alg):
        return x.ceil()
    return math.ceil(_frac(x))


def at_least(x, y) -> bool:
    """Exact ``x >= y`` for ints, Fractions, Algs and UNBOUNDED."""
    if is_unbounded(y):
        return is_unbounded(x)
    if is_unbounded(x):
        return True
    if isinstance(x, Alg) or isinstance(y, Alg):
        # Alg values are strictly positive
        if not isinstance(x, Alg) and _frac(x) <= 0:
            return False
        if not isinstance(y, Alg) and _frac(y) <= 0:
            return True
        return Alg.of(x).cmp(y) >= 0
    return _frac(x) >= _frac(y)


def ceil_log2(n: int) -> int:
    """``ceil(log2 n)`` for n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n - 1).bit_length()
