"""Truncated p-adic arithmetic: the coefficient ring Z/p^a with valuation
tracking, unit inversion, Teichmueller units and the (1 - pF)^-1 resolvent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class NonUnitError(ValueError):
    """Raised when inverting an element of positive valuation."""


class PrecisionMismatch(ValueError):
    """Raised when combining scalars over different primes."""


class _InfiniteValuation:
    """Distinguished valuation of 0: larger than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE_VALUATION"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("INFINITE_VALUATION")

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self


INFINITE_VALUATION = _InfiniteValuation()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def val_p(x, p: int):
    """p-adic valuation of a rational number.

    Negative for denominators divisible by p; ``val_p(0, p)`` is the
    distinguished ``INFINITE_VALUATION`` object, never a number.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INFINITE_VALUATION
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def denominator_weight(x, p: int) -> int:
    """max(0, -val_p(x)): the p-power needed to clear the denominator of x."""
    v = val_p(x, p)
    if v is INFINITE_VALUATION:
        return 0
    return max(0, -v)


@dataclass(frozen=True)
class PadicScalar:
    """Element of Z/p^a with its canonical representative in [0, p^a).

    ``precision`` is fixed per computation context; mixed-precision
    arithmetic reduces to the minimum of the two precisions.
    """

    p: int
    precision: int
    value: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.precision < 1:
            raise ValueError("precision must be >= 1")
        object.__setattr__(self, "value", self.value % self.modulus)

    @property
    def modulus(self) -> int:
        return self.p ** self.precision

    @property
    def valuation(self) -> int:
        """Largest v <= precision with p^v | value; the zero class reports
        ``precision``, meaning "at least the working precision"."""
        if self.value == 0:
            return self.precision
        v = 0
        x = self.value
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def is_zero_class(self) -> bool:
        return self.value == 0

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def _coerce(self, other) -> tuple["PadicScalar", "PadicScalar"]:
        if isinstance(other, int):
            other = PadicScalar(self.p, self.precision, other)
        if not isinstance(other, PadicScalar):
            raise TypeError(f"cannot combine PadicScalar with {type(other)!r}")
        if other.p != self.p:
            raise PrecisionMismatch("different primes")
        a = min(self.precision, other.precision)
        return (PadicScalar(self.p, a, self.value), PadicScalar(self.p, a, other.value))

    def __add__(self, other):
        x, y = self._coerce(other)
        return PadicScalar(x.p, x.precision, x.value + y.value)

    __radd__ = __add__

    def __neg__(self):
        return PadicScalar(self.p, self.precision, -self.value)

    def __sub__(self, other):
        x, y = self._coerce(other)
        return PadicScalar(x.p, x.precision, x.value - y.value)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        x, y = self._coerce(other)
        return PadicScalar(x.p, x.precision, x.value * y.value)

    __rmul__ = __mul__

    def __repr__(self):
        return f"{self.value} + O({self.p}^{self.precision})"


def invert_unit(x: PadicScalar) -> PadicScalar:
    """Inverse of a unit in Z/p^a; x must have valuation 0."""
    if not x.is_unit():
        raise NonUnitError(f"{x!r} has positive valuation, not invertible")
    return PadicScalar(x.p, x.precision, pow(x.value, -1, x.modulus))


def geometric_resolvent(apply_F, x: PadicScalar, p: int | None = None, a: int | None = None) -> PadicScalar:
    """Truncation of (1 - pF)^-1 applied to x: sum of p^i F^i(x), i < a.

    ``apply_F`` may be any precision-preserving additive endomorphism; the
    identity (1 - pF) o resolvent = id holds modulo p^a because the tail
    p^a F^a(x) vanishes there.
    """
    if p is not None and p != x.p:
        raise PrecisionMismatch("prime does not match scalar")
    if a is not None and a != x.precision:
        raise PrecisionMismatch("precision does not match scalar")
    acc = 0
    cur = x
    q = x.modulus
    for i in range(x.precision):
        acc = (acc + pow(x.p, i, q) * cur.value) % q
        cur = apply_F(cur)
        if not isinstance(cur, PadicScalar):
            raise TypeError("apply_F must return PadicScalar")
    return PadicScalar(x.p, x.precision, acc)


def teichmuller_unit(c: int, p: int, a: int) -> int:
    """Teichmueller representative in [0, p^a) of a unit c mod p.

    Iterated p-th powering converges to the fixed point x^p = x: each
    power improves the congruence by one p-power, so a - 1 iterations
    starting from agreement mod p give the lift mod p^a.
    """
    if c % p == 0:
        raise NonUnitError("Teichmueller lift needs a unit mod p")
    q = p ** a
    x = c % q
    for _ in range(a - 1):
        x = pow(x, p, q)
    return x
