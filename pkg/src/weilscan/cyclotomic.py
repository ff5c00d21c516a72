"""Exact arithmetic in Z[zeta_p] and the extended p-adic valuation.

A CycInt stores integer coordinates over the power basis
1, zeta, ..., zeta^(p-2), with the relation 1 + zeta + ... + zeta^(p-1) = 0
applied eagerly, so representations are unique and equality is a plain
coefficient compare.  Coefficients are Python ints, so there is no overflow
anywhere (high power moments need well past 64 bits).

For p = 2 the ring degenerates to Z: a CycInt is a single integer and
zeta = -1.

Valuations are normalized so that v_p(p) = 1.  The prime p is totally
ramified in Q(zeta_p): p is a unit times (1 - zeta)^(p-1), hence
v_p(1 - zeta) = 1/(p-1) and every finite valuation here is k/(p-1) with k a
nonnegative integer.  v_p(0) is positive infinity.  Values are returned as
`fractions.Fraction`, with `math.inf` for the valuation of zero, which makes
additivity and comparisons work with no special casing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

INFINITE_VALUATION = math.inf


class CycInt:
    """An element of Z[zeta_p] in reduced power-basis form."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if p < 2:
            raise ValueError(f"p must be a prime >= 2, got {p}")
        if len(coeffs) != p - 1:
            raise ValueError(
                f"expected {p - 1} coefficients for p={p}, got {len(coeffs)}")
        self.p = p
        self.coeffs = coeffs

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_int(cls, p: int, value: int) -> "CycInt":
        return cls(p, (int(value),) + (0,) * (p - 2))

    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls.from_int(p, 0)

    @classmethod
    def one(cls, p: int) -> "CycInt":
        return cls.from_int(p, 1)

    @classmethod
    def zeta_power(cls, p: int, t: int) -> "CycInt":
        """zeta^t, canonically reduced."""
        t %= p
        if t < p - 1:
            return cls(p, tuple(1 if j == t else 0 for j in range(p - 1)))
        return cls(p, (-1,) * (p - 1))

    @classmethod
    def parse(cls, p: int, text: str) -> "CycInt":
        return cls(p, tuple(int(tok) for tok in text.split(",")))

    # -- ring operations -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise ValueError(f"mismatched p: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.p, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycInt":
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt(self.p, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        if p == 2:
            return CycInt(2, (self.coeffs[0] * o.coeffs[0],))
        # multiply modulo zeta^p = 1, then renormalize away the zeta^(p-1) slot
        wide = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        wide[(i + j) % p] += a * b
        top = wide[p - 1]
        return CycInt(p, tuple(wide[j] - top for j in range(p - 1)))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CycInt":
        if k < 0:
            raise ValueError("negative powers are not defined in Z[zeta]")
        result = CycInt.one(self.p)
        base = self
        while k > 0:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "CycInt":
        """Complex conjugation zeta -> zeta^(-1); a ring involution."""
        p = self.p
        if p == 2:
            return self
        wide = [0] * p
        for j, c in enumerate(self.coeffs):
            wide[(p - j) % p] += c
        top = wide[p - 1]
        return CycInt(p, tuple(wide[j] - top for j in range(p - 1)))

    # -- predicates and conversions -------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational_integer(self):
        """The integer value if this element lies in Z, else None."""
        if any(c != 0 for c in self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def evaluate(self) -> complex:
        """Float image under zeta -> e^(2*pi*i/p); diagnostics only."""
        p = self.p
        return sum(c * cmath.exp(2j * cmath.pi * j / p)
                   for j, c in enumerate(self.coeffs))

    def serialize(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (CycInt, int)) else None
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"CycInt(p={self.p}, {self.serialize()})"


def from_trace_histogram(p: int, counts) -> CycInt:
    """Reduce a histogram over trace residues to a CycInt.

    counts[j] is the number of summands contributing zeta^j; the common part
    counts[p-1] is folded away through 1 + zeta + ... + zeta^(p-1) = 0.
    """
    counts = list(counts)
    if len(counts) != p:
        raise ValueError(f"expected {p} buckets, got {len(counts)}")
    return CycInt(p, tuple(counts[j] - counts[p - 1] for j in range(p - 1)))


def one_minus_zeta(p: int) -> CycInt:
    return CycInt.one(p) - CycInt.zeta_power(p, 1)


def divide_by_one_minus_zeta(x: CycInt):
    """Exact quotient x / (1 - zeta), or None when not divisible.

    Divisibility criterion: x is in the ideal (1 - zeta) iff the evaluation
    of x at zeta = 1 (the plain coefficient sum) vanishes mod p.  The
    quotient is recovered by back-substitution and then re-multiplied as a
    self-check.
    """
    p = self_p = x.p
    total = sum(x.coeffs)
    if total % p != 0:
        return None
    t = total // p
    ys = []
    acc = 0
    for j in range(p - 1):
        acc += x.coeffs[j]
        ys.append(acc - (j + 1) * t)
    y = CycInt(self_p, ys)
    if one_minus_zeta(p) * y != x:
        raise ArithmeticError("verified division by (1 - zeta) failed")
    return y


def padic_valuation(x, p: int | None = None):
    """Extended p-adic valuation, normalized with v_p(p) = 1.

    Accepts a CycInt (p is implied) or a plain integer with p given.
    Returns a Fraction, or math.inf for zero.  On Z[zeta_p] this is
    k/(p-1) where k is the number of times (1 - zeta) divides the element.
    """
    if isinstance(x, CycInt):
        if x.is_zero():
            return INFINITE_VALUATION
        k = 0
        cur = x
        while True:
            nxt = divide_by_one_minus_zeta(cur)
            if nxt is None:
                return Fraction(k, x.p - 1)
            cur = nxt
            k += 1
    if p is None:
        raise ValueError("valuation of a plain integer needs p")
    x = int(x)
    if x == 0:
        return INFINITE_VALUATION
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return Fraction(v)


@dataclass(frozen=True)
class PDecomp:
    """|x| split as odd_part * p_part with gcd(odd_part, p) = 1."""

    odd_part: int
    p_part: int


def p_decompose(x: int, p: int) -> PDecomp:
    if x == 0:
        raise ValueError("0 has no p-part decomposition")
    a = abs(int(x))
    p_part = 1
    while a % p == 0:
        a //= p
        p_part *= p
    return PDecomp(odd_part=a, p_part=p_part)


def format_valuation(v) -> str:
    """Serialize a valuation as 'k', 'k/den' or 'inf'."""
    if v == INFINITE_VALUATION:
        return "inf"
    return str(v)
