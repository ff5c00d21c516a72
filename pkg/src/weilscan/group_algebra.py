"""The group algebra over F* with exact cyclotomic-integer coefficients.

An element is a formal sum over the multiplicative group of a field,
indexed by discrete log: coeffs[i] is the coefficient of [g^i].  The
product is cyclic convolution of length q-1 in log indices.

Two convolution routes are provided and must agree exactly:

* schoolbook: direct CycInt arithmetic, O(m^2) but unconditional;
* fft: each element splits into p-1 integer vectors (one per power-basis
  coordinate); the (p-1)^2 integer cyclic convolutions are done as
  zero-padded real FFTs folded back cyclically, then rounded.  Entries are
  rounded to nearest integer only when an a priori bound guarantees they
  sit far inside double-precision exactness; otherwise the schoolbook
  route is used automatically.
"""

from __future__ import annotations

import numpy as np

from .cyclotomic import CycInt
from .ff import FieldTables, inverse_exponent

# products are rounded only when m * max|S| * max|T| * (p-1) stays below this
_FFT_EXACTNESS_BOUND = 1 << 50
_FFT_MIN_LENGTH = 48


class GAElem:
    """Element of the group algebra of F*, coefficients in Z[zeta_p]."""

    __slots__ = ("tables", "coeffs")

    def __init__(self, tables: FieldTables, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != tables.m:
            raise ValueError(
                f"need {tables.m} coefficients, got {len(coeffs)}")
        for c in coeffs:
            if not isinstance(c, CycInt) or c.p != tables.p:
                raise ValueError("coefficients must be CycInt over the field's p")
        self.tables = tables
        self.coeffs = coeffs

    @classmethod
    def from_ints(cls, tables: FieldTables, values) -> "GAElem":
        p = tables.p
        return cls(tables, tuple(CycInt.from_int(p, v) for v in values))

    @classmethod
    def zero(cls, tables: FieldTables) -> "GAElem":
        return cls.from_ints(tables, [0] * tables.m)

    def _require_same_field(self, other: "GAElem"):
        if self.tables.spec != other.tables.spec:
            raise ValueError("group algebra elements live over different fields")

    # -- linear structure ------------------------------------------------------

    def __add__(self, other: "GAElem") -> "GAElem":
        self._require_same_field(other)
        return GAElem(self.tables,
                      tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "GAElem") -> "GAElem":
        self._require_same_field(other)
        return GAElem(self.tables,
                      tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scaled(self, c) -> "GAElem":
        if isinstance(c, int):
            c = CycInt.from_int(self.tables.p, c)
        return GAElem(self.tables, tuple(c * a for a in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, GAElem):
            return NotImplemented
        return self.tables.spec == other.tables.spec and self.coeffs == other.coeffs

    def __repr__(self):
        return f"GAElem(q={self.tables.q}, {len(self.coeffs)} coeffs)"

    # -- algebra operations ------------------------------------------------------

    def weight(self) -> CycInt:
        """Sum of all coefficients (the principal-character image)."""
        total = CycInt.zero(self.tables.p)
        for c in self.coeffs:
            total = total + c
        return total

    def reindex(self, t: int) -> "GAElem":
        """Push every [u] to [u^t]; collisions accumulate when t is not a unit."""
        m = self.tables.m
        acc = [CycInt.zero(self.tables.p) for _ in range(m)]
        for i, c in enumerate(self.coeffs):
            acc[(i * t) % m] = acc[(i * t) % m] + c
        return GAElem(self.tables, acc)

    def conj(self) -> "GAElem":
        """Coefficient-wise conjugation combined with [u] -> [u^(-1)]."""
        m = self.tables.m
        acc = [None] * m
        for i, c in enumerate(self.coeffs):
            acc[(-i) % m] = c.conj()
        return GAElem(self.tables, acc)

    def convolve(self, other: "GAElem", method: str = "auto") -> "GAElem":
        self._require_same_field(other)
        if method not in ("auto", "schoolbook", "fft"):
            raise ValueError(f"unknown convolution method {method!r}")
        if method == "schoolbook":
            return self._convolve_schoolbook(other)
        mat = _convolve_component_matrices(
            _component_matrix(self), _component_matrix(other), self.tables.p)
        if mat is None:
            if method == "fft":
                raise ValueError("inputs too large for exact fft convolution")
            return self._convolve_schoolbook(other)
        if method == "auto" and self.tables.m < _FFT_MIN_LENGTH:
            return self._convolve_schoolbook(other)
        return element_from_component_matrix(self.tables, mat)

    def _convolve_schoolbook(self, other: "GAElem") -> "GAElem":
        m = self.tables.m
        p = self.tables.p
        acc = [CycInt.zero(p) for _ in range(m)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                k = i + j
                if k >= m:
                    k -= m
                acc[k] = acc[k] + a * b
        return GAElem(self.tables, acc)


# ---------------------------------------------------------------------------
# integer component matrices: rows are power-basis coordinates, columns are
# group-algebra indices

def _component_matrix(elem: GAElem) -> np.ndarray:
    rows = np.array([c.coeffs for c in elem.coeffs], dtype=np.int64)
    return rows.T.copy()  # (p-1, m)


def element_from_component_matrix(tables: FieldTables, mat: np.ndarray) -> GAElem:
    p = tables.p
    cols = mat.T
    return GAElem(tables, tuple(CycInt(p, tuple(int(v) for v in col))
                                for col in cols))


def _cyclic_convolve_rows(fa: np.ndarray, fb: np.ndarray, m: int,
                          pad: int) -> np.ndarray:
    lin = np.fft.irfft(fa * fb, pad)[: 2 * m - 1]
    out = lin[:m].copy()
    out[: m - 1] += lin[m:]
    return out


def _convolve_component_matrices(a: np.ndarray, b: np.ndarray, p: int):
    """Exact cyclic convolution of two component matrices, or None.

    Returns the canonical (p-1, m) component matrix of the product, or None
    when the a priori magnitude bound cannot vouch for exact rounding.
    """
    m = a.shape[1]
    max_a = int(np.abs(a).max(initial=0))
    max_b = int(np.abs(b).max(initial=0))
    if m * max_a * max_b * max(1, p - 1) >= _FFT_EXACTNESS_BOUND:
        return None
    pad = 1 << (2 * m - 1).bit_length()
    fa = np.fft.rfft(a, pad, axis=1)
    fb = np.fft.rfft(b, pad, axis=1)
    # accumulate by total zeta exponent e = j + k, then reduce e mod p
    wide = np.zeros((2 * p - 3, m))
    for j in range(p - 1):
        for k in range(p - 1):
            wide[j + k] += _cyclic_convolve_rows(fa[j], fb[k], m, pad)
    ints = np.rint(wide)
    if np.abs(wide - ints).max(initial=0.0) > 0.25:
        return None
    ints = ints.astype(np.int64)
    full = np.zeros((p, m), dtype=np.int64)
    for e in range(2 * p - 3):
        full[e % p] += ints[e]
    return full[: p - 1] - full[p - 1]


# ---------------------------------------------------------------------------
# named elements

def all_ones(tables: FieldTables) -> GAElem:
    """The element representing the full group F* (coefficient 1 everywhere)."""
    return GAElem.from_ints(tables, [1] * tables.m)


def unit(tables: FieldTables) -> GAElem:
    """[1], the convolution identity (index 0)."""
    return GAElem.from_ints(tables, [1] + [0] * (tables.m - 1))


def additive_character_element(tables: FieldTables) -> GAElem:
    """Sum of psi(u)[u] over F*, psi the canonical additive character."""
    p = tables.p
    return GAElem(tables, tuple(CycInt.zeta_power(p, int(t))
                                for t in tables.trace_log))


def weil_element(tables: FieldTables, d: int, method: str = "auto") -> GAElem:
    """The element whose coefficient at [u] is the Weil sum at u.

    Built by convolving the additive-character element with its reindexing
    by -1/d and adding the all-ones element; coefficient i is then the
    binomial Weil sum at u = g^i, exactly.
    """
    mat = weil_component_matrix(tables, d, method=method)
    return element_from_component_matrix(tables, mat)


def weil_component_matrix(tables: FieldTables, d: int,
                          method: str = "auto") -> np.ndarray:
    """(p-1, m) integer component matrix of the Weil element.

    Cheaper than materializing CycInt objects when q is large; column i
    holds the power-basis coordinates of the Weil sum at u = g^i.
    """
    m = tables.m
    import math as _math
    if _math.gcd(d, m) != 1:
        raise ValueError(f"exponent d={d} is not coprime to q-1={m}")
    t = (-inverse_exponent(d, m)) % m
    psi = additive_character_element(tables)
    psi_t = psi.reindex(t)
    if method == "schoolbook" or (method == "auto" and m < _FFT_MIN_LENGTH):
        prod = psi._convolve_schoolbook(psi_t)
        mat = _component_matrix(prod)
    else:
        mat = _convolve_component_matrices(
            _component_matrix(psi), _component_matrix(psi_t), tables.p)
        if mat is None:
            prod = psi._convolve_schoolbook(psi_t)
            mat = _component_matrix(prod)
    mat = mat.copy()
    mat[0] += 1  # the all-ones element: +1 to the rational coordinate everywhere
    return mat


def fourier_coefficient(elem: GAElem, chi_index: int) -> complex:
    """Floating-point Fourier coefficient at the character g -> e^(2 pi i k/m).

    Diagnostic only; the exact pipelines never touch this.
    """
    m = elem.tables.m
    values = np.array([c.evaluate() for c in elem.coeffs])
    phases = np.exp(2j * np.pi * chi_index * np.arange(m) / m)
    return complex(np.sum(values * phases))
