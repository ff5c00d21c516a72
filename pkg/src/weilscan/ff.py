"""Small finite fields F_{p^n} backed by dense exp/log/trace tables.

Elements are handled by an integer index in [0, q): index 0 is the zero
element and index i >= 1 denotes g^(i-1) for the canonical generator g.
This makes multiplicative structure (powers, inverses, discrete logs)
pure modular arithmetic on indices, while additive structure goes through
the packed coefficient tables.

Canonical choices, so tables are bit-identical across runs and platforms:

* modulus: the lexicographically smallest monic irreducible polynomial of
  degree n over F_p, coefficients compared low-degree-first;
* generator: the smallest element in the same coefficient-lexicographic
  order whose multiplicative order is exactly q - 1.

Spectra computed downstream are invariant under field isomorphism, so the
canonical model only pins down reproducibility, not results.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

# Hard cap on q = p^n.  Tables are dense, so memory is linear in q.
MAX_FIELD_SIZE = 1 << 20


def is_prime(x: int) -> bool:
    if x < 2:
        return False
    if x % 2 == 0:
        return x == 2
    f = 3
    while f * f <= x:
        if x % f == 0:
            return False
        f += 2
    return True


def prime_factors(x: int) -> list[int]:
    """Distinct prime factors of x >= 1, ascending."""
    out = []
    f = 2
    while f * f <= x:
        if x % f == 0:
            out.append(f)
            while x % f == 0:
                x //= f
        f += 1 if f == 2 else 2
    if x > 1:
        out.append(x)
    return out


def inverse_exponent(d: int, m: int) -> int:
    """Multiplicative inverse of d modulo m, normalized into [1, m].

    m is a multiplicative group order (q - 1); for the trivial group m = 1
    the inverse is taken to be 1.
    """
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m == 1:
        return 1
    try:
        inv = pow(d % m, -1, m)
    except ValueError:
        raise ValueError(f"gcd({d}, {m}) != 1, no inverse exponent") from None
    return inv


# ---------------------------------------------------------------------------
# Polynomial arithmetic over Z_p (dense lists, low-degree-first).

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    """a*b reduced modulo the monic polynomial f, over Z_p."""
    if not a or not b:
        return []
    prod_ = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod_[i + j] = (prod_[i + j] + ai * bj) % p
    n = len(f) - 1
    for k in range(len(prod_) - 1, n - 1, -1):
        c = prod_[k]
        if c:
            prod_[k] = 0
            for j in range(n):
                prod_[k - n + j] = (prod_[k - n + j] - c * f[j]) % p
    return _poly_trim(prod_[:n])


def _poly_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = list(a)
    while e > 0:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        inv_lead = pow(b[-1], -1, p)
        # a mod b
        a = list(a)
        while len(a) >= len(b):
            c = (a[-1] * inv_lead) % p
            if c:
                shift = len(a) - len(b)
                for j in range(len(b)):
                    a[shift + j] = (a[shift + j] - c * b[j]) % p
            a.pop()
            _poly_trim(a)
            if not a:
                break
        a, b = b, a
    return a


def is_irreducible(modulus: list[int] | tuple[int, ...], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p.

    f of degree n is irreducible iff x^(p^n) == x (mod f) and, for every
    prime r | n, gcd(x^(p^(n/r)) - x, f) is constant.
    """
    f = list(modulus)
    n = len(f) - 1
    if n < 1 or f[-1] != 1:
        raise ValueError("modulus must be monic of degree >= 1")
    if n == 1:
        return True
    x = [0, 1]
    checkpoints = {n // r for r in prime_factors(n)}
    h = list(x)
    for k in range(1, n + 1):
        h = _poly_powmod(h, p, f, p)
        if k in checkpoints:
            diff = list(h) + [0] * (2 - len(h))
            diff[1] = (diff[1] - 1) % p
            g = _poly_gcd(diff, f, p)
            if len(g) > 1:
                return False
    diff = list(h) + [0] * (2 - len(h))
    diff[1] = (diff[1] - 1) % p
    return len(_poly_trim(diff)) == 0


def find_modulus(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n over F_p.

    Coefficient tuples (c_0, ..., c_{n-1}) are compared low-degree-first.
    For n >= 2 any candidate with c_0 = 0 is divisible by x, so that block
    is skipped outright.
    """
    if n == 1:
        return (0, 1)  # f(x) = x
    for tail in product(range(p), repeat=n):
        if tail[0] == 0:
            continue
        f = list(tail) + [1]
        # cheap pre-filter: no roots in F_p
        if any(_poly_eval(f, e, p) == 0 for e in range(p)):
            continue
        if is_irreducible(f, p):
            return tuple(f)
    raise RuntimeError(f"no irreducible polynomial found for p={p}, n={n}")


def _poly_eval(f: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """Concrete model of F_{p^n}: characteristic, degree and modulus."""

    p: int
    n: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.n

    def to_json_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}


class FieldTables:
    """Immutable lookup tables for one finite field.

    Safe to share across worker processes/threads; every method is a pure
    read of the precomputed arrays.
    """

    def __init__(self, spec: FieldSpec, generator: tuple[int, ...],
                 exp_digits: np.ndarray, exp_packed: np.ndarray,
                 log_packed: np.ndarray, digits: np.ndarray,
                 trace_packed: np.ndarray):
        self.spec = spec
        self.p = spec.p
        self.n = spec.n
        self.q = spec.q
        self.m = self.q - 1  # order of F*
        self.generator_coeffs = generator
        self._exp_digits = exp_digits          # (m, n) log -> coefficient form
        self._exp_packed = exp_packed          # (m,)  log -> packed value
        self._log_packed = log_packed          # (q,)  packed -> log (0 -> -1)
        self._digits = digits                  # (q, n) packed -> coefficient form
        self._trace_packed = trace_packed      # (q,)  packed -> trace
        self._ppow = self.p ** np.arange(self.n, dtype=np.int64)
        # element-index translation tables
        self._index_to_packed = np.concatenate(
            ([0], exp_packed)).astype(np.int64)
        self._packed_to_index = (log_packed + 1).astype(np.int64)
        self.trace_log = trace_packed[exp_packed].astype(np.int64)  # (m,)
        self.trace_table = np.concatenate(([0], self.trace_log)).astype(np.int64)
        self.zero = 0
        self.one = 1  # g^0

    # -- representation ----------------------------------------------------

    @property
    def exp_table(self) -> np.ndarray:
        """(q-1, n) array: discrete log -> coefficient vector of g^log."""
        return self._exp_digits

    def log_of(self, x: int) -> int:
        if x == 0:
            raise ValueError("zero has no discrete log")
        return x - 1

    def element_of_log(self, log: int) -> int:
        return (log % self.m) + 1

    def coeffs_of(self, x: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self._digits[self._index_to_packed[x]])

    def from_coeffs(self, coeffs) -> int:
        vec = list(coeffs) + [0] * (self.n - len(coeffs))
        if len(vec) != self.n:
            raise ValueError("coefficient vector longer than field degree")
        packed = sum(int(c) % self.p * int(pw) for c, pw in zip(vec, self._ppow))
        return int(self._packed_to_index[packed])

    def elements(self) -> range:
        return range(self.q)

    # -- scalar arithmetic on element indices -------------------------------

    def add(self, a: int, b: int) -> int:
        pa, pb = self._index_to_packed[a], self._index_to_packed[b]
        s = (self._digits[pa] + self._digits[pb]) % self.p
        return int(self._packed_to_index[s @ self._ppow])

    def neg(self, a: int) -> int:
        pa = self._index_to_packed[a]
        s = (self.p - self._digits[pa]) % self.p
        return int(self._packed_to_index[s @ self._ppow])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return (a - 1 + b - 1) % self.m + 1

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero is not invertible")
        return (self.m - (a - 1)) % self.m + 1

    def pow(self, x: int, d: int) -> int:
        """x^d by log-table arithmetic; 0^d = 0 for d > 0, 0^0 rejected."""
        if x == 0:
            if d <= 0:
                raise ValueError("0 cannot be raised to a non-positive power")
            return 0
        return ((x - 1) * d) % self.m + 1

    def trace(self, x: int) -> int:
        return int(self.trace_table[x])

    # -- vectorized variants (element-index numpy arrays) -------------------

    def add_indices(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        s = (self._digits[self._index_to_packed[a]]
             + self._digits[self._index_to_packed[b]]) % self.p
        return self._packed_to_index[s @ self._ppow]

    def neg_indices(self, a: np.ndarray) -> np.ndarray:
        s = (self.p - self._digits[self._index_to_packed[a]]) % self.p
        return self._packed_to_index[s @ self._ppow]

    def pow_indices(self, x: np.ndarray, d: int) -> np.ndarray:
        if d <= 0:
            raise ValueError("bulk powering requires a positive exponent")
        out = np.zeros_like(x)
        nz = x != 0
        out[nz] = ((x[nz] - 1) * d) % self.m + 1
        return out

    # -- subfield embedding --------------------------------------------------

    def embed_into(self, bigger: "FieldTables") -> np.ndarray:
        """Index map of this field into an extension, as an array of length q.

        Realized by the norm-compatible exponent map: g_K^i maps to
        g_L^(i * (|L*|/|K*|)).  The image is exactly the degree-n subfield
        of L as a set (the unique subgroup of order q-1, plus zero), and the
        map commutes with powering, which is all the tower comparisons need.
        Absolute traces compose through the relative trace on that subfield.
        """
        if bigger.p != self.p or bigger.n % self.n != 0:
            raise ValueError("not a subfield of the target field")
        stride = bigger.m // self.m
        out = np.zeros(self.q, dtype=np.int64)
        out[1:] = (np.arange(self.m, dtype=np.int64) * stride) % bigger.m + 1
        return out


def _matrix_power_mod(mat: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.eye(mat.shape[0], dtype=np.int64)
    base = mat.copy()
    while e > 0:
        if e & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        e >>= 1
    return result


def _find_generator(p: int, n: int, modulus: tuple[int, ...]) -> tuple[int, ...]:
    m = p ** n - 1
    factors = prime_factors(m) if m > 1 else []
    f = list(modulus)
    for tail in product(range(p), repeat=n):
        if all(c == 0 for c in tail):
            continue
        a = _poly_trim(list(tail))
        if all(_poly_powmod(a, m // r, f, p) != [1] for r in factors):
            return tuple(tail)
    raise RuntimeError(f"no generator found for p={p}, n={n}")


def build_field(p: int, n: int) -> FieldTables:
    """Construct the canonical model of F_{p^n} with all lookup tables.

    Deterministic: repeated calls return bit-identical tables.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if n < 1:
        raise ValueError(f"extension degree must be >= 1, got {n}")
    q = p ** n
    if q > MAX_FIELD_SIZE:
        raise ValueError(f"field size {q} exceeds bound {MAX_FIELD_SIZE}")

    modulus = find_modulus(p, n)
    spec = FieldSpec(p=p, n=n, modulus=modulus)
    gen = _find_generator(p, n, modulus)
    m = q - 1
    f = list(modulus)

    # multiplication-by-g as an F_p-linear map on coefficient vectors
    gpoly = _poly_trim(list(gen))
    mul_g = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        col = _poly_mulmod(gpoly, [0] * j + [1], f, p)
        col += [0] * (n - len(col))
        mul_g[:, j] = col

    # exp chain g^0 .. g^(m-1), built blockwise: seeds g^0..g^(B-1), then
    # repeated application of mul_g^B advances a whole block at once
    block = min(1024, m)
    seeds = np.zeros((n, block), dtype=np.int64)
    v = np.zeros(n, dtype=np.int64)
    v[0] = 1
    for b in range(block):
        seeds[:, b] = v
        v = (mul_g @ v) % p
    step = _matrix_power_mod(mul_g, block, p)
    nblocks = -(-m // block)
    chunks = []
    cur = seeds
    for _ in range(nblocks):
        chunks.append(cur)
        cur = (step @ cur) % p
    exp_digits = np.concatenate(chunks, axis=1)[:, :m].T.copy()  # (m, n)

    ppow = p ** np.arange(n, dtype=np.int64)
    exp_packed = exp_digits @ ppow
    if len(np.unique(exp_packed)) != m:
        raise RuntimeError("generator order check failed: exp chain collides")
    # wrap-around: g^m must equal 1
    nxt = (mul_g @ exp_digits[m - 1]) % p
    if not np.array_equal(nxt, exp_digits[0]):
        raise RuntimeError("exp chain does not close at g^(q-1) = 1")

    log_packed = np.full(q, -1, dtype=np.int64)
    log_packed[exp_packed] = np.arange(m, dtype=np.int64)

    # packed -> coefficient digits
    digits = np.zeros((q, n), dtype=np.int64)
    rem = np.arange(q, dtype=np.int64)
    for j in range(n):
        digits[:, j] = rem % p
        rem //= p

    # absolute trace, via linearity: Tr(sum c_j x^j) = sum c_j Tr(x^j)
    tr_basis = np.zeros(n, dtype=np.int64)
    for j in range(n):
        acc = [0]
        term = [0] * j + [1]
        for _ in range(n):
            acc = _poly_trim([
                (x + y) % p for x, y in
                zip(acc + [0] * len(term), term + [0] * len(acc))])
            term = _poly_powmod(term, p, f, p)
        if len(acc) > 1:
            raise RuntimeError("trace of a basis element landed outside F_p")
        tr_basis[j] = acc[0] if acc else 0
    trace_packed = (digits @ tr_basis) % p

    return FieldTables(spec, gen, exp_digits.astype(np.int64),
                       exp_packed.astype(np.int64), log_packed,
                       digits, trace_packed.astype(np.int64))
