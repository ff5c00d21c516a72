"""Weil sums of binomials and their value spectra.

The central quantity is the sum of psi(x^d + u*x) over all x in the field,
where psi is the canonical additive character and gcd(d, q-1) = 1.  The
spectrum is the multiset of these values as u runs over F* (the value at
u = 0 is identically zero and excluded).

Two computation routes:

* naive: per-u trace histograms, O(q) per coefficient — the oracle;
* fast: one exact group-algebra convolution for all u at once.

Both are exact; they are cross-checked in the test suite and by the
scanner's --audit option.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cyclotomic import CycInt, from_trace_histogram
from .ff import FieldSpec, FieldTables
from .group_algebra import weil_component_matrix

# naive histograms are cheap enough to be the default up to here
NAIVE_DEFAULT_MAX_Q = 512


def is_degenerate(p: int, q: int, d: int) -> bool:
    """True when d is a power of p modulo q-1 (the spectrum collapses)."""
    m = q - 1
    if m == 1:
        return True
    n = round(math.log(q, p))
    return any(d % m == pow(p, k, m) for k in range(n))


def canonical_exponent_classes(p: int, q: int) -> list[int]:
    """Minimal representative of each orbit of valid exponents under d -> p*d.

    Exponents in the same orbit have identical spectra, so the scanner
    visits one representative per orbit; the union of the orbits is exactly
    {d in [1, q-1] : gcd(d, q-1) = 1}.
    """
    m = q - 1
    if m == 1:
        return [1]
    seen = bytearray(m)
    reps = []
    for d in range(1, m + 1):
        if math.gcd(d, m) != 1 or seen[d % m]:
            continue
        reps.append(d)
        e = d % m
        while not seen[e]:
            seen[e] = 1
            e = (e * p) % m
    return reps


def exponent_orbit(p: int, q: int, d: int) -> list[int]:
    """The orbit of d under multiplication by p mod q-1, sorted ascending."""
    m = q - 1
    if m == 1:
        return [1]
    orbit = set()
    e = d % m
    while e not in orbit:
        orbit.add(e)
        e = (e * p) % m
    return sorted(orbit)


def canonical_class_of(p: int, q: int, d: int) -> int:
    return exponent_orbit(p, q, d)[0]


def _require_valid_exponent(tables: FieldTables, d: int):
    if math.gcd(d, tables.m) != 1:
        raise ValueError(f"gcd(d={d}, q-1={tables.m}) != 1")


def weil_sum_naive(tables: FieldTables, d: int, u: int) -> CycInt:
    """Exact Weil sum at a single u, via a trace histogram over all of F.

    u is an element index; u = 0 is accepted (the monomial sum, always 0).
    """
    _require_valid_exponent(tables, d)
    if not 0 <= u < tables.q:
        raise ValueError(f"element index {u} out of range")
    p, m = tables.p, tables.m
    logs = np.arange(m, dtype=np.int64)
    tr_xd = tables.trace_log[(logs * d) % m]
    if u == 0:
        tr = tr_xd
    else:
        j = u - 1
        tr = (tr_xd + np.roll(tables.trace_log, -j)) % p
    counts = np.bincount(tr % p, minlength=p)
    counts[0] += 1  # the x = 0 term contributes trace 0
    return from_trace_histogram(p, counts.tolist())


@dataclass(frozen=True)
class WeilSpectrum:
    """Multiset of Weil sum values over u in F*, with multiplicities."""

    field: FieldSpec
    d: int
    entries: tuple[tuple[CycInt, int], ...]  # sorted by coefficient tuple
    degenerate: bool

    @property
    def v_count(self) -> int:
        return len(self.entries)

    @property
    def is_three_valued(self) -> bool:
        return len(self.entries) == 3

    def values(self) -> list[CycInt]:
        return [v for v, _ in self.entries]

    def multiplicity_of(self, value: CycInt) -> int:
        for v, mult in self.entries:
            if v == value:
                return mult
        return 0

    def moment(self, k: int) -> CycInt:
        """Exact k-th power moment, summed from the multiset."""
        total = CycInt.zero(self.field.p)
        for v, mult in self.entries:
            total = total + (v ** k) * mult
        return total

    def to_json_dict(self) -> dict:
        return {
            "p": self.field.p,
            "n": self.field.n,
            "modulus": list(self.field.modulus),
            "d": self.d,
            "class_orbit": exponent_orbit(self.field.p, self.field.q, self.d),
            "degenerate": self.degenerate,
            "entries": [[v.serialize(), mult] for v, mult in self.entries],
        }


def _entries_from_columns(p: int, columns: np.ndarray) -> tuple:
    """Collapse per-u coordinate columns (m, p-1) into sorted multiset entries."""
    uniq, counts = np.unique(columns, axis=0, return_counts=True)
    entries = [(CycInt(p, tuple(int(v) for v in row)), int(c))
               for row, c in zip(uniq, counts)]
    entries.sort(key=lambda e: e[0].coeffs)
    return tuple(entries)


def _spectrum_naive_columns(tables: FieldTables, d: int) -> np.ndarray:
    p, m = tables.p, tables.m
    logs = np.arange(m, dtype=np.int64)
    tr_xd = tables.trace_log[(logs * d) % m]
    cols = np.empty((m, p - 1), dtype=np.int64)
    for j in range(m):
        tr = (tr_xd + np.roll(tables.trace_log, -j)) % p
        counts = np.bincount(tr, minlength=p)
        counts[0] += 1
        cols[j] = counts[: p - 1] - counts[p - 1]
    return cols


def weil_spectrum(tables: FieldTables, d: int,
                  method: str = "auto") -> WeilSpectrum:
    """Exact spectrum of Weil sum values over u in F*.

    method 'naive' enumerates trace histograms per u; 'fast' uses the
    group-algebra convolution; 'auto' picks naive up to q = 512 and fast
    beyond.  All routes produce identical multisets.
    """
    _require_valid_exponent(tables, d)
    if method not in ("auto", "naive", "fast"):
        raise ValueError(f"unknown spectrum method {method!r}")
    if method == "auto":
        method = "naive" if tables.q <= NAIVE_DEFAULT_MAX_Q else "fast"
    if method == "naive":
        cols = _spectrum_naive_columns(tables, d)
    else:
        cols = weil_component_matrix(tables, d).T
    entries = _entries_from_columns(tables.p, cols)
    return WeilSpectrum(
        field=tables.spec, d=d, entries=entries,
        degenerate=is_degenerate(tables.p, tables.q, d))
