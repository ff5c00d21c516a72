"""Verification layer: exact identities, congruences, three-valued structure
theory, valuation bounds and subfield tower comparisons.

Every check returns a CheckResult carrying a pass flag and, on failure, a
small witness dict sufficient to reproduce the counterexample.  Checks that
would contradict a published theorem if they failed raise
InvariantViolation instead of returning quietly: such a failure means
either an engine bug or a genuine falsification and must abort loudly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cyclotomic import (CycInt, INFINITE_VALUATION, format_valuation,
                         p_decompose, padic_valuation)
from .engine import (WeilSpectrum, is_degenerate, weil_spectrum,
                     _spectrum_naive_columns)
from .ff import FieldSpec, FieldTables, build_field, inverse_exponent
from .group_algebra import (GAElem, all_ones, additive_character_element,
                            unit, weil_component_matrix, weil_element)

CASE_I = "case_i"
CASE_II = "case_ii"


class InvariantViolation(RuntimeError):
    """A theorem-backed invariant failed; carries a witness payload."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message if witness is None else f"{message}: {witness}")
        self.witness = witness or {}


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: dict | None = None

    def to_json_dict(self) -> dict:
        out = {"pass": self.passed}
        if self.witness:
            out["witness"] = self.witness
        return out


def _require_valid_exponent(tables: FieldTables, d: int):
    if math.gcd(d, tables.m) != 1:
        raise ValueError(f"gcd(d={d}, q-1={tables.m}) != 1")


# ---------------------------------------------------------------------------
# the solution-count element: coefficient at u counts v with
# v^d + (1-v)^d = u^d

@dataclass(frozen=True)
class RepCounts:
    """Counts of v in F solving v^d + (1-v)^d = u^d, indexed by log u."""

    field: FieldSpec
    d: int
    counts: tuple[int, ...]  # length q-1

    @property
    def count_at_one(self) -> int:
        return self.counts[0]

    def total(self) -> int:
        return sum(self.counts)


def representation_counts(tables: FieldTables, d: int) -> RepCounts:
    """Exact solution counts for every u in F*.

    Iterates v over the whole field, forms s = v^d + (1-v)^d, and buckets
    s^(1/d).  s can never vanish (v and v-1 differ and d-th powering is a
    permutation with d odd in odd characteristic); if it ever did, that
    would falsify the theory this engine checks, so it aborts loudly.
    """
    _require_valid_exponent(tables, d)
    q, m, p = tables.q, tables.m, tables.p
    idx = np.arange(q, dtype=np.int64)
    v_d = tables.pow_indices(idx, d)
    one_minus_v = tables.add_indices(
        np.full(q, tables.one, dtype=np.int64), tables.neg_indices(idx))
    s = tables.add_indices(v_d, tables.pow_indices(one_minus_v, d))
    if np.any(s == 0):
        bad = int(idx[s == 0][0])
        raise InvariantViolation(
            "v^d + (1-v)^d vanished", {"p": p, "q": q, "d": d, "v_index": bad})
    d_inv = inverse_exponent(d, m)
    buckets = ((s - 1) * d_inv) % m
    counts = np.bincount(buckets, minlength=m)
    return RepCounts(field=tables.spec, d=d,
                     counts=tuple(int(c) for c in counts))


# ---------------------------------------------------------------------------
# exact group-algebra identities

def check_weil_factorization(tables: FieldTables, d: int) -> CheckResult:
    """Convolution-built Weil element equals the naive per-u sums, exactly."""
    _require_valid_exponent(tables, d)
    fast = weil_component_matrix(tables, d)
    naive = _spectrum_naive_columns(tables, d).T
    if np.array_equal(fast, naive):
        return CheckResult("weil_factorization", True)
    diff = np.nonzero((fast != naive).any(axis=0))[0]
    i = int(diff[0])
    return CheckResult("weil_factorization", False, {
        "u_log": i,
        "fast": ",".join(str(int(v)) for v in fast[:, i]),
        "naive": ",".join(str(int(v)) for v in naive[:, i]),
    })


def check_gauss_autocorrelation(tables: FieldTables,
                                t: int | None = None) -> CheckResult:
    """Reindexed character element times its conjugate is q[1] - F*.

    Runs a single reindexing exponent t, or every t coprime to q-1 when t
    is None.
    """
    q, m = tables.q, tables.m
    psi = additive_character_element(tables)
    expected = unit(tables).scaled(q) - all_ones(tables)
    ts = [t] if t is not None else [s for s in range(1, m + 1)
                                    if math.gcd(s, m) == 1]
    for s in ts:
        elem = psi.reindex(s)
        if elem.convolve(elem.conj()) != expected:
            return CheckResult("gauss_autocorrelation", False,
                               {"q": q, "t": s})
    return CheckResult("gauss_autocorrelation", True)


def check_weil_autocorrelation(tables: FieldTables, d: int) -> CheckResult:
    """W times conj(W) is q^2 [1], exactly."""
    _require_valid_exponent(tables, d)
    q = tables.q
    w = weil_element(tables, d)
    prod = w.convolve(w.conj())
    expected = unit(tables).scaled(q * q)
    if prod == expected:
        return CheckResult("weil_autocorrelation", True)
    bad = next(i for i in range(tables.m)
               if prod.coeffs[i] != expected.coeffs[i])
    return CheckResult("weil_autocorrelation", False, {
        "q": q, "d": d, "index": bad, "got": prod.coeffs[bad].serialize()})


def check_squares_identity(tables: FieldTables, d: int,
                           counts: RepCounts | None = None) -> CheckResult:
    """The element of squared Weil sums equals W convolved with the
    solution-count element."""
    _require_valid_exponent(tables, d)
    counts = counts or representation_counts(tables, d)
    w = weil_element(tables, d)
    v = GAElem.from_ints(tables, counts.counts)
    squares = GAElem(tables, tuple(c * c for c in w.coeffs))
    prod = w.convolve(v)
    if prod == squares:
        return CheckResult("squares_identity", True)
    bad = next(i for i in range(tables.m)
               if prod.coeffs[i] != squares.coeffs[i])
    return CheckResult("squares_identity", False, {
        "q": tables.q, "d": d, "index": bad,
        "wv": prod.coeffs[bad].serialize(),
        "w_squared": squares.coeffs[bad].serialize()})


# ---------------------------------------------------------------------------
# congruences mod 6 for the count at u = 1

def expected_residue_mod6(tables: FieldTables, d: int) -> int:
    """Predicted residue mod 6 of the solution count at u = 1.

    Branches on q mod 3 and on whether 2^(d-1) = 1 holds in the field; the
    latter is evaluated by field exponentiation, and is taken to be false in
    characteristic 2 where 2 = 0 has no inverse.
    """
    q, p = tables.q, tables.p
    if q % 3 == 0:
        return 3
    two = tables.add(tables.one, tables.one)
    cond = p != 2 and tables.pow(two, d - 1) == tables.one
    if q % 3 == 1:
        return 1 if cond else 4
    return 5 if cond else 2


def check_residue_mod6(tables: FieldTables, d: int,
                       counts: RepCounts | None = None) -> CheckResult:
    counts = counts or representation_counts(tables, d)
    expected = expected_residue_mod6(tables, d)
    actual = counts.count_at_one % 6
    if actual == expected:
        return CheckResult("residue_mod6", True)
    return CheckResult("residue_mod6", False, {
        "q": tables.q, "d": d, "count_at_one": counts.count_at_one,
        "expected": expected, "actual": actual})


# ---------------------------------------------------------------------------
# orbit structure of the roots of X^d + (1-X)^d - 1

@dataclass(frozen=True)
class OrbitReport:
    field: FieldSpec
    d: int
    roots: tuple[int, ...]            # roots in F minus {0, 1}, element indices
    orbits: tuple[tuple[int, ...], ...]
    special_points: dict
    sizes_divide_six: bool
    small_orbits_are_special: bool


def orbit_decomposition(tables: FieldTables, d: int) -> OrbitReport:
    """Partition the roots of X^d + (1-X)^d - 1 outside {0, 1} into orbits
    under the maps x -> 1-x and x -> 1/x.

    Generic orbits have six elements; smaller ones can only consist of the
    fixed points -1, 2, 1/2 and the roots of X^2 - X + 1.
    """
    _require_valid_exponent(tables, d)
    q = tables.q
    idx = np.arange(q, dtype=np.int64)
    v_d = tables.pow_indices(idx, d)
    one_minus = tables.add_indices(
        np.full(q, tables.one, dtype=np.int64), tables.neg_indices(idx))
    s = tables.add_indices(v_d, tables.pow_indices(one_minus, d))
    is_root = s == tables.one
    roots = [int(v) for v in idx[is_root] if v not in (0, tables.one)]
    root_set = set(roots)

    def sigma(x: int) -> int:
        return tables.sub(tables.one, x)

    def tau(x: int) -> int:
        return tables.inv(x)

    orbits = []
    seen: set[int] = set()
    for r in roots:
        if r in seen:
            continue
        orbit = set()
        frontier = [r]
        while frontier:
            x = frontier.pop()
            if x in orbit:
                continue
            orbit.add(x)
            for y in (sigma(x), tau(x)):
                if y not in orbit:
                    frontier.append(y)
        if not orbit <= root_set:
            stray = sorted(orbit - root_set)[0]
            raise InvariantViolation(
                "orbit of a root escaped the root set",
                {"q": q, "d": d, "root": r, "stray": stray})
        seen |= orbit
        orbits.append(tuple(sorted(orbit)))
    orbits.sort()

    minus_one = tables.neg(tables.one)
    two = tables.add(tables.one, tables.one)
    half = tables.inv(two) if two != 0 else None
    x_sq = tables.pow_indices(idx, 2)
    phi6 = tables.add_indices(
        tables.add_indices(x_sq, tables.neg_indices(idx)),
        np.full(q, tables.one, dtype=np.int64))
    phi6_roots = [int(v) for v in idx[phi6 == 0]]
    special = {x for x in [minus_one, two, half, *phi6_roots]
               if x is not None and x not in (0, tables.one)}

    sizes_ok = all(6 % len(o) == 0 for o in orbits)
    small_ok = all(set(o) <= special for o in orbits if len(o) < 6)
    return OrbitReport(
        field=tables.spec, d=d, roots=tuple(sorted(roots)),
        orbits=tuple(orbits),
        special_points={
            "minus_one": minus_one, "two": two, "half": half,
            "phi6_roots": phi6_roots},
        sizes_divide_six=sizes_ok,
        small_orbits_are_special=small_ok)


# ---------------------------------------------------------------------------
# power moments

def predicted_power_moment(a: int, b: int, q: int, k: int) -> int:
    """Closed form for the k-th power moment of a three-valued spectrum.

    Evaluated in exact rationals (the k = 1 case involves a^(-1)); the
    result must be integral, and the division by a - b must be exact.
    """
    if k < 1:
        raise ValueError("moment order must be >= 1")
    if a == b:
        raise ValueError("a and b must be distinct")
    fa, fb = Fraction(a), Fraction(b)
    num = (Fraction(q * q) * (fa ** (k - 1) - fb ** (k - 1))
           - Fraction(q * a * b) * (fa ** (k - 2) - fb ** (k - 2)))
    value = num / (a - b)
    if value.denominator != 1:
        raise InvariantViolation(
            "moment closed form is not integral",
            {"a": a, "b": b, "q": q, "k": k, "value": str(value)})
    return int(value)


def check_power_moments(tables: FieldTables, d: int,
                        spectrum: WeilSpectrum | None = None,
                        counts: RepCounts | None = None) -> CheckResult:
    """First four exact power moments of the spectrum.

    Moments one and two are q and q^2; the third is q^2 times the count at
    u = 1 and the fourth is q^2 times the sum of squared counts.
    """
    spectrum = spectrum or weil_spectrum(tables, d)
    counts = counts or representation_counts(tables, d)
    q = tables.q
    sum_sq = sum(c * c for c in counts.counts)
    targets = {
        1: CycInt.from_int(tables.p, q),
        2: CycInt.from_int(tables.p, q * q),
        3: CycInt.from_int(tables.p, q * q * counts.count_at_one),
        4: CycInt.from_int(tables.p, q * q * sum_sq),
    }
    for k, expected in targets.items():
        actual = spectrum.moment(k)
        if actual != expected:
            return CheckResult("power_moments", False, {
                "q": q, "d": d, "k": k,
                "expected": expected.serialize(),
                "actual": actual.serialize()})
    return CheckResult("power_moments", True)


# ---------------------------------------------------------------------------
# valuations

def min_valuation(tables: FieldTables, d: int,
                  spectrum: WeilSpectrum | None = None):
    """Minimum extended p-adic valuation over the spectrum's values."""
    spectrum = spectrum or weil_spectrum(tables, d)
    return min(padic_valuation(v) for v in spectrum.values())


def check_positive_valuation(spectrum: WeilSpectrum) -> CheckResult:
    """Every Weil sum value has strictly positive valuation."""
    for v in spectrum.values():
        if not padic_valuation(v) > 0:
            return CheckResult("positive_valuation", False, {
                "value": v.serialize(),
                "valuation": format_valuation(padic_valuation(v))})
    return CheckResult("positive_valuation", True)


def check_minimum_three_values(spectrum: WeilSpectrum) -> CheckResult:
    """Nondegenerate exponents produce at least three distinct values;
    degenerate ones collapse to exactly {q, 0}."""
    q = spectrum.field.q
    if spectrum.degenerate:
        expected = [(CycInt.from_int(spectrum.field.p, q), 1)]
        if q > 2:
            expected.insert(0, (CycInt.zero(spectrum.field.p), q - 2))
        ok = sorted(spectrum.entries, key=lambda e: e[0].coeffs) == \
            sorted(expected, key=lambda e: e[0].coeffs)
        if ok:
            return CheckResult("minimum_three_values", True)
        return CheckResult("minimum_three_values", False, {
            "q": q, "d": spectrum.d, "reason": "degenerate spectrum shape",
            "entries": [[v.serialize(), m] for v, m in spectrum.entries]})
    if spectrum.v_count >= 3:
        return CheckResult("minimum_three_values", True)
    return CheckResult("minimum_three_values", False, {
        "q": q, "d": spectrum.d, "v_count": spectrum.v_count})


# ---------------------------------------------------------------------------
# three-valued structure

def check_value_constraints(spectrum: WeilSpectrum, d: int) -> CheckResult:
    """Three-valued spectra have rational-integer values, contain zero, and
    force d = 1 modulo p-1."""
    p = spectrum.field.p
    values = spectrum.values()
    ints = [v.is_rational_integer() for v in values]
    if any(i is None for i in ints):
        bad = next(v for v, i in zip(values, ints) if i is None)
        return CheckResult("value_constraints", False, {
            "reason": "non-integer value", "value": bad.serialize()})
    if 0 not in ints:
        return CheckResult("value_constraints", False, {
            "reason": "zero missing", "values": sorted(ints)})
    if d % (p - 1) != 1 % (p - 1):
        return CheckResult("value_constraints", False, {
            "reason": "d not 1 mod p-1", "d": d, "p": p})
    return CheckResult("value_constraints", True)


@dataclass
class ThreeValuedReport:
    """Structure data for a three-valued spectrum: the nonzero values a > 0 > b,
    multiplicities, valuations, case classification and all per-instance
    check outcomes."""

    field: FieldSpec
    d: int
    a: int
    b: int
    mult_a: int
    mult_b: int
    mult_zero: int
    val_a: Fraction
    val_b: Fraction
    valuation_case: str = ""
    checks: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "a": self.a, "b": self.b,
            "mult_a": self.mult_a, "mult_b": self.mult_b,
            "mult_zero": self.mult_zero,
            "val_a": format_valuation(self.val_a),
            "val_b": format_valuation(self.val_b),
            "valuation_case": self.valuation_case,
            "checks": {k: v.to_json_dict() for k, v in self.checks.items()},
        }


def check_count_at_one(report: ThreeValuedReport,
                       counts: RepCounts) -> CheckResult:
    """Count at u = 1 equals a + b - ab/q (the division must be exact), and
    v_p(ab) is at least n, strictly greater in characteristic 2 and 3."""
    q, p, n = report.field.q, report.field.p, report.field.n
    a, b = report.a, report.b
    ab = a * b
    if ab % q != 0:
        return CheckResult("count_at_one", False, {
            "reason": "ab not divisible by q", "a": a, "b": b, "q": q})
    expected = a + b - ab // q
    if counts.count_at_one != expected:
        return CheckResult("count_at_one", False, {
            "expected": expected, "actual": counts.count_at_one})
    vab = padic_valuation(ab, p)
    needs_strict = p in (2, 3)
    ok = vab > n if needs_strict else vab >= n
    if not ok:
        return CheckResult("count_at_one", False, {
            "reason": "valuation bound on ab", "v_p(ab)": str(vab),
            "n": n, "strict": needs_strict})
    return CheckResult("count_at_one", True)


def check_tail_sums(report: ThreeValuedReport,
                    counts: RepCounts) -> CheckResult:
    """Sums of counts and squared counts away from u = 1 match their closed
    forms (q-a)(q-b)/q and -ab(q-a)(q-b)/q^2; both must be positive."""
    q = report.field.q
    a, b = report.a, report.b
    if not (abs(a) < q and abs(b) < q):
        return CheckResult("tail_sums", False, {
            "reason": "|a| or |b| not below q", "a": a, "b": b, "q": q})
    num1 = (q - a) * (q - b)
    if num1 % q != 0:
        return CheckResult("tail_sums", False, {
            "reason": "(q-a)(q-b) not divisible by q"})
    rhs1 = num1 // q
    num2 = -a * b * num1
    if num2 % (q * q) != 0:
        return CheckResult("tail_sums", False, {
            "reason": "-ab(q-a)(q-b) not divisible by q^2"})
    rhs2 = num2 // (q * q)
    tail1 = counts.total() - counts.count_at_one
    tail2 = sum(c * c for c in counts.counts) - counts.count_at_one ** 2
    if not (rhs1 > 0 and rhs2 > 0):
        return CheckResult("tail_sums", False, {
            "reason": "closed forms not positive", "rhs1": rhs1, "rhs2": rhs2})
    if tail1 != rhs1 or tail2 != rhs2:
        return CheckResult("tail_sums", False, {
            "tail_counts": tail1, "expected_counts": rhs1,
            "tail_squares": tail2, "expected_squares": rhs2})
    return CheckResult("tail_sums", True)


def check_count_divisibility(report: ThreeValuedReport,
                             counts: RepCounts) -> CheckResult:
    """The coprime parts of a, b and a-b are pairwise coprime and their
    product divides every count away from u = 1."""
    p = report.field.p
    a, b = report.a, report.b
    ao = p_decompose(a, p).odd_part
    bo = p_decompose(b, p).odd_part
    do = p_decompose(a - b, p).odd_part
    pairs = [(ao, bo), (ao, do), (bo, do)]
    if any(math.gcd(x, y) != 1 for x, y in pairs):
        return CheckResult("count_divisibility", False, {
            "reason": "coprime parts are not pairwise coprime",
            "a_o": ao, "b_o": bo, "diff_o": do})
    divisor = ao * bo * do
    for i, c in enumerate(counts.counts):
        if i == 0:
            continue  # u = 1 lives at log index 0
        if c % divisor != 0:
            return CheckResult("count_divisibility", False, {
                "divisor": divisor, "u_log": i, "count": c})
    return CheckResult("count_divisibility", True)


def check_p_part_bound(report: ThreeValuedReport) -> CheckResult:
    """a_p * b_p is at least q * (a-b)_o."""
    p, q = report.field.p, report.field.q
    ap = p_decompose(report.a, p).p_part
    bp = p_decompose(report.b, p).p_part
    do = p_decompose(report.a - report.b, p).odd_part
    if ap * bp >= q * do:
        return CheckResult("p_part_bound", True)
    return CheckResult("p_part_bound", False, {
        "a_p": ap, "b_p": bp, "q": q, "diff_o": do})


def classify_three_valued(report: ThreeValuedReport,
                          counts: RepCounts) -> str:
    """Classify the valuation structure of a three-valued instance.

    Either both nonzero values have valuation strictly above n/2 (case_i),
    or both sit exactly at n/2 (case_ii), in which case |a-b| must be a
    power of p exceeding sqrt(q), the counts away from u = 1 must all lie
    in {0, a_o * b_o}, the count at 1 must equal a + b + a_o * b_o, and the
    characteristic cannot be 2 or 3.  Anything else falsifies the structure
    theorem and raises.
    """
    p, q, n = report.field.p, report.field.q, report.field.n
    witness = {
        "p": p, "q": q, "d": report.d, "a": report.a, "b": report.b,
        "val_a": str(report.val_a), "val_b": str(report.val_b)}
    bound_check = check_p_part_bound(report)
    if not bound_check.passed:
        raise InvariantViolation("p-part product bound failed",
                                 {**witness, **(bound_check.witness or {})})
    half = Fraction(n, 2)
    if report.val_a > half and report.val_b > half:
        return CASE_I
    if report.val_a == half and report.val_b == half:
        if p in (2, 3):
            raise InvariantViolation(
                "boundary valuation case occurred in characteristic 2 or 3",
                witness)
        ao = p_decompose(report.a, p).odd_part
        bo = p_decompose(report.b, p).odd_part
        diff = p_decompose(report.a - report.b, p)
        if diff.odd_part != 1:
            raise InvariantViolation("a-b is not a power of p", witness)
        if (report.a - report.b) ** 2 <= q:
            raise InvariantViolation("|a-b| does not exceed sqrt(q)", witness)
        allowed = {0, ao * bo}
        for i, c in enumerate(counts.counts):
            if i != 0 and c not in allowed:
                raise InvariantViolation(
                    "count outside {0, a_o b_o} in the boundary case",
                    {**witness, "u_log": i, "count": c})
        if counts.count_at_one != report.a + report.b + ao * bo:
            raise InvariantViolation(
                "count at 1 is not a + b + a_o b_o in the boundary case",
                {**witness, "count_at_one": counts.count_at_one})
        return CASE_II
    raise InvariantViolation(
        "valuations below the n/2 threshold; structure theorem falsified",
        witness)


def three_valued_report(tables: FieldTables, d: int,
                        spectrum: WeilSpectrum | None = None,
                        counts: RepCounts | None = None) -> ThreeValuedReport:
    """Assemble the full structure report for a three-valued spectrum and
    run every per-instance check."""
    spectrum = spectrum or weil_spectrum(tables, d)
    if not spectrum.is_three_valued:
        raise ValueError(
            f"spectrum has {spectrum.v_count} values, expected exactly 3")
    constraints = check_value_constraints(spectrum, d)
    if not constraints.passed:
        raise InvariantViolation("three-valued spectrum breaks value constraints",
                                 constraints.witness)
    by_value = {v.is_rational_integer(): mult for v, mult in spectrum.entries}
    nonzero = sorted(v for v in by_value if v != 0)
    neg, pos = nonzero[0], nonzero[1]
    if not (pos > 0 > neg):
        raise InvariantViolation(
            "nonzero values are not of opposite sign",
            {"values": sorted(by_value)})
    a, b = pos, neg
    q, p = tables.q, tables.p
    if a * by_value[a] + b * by_value[b] != q or \
            a * a * by_value[a] + b * b * by_value[b] != q * q:
        raise InvariantViolation("multiplicity moment identities failed", {
            "a": a, "b": b, "mult_a": by_value[a], "mult_b": by_value[b]})
    report = ThreeValuedReport(
        field=tables.spec, d=d, a=a, b=b,
        mult_a=by_value[a], mult_b=by_value[b], mult_zero=by_value[0],
        val_a=padic_valuation(a, p), val_b=padic_valuation(b, p))
    counts = counts or representation_counts(tables, d)
    report.checks["value_constraints"] = constraints
    report.checks["count_at_one"] = check_count_at_one(report, counts)
    report.checks["tail_sums"] = check_tail_sums(report, counts)
    report.checks["count_divisibility"] = check_count_divisibility(report, counts)
    report.checks["p_part_bound"] = check_p_part_bound(report)
    report.valuation_case = classify_three_valued(report, counts)
    return report


def check_moment_closed_forms(report: ThreeValuedReport,
                              max_order: int = 6) -> CheckResult:
    """Closed-form power moments match the exact spectrum moments for
    k = 1 .. max_order."""
    q = report.field.q
    for k in range(1, max_order + 1):
        predicted = predicted_power_moment(report.a, report.b, q, k)
        actual = report.mult_a * report.a ** k + report.mult_b * report.b ** k
        if predicted != actual:
            return CheckResult("moment_closed_forms", False, {
                "k": k, "predicted": predicted, "actual": actual})
    return CheckResult("moment_closed_forms", True)


# ---------------------------------------------------------------------------
# subfield towers

@dataclass
class TowerLevel:
    degree: int
    gcd_ok: bool
    degenerate: bool | None = None
    min_valuation: object = None
    three_valued: bool | None = None

    def to_json_dict(self) -> dict:
        out = {"degree": self.degree, "gcd_ok": self.gcd_ok}
        if self.gcd_ok:
            out.update({
                "degenerate": self.degenerate,
                "min_valuation": format_valuation(self.min_valuation),
                "three_valued": self.three_valued,
            })
        return out


@dataclass
class TowerReport:
    p: int
    n: int
    d: int
    levels: dict
    extension_bounds: list   # one entry per subfield pair K < L
    quadratic_steps: list    # one entry per quadratic step
    halving_bound: dict | None  # the n/2 bound data when n is a power of 2

    def all_passed(self) -> bool:
        ok = all(e["holds"] for e in self.extension_bounds)
        ok = ok and all(s["holds"] for s in self.quadratic_steps
                        if s["applicable"])
        if self.halving_bound and self.halving_bound.get("applicable"):
            ok = ok and self.halving_bound["holds"]
        return ok

    def to_json_dict(self) -> dict:
        return {
            "p": self.p, "n": self.n, "d": self.d,
            "levels": {str(k): v.to_json_dict() for k, v in self.levels.items()},
            "extension_bounds": self.extension_bounds,
            "quadratic_steps": self.quadratic_steps,
            "halving_bound": self.halving_bound,
        }


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def tower_checks(p: int, n: int, d: int,
                 field_cache: dict | None = None) -> TowerReport:
    """Compare minimum valuations across the subfield lattice of F_{p^n}.

    For every subfield pair K inside L the minimum valuation over L is at
    most [L:K] times the minimum over K; on every quadratic step where d is
    degenerate over K but not over L, the minimum over L equals the degree
    of K over the prime field.  When n is a power of 2 these combine into a
    bound of n/2 on the minimum valuation at the top, located at the unique
    degenerate-to-nondegenerate quadratic step of the 2-power chain.
    """
    cache = field_cache if field_cache is not None else {}
    levels: dict[int, TowerLevel] = {}
    for deg in _divisors(n):
        qk = p ** deg
        if math.gcd(d, qk - 1) != 1:
            levels[deg] = TowerLevel(degree=deg, gcd_ok=False)
            continue
        if (p, deg) not in cache:
            cache[(p, deg)] = build_field(p, deg)
        tk = cache[(p, deg)]
        sp = weil_spectrum(tk, d)
        levels[deg] = TowerLevel(
            degree=deg, gcd_ok=True,
            degenerate=is_degenerate(p, qk, d),
            min_valuation=min_valuation(tk, d, sp),
            three_valued=sp.is_three_valued)

    usable = [deg for deg, lv in levels.items() if lv.gcd_ok]
    extension_bounds = []
    for k in usable:
        for l in usable:
            if k < l and l % k == 0:
                lhs = levels[l].min_valuation
                rhs = (l // k) * levels[k].min_valuation
                extension_bounds.append({
                    "lower": k, "upper": l,
                    "min_upper": format_valuation(lhs),
                    "scaled_min_lower": format_valuation(rhs),
                    "holds": lhs <= rhs})

    quadratic_steps = []
    for k in usable:
        l = 2 * k
        if l in usable:
            applicable = levels[k].degenerate and not levels[l].degenerate
            entry = {"lower": k, "upper": l, "applicable": applicable}
            if applicable:
                entry["expected"] = k
                entry["actual"] = format_valuation(levels[l].min_valuation)
                entry["holds"] = levels[l].min_valuation == Fraction(k)
            quadratic_steps.append(entry)

    halving = None
    if n > 1 and n & (n - 1) == 0:
        chain = [1 << i for i in range((n).bit_length())]
        boundary = None
        for k, l in zip(chain, chain[1:]):
            if k in usable and l in usable and \
                    levels[k].degenerate and not levels[l].degenerate:
                boundary = (k, l)
                break
        halving = {"applicable": boundary is not None}
        if boundary:
            k, l = boundary
            top = levels[n].min_valuation
            halving.update({
                "step_lower": k, "step_upper": l,
                "bound": format_valuation(Fraction(n, 2)),
                "min_valuation": format_valuation(top),
                "holds": top <= Fraction(n, 2),
                "three_valued": levels[n].three_valued,
            })
            if not levels[n].three_valued:
                halving["note"] = "no three-valued instance; bound holds vacuously"
        else:
            halving["note"] = ("no degenerate-to-nondegenerate quadratic step; "
                               "no three-valued instance can exist here")
    return TowerReport(p=p, n=n, d=d, levels=levels,
                       extension_bounds=extension_bounds,
                       quadratic_steps=quadratic_steps,
                       halving_bound=halving)
