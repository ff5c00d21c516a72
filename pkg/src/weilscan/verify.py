"""Named invariant suites over a range of fields.

Each suite walks a scope of (field, exponent class) pairs and yields one
outcome per executed check.  The CLI's verify subcommand prints them and
exits nonzero on the first failure; the acceptance tests run the same
suites directly.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .analysis import (check_gauss_autocorrelation, check_minimum_three_values,
                       check_moment_closed_forms, check_positive_valuation,
                       check_power_moments, check_residue_mod6,
                       check_squares_identity, check_weil_autocorrelation,
                       check_weil_factorization, representation_counts,
                       three_valued_report, tower_checks)
from .cyclotomic import CycInt, one_minus_zeta, padic_valuation
from .engine import canonical_exponent_classes, weil_spectrum
from .ff import build_field, is_prime

SUITES = ("algebra", "moments", "congruence", "towers", "valuation", "all")


@dataclass
class SuiteOutcome:
    suite: str
    scope: str
    name: str
    passed: bool
    witness: dict | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  witness={self.witness}" if not self.passed else ""
        return f"{status} [{self.suite}] {self.scope}: {self.name}{extra}"


def prime_powers_up_to(qmax: int, p_only: int | None = None):
    """All (p, n) with p^n <= qmax, ordered by q then p."""
    out = []
    for p in range(2, qmax + 1):
        if not is_prime(p) or (p_only is not None and p != p_only):
            continue
        n = 1
        while p ** n <= qmax:
            out.append((p ** n, p, n))
            n += 1
    out.sort()
    return [(p, n) for _, p, n in out]


def _field_iter(qmax: int, cache: dict, p_only: int | None = None,
                n_only: int | None = None):
    for p, n in prime_powers_up_to(qmax, p_only):
        if n_only is not None and n != n_only:
            continue
        if (p, n) not in cache:
            cache[(p, n)] = build_field(p, n)
        yield cache[(p, n)]


def suite_algebra(qmax: int = 81, cache: dict | None = None):
    """Exact group-algebra identities on every field up to qmax."""
    cache = cache if cache is not None else {}
    for tables in _field_iter(qmax, cache):
        scope = f"q={tables.q}"
        res = check_gauss_autocorrelation(tables)
        yield SuiteOutcome("algebra", scope, "gauss_autocorrelation",
                           res.passed, res.witness)
        for d in canonical_exponent_classes(tables.p, tables.q):
            dscope = f"q={tables.q} d={d}"
            counts = representation_counts(tables, d)
            for res in (check_weil_factorization(tables, d),
                        check_weil_autocorrelation(tables, d),
                        check_squares_identity(tables, d, counts)):
                yield SuiteOutcome("algebra", dscope, res.name,
                                   res.passed, res.witness)


def suite_moments(qmax: int = 81, cache: dict | None = None,
                  closed_form_max_q: int = 3 ** 5):
    """Power moments on every class, closed forms on three-valued instances."""
    cache = cache if cache is not None else {}
    for tables in _field_iter(qmax, cache):
        for d in canonical_exponent_classes(tables.p, tables.q):
            scope = f"q={tables.q} d={d}"
            spectrum = weil_spectrum(tables, d)
            counts = representation_counts(tables, d)
            res = check_power_moments(tables, d, spectrum, counts)
            yield SuiteOutcome("moments", scope, res.name, res.passed,
                               res.witness)
            if spectrum.is_three_valued and tables.q <= closed_form_max_q:
                report = three_valued_report(tables, d, spectrum, counts)
                res = check_moment_closed_forms(report)
                yield SuiteOutcome("moments", scope, res.name, res.passed,
                                   res.witness)


def suite_congruence(qmax: int = 128, cache: dict | None = None):
    """Mod-6 residue of the solution count at u = 1, every field and class."""
    cache = cache if cache is not None else {}
    for tables in _field_iter(qmax, cache):
        for d in canonical_exponent_classes(tables.p, tables.q):
            res = check_residue_mod6(tables, d)
            yield SuiteOutcome("congruence", f"q={tables.q} d={d}",
                               res.name, res.passed, res.witness)


def suite_towers(p_only: int | None = None, n_only: int | None = None,
                 cache: dict | None = None):
    """Subfield tower bounds for p in {2, 3} and 1 < n <= 8 with a proper
    divisor, unless narrowed by p/n arguments."""
    cache = cache if cache is not None else {}
    ps = [p_only] if p_only else [2, 3]
    for p in ps:
        ns = [n_only] if n_only else [n for n in range(2, 9)
                                      if any(n % k == 0 for k in range(2, n + 1)
                                             if k < n and k > 1) or n == 2]
        for n in ns:
            q = p ** n
            for d in canonical_exponent_classes(p, q):
                report = tower_checks(p, n, d, field_cache=cache)
                scope = f"p={p} n={n} d={d}"
                for entry in report.extension_bounds:
                    yield SuiteOutcome(
                        "towers", scope,
                        f"extension_bound {entry['lower']}->{entry['upper']}",
                        entry["holds"], None if entry["holds"] else entry)
                for step in report.quadratic_steps:
                    if step["applicable"]:
                        yield SuiteOutcome(
                            "towers", scope,
                            f"quadratic_step {step['lower']}->{step['upper']}",
                            step["holds"], None if step["holds"] else step)
                hb = report.halving_bound
                if hb and hb.get("applicable"):
                    yield SuiteOutcome("towers", scope, "halving_bound",
                                       hb["holds"], None if hb["holds"] else hb)


def suite_valuation(qmax: int = 81, pairs: int = 1000, seed: int = 0,
                    cache: dict | None = None):
    """Positive valuation of every spectrum value, plus ring-level valuation
    facts: v_p(p) = 1, v_p(1 - zeta) = 1/(p-1), and multiplicativity on
    random pairs for p in {2, 3, 5}."""
    cache = cache if cache is not None else {}
    for p in (2, 3, 5, 7):
        ok = padic_valuation(CycInt.from_int(p, p)) == 1
        yield SuiteOutcome("valuation", f"p={p}", "valuation_of_p", ok,
                           None if ok else {"p": p})
        ok = padic_valuation(one_minus_zeta(p)) == Fraction(1, p - 1)
        yield SuiteOutcome("valuation", f"p={p}", "valuation_of_one_minus_zeta",
                           ok, None if ok else {"p": p})
    rng = random.Random(seed)
    per_p = pairs // 3 + 1
    for p in (2, 3, 5):
        for _ in range(per_p):
            x = _random_nonzero(rng, p)
            y = _random_nonzero(rng, p)
            ok = (padic_valuation(x * y)
                  == padic_valuation(x) + padic_valuation(y))
            if not ok:
                yield SuiteOutcome("valuation", f"p={p}", "multiplicativity",
                                   False, {"x": x.serialize(), "y": y.serialize()})
                return
    yield SuiteOutcome("valuation", "p in {2,3,5}",
                       f"multiplicativity ({3 * per_p} pairs)", True)
    for tables in _field_iter(qmax, cache):
        for d in canonical_exponent_classes(tables.p, tables.q):
            spectrum = weil_spectrum(tables, d)
            res = check_positive_valuation(spectrum)
            yield SuiteOutcome("valuation", f"q={tables.q} d={d}", res.name,
                               res.passed, res.witness)
            res = check_minimum_three_values(spectrum)
            yield SuiteOutcome("valuation", f"q={tables.q} d={d}", res.name,
                               res.passed, res.witness)


def _random_nonzero(rng: random.Random, p: int) -> CycInt:
    while True:
        scale = p ** rng.randrange(0, 4)
        coeffs = [rng.randrange(-60, 61) * scale for _ in range(p - 1)]
        x = CycInt(p, coeffs)
        if not x.is_zero():
            return x


def run_suite(suite: str, qmax: int = 81, p_only: int | None = None,
              n_only: int | None = None, seed: int = 0,
              cache: dict | None = None):
    """Dispatch by suite name; yields SuiteOutcome objects."""
    cache = cache if cache is not None else {}
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    if suite in ("algebra", "all"):
        yield from suite_algebra(qmax, cache)
    if suite in ("moments", "all"):
        yield from suite_moments(qmax, cache)
    if suite in ("congruence", "all"):
        yield from suite_congruence(max(qmax, 128) if suite == "all" else qmax,
                                    cache)
    if suite in ("towers", "all"):
        yield from suite_towers(p_only, n_only, cache)
    if suite in ("valuation", "all"):
        yield from suite_valuation(qmax, seed=seed, cache=cache)
