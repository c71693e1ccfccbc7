"""Seeded property sweeps over one system, shared by the CLI and the tests."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import HnsDef, HyperNum, check_properties, is_cyclic, multiply
from .errors import WrongSystemError
from .exponent import crosscheck, exp_closed, exp_matrix
from .spectral import assoc_matrix, circulant_eigenvalues, spectrum

ODE_STEP = 1e-5
ODE_FACTOR = 10.0
ODE_RANGE = 0.5
ORACLE_RTOL = 1e-9


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    skipped: str | None = None
    worst: float = 0.0
    bound: float | None = None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, err: float, bound: float) -> None:
        self.worst = max(self.worst, float(err))
        self.bound = bound
        if err <= bound:
            self.passed += 1
        else:
            self.failed += 1

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "worst": self.worst,
            "bound": self.bound,
        }


@dataclass
class VerifyReport:
    system: str
    trials: int
    tol: float
    seed: int
    suites: list[SuiteResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.suites)

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "trials": self.trials,
            "tol": self.tol,
            "seed": self.seed,
            "suites": [s.to_dict() for s in self.suites],
            "ok": self.ok,
        }


def multiset_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Largest gap under the optimal one-to-one matching of two eigenvalue lists."""
    cost = np.abs(np.asarray(a)[:, None] - np.asarray(b)[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def best_exp(m: HyperNum) -> HyperNum:
    try:
        return exp_closed(m)
    except WrongSystemError:
        return exp_matrix(m)


def agreement_suite(hns: HnsDef, rng, trials: int, tol: float) -> SuiteResult:
    res = SuiteResult("method-agreement")
    for _ in range(trials):
        report = crosscheck(HyperNum(rng.uniform(-2.0, 2.0, hns.dim), hns), tol)
        res.record(report.max_pairwise_deviation, tol)
    return res


def homomorphism_suite(hns: HnsDef, rng, trials: int, tol: float) -> SuiteResult:
    res = SuiteResult("homomorphism")
    for _ in range(trials):
        a = HyperNum(rng.uniform(-1.0, 1.0, hns.dim), hns)
        b = HyperNum(rng.uniform(-1.0, 1.0, hns.dim), hns)
        lhs = best_exp(a + b)
        rhs = multiply(best_exp(a), best_exp(b))
        res.record(np.max(np.abs(lhs.coeffs - rhs.coeffs)), tol)
    return res


def ode_suite(hns: HnsDef, rng, trials: int, h: float = ODE_STEP) -> SuiteResult:
    """Forward difference of ``t -> Exp(tM)`` at ``t = 1`` against ``M Exp(M)``."""
    res = SuiteResult("ode-finite-difference")
    for _ in range(trials):
        m = HyperNum(rng.uniform(-ODE_RANGE, ODE_RANGE, hns.dim), hns)
        now = best_exp(m)
        later = best_exp((1.0 + h) * m)
        deriv = (later.coeffs - now.coeffs) / h
        res.record(np.max(np.abs(deriv - multiply(m, now).coeffs)), ODE_FACTOR * h)
    return res


def oracle_suite(hns: HnsDef, rng, trials: int) -> SuiteResult:
    res = SuiteResult("spectrum-oracle")
    for _ in range(trials):
        m = HyperNum(rng.uniform(-2.0, 2.0, hns.dim), hns)
        numeric = spectrum(assoc_matrix(m)).values()
        exact = circulant_eigenvalues(m.coeffs)
        scale = max(1.0, float(np.max(np.abs(exact))))
        res.record(multiset_distance(numeric, exact) / scale, ORACLE_RTOL)
    return res


def run_verification(hns: HnsDef, trials: int = 100, tol: float = 1e-8, seed: int = 0) -> VerifyReport:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    report = VerifyReport(hns.name, trials, tol, seed)
    props = check_properties(hns)
    rngs = [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(4)]

    if props.has_unit:
        report.suites.append(agreement_suite(hns, rngs[0], trials, tol))
    else:
        report.suites.append(SuiteResult("method-agreement", skipped="no unit element"))

    if props.has_unit and props.commutative and props.associative:
        report.suites.append(homomorphism_suite(hns, rngs[1], trials, tol))
    else:
        report.suites.append(SuiteResult("homomorphism", skipped="needs a commutative, associative, unital system"))

    if props.has_unit:
        report.suites.append(ode_suite(hns, rngs[2], trials))
    else:
        report.suites.append(SuiteResult("ode-finite-difference", skipped="no unit element"))

    if is_cyclic(hns):
        report.suites.append(oracle_suite(hns, rngs[3], trials))
    else:
        report.suites.append(SuiteResult("spectrum-oracle", skipped="not a cyclic group algebra"))
    return report
