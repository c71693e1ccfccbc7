"""Exponential of a hypercomplex argument, computed several independent ways.

``Exp(M)`` is the value at ``t = 1`` of the solution of ``X' = M X`` with
``X(0)`` the unit element. Every method here evaluates that same object:

* ``series``  -- partial sums of ``sum M**s / s!``
* ``matrix``  -- ``expm(Psi) @ unit`` for the associated matrix Psi
* ``eigen``   -- real fundamental system of ``X' = Psi X`` pinned at ``t = 0``
* ``closed``  -- explicit formulas for G47 and G51
* ``dft``     -- diagonalisation of the circulant Psi of a cyclic group algebra
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .core import HyperNum, is_cyclic, product_coeffs, unit_element
from .errors import (
    ConsistencyError,
    DegenerateSpectrumError,
    HnsError,
    NonConvergenceError,
    WrongSystemError,
)
from .spectral import assoc_matrix, circulant_eigenvalues

METHODS = ("series", "matrix", "eigen", "closed", "dft")

SERIES_TOL = 1e-14
SERIES_MAX_TERMS = 200
EIGEN_TOL = 1e-8
DFT_RESIDUE = 1e-10


def exp_series(m: HyperNum, tol: float = SERIES_TOL, max_terms: int = SERIES_MAX_TERMS) -> tuple[HyperNum, int]:
    """Sum ``M**s / s!`` until the newest term has sup-norm ``<= tol``.

    Returns the sum and the number of terms included. The stopping term
    itself is not added. Components are summed with ``math.fsum``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    term = unit_element(m.system).coeffs.copy()
    structure = m.system.structure
    # left multiplication by M, one column per basis product M * e_j
    left = np.column_stack([product_coeffs(structure, m.coeffs, e) for e in np.eye(m.system.dim)])
    terms = [term]
    s = 1
    while True:
        term = (left @ term) / s
        if np.max(np.abs(term)) <= tol:
            break
        terms.append(term)
        s += 1
        if s > max_terms:
            raise NonConvergenceError(f"series did not reach tol={tol:g} within {max_terms} terms")
    stacked = np.array(terms)
    total = np.array([math.fsum(col) for col in stacked.T])
    return HyperNum(total, m.system), len(terms)


def exp_matrix(m: HyperNum) -> HyperNum:
    unit = unit_element(m.system).coeffs
    return HyperNum(scipy.linalg.expm(assoc_matrix(m).entries) @ unit, m.system)


def exp_eigen(m: HyperNum, tol: float = EIGEN_TOL) -> HyperNum:
    """Fundamental-solution method.

    Each real eigenvalue ``lam`` with eigenvector ``v`` gives the mode
    ``v e^{lam t}``; each pair ``a ± ib`` with eigenvector ``p + iq`` gives
    ``e^{at}(p cos bt - q sin bt)`` and ``e^{at}(p sin bt + q cos bt)``.
    The mode constants come from one dense solve against the unit at
    ``t = 0``. A defective Psi leaves the mode matrix (near) singular, which
    is reported instead of being patched up with Jordan chains.
    """
    unit = unit_element(m.system).coeffs
    psi = assoc_matrix(m).entries
    w, vecs = np.linalg.eig(psi)
    at0, at1 = [], []
    # eig on a real matrix returns exact conjugate pairs and exactly real roots
    for lam, v in zip(w, vecs.T):
        if lam.imag == 0:
            v = v.real
            at0.append(v)
            at1.append(math.exp(lam.real) * v)
        elif lam.imag > 0:
            a, b = lam.real, lam.imag
            p, q = v.real, v.imag
            ea, cb, sb = math.exp(a), math.cos(b), math.sin(b)
            at0 += [p, q]
            at1 += [ea * (p * cb - q * sb), ea * (p * sb + q * cb)]
    phi0 = np.array(at0).T
    phi1 = np.array(at1).T
    if phi0.shape != psi.shape:
        raise DegenerateSpectrumError("eigenvalues do not form complete conjugate pairs")
    cond = np.linalg.cond(phi0)
    if not np.isfinite(cond) or cond > 1.0 / tol:
        raise DegenerateSpectrumError(f"mode matrix condition number {cond:.3g} exceeds {1.0 / tol:.3g}")
    consts = np.linalg.solve(phi0, unit)
    return HyperNum(phi1 @ consts, m.system)


def _require(m: HyperNum, n: int, label: str) -> None:
    if m.system.dim != n or not is_cyclic(m.system):
        raise WrongSystemError(f"{label} closed form applies only to {label}, not {m.system.name}")


def exp_closed_g47(m: HyperNum, swapped_beta: bool = False) -> HyperNum:
    """Closed form on the group algebra of Z_4.

    With ``a1, a2 = m1 ± m3`` and ``b1, b2 = m2 ± m4``::

        Exp = 1/2 [ (e^a1 cosh b1 + e^a2 cos b2) e1 + (e^a1 sinh b1 + e^a2 sin b2) e2
                  + (e^a1 cosh b1 - e^a2 cos b2) e3 + (e^a1 sinh b1 - e^a2 sin b2) e4 ]

    ``swapped_beta=True`` substitutes ``b1, b2 = m3 ± m4`` instead; that
    variant is wrong for generic input and exists only so tests can show it.
    """
    _require(m, 4, "G47")
    m1, m2, m3, m4 = m.coeffs
    a1, a2 = m1 + m3, m1 - m3
    b1, b2 = (m3 + m4, m3 - m4) if swapped_beta else (m2 + m4, m2 - m4)
    e1, e2 = math.exp(a1), math.exp(a2)
    ch, sh, c, s = math.cosh(b1), math.sinh(b1), math.cos(b2), math.sin(b2)
    out = 0.5 * np.array([e1 * ch + e2 * c, e1 * sh + e2 * s, e1 * ch - e2 * c, e1 * sh - e2 * s])
    return HyperNum(out, m.system)


@dataclass(frozen=True, eq=False)
class G51Constants:
    """The 25 mode constants of the G51 closed form, one entry per basis index."""

    c1: np.ndarray
    c2: np.ndarray
    f2: np.ndarray
    c3: np.ndarray
    f3: np.ndarray

    def columns(self) -> dict[str, np.ndarray]:
        return {"C1": self.c1, "C2": self.c2, "F2": self.f2, "C3": self.c3, "F3": self.f3}


def g51_constants() -> G51Constants:
    # Fourier vectors of order 5: component i pairs with angle 2*pi*k*(i-1)/5
    i = np.arange(5)
    theta = 2 * np.pi * i / 5
    return G51Constants(
        c1=np.full(5, 0.2),
        c2=0.4 * np.cos(theta),
        f2=0.4 * np.sin(theta),
        c3=0.4 * np.cos(2 * theta),
        f3=0.4 * np.sin(2 * theta),
    )


_G51 = g51_constants()


def exp_closed_g51(m: HyperNum) -> HyperNum:
    """Closed form on the group algebra of Z_5.

    ``Exp_i = C1_i e^l1 + e^re2 (C2_i cos im2 + F2_i sin im2) + e^re4 (C3_i cos im4 + F3_i sin im4)``
    with ``l1 = sum(m)`` and ``re2 + i im2``, ``re4 + i im4`` the circulant
    eigenvalues at k = 1 and k = 2. The imaginary parts keep their sign from
    that fixed choice of k; flipping one would require flipping its F column.

    Because ``C1_i + C2_i + C3_i`` is 1 for i = 1 and 0 otherwise, the cosine
    terms are accumulated relative to ``e^l1``. That makes ``Exp(c e1)``
    come out as exactly ``e^c e1``.
    """
    _require(m, 5, "G51")
    lam = circulant_eigenvalues(m.coeffs)
    e1 = math.exp(lam[0].real)
    r2, i2 = lam[1].real, lam[1].imag
    r4, i4 = lam[2].real, lam[2].imag
    p2, q2 = math.exp(r2) * math.cos(i2), math.exp(r2) * math.sin(i2)
    p4, q4 = math.exp(r4) * math.cos(i4), math.exp(r4) * math.sin(i4)
    k = _G51
    out = k.c2 * (p2 - e1) + k.f2 * q2 + k.c3 * (p4 - e1) + k.f3 * q4
    out[0] += e1
    return HyperNum(out, m.system)


def exp_closed(m: HyperNum) -> HyperNum:
    if m.system.dim == 4 and is_cyclic(m.system):
        return exp_closed_g47(m)
    if m.system.dim == 5 and is_cyclic(m.system):
        return exp_closed_g51(m)
    raise WrongSystemError(f"no closed form is available for {m.system.name}")


def exp_cyclic_dft(m: HyperNum) -> HyperNum:
    """Exp on any cyclic group algebra via its circulant eigenvalues.

    The coefficients are the inverse transform of ``exp(lambda_k)``; in the
    ``omega = e^{+2 pi i / n}`` convention of the eigenvalues that inverse is
    numpy's forward FFT divided by n.
    """
    if not is_cyclic(m.system):
        raise WrongSystemError(f"{m.system.name} is not a cyclic group algebra")
    lam = circulant_eigenvalues(m.coeffs)
    z = np.fft.fft(np.exp(lam)) / m.system.dim
    residue = float(np.max(np.abs(z.imag)))
    if residue > DFT_RESIDUE * max(1.0, float(np.max(np.abs(z.real)))):
        raise ConsistencyError(f"imaginary residue {residue:.3g} after inverse transform")
    return HyperNum(z.real, m.system)


def applicable_methods(system) -> list[str]:
    if system.unit is None:
        return []
    methods = ["series", "matrix", "eigen"]
    if is_cyclic(system):
        if system.dim in (4, 5):
            methods.append("closed")
        methods.append("dft")
    return methods


def exponential(m: HyperNum, method: str = "matrix") -> HyperNum:
    if method == "series":
        return exp_series(m)[0]
    if method == "matrix":
        return exp_matrix(m)
    if method == "eigen":
        return exp_eigen(m)
    if method == "closed":
        return exp_closed(m)
    if method == "dft":
        return exp_cyclic_dft(m)
    raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")


@dataclass
class ExpReport:
    input: HyperNum
    results: dict[str, HyperNum] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)
    max_pairwise_deviation: float = 0.0
    terms_used: int | None = None
    tol: float = 1e-8

    @property
    def flagged(self) -> bool:
        return self.max_pairwise_deviation > self.tol or not self.results

    def to_dict(self) -> dict:
        return {
            "system": self.input.system.name,
            "coeffs": self.input.tolist(),
            "results": {k: v.tolist() for k, v in self.results.items()},
            "errors": dict(self.errors),
            "deviation": self.max_pairwise_deviation,
            "terms_used": self.terms_used,
            "tol": self.tol,
            "ok": not self.flagged,
        }


def crosscheck(m: HyperNum, tol: float = 1e-8) -> ExpReport:
    """Run every applicable method on ``m`` and record the worst disagreement."""
    report = ExpReport(m, tol=tol)
    if m.system.unit is None:
        report.errors["all"] = f"system {m.system.name!r} has no unit element"
        report.max_pairwise_deviation = math.inf
        return report
    for method in applicable_methods(m.system):
        try:
            if method == "series":
                value, report.terms_used = exp_series(m)
            else:
                value = exponential(m, method)
        except HnsError as exc:
            report.errors[method] = f"{type(exc).__name__}: {exc}"
            continue
        report.results[method] = value
    report.max_pairwise_deviation = max(
        (float(np.max(np.abs(a.coeffs - b.coeffs))) for a, b in itertools.combinations(report.results.values(), 2)),
        default=0.0,
    )
    return report
