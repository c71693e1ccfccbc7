"""Associated matrix of ``X' = M X``, its spectrum, and direct-sum classification."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .core import HnsDef, HyperNum
from .errors import ClassificationError, SpectralPairingError

PAIR_TOL = 1e-9
DEFAULT_TRIALS = 8


@dataclass(frozen=True, eq=False)
class AssocMatrix:
    entries: np.ndarray
    source: HyperNum


def assoc_matrix(m: HyperNum) -> AssocMatrix:
    """Left-multiplication matrix Psi with ``vec(M X) = Psi @ vec(X)``.

    ``Psi[k, j] = sum_i m_i * coeff(i, j -> k)``.
    """
    psi = np.einsum("i,ijk->kj", m.coeffs, m.system.structure)
    psi.flags.writeable = False
    return AssocMatrix(psi, m)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues split into real roots and conjugate pairs stored with ``im > 0``."""

    reals: tuple[float, ...]
    pairs: tuple[tuple[float, float], ...]

    @property
    def n(self) -> int:
        return len(self.reals) + 2 * len(self.pairs)

    def values(self) -> np.ndarray:
        out = [complex(r) for r in self.reals]
        for re, im in self.pairs:
            out += [complex(re, im), complex(re, -im)]
        return np.array(out, dtype=complex)

    def to_dict(self) -> dict:
        return {"reals": list(self.reals), "pairs": [list(p) for p in self.pairs]}


def classify_eigenvalues(w: np.ndarray, pair_tol: float = PAIR_TOL) -> Spectrum:
    w = np.asarray(w, dtype=complex)
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    cutoff = pair_tol * scale if scale > 0 else pair_tol
    is_real = np.abs(w.imag) <= cutoff
    reals = sorted(float(x) for x in w[is_real].real)
    upper = sorted((z for z in w[~is_real] if z.imag > 0), key=lambda z: (z.real, z.imag))
    lower = [z for z in w[~is_real] if z.imag < 0]
    if len(upper) != len(lower):
        raise SpectralPairingError(
            f"{len(upper)} eigenvalues above the real axis but {len(lower)} below; cannot form conjugate pairs"
        )
    pairs = []
    for z in upper:
        # nearest remaining conjugate partner
        j = int(np.argmin([abs(z.conjugate() - y) for y in lower]))
        y = lower.pop(j)
        pairs.append(((z.real + y.real) / 2, (z.imag - y.imag) / 2))
    return Spectrum(tuple(reals), tuple(pairs))


def spectrum(psi: AssocMatrix | np.ndarray, pair_tol: float = PAIR_TOL) -> Spectrum:
    """Numerical eigenvalues of Psi, real roots coerced within ``pair_tol * max|lambda|``."""
    entries = psi.entries if isinstance(psi, AssocMatrix) else np.asarray(psi, dtype=float)
    return classify_eigenvalues(np.linalg.eigvals(entries), pair_tol)


def circulant_eigenvalues(m: Sequence[float]) -> np.ndarray:
    """``lambda_k = sum_j m_{j+1} * omega**(j*k)`` with ``omega = exp(2*pi*i/n)``.

    Evaluated as an explicit sum over the roots of unity so it stays
    independent of both the eigensolver and any FFT routine.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    if n < 1:
        raise ValueError("need at least one coefficient")
    jk = np.outer(np.arange(n), np.arange(n)) % n
    angle = 2 * np.pi * jk / n
    omega = np.cos(angle) + 1j * np.sin(angle)
    omega[jk == 0] = 1.0
    return m @ omega


class IsoSignature(NamedTuple):
    r_count: int
    c_count: int
    label: str

    @classmethod
    def of(cls, r: int, c: int) -> IsoSignature:
        # a lone summand keeps its exponent ("R^1"); in a sum "^1" is dropped
        if r == 0 or c == 0:
            sym, count = ("C", c) if r == 0 else ("R", r)
            return cls(r, c, f"{sym}^{count}")
        parts = []
        for sym, count in (("R", r), ("C", c)):
            if count == 1:
                parts.append(sym)
            elif count > 1:
                parts.append(f"{sym}^{count}")
        return cls(r, c, " ⊕ ".join(parts))

    @classmethod
    def from_spectrum(cls, spec: Spectrum) -> IsoSignature:
        return cls.of(len(spec.reals), len(spec.pairs))


def iso_signature(hns: HnsDef, trials: int = DEFAULT_TRIALS, seed: int = 0) -> IsoSignature:
    """Direct-sum type ``R^a ⊕ C^b`` read off the spectra of random elements.

    A single element can be degenerate (the unit has an all-real spectrum),
    so the signature with the most complex pairs over all trials wins.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    best = None
    failures = []
    for _ in range(trials):
        m = HyperNum(rng.uniform(-1.0, 1.0, hns.dim), hns)
        try:
            sig = IsoSignature.from_spectrum(spectrum(assoc_matrix(m)))
        except SpectralPairingError as exc:
            failures.append(str(exc))
            continue
        if sig.r_count + 2 * sig.c_count != hns.dim:
            raise ClassificationError(f"signature {sig.label} does not account for dimension {hns.dim}")
        if best is None or sig.c_count > best.c_count:
            best = sig
    if best is None:
        raise ClassificationError(f"no trial produced a classifiable spectrum for {hns.name}: {failures[0]}")
    return best


_S5 = math.sqrt(5.0)


class DiscriminantForm(NamedTuple):
    ki: np.ndarray
    eigenvalues: np.ndarray


def discriminant_form_g51() -> DiscriminantForm:
    """Matrix KI of the quadratic form under the root ``a ± sqrt(b)`` of G51.

    KI has rank one, so every minor of order two or more vanishes and the
    sign pattern of leading minors says little; definiteness is read from the
    eigenvalues instead: ``{0, 0, 0, -40}``.
    """
    p, q, r = 2 * _S5 + 10, 4 * _S5, 2 * _S5 - 10
    ki = np.array(
        [
            [-p, -q, q, p],
            [-q, r, -r, q],
            [q, -r, r, -q],
            [p, q, -q, -p],
        ]
    )
    return DiscriminantForm(ki, np.linalg.eigvalsh(ki))


class DiscriminantB(NamedTuple):
    quadratic_value: float
    factored_value: float


def discriminant_b(m: Sequence[float]) -> DiscriminantB:
    """Evaluate ``b`` for ``(m2, m3, m4, m5)`` in expanded and in factored form.

    The expanded polynomial uses ``-10*m3**2`` for the squared-m3 term, the
    coefficient that makes it equal to ``v @ KI @ v / 4``. The factored form is
    kept verbatim, scale and signs included; the two do not agree (see tests).
    """
    m2, m3, m4, m5 = (float(x) for x in m)
    s = _S5
    quad = (
        -2 * s * m2**2 - 10 * m2**2 + 4 * s * m5 * m2 + 20 * m5 * m2
        - 8 * s * m3 * m2 + 8 * s * m4 * m2 - 10 * m5**2
        + 2 * s * m4**2 + 2 * s * m3**2 - 8 * s * m4 * m5 - 10 * m4**2
        - 2 * s * m5**2 - 10 * m3**2 + 20 * m3 * m4
        + 8 * s * m3 * m5 - 4 * s * m3 * m4
    ) / 4
    lin = -2 * m5 + 2 * m2 - s * m3 - s * m4 - m3 + m4
    factored = -((2 * s + 10) / 64) * lin**2
    return DiscriminantB(quad, factored)
