"""Hypercomplex number systems defined by structure-constant tables.

A system of dimension ``n`` is stored as a three-level list: ``table[i][j]``
is the list of ``(k, c)`` pairs meaning ``e_i * e_j = sum(c * e_k)``.
Basis indices are 1-based everywhere in the public API.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    InvalidDimensionError,
    NoUnitError,
    SystemMismatchError,
    TableError,
)

Cell = tuple[tuple[int, float], ...]

_UNIT_TOL = 1e-12


def _normalize_table(dim: int, table) -> tuple[tuple[Cell, ...], ...]:
    if len(table) != dim:
        raise TableError(f"table has {len(table)} rows, expected {dim}")
    rows = []
    for i, row in enumerate(table, start=1):
        if len(row) != dim:
            raise TableError(f"row {i} has {len(row)} cells, expected {dim}")
        cells = []
        for j, cell in enumerate(row, start=1):
            seen = set()
            pairs = []
            for entry in cell:
                try:
                    k, c = entry
                except (TypeError, ValueError):
                    raise TableError(f"cell ({i},{j}): entry {entry!r} is not a (k, c) pair") from None
                if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
                    raise TableError(f"cell ({i},{j}): target index {k!r} is not an integer")
                k = int(k)
                if not 1 <= k <= dim:
                    raise TableError(f"cell ({i},{j}): target index {k} out of range 1..{dim}")
                if k in seen:
                    raise TableError(f"cell ({i},{j}): duplicate target index {k}")
                if isinstance(c, bool) or not isinstance(c, (int, float, np.integer, np.floating)):
                    raise TableError(f"cell ({i},{j}): coefficient {c!r} is not a number")
                c = float(c)
                if not math.isfinite(c):
                    raise TableError(f"cell ({i},{j}): coefficient {c!r} is not finite")
                seen.add(k)
                pairs.append((k, c))
            cells.append(tuple(pairs))
        rows.append(tuple(cells))
    return tuple(rows)


@dataclass(frozen=True)
class HnsDef:
    """A finite-dimensional real algebra given by its Cayley table.

    ``unit_index`` is checked against the table on construction. When it is
    omitted, the basis element acting as a two-sided identity (if any) is
    filled in.
    """

    name: str
    dim: int
    table: tuple[tuple[Cell, ...], ...]
    unit_index: int | None = None

    def __post_init__(self):
        if isinstance(self.dim, bool) or not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise InvalidDimensionError(f"dimension must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "table", _normalize_table(self.dim, self.table))
        found = self._basis_unit()
        if self.unit_index is None:
            object.__setattr__(self, "unit_index", found)
        elif self.unit_index != found:
            raise TableError(
                f"system {self.name!r}: stored unit_index {self.unit_index} is not a two-sided identity"
                + (f" (the table's identity is e{found})" if found else "")
            )

    @cached_property
    def structure(self) -> np.ndarray:
        """Dense read-only tensor ``T[i, j, k]`` (0-based) of structure constants."""
        n = self.dim
        t = np.zeros((n, n, n))
        for i, row in enumerate(self.table):
            for j, cell in enumerate(row):
                for k, c in cell:
                    t[i, j, k - 1] = c
        t.flags.writeable = False
        return t

    def _basis_unit(self) -> int | None:
        t = self.structure
        eye = np.eye(self.dim)
        for u in range(self.dim):
            if np.array_equal(t[u], eye) and np.array_equal(t[:, u, :], eye):
                return u + 1
        return None

    @cached_property
    def unit(self) -> np.ndarray | None:
        """Coefficients of the two-sided identity, or None when there is none.

        The identity need not be a basis element (``W+C`` has ``e1 + e3``),
        so this solves ``sum_u x_u L(e_u) = I`` and ``sum_u x_u R(e_u) = I``
        in the least-squares sense and accepts an exact fit.
        """
        n = self.dim
        if self.unit_index is not None:
            x = np.zeros(n)
            x[self.unit_index - 1] = 1.0
        else:
            t = self.structure
            # left: x_u * T[u, j, k] = delta_jk ; right: x_u * T[j, u, k] = delta_jk
            a = np.vstack([t.reshape(n, n * n).T, t.transpose(1, 0, 2).reshape(n, n * n).T])
            b = np.concatenate([np.eye(n).ravel(), np.eye(n).ravel()])
            x, *_ = np.linalg.lstsq(a, b, rcond=None)
            residual = np.max(np.abs(a @ x - b))
            if residual > _UNIT_TOL:
                return None
            snapped = np.round(x, 12) + 0.0
            if np.max(np.abs(a @ snapped - b)) <= residual:
                x = snapped
        x.flags.writeable = False
        return x

    def number(self, coeffs: Sequence[float]) -> HyperNum:
        return HyperNum(coeffs, self)

    def zero(self) -> HyperNum:
        return HyperNum(np.zeros(self.dim), self)

    def basis(self, i: int) -> HyperNum:
        if not 1 <= i <= self.dim:
            raise IndexError(f"basis index {i} out of range 1..{self.dim}")
        v = np.zeros(self.dim)
        v[i - 1] = 1.0
        return HyperNum(v, self)

    def same_as(self, other: HnsDef) -> bool:
        """True when both describe the same multiplication (names ignored)."""
        return self is other or (
            self.dim == other.dim and np.array_equal(self.structure, other.structure)
        )


@dataclass(frozen=True, eq=False)
class HyperNum:
    """A hypercomplex number in list form, bound to its system."""

    coeffs: np.ndarray
    system: HnsDef = field(repr=False)

    def __post_init__(self):
        v = np.array(self.coeffs, dtype=float)
        if v.shape != (self.system.dim,):
            raise SystemMismatchError(
                f"expected {self.system.dim} coefficients for {self.system.name}, got shape {v.shape}"
            )
        v.flags.writeable = False
        object.__setattr__(self, "coeffs", v)

    def __eq__(self, other):
        if not isinstance(other, HyperNum):
            return NotImplemented
        return self.system.same_as(other.system) and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def __repr__(self):
        return f"HyperNum({self.system.name}, {self.coeffs.tolist()})"

    def __add__(self, other):
        if not isinstance(other, HyperNum):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, HyperNum):
            return NotImplemented
        return add(self, -other)

    def __neg__(self):
        return HyperNum(-self.coeffs, self.system)

    def __mul__(self, other):
        if isinstance(other, HyperNum):
            return multiply(self, other)
        if isinstance(other, (int, float, np.integer, np.floating)):
            return HyperNum(self.coeffs * other, self.system)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return HyperNum(self.coeffs * other, self.system)
        return NotImplemented

    def __pow__(self, k):
        return power(self, k)

    def norm_inf(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def tolist(self) -> list[float]:
        return self.coeffs.tolist()


def cyclic_group_algebra(n: int) -> HnsDef:
    """Group algebra of Z_n: ``e_i * e_j = e_{((i+j-2) mod n) + 1}``."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidDimensionError(f"cyclic group algebra needs n >= 1, got {n!r}")
    n = int(n)
    table = [[[((i + j - 2) % n + 1, 1.0)] for j in range(1, n + 1)] for i in range(1, n + 1)]
    name = {4: "G47", 5: "G51"}.get(n, f"Z{n}")
    return HnsDef(name, n, table, unit_index=1)


def is_cyclic(hns: HnsDef) -> bool:
    return hns.same_as(cyclic_group_algebra(hns.dim))


def _check_same(a: HyperNum, b: HyperNum) -> None:
    if not a.system.same_as(b.system):
        raise SystemMismatchError(f"operands belong to {a.system.name} and {b.system.name}")


def unit_element(hns: HnsDef) -> HyperNum:
    u = hns.unit
    if u is None:
        raise NoUnitError(f"system {hns.name!r} has no two-sided identity")
    return HyperNum(u, hns)


def add(a: HyperNum, b: HyperNum) -> HyperNum:
    _check_same(a, b)
    return HyperNum(a.coeffs + b.coeffs, a.system)


def product_coeffs(structure: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Raw structure-constant product on coefficient arrays.

    Terms are accumulated over unordered basis pairs ``i <= j`` in ascending
    order, each pair contributing ``a_i b_j c(i,j) + a_j b_i c(j,i)``. Swapping
    the operands then produces the identical sequence of floating-point
    operations whenever the table is commutative, so ``a*b == b*a`` bitwise.
    """
    n = a.shape[0]
    s = np.outer(a, b)[:, :, None] * structure
    if n == 1:
        return s[0, 0]
    u = s + s.transpose(1, 0, 2)
    iu = np.triu_indices(n, 1)
    di = np.arange(n)
    terms = np.concatenate([s[di, di], u[iu]], axis=0)
    return terms.sum(axis=0)


def multiply(a: HyperNum, b: HyperNum) -> HyperNum:
    _check_same(a, b)
    return HyperNum(product_coeffs(a.system.structure, a.coeffs, b.coeffs), a.system)


def power(a: HyperNum, k: int) -> HyperNum:
    """``a**0`` is the unit, ``a**k = a * a**(k-1)``."""
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
        raise ValueError(f"exponent must be a nonnegative integer, got {k!r}")
    if k == 0:
        return unit_element(a.system)
    result = a
    for _ in range(k - 1):
        result = multiply(a, result)
    return result


def _fmt(c: float) -> str:
    return f"{c:.12g}"


def natural_form(a: HyperNum, symbol: str = "e") -> str:
    """Render ``a`` as ``a1*e1 + a2*e2 + ...``, dropping zero terms."""
    parts = []
    for i, c in enumerate(a.coeffs, start=1):
        if c == 0:
            continue
        mag = abs(c)
        term = f"{symbol}{i}" if mag == 1 else f"{_fmt(mag)}*{symbol}{i}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


def generic_form(n: int, coeff: str = "a", symbol: str = "e") -> str:
    """Symbolic template ``a1*e1 + ... + an*en`` for a generic number."""
    return " + ".join(f"{coeff}{i}*{symbol}{i}" for i in range(1, n + 1))


class Properties(NamedTuple):
    commutative: bool
    associative: bool
    has_unit: bool


def check_properties(hns: HnsDef, tol: float = 1e-12) -> Properties:
    t = hns.structure
    commutative = bool(np.all(np.abs(t - t.transpose(1, 0, 2)) <= tol))
    # (e_i e_j) e_k  vs  e_i (e_j e_k)
    left = np.einsum("ijp,pkq->ijkq", t, t)
    right = np.einsum("jkp,ipq->ijkq", t, t)
    associative = bool(np.all(np.abs(left - right) <= tol))
    return Properties(commutative, associative, hns.unit is not None)
