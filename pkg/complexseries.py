# complexseries.py
"""
Truncated Taylor series with complex coefficients.

A ``ComplexSeries`` of order ``N`` stores ``c_0 .. c_N`` and stands for
``c_0 + c_1 z + ... + c_N z^N``; coefficients past ``N`` are unknown, not zero.
Binary operations truncate to the smaller order of their operands, so the
error of a result is always one-sided: every retained coefficient is exact up
to floating point.
"""

import cmath
import logging
from typing import Any, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer, field_validator

import config
from exceptions import CoefficientOverflowError, ZeroConstantTermError, ZeroOrderError

logger = logging.getLogger(__name__)

OVERFLOW_GUARD = 1e150
ZERO_TOL = 1e-12


class ComplexSeries(BaseModel):
    """An immutable truncated power series; ``order = len(coeffs) - 1``."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coeffs: np.ndarray

    @field_validator("coeffs", mode="before")
    @classmethod
    def _as_complex_array(cls, value: Any) -> np.ndarray:
        raw = np.asarray(value)
        if raw.ndim == 2 and raw.shape[1] == 2 and not np.iscomplexobj(raw):
            # JSON form: one [re, im] pair per degree
            array = raw[:, 0].astype(float) + 1j * raw[:, 1].astype(float)
        else:
            array = np.array(raw, dtype=complex).ravel()
        if array.size == 0:
            raise ValueError("a series needs at least the constant coefficient")
        magnitudes = np.abs(array)
        if not np.all(np.isfinite(magnitudes)) or magnitudes.max() > OVERFLOW_GUARD:
            raise CoefficientOverflowError(
                f"coefficient magnitude {magnitudes.max():.3e} exceeds {OVERFLOW_GUARD:.0e}"
            )
        array = array.copy()
        array.setflags(write=False)
        return array

    @field_serializer("coeffs")
    def _serialize_coeffs(self, coeffs: np.ndarray) -> list[list[float]]:
        return [[float(c.real), float(c.imag)] for c in coeffs]

    # --- Constructors ---

    @classmethod
    def constant(cls, value: complex, order: int = config.SERIES_ORDER) -> "ComplexSeries":
        coeffs = np.zeros(order + 1, dtype=complex)
        coeffs[0] = value
        return cls(coeffs=coeffs)

    @classmethod
    def variable(cls, order: int = config.SERIES_ORDER) -> "ComplexSeries":
        """The series of ``z`` itself."""
        coeffs = np.zeros(order + 1, dtype=complex)
        if order >= 1:
            coeffs[1] = 1.0
        return cls(coeffs=coeffs)

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[float]]) -> "ComplexSeries":
        return cls(coeffs=[complex(re, im) for re, im in pairs])

    def to_pairs(self) -> list[list[float]]:
        return self._serialize_coeffs(self.coeffs)

    # --- Basic Properties ---

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, degree: int) -> complex:
        return complex(self.coeffs[degree])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComplexSeries):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self) -> str:
        return f"ComplexSeries(order={self.order}, coeffs={np.array2string(self.coeffs[:6], precision=4)}...)"

    def truncate(self, order: int) -> "ComplexSeries":
        return ComplexSeries(coeffs=self.coeffs[: order + 1])

    def scaled(self, factor: complex) -> "ComplexSeries":
        return ComplexSeries(coeffs=self.coeffs * factor)

    def shift_down(self) -> "ComplexSeries":
        """Divide by ``z``; the caller guarantees ``c_0 = 0``."""
        if self.order == 0:
            raise ZeroOrderError("cannot divide an order-0 series by z")
        return ComplexSeries(coeffs=self.coeffs[1:])

    def is_polynomial_of_degree(self, degree: int) -> bool:
        return bool(np.all(self.coeffs[degree + 1 :] == 0))

    # --- Operators ---

    def __add__(self, other: "ComplexSeries") -> "ComplexSeries":
        return add(self, other)

    def __sub__(self, other: "ComplexSeries") -> "ComplexSeries":
        return add(self, other.scaled(-1.0))

    def __neg__(self) -> "ComplexSeries":
        return self.scaled(-1.0)

    def __mul__(self, other: "ComplexSeries") -> "ComplexSeries":
        return mul(self, other)

    def __truediv__(self, other: "ComplexSeries") -> "ComplexSeries":
        return div(self, other)

    def __call__(self, z):
        return evaluate(self, z)


# --- Operations ---


def add(s: ComplexSeries, t: ComplexSeries) -> ComplexSeries:
    order = min(s.order, t.order)
    return ComplexSeries(coeffs=s.coeffs[: order + 1] + t.coeffs[: order + 1])


def mul(s: ComplexSeries, t: ComplexSeries) -> ComplexSeries:
    """Cauchy product truncated at the smaller order."""
    order = min(s.order, t.order)
    product = np.convolve(s.coeffs[: order + 1], t.coeffs[: order + 1])
    return ComplexSeries(coeffs=product[: order + 1])


def derivative(s: ComplexSeries) -> ComplexSeries:
    if s.order == 0:
        raise ZeroOrderError("derivative of an order-0 series is undefined")
    degrees = np.arange(1, s.order + 1)
    return ComplexSeries(coeffs=degrees * s.coeffs[1:])


def antiderivative(s: ComplexSeries) -> ComplexSeries:
    """The primitive vanishing at 0 (the operator of integration from 0 to z)."""
    coeffs = np.zeros(s.order + 2, dtype=complex)
    coeffs[1:] = s.coeffs / np.arange(1, s.order + 2)
    return ComplexSeries(coeffs=coeffs)


def exp_series(s: ComplexSeries) -> ComplexSeries:
    """``exp(s)`` from the recurrence ``n E_n = sum_k k s_k E_{n-k}``."""
    n_max = s.order
    weighted = np.arange(n_max + 1) * s.coeffs
    result = np.zeros(n_max + 1, dtype=complex)
    result[0] = cmath.exp(s.coeffs[0])
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(1, n_max + 1):
            result[n] = np.dot(weighted[1 : n + 1], result[n - 1 :: -1][:n]) / n
    return ComplexSeries(coeffs=result)


def log_series(s: ComplexSeries) -> ComplexSeries:
    """Principal-branch ``log(s)`` from ``s L' = s'``."""
    c0 = s.coeffs[0]
    if abs(c0) <= ZERO_TOL:
        raise ZeroConstantTermError(f"log of a series with constant term {c0}")
    n_max = s.order
    result = np.zeros(n_max + 1, dtype=complex)
    result[0] = cmath.log(c0)
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(1, n_max + 1):
            k = np.arange(1, n)
            correction = np.dot(k * result[1:n], s.coeffs[n - 1 : 0 : -1]) if n > 1 else 0.0
            result[n] = (n * s.coeffs[n] - correction) / (n * c0)
    return ComplexSeries(coeffs=result)


def div(s: ComplexSeries, t: ComplexSeries) -> ComplexSeries:
    """Cauchy quotient ``s / t`` truncated at the smaller order."""
    t0 = t.coeffs[0]
    if abs(t0) <= ZERO_TOL:
        raise ZeroConstantTermError(f"division by a series with constant term {t0}")
    order = min(s.order, t.order)
    num = s.coeffs[: order + 1]
    den = t.coeffs[: order + 1]
    result = np.zeros(order + 1, dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(order + 1):
            result[n] = (num[n] - np.dot(result[:n], den[n:0:-1])) / t0
    return ComplexSeries(coeffs=result)


def evaluate(s: ComplexSeries, z):
    """Horner evaluation; accepts a scalar or an array of points."""
    values = np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), s.coeffs)
    if np.ndim(values) == 0:
        return complex(values)
    return values
