"""Complex approximations carrying an absolute error bound."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

DEFAULT_PRECISION = 53
HIGH_PRECISION = 128

# slack for rounding in the bound arithmetic itself (done in binary64)
_SLACK = 1.0 + 2.0 ** -40


@dataclass(frozen=True)
class ComplexApprox:
    """value is within err of the true complex number (absolute error)."""

    value: mpmath.mpc
    err: float
    precision: int = DEFAULT_PRECISION

    @property
    def re(self) -> mpmath.mpf:
        return self.value.real

    @property
    def im(self) -> mpmath.mpf:
        return self.value.imag

    @classmethod
    def exact(cls, z, precision: int = DEFAULT_PRECISION) -> "ComplexApprox":
        with mpmath.workprec(precision):
            v = mpmath.mpc(z)
        return cls(v, 0.0, precision)

    def _u(self, other: "ComplexApprox") -> tuple[int, float]:
        prec = min(self.precision, other.precision)
        return prec, 2.0 ** (-prec)

    def _lift(self, other) -> "ComplexApprox":
        if isinstance(other, ComplexApprox):
            return other
        return ComplexApprox.exact(other, self.precision)

    def __add__(self, other):
        other = self._lift(other)
        prec, u = self._u(other)
        with mpmath.workprec(prec):
            v = self.value + other.value
        err = (self.err + other.err + 2 * u * float(abs(v))) * _SLACK
        return ComplexApprox(v, err, prec)

    __radd__ = __add__

    def __neg__(self):
        return ComplexApprox(-self.value, self.err, self.precision)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        prec, u = self._u(other)
        with mpmath.workprec(prec):
            v = self.value * other.value
        a, b = float(abs(self.value)), float(abs(other.value))
        err = (a * other.err + b * self.err + self.err * other.err
               + 4 * u * float(abs(v))) * _SLACK
        return ComplexApprox(v, err, prec)

    __rmul__ = __mul__

    def inverse(self) -> "ComplexApprox":
        mag = float(abs(self.value))
        if mag <= self.err:
            raise ZeroDivisionError("approximation interval contains zero")
        u = 2.0 ** (-self.precision)
        with mpmath.workprec(self.precision):
            v = 1 / self.value
        err = (self.err / (mag * (mag - self.err)) + 4 * u / mag) * _SLACK
        return ComplexApprox(v, err, self.precision)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def contains(self, z, slack: float = 0.0) -> bool:
        with mpmath.workprec(self.precision + 20):
            return float(abs(self.value - mpmath.mpc(z))) <= self.err + slack

    def to_json(self, digits: int = 15) -> dict:
        return {
            "re": mpmath.nstr(self.value.real, digits),
            "im": mpmath.nstr(self.value.imag, digits),
            "err": float(f"{self.err:.3e}"),
        }
