"""Exact arithmetic for quantities of the form  sum_k  q_k * pi^k,  q_k rational.

Every closed-form area or volume here is such an expression, so polynomial
identities between them can be decided exactly instead of numerically: expand
both sides over this ring and compare coefficient tuples.  Floats convert via
their exact binary expansion (``Fraction(float)``), so a caller holding float
inputs loses nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

__all__ = ["PI", "PiPoly", "poly_mul", "poly_pow", "poly_sub", "to_fraction"]

Rationalish = Union[int, float, Fraction]


def to_fraction(x: Rationalish) -> Fraction:
    """Exact conversion; floats use their binary expansion."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"cannot convert non-finite float {x!r} exactly")
        return Fraction(x)
    raise TypeError(f"expected int, float, or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class PiPoly:
    """A polynomial in pi with rational coefficients, ascending powers.

    Immutable and normalized (no trailing zero coefficients), so equality is
    plain tuple equality: two values compare equal exactly when they are the
    same element of Q[pi].  pi is transcendental, hence this also decides
    equality of the real numbers they denote.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        cs = tuple(to_fraction(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def constant(cls, q: Rationalish) -> "PiPoly":
        return cls((to_fraction(q),))

    @classmethod
    def zero(cls) -> "PiPoly":
        return cls(())

    @property
    def degree(self) -> int:
        """Degree in pi; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "PiPoly | Rationalish") -> "PiPoly":
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PiPoly(tuple(self[k] + other[k] for k in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "PiPoly":
        return PiPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "PiPoly | Rationalish") -> "PiPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: "PiPoly | Rationalish") -> "PiPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other: "PiPoly | Rationalish") -> "PiPoly":
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return PiPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PiPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = PiPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def eval_at(self, x: Rationalish) -> Fraction:
        """Substitute a rational for pi (for identity checks on rational grids)."""
        x = to_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __float__(self) -> float:
        return float(sum(float(c) * math.pi**k for k, c in enumerate(self.coeffs)))

    def __repr__(self) -> str:
        if self.is_zero():
            return "PiPoly(0)"
        parts = [f"({c})*pi^{k}" if k else f"({c})" for k, c in enumerate(self.coeffs) if c]
        return "PiPoly(" + " + ".join(parts) + ")"


def _coerce(x: "PiPoly | Rationalish") -> PiPoly:
    return x if isinstance(x, PiPoly) else PiPoly.constant(x)


PI = PiPoly((Fraction(0), Fraction(1)))


def poly_mul(a: Sequence[PiPoly], b: Sequence[PiPoly]) -> list[PiPoly]:
    """Product of polynomials with PiPoly coefficients (ascending powers)."""
    out = [PiPoly.zero()] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return out


def poly_pow(a: Sequence[PiPoly], k: int) -> list[PiPoly]:
    if not isinstance(k, int) or k < 1:
        raise ValueError("exponent must be a positive integer")
    out = list(a)
    for _ in range(k - 1):
        out = poly_mul(out, a)
    return out


def poly_sub(a: Sequence[PiPoly], b: Sequence[PiPoly]) -> list[PiPoly]:
    n = max(len(a), len(b))
    pad_a = list(a) + [PiPoly.zero()] * (n - len(a))
    pad_b = list(b) + [PiPoly.zero()] * (n - len(b))
    return [x - y for x, y in zip(pad_a, pad_b)]
