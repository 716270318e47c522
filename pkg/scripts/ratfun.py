#!/usr/bin/env python3
"""
Univariate polynomials and rational functions in the spectral parameter u.

Two coefficient backends are supported:

- ``exact``: coefficients are ``fractions.Fraction``; rational functions are
  kept canonical (numerator and denominator coprime, denominator monic), so
  equality is structural.
- ``float``: coefficients are Python ``complex``; no gcd reduction is done and
  equality cross-multiplies.

Mixing backends in one operation is an error. Exact objects also evaluate at
``ModPrime`` residues, which the modular certificates use as sample points.
"""

from fractions import Fraction
from typing import Any, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)

# Degree reported for the zero polynomial
ZERO_DEGREE = -1

# Relative threshold under which a float denominator counts as vanishing
FLOAT_POLE_TOL = 1e-12

# Relative size below which a float coefficient left over by cancellation is dropped
FLOAT_CANCEL_TOL = 1e-12

Coeff = Union[Fraction, complex]


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at one of its poles."""


class PoleOrderError(PoleError):
    """Raised when a simple pole is required but the pole has higher order."""


class BackendMismatchError(ValueError):
    """Raised when exact and float objects are combined."""


# Mersenne prime for modular identity testing
MODULUS = 2 ** 61 - 1


class ModPrime:
    """Residue modulo MODULUS.

    Behaves like an exact field element at evaluation points: ints and
    Fractions on either side of an operator are reduced first.
    """

    __slots__ = ("v",)

    def __init__(self, v: int):
        self.v = v % MODULUS

    @staticmethod
    def lift(value: Any) -> Optional["ModPrime"]:
        if isinstance(value, ModPrime):
            return value
        if isinstance(value, int):
            return ModPrime(value)
        if isinstance(value, Fraction):
            if value.denominator % MODULUS == 0:
                raise PoleError(f"{value} has no residue modulo {MODULUS}")
            return ModPrime(value.numerator * pow(value.denominator, -1, MODULUS))
        return None

    def inverse(self) -> "ModPrime":
        if self.v == 0:
            raise PoleError("division by zero modulo the prime")
        return ModPrime(pow(self.v, -1, MODULUS))

    def __add__(self, other: Any) -> "ModPrime":
        o = ModPrime.lift(other)
        return NotImplemented if o is None else ModPrime(self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "ModPrime":
        o = ModPrime.lift(other)
        return NotImplemented if o is None else ModPrime(self.v - o.v)

    def __rsub__(self, other: Any) -> "ModPrime":
        o = ModPrime.lift(other)
        return NotImplemented if o is None else ModPrime(o.v - self.v)

    def __mul__(self, other: Any) -> "ModPrime":
        o = ModPrime.lift(other)
        return NotImplemented if o is None else ModPrime(self.v * o.v)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "ModPrime":
        o = ModPrime.lift(other)
        return NotImplemented if o is None else self * o.inverse()

    def __rtruediv__(self, other: Any) -> "ModPrime":
        o = ModPrime.lift(other)
        return NotImplemented if o is None else o * self.inverse()

    def __neg__(self) -> "ModPrime":
        return ModPrime(-self.v)

    def __pow__(self, k: int) -> "ModPrime":
        base = self if k >= 0 else self.inverse()
        return ModPrime(pow(base.v, abs(k), MODULUS))

    def __eq__(self, other: object) -> bool:
        try:
            o = ModPrime.lift(other)
        except PoleError:
            return False
        return NotImplemented if o is None else self.v == o.v

    def __hash__(self) -> int:
        return hash(("mod", self.v))

    def __int__(self) -> int:
        return self.v

    def __repr__(self) -> str:
        return f"ModPrime({self.v})"


def to_coeff(value: Any, backend: str) -> Coeff:
    """Convert ``value`` into a coefficient of the given backend."""
    if backend == EXACT:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (complex, np.complexfloating)):
            raise ValueError(f"complex value {value!r} is not allowed in the exact backend")
        if isinstance(value, (float, np.floating)):
            raise ValueError(f"float value {value!r} is not allowed in the exact backend; use a Fraction or 'n/d'")
        return Fraction(value)
    if backend == FLOAT:
        if isinstance(value, str):
            return complex(Fraction(value))
        return complex(value)
    raise ValueError(f"Unknown backend '{backend}'. Known backends: {', '.join(BACKENDS)}")


def encode_coeff(c: Coeff) -> Any:
    """JSON form of a coefficient: 'n/d' strings for rationals, [re, im] for complex."""
    if isinstance(c, ModPrime):
        return str(c.v)
    if isinstance(c, Fraction):
        return str(c)
    c = complex(c)
    return [c.real, c.imag]


def decode_coeff(value: Any, backend: str) -> Coeff:
    if backend == FLOAT and isinstance(value, (list, tuple)):
        return complex(value[0], value[1])
    return to_coeff(value, backend)


def infer_backend(values: Iterable[Any]) -> str:
    """exact when every value is rational-like, float as soon as one is not."""
    for v in values:
        if isinstance(v, (complex, float, np.floating, np.complexfloating, list, tuple)):
            return FLOAT
    return EXACT


def _is_zero(c: Coeff) -> bool:
    return c == 0


def _point(x: Any, backend: str) -> Coeff:
    if isinstance(x, ModPrime):
        return x
    # exact objects may still be sampled at complex points
    if backend == EXACT and isinstance(x, (complex, float, np.floating, np.complexfloating)):
        return complex(x)
    return to_coeff(x, backend)


class Poly:
    """Immutable polynomial, coefficients stored lowest degree first."""

    __slots__ = ("coeffs", "backend")

    def __init__(self, coeffs: Iterable[Any] = (), backend: str = EXACT):
        cs = [to_coeff(c, backend) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs: Tuple[Coeff, ...] = tuple(cs)
        self.backend = backend

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, backend: str = EXACT) -> "Poly":
        return cls((), backend)

    @classmethod
    def one(cls, backend: str = EXACT) -> "Poly":
        return cls((1,), backend)

    @classmethod
    def const(cls, c: Any, backend: str = EXACT) -> "Poly":
        return cls((c,), backend)

    @classmethod
    def x(cls, backend: str = EXACT) -> "Poly":
        return cls((0, 1), backend)

    @classmethod
    def from_roots(cls, roots: Iterable[Any], backend: str = EXACT) -> "Poly":
        """Monic polynomial ∏ (u - root)."""
        coeffs: List[Coeff] = [to_coeff(1, backend)]
        for root in roots:
            w = to_coeff(root, backend)
            nxt = [to_coeff(0, backend)] * (len(coeffs) + 1)
            for k, c in enumerate(coeffs):
                nxt[k + 1] += c
                nxt[k] -= w * c
            coeffs = nxt
        return cls(coeffs, backend)

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Coeff:
        if not self.coeffs:
            return to_coeff(0, self.backend)
        return self.coeffs[-1]

    def __repr__(self) -> str:
        return f"Poly({[encode_coeff(c) for c in self.coeffs]}, {self.backend!r})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.backend == other.backend and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other, self.backend)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.backend, self.coeffs))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other: Any) -> "Poly":
        if isinstance(other, Poly):
            if other.backend != self.backend:
                raise BackendMismatchError(f"cannot combine {self.backend} and {other.backend} polynomials")
            return other
        return Poly.const(other, self.backend)

    def __add__(self, other: Any) -> "Poly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        zero = to_coeff(0, self.backend)
        a = self.coeffs + (zero,) * (n - len(self.coeffs))
        b = other.coeffs + (zero,) * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)], self.backend)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.backend)

    def __sub__(self, other: Any) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "Poly":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.backend)
        out = [to_coeff(0, self.backend)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out, self.backend)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.one(self.backend)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Any) -> "Poly":
        c = to_coeff(c, self.backend)
        return Poly([c * a for a in self.coeffs], self.backend)

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        """Long division: returns (quotient, remainder)."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        zero = to_coeff(0, self.backend)
        quot = [zero] * max(len(rem) - dq, 0)
        for k in range(len(rem) - dq - 1, -1, -1):
            q = rem[k + dq] / lead
            quot[k] = q
            if _is_zero(q):
                continue
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= q * b
            rem[k + dq] = zero
        return Poly(quot, self.backend), Poly(rem[:dq] if dq > 0 else (), self.backend)

    def __call__(self, x: Any) -> Coeff:
        return self.eval(x)

    def eval(self, x: Any) -> Coeff:
        """Horner evaluation."""
        x = _point(x, self.backend)
        acc = to_coeff(0, self.backend)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:], self.backend)

    def shift(self, c: Any) -> "Poly":
        """Return p(u + c)."""
        c = to_coeff(c, self.backend)
        if _is_zero(c) or self.degree <= 0:
            return self
        lin = Poly((c, 1), self.backend)
        acc = Poly.zero(self.backend)
        for a in reversed(self.coeffs):
            acc = acc * lin + a
        return acc

    def trim(self, tol: float) -> "Poly":
        """Drop leading coefficients of magnitude <= tol (float cancellation residue)."""
        cs = list(self.coeffs)
        while cs and abs(cs[-1]) <= tol:
            cs.pop()
        return self if len(cs) == len(self.coeffs) else Poly(cs, self.backend)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd (exact backend only)."""
        if self.backend != EXACT:
            raise ValueError("gcd is only defined for the exact backend")
        a, b = self, self._coerce(other)
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else Poly.one(self.backend)

    def roots(self) -> List[complex]:
        """Complex roots as companion-matrix eigenvalues."""
        n = self.degree
        if n <= 0:
            return []
        p = np.array([complex(c) for c in self.coeffs], dtype=complex)
        if n == 1:
            return [complex(-p[0] / p[1])]
        companion = np.zeros((n, n), dtype=complex)
        rng = np.arange(n - 1)
        companion[rng + 1, rng] = 1
        companion[:, -1] = -p[:n] / p[n]
        return [complex(z) for z in np.linalg.eigvals(companion)]

    def to_backend(self, backend: str) -> "Poly":
        if backend == self.backend:
            return self
        if backend == FLOAT:
            return Poly([complex(c) for c in self.coeffs], FLOAT)
        raise ValueError("float polynomials cannot be converted to the exact backend")

    def to_json(self) -> List[Any]:
        return [encode_coeff(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[Any], backend: Optional[str] = None) -> "Poly":
        backend = backend or infer_backend(data)
        return cls([decode_coeff(v, backend) for v in data], backend)


class RatFun:
    """Quotient of two polynomials over a common backend."""

    __slots__ = ("num", "den", "backend")

    def __init__(self, num: Poly, den: Optional[Poly] = None, normalize: bool = True):
        if den is None:
            den = Poly.one(num.backend)
        if num.backend != den.backend:
            raise BackendMismatchError("numerator and denominator backends differ")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.backend = num.backend
        if num.is_zero():
            num, den = Poly.zero(self.backend), Poly.one(self.backend)
        elif self.backend == EXACT and normalize:
            g = num.gcd(den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            lead = den.leading
            if lead != 1:
                num, den = num.scale(1 / lead), den.scale(1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c: Any, backend: str = EXACT) -> "RatFun":
        return cls(Poly.const(c, backend))

    @classmethod
    def zero(cls, backend: str = EXACT) -> "RatFun":
        return cls(Poly.zero(backend))

    @classmethod
    def one(cls, backend: str = EXACT) -> "RatFun":
        return cls(Poly.one(backend))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __repr__(self) -> str:
        return f"RatFun({self.num!r} / {self.den!r})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatFun.const(other, self.backend)
        if not isinstance(other, RatFun):
            return NotImplemented
        if self.backend != other.backend:
            return False
        if self.backend == EXACT:
            return self.num == other.num and self.den == other.den
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def _coerce(self, other: Any) -> "RatFun":
        if isinstance(other, RatFun):
            if other.backend != self.backend:
                raise BackendMismatchError(f"cannot combine {self.backend} and {other.backend} rational functions")
            return other
        if isinstance(other, Poly):
            return RatFun(other)
        return RatFun.const(other, self.backend)

    def __add__(self, other: Any) -> "RatFun":
        other = self._coerce(other)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den, normalize=False)

    def __sub__(self, other: Any) -> "RatFun":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "RatFun":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "RatFun":
        other = self._coerce(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "RatFun":
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: Any) -> "RatFun":
        return self._coerce(other) / self

    def shift(self, c: Any) -> "RatFun":
        """Return f(u + c)."""
        return RatFun(self.num.shift(c), self.den.shift(c), normalize=False) if self.backend == FLOAT \
            else RatFun(self.num.shift(c), self.den.shift(c))

    def _den_vanishes(self, value: Coeff, x: Coeff) -> bool:
        if self.backend == EXACT:
            return value == 0
        scale = max((abs(c) for c in self.den.coeffs), default=1.0) * max(1.0, abs(x)) ** max(self.den.degree, 0)
        return abs(value) <= FLOAT_POLE_TOL * scale

    def eval(self, x: Any) -> Coeff:
        """Value at x; raises PoleError at a pole."""
        x = _point(x, self.backend)
        d = self.den.eval(x)
        if self._den_vanishes(d, x):
            raise PoleError(f"evaluation at a pole u = {encode_coeff(x)}")
        return self.num.eval(x) / d

    __call__ = eval

    def residue_at(self, p: Any) -> Coeff:
        """Residue at p, assuming p is at most a simple pole."""
        p = to_coeff(p, self.backend)
        if not self._den_vanishes(self.den.eval(p), p):
            return to_coeff(0, self.backend)
        dprime = self.den.derivative().eval(p)
        if self._den_vanishes(dprime, p):
            raise PoleOrderError(f"pole of order > 1 at u = {encode_coeff(p)}")
        return self.num.eval(p) / dprime

    def to_backend(self, backend: str) -> "RatFun":
        if backend == self.backend:
            return self
        return RatFun(self.num.to_backend(backend), self.den.to_backend(backend), normalize=False)

    def to_json(self) -> dict:
        return {"backend": self.backend, "num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RatFun":
        backend = data.get("backend", EXACT)
        return cls(Poly.from_json(data["num"], backend), Poly.from_json(data["den"], backend))
