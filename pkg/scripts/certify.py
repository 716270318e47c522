#!/usr/bin/env python3
"""
Certification of rational-function identities.

Identities are built from small expression trees. Each node can

- evaluate itself exactly at a rational point (``value``),
- bound itself by an ``Envelope``: a multiset of known denominator roots
  together with a bound on the degree of value * prod (u - root)^mult,
- build its canonical exact ``RatFun`` (``ratfun``).

Three certification methods exist:

canonical   both sides reduced to canonical RatFuns and compared structurally.
sampled     lhs - rhs evaluated at bound + 1 exact points avoiding every
            known denominator root. A polynomial of degree <= bound with
            bound + 1 zeros is zero, so passing is a proof.
modular     lhs and rhs evaluated exactly in the integers modulo a 61-bit
            prime at random residues. A false identity survives one point
            with probability at most bound / prime; fast enough for shape grids.
float-spot  evaluation at random complex points with a relative tolerance;
            a numerical spot check, not a proof.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ratfun import EXACT, MODULUS, ModPrime, PoleError, RatFun, encode_coeff

CANONICAL = "canonical"
SAMPLED = "sampled"
MODULAR = "modular"
FLOAT_SPOT = "float-spot"
METHODS = (CANONICAL, SAMPLED, MODULAR, FLOAT_SPOT)

DEFAULT_FLOAT_POINTS = 6
DEFAULT_FLOAT_TOL = 1e-8
DEFAULT_MODULAR_POINTS = 2


class CertificationError(ValueError):
    """Raised for unknown methods or expressions that cannot be certified."""


# ---------------------------------------------------------------------------
# Envelopes
# ---------------------------------------------------------------------------

@dataclass
class Envelope:
    den: Counter = field(default_factory=Counter)
    bound: int = 0

    @property
    def den_degree(self) -> int:
        return sum(self.den.values())

    def __add__(self, other: "Envelope") -> "Envelope":
        den = self.den | other.den
        deg = sum(den.values())
        bound = max(self.bound + deg - self.den_degree, other.bound + deg - other.den_degree)
        return Envelope(den, bound)

    def __mul__(self, other: "Envelope") -> "Envelope":
        return Envelope(self.den + other.den, self.bound + other.bound)

    def shift(self, c: Any) -> "Envelope":
        """Envelope of f(u + c): every root alpha moves to alpha - c."""
        c = Fraction(c)
        return Envelope(Counter({root - c: m for root, m in self.den.items()}), self.bound)


def union_all(envelopes: Sequence[Envelope]) -> Envelope:
    out = Envelope()
    for env in envelopes:
        out = out + env
    return out


def sample_points(avoid: Counter, count: int) -> List[Fraction]:
    """count distinct rationals k + 1/3 (k = 0, 1, -1, 2, ...) outside avoid."""
    points: List[Fraction] = []
    k = 0
    while len(points) < count:
        for cand in (Fraction(3 * k + 1, 3), Fraction(-3 * k - 2, 3)):
            if cand not in avoid and len(points) < count:
                points.append(cand)
        k += 1
    return points


# ---------------------------------------------------------------------------
# Determinants over any field-like values
# ---------------------------------------------------------------------------

def determinant(matrix: Sequence[Sequence[Any]], one: Any = 1, zero: Any = 0,
                is_zero: Optional[Callable[[Any], bool]] = None) -> Any:
    """Fraction-free (Bareiss) elimination with row pivoting."""
    n = len(matrix)
    if n == 0:
        return one
    is_zero = is_zero or (lambda v: v == 0)
    rows = [list(row) for row in matrix]
    negate = False
    prev = one
    for k in range(n - 1):
        pivot = next((i for i in range(k, n) if not is_zero(rows[i][k])), None)
        if pivot is None:
            return zero
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]
            negate = not negate
        pk = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pk - rows[i][k] * rows[k][j]) / prev
            rows[i][k] = zero
        prev = pk
    det = rows[n - 1][n - 1]
    return -det if negate else det


def ratfun_determinant(matrix: Sequence[Sequence[RatFun]], backend: str = EXACT) -> RatFun:
    return determinant(matrix, RatFun.one(backend), RatFun.zero(backend), lambda f: f.is_zero())


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------

class Expr:
    """Base class of certifiable expressions."""

    def value(self, x: Any) -> Any:
        raise NotImplementedError

    def envelope(self) -> Envelope:
        raise NotImplementedError

    def ratfun(self) -> RatFun:
        raise NotImplementedError

    def shift(self, c: Any) -> "Expr":
        if c == 0:
            return self
        return Shifted(self, Fraction(c))

    def __add__(self, other: "Expr") -> "Expr":
        return Sum([(1, self), (1, _as_expr(other))])

    def __sub__(self, other: "Expr") -> "Expr":
        return Sum([(1, self), (-1, _as_expr(other))])

    def __mul__(self, other: "Expr") -> "Expr":
        return Product([self, _as_expr(other)])

    def __neg__(self) -> "Expr":
        return Sum([(-1, self)])


def _as_expr(value: Any) -> Expr:
    return value if isinstance(value, Expr) else Const(value)


class Const(Expr):
    def __init__(self, c: Any):
        self.c = Fraction(c)

    def value(self, x: Any) -> Any:
        return self.c

    def envelope(self) -> Envelope:
        return Envelope()

    def ratfun(self) -> RatFun:
        return RatFun.const(self.c)

    def shift(self, c: Any) -> Expr:
        return self

    def __repr__(self) -> str:
        return f"Const({self.c})"


class Sum(Expr):
    def __init__(self, terms: Sequence[Tuple[int, Expr]]):
        self.terms = list(terms)

    def value(self, x: Any) -> Any:
        return sum((coef * e.value(x) for coef, e in self.terms), Fraction(0))

    def envelope(self) -> Envelope:
        return union_all([e.envelope() for _, e in self.terms])

    def ratfun(self) -> RatFun:
        total = RatFun.zero()
        for coef, e in self.terms:
            total = total + e.ratfun() * coef
        return total


class Product(Expr):
    def __init__(self, factors: Sequence[Expr]):
        self.factors = list(factors)

    def value(self, x: Any) -> Any:
        acc: Any = Fraction(1)
        for e in self.factors:
            acc = acc * e.value(x)
            if acc == 0:
                return acc
        return acc

    def envelope(self) -> Envelope:
        env = Envelope()
        for e in self.factors:
            env = env * e.envelope()
        return env

    def ratfun(self) -> RatFun:
        acc = RatFun.one()
        for e in self.factors:
            acc = acc * e.ratfun()
        return acc


class Shifted(Expr):
    def __init__(self, inner: Expr, c: Fraction):
        self.inner = inner
        self.c = c

    def value(self, x: Any) -> Any:
        return self.inner.value(x + self.c)

    def envelope(self) -> Envelope:
        return self.inner.envelope().shift(self.c)

    def ratfun(self) -> RatFun:
        return self.inner.ratfun().shift(self.c)

    def shift(self, c: Any) -> Expr:
        return Shifted(self.inner, self.c + Fraction(c)) if self.c + Fraction(c) != 0 else self.inner


class Determinant(Expr):
    """det of a square matrix of expressions."""

    def __init__(self, matrix: Sequence[Sequence[Expr]]):
        self.matrix = [[_as_expr(e) for e in row] for row in matrix]

    def value(self, x: Any) -> Any:
        return determinant([[e.value(x) for e in row] for row in self.matrix], Fraction(1), Fraction(0))

    def envelope(self) -> Envelope:
        env = Envelope()
        for row in self.matrix:
            env = env * union_all([e.envelope() for e in row])
        return env

    def ratfun(self) -> RatFun:
        return ratfun_determinant([[e.ratfun() for e in row] for row in self.matrix])


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass
class Certificate:
    identity: str
    passed: bool
    method: str
    samples: int = 0
    degree_bound: Optional[int] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "passed": self.passed,
            "method": self.method,
            "samples": self.samples,
            "degree_bound": self.degree_bound,
            "details": self.details,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        return cls(data["identity"], bool(data["passed"]), data["method"], int(data.get("samples", 0)),
                   data.get("degree_bound"), dict(data.get("details", {})))


def _float_points(count: int, seed: int) -> List[complex]:
    rng = np.random.default_rng(seed)
    re = rng.uniform(-3.0, 3.0, count)
    im = rng.uniform(0.5, 3.0, count)
    return [complex(a, b) for a, b in zip(re, im)]


def certify_equal(lhs: Expr, rhs: Expr, identity: str, method: str = SAMPLED,
                  seed: int = 0, tol: float = DEFAULT_FLOAT_TOL,
                  float_points: int = DEFAULT_FLOAT_POINTS,
                  modular_points: int = DEFAULT_MODULAR_POINTS) -> Certificate:
    """Certify lhs == rhs as rational functions of u."""
    if method == CANONICAL:
        f, g = lhs.ratfun(), rhs.ratfun()
        passed = f == g
        details = {"lhs_degrees": [f.num.degree, f.den.degree], "rhs_degrees": [g.num.degree, g.den.degree]}
        return Certificate(identity, passed, CANONICAL, 0, None, details)

    if method == SAMPLED:
        diff = lhs - rhs
        env = diff.envelope()
        needed = env.bound + 1
        avoid = Counter(env.den)
        checked = 0
        while checked < needed:
            for x in sample_points(avoid, needed - checked):
                try:
                    a, b = lhs.value(x), rhs.value(x)
                except PoleError:
                    avoid[x] += 1
                    continue
                if a != b:
                    return Certificate(identity, False, SAMPLED, checked + 1, env.bound, {
                        "point": encode_coeff(x), "lhs": encode_coeff(a), "rhs": encode_coeff(b),
                    })
                avoid[x] += 1
                checked += 1
        return Certificate(identity, True, SAMPLED, checked, env.bound,
                           {"known_poles": env.den_degree})

    if method == MODULAR:
        env = (lhs - rhs).envelope()
        rng = np.random.default_rng(seed)
        checked = 0
        while checked < modular_points:
            x = ModPrime(int(rng.integers(1, MODULUS)))
            try:
                a, b = lhs.value(x), rhs.value(x)
            except PoleError:
                continue
            if a != b:
                return Certificate(identity, False, MODULAR, checked + 1, env.bound, {
                    "point": encode_coeff(x), "lhs": encode_coeff(ModPrime.lift(a)),
                    "rhs": encode_coeff(ModPrime.lift(b)),
                })
            checked += 1
        return Certificate(identity, True, MODULAR, checked, env.bound,
                           {"modulus": MODULUS, "failure_bound": (env.bound / MODULUS) ** checked})

    if method == FLOAT_SPOT:
        worst = 0.0
        for x in _float_points(float_points, seed):
            a, b = complex(lhs.value(x)), complex(rhs.value(x))
            worst = max(worst, abs(a - b) / max(1.0, abs(a), abs(b)))
        return Certificate(identity, worst <= tol, FLOAT_SPOT, float_points, None,
                           {"max_relative_defect": worst, "tolerance": tol})

    raise CertificationError(f"Unknown certification method '{method}'. Known methods: {', '.join(METHODS)}")


def certify_zero(expr: Expr, identity: str, method: str = SAMPLED, **kwargs) -> Certificate:
    return certify_equal(expr, Const(0), identity, method, **kwargs)


def certify_nonzero(expr: Expr, identity: str, point: Optional[Fraction] = None) -> Certificate:
    """Witness that expr is not identically zero: a point where it is nonzero."""
    env = expr.envelope()
    for x in ([point] if point is not None else []) + sample_points(env.den, env.bound + 1):
        try:
            v = expr.value(x)
        except PoleError:
            continue
        if v != 0:
            return Certificate(identity, True, SAMPLED, 1, env.bound,
                               {"point": encode_coeff(x), "value": encode_coeff(v)})
    return Certificate(identity, False, SAMPLED, env.bound + 1, env.bound, {"reason": "vanished at every sample"})


def summarize(certificates: Sequence[Certificate]) -> Dict[str, Any]:
    failed = [c.identity for c in certificates if not c.passed]
    return {"total": len(certificates), "passed": len(certificates) - len(failed), "failed": failed}
