#!/usr/bin/env python3
"""
Dressed vacuum forms of sl(r+1|s+1) transfer-matrix eigenvalues.

Builds the box functions z(a; u) from Bethe roots, the tableau sums
T_{mu/lambda}(u), the two operator generating series, and the quantum
Jacobi-Trudi and Giambelli determinants. Everything here works on rational
functions of u; the exact backend gives canonical results, the float backend
is used for numerical Bethe data.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from certify import (
    CANONICAL,
    SAMPLED,
    Certificate,
    CertificationError,
    Const,
    Determinant,
    Envelope,
    Expr,
    certify_equal,
    determinant,
    ratfun_determinant,
    union_all,
)
from diagrams import (
    DEFAULT_MAX_CELLS,
    SkewShape,
    Tableau,
    iter_tableaux,
    sum_over_tableaux,
)
from ratfun import (
    EXACT,
    FLOAT,
    Coeff,
    PoleError,
    Poly,
    RatFun,
    decode_coeff,
    encode_coeff,
    infer_backend,
    to_coeff,
)
from superalgebra import Grading

# Key of a shifted polynomial factor: (color, shift) stands for Q_color(u + shift);
# color 0 stands for the vacuum polynomial P(u + shift).
FactorKey = Tuple[int, int]
VACUUM = 0


@dataclass(frozen=True)
class BetheData:
    """Grading, Bethe roots per color and inhomogeneities."""

    grading: Grading
    roots: Tuple[Tuple[Coeff, ...], ...]
    inhomogeneities: Tuple[Coeff, ...] = ()
    backend: str = ""

    def __post_init__(self):
        roots = [tuple(col) for col in self.roots]
        if len(roots) != self.grading.rank:
            raise ValueError(
                f"expected root sets for {self.grading.rank} colors, got {len(roots)}"
            )
        backend = self.backend or infer_backend(
            [x for col in roots for x in col] + list(self.inhomogeneities)
        )
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "roots", tuple(tuple(to_coeff(x, backend) for x in col) for col in roots))
        object.__setattr__(self, "inhomogeneities",
                           tuple(to_coeff(x, backend) for x in self.inhomogeneities))
        polys = [Poly.from_roots(self.inhomogeneities, backend)]
        polys += [Poly.from_roots(col, backend) for col in self.roots]
        object.__setattr__(self, "_polys", tuple(polys))

    @property
    def n_roots(self) -> Tuple[int, ...]:
        return tuple(len(col) for col in self.roots)

    @property
    def n_sites(self) -> int:
        return len(self.inhomogeneities)

    def roots_of(self, a: int) -> Tuple[Coeff, ...]:
        """Roots of Q_a; empty at the boundaries a = 0 and a = r+s+2."""
        if a <= 0 or a > self.grading.rank:
            return ()
        return self.roots[a - 1]

    def factor_poly(self, color: int) -> Poly:
        """P for color 0, Q_color otherwise (1 at the outer boundary)."""
        if color > self.grading.rank:
            return Poly.one(self.backend)
        return self._polys[color]

    def factor_degree(self, color: int) -> int:
        if color == VACUUM:
            return self.n_sites
        return len(self.roots_of(color))

    def factor_roots(self, color: int) -> Tuple[Coeff, ...]:
        if color == VACUUM:
            return self.inhomogeneities
        return self.roots_of(color)

    def with_roots(self, grading: Grading, roots: Sequence[Sequence[Any]]) -> "BetheData":
        return BetheData(grading, tuple(tuple(c) for c in roots), self.inhomogeneities, self.backend)

    def to_backend(self, backend: str) -> "BetheData":
        if backend == self.backend:
            return self
        if backend != FLOAT:
            raise ValueError("float Bethe data cannot be converted to the exact backend")
        return BetheData(self.grading, tuple(tuple(complex(x) for x in col) for col in self.roots),
                         tuple(complex(w) for w in self.inhomogeneities), FLOAT)

    def to_json(self) -> dict:
        return {
            "grading": self.grading.to_json(),
            "backend": self.backend,
            "roots": [[encode_coeff(x) for x in col] for col in self.roots],
            "inhomogeneities": [encode_coeff(w) for w in self.inhomogeneities],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BetheData":
        grading = Grading.from_json(data["grading"])
        raw = [x for col in data["roots"] for x in col] + list(data.get("inhomogeneities", []))
        backend = data.get("backend") or infer_backend(raw)
        roots = tuple(tuple(decode_coeff(x, backend) for x in col) for col in data["roots"])
        inh = tuple(decode_coeff(w, backend) for w in data.get("inhomogeneities", []))
        return cls(grading, roots, inh, backend)


def q_poly(d: BetheData, a: int) -> Poly:
    """Q_a(u) = prod_j (u - u_j^(a)), with Q_0 = Q_{r+s+2} = 1."""
    if not 0 <= a <= d.grading.n:
        raise ValueError(f"color {a} outside 0..{d.grading.n}")
    if a == 0 or a == d.grading.n:
        return Poly.one(d.backend)
    return d.factor_poly(a)


def p_poly(d: BetheData) -> Poly:
    """Vacuum polynomial P(u) = prod_j (u - w_j)."""
    return d.factor_poly(VACUUM)


# ---------------------------------------------------------------------------
# Structural terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DVFTerm:
    """sign * prod num factors / prod den factors, factors given by FactorKey."""

    sign: int
    num: Tuple[Tuple[FactorKey, int], ...] = ()
    den: Tuple[Tuple[FactorKey, int], ...] = ()

    @classmethod
    def build(cls, sign: int, num: Counter, den: Counter) -> "DVFTerm":
        num, den = Counter(num), Counter(den)
        for key in list(num):
            common = min(num[key], den.get(key, 0))
            if common:
                num[key] -= common
                den[key] -= common
        num = +num
        den = +den
        return cls(sign, tuple(sorted(num.items())), tuple(sorted(den.items())))

    @property
    def num_counter(self) -> Counter:
        return Counter(dict(self.num))

    @property
    def den_counter(self) -> Counter:
        return Counter(dict(self.den))

    def __mul__(self, other: "DVFTerm") -> "DVFTerm":
        return DVFTerm.build(self.sign * other.sign,
                             self.num_counter + other.num_counter,
                             self.den_counter + other.den_counter)

    def shifted(self, c: int) -> "DVFTerm":
        return DVFTerm(self.sign,
                       tuple(((col, h + c), m) for (col, h), m in self.num),
                       tuple(((col, h + c), m) for (col, h), m in self.den))

    def pole_labels(self, color: int) -> List[Tuple[int, int]]:
        """(color, c) for each denominator factor Q_color(u - c): pole at u = u_k + c."""
        return [(col, -h) for (col, h), _ in self.den if col == color]

    def value(self, d: BetheData, x: Any) -> Any:
        acc: Any = to_coeff(self.sign, d.backend) if not isinstance(x, complex) else complex(self.sign)
        for (col, h), m in self.num:
            acc = acc * d.factor_poly(col).eval(x + h) ** m
        for (col, h), m in self.den:
            v = d.factor_poly(col).eval(x + h)
            if v == 0:
                raise PoleError(f"term has a pole at u = {encode_coeff(x)}")
            acc = acc / v ** m
        return acc

    def envelope(self, d: BetheData) -> Envelope:
        den: Counter = Counter()
        for (col, h), m in self.den:
            for root in d.factor_roots(col):
                den[Fraction(root) - h] += m
        bound = sum(d.factor_degree(col) * m for (col, _), m in self.num)
        return Envelope(den, bound)

    def ratfun(self, d: BetheData) -> RatFun:
        return terms_to_ratfun(d, [self])

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "num": [[col, h, m] for (col, h), m in self.num],
            "den": [[col, h, m] for (col, h), m in self.den],
        }


def z_term(g: Grading, a: int, shift: int = 0) -> DVFTerm:
    """Structure of z(a; u + shift)."""
    if not 1 <= a <= g.n:
        raise ValueError(f"box index {a} outside J = 1..{g.n}")
    pa = g.sign(a)
    num: Counter = Counter()
    den: Counter = Counter()
    num[(VACUUM, shift + 2 * g.sign(1) if a == 1 else shift)] += 1
    s_prev, s_here = g.partial_sum(a - 1), g.partial_sum(a)
    if a - 1 >= 1:
        num[(a - 1, shift + s_prev + 2 * pa)] += 1
        den[(a - 1, shift + s_prev)] += 1
    if a <= g.rank:
        num[(a, shift + s_here - 2 * pa)] += 1
        den[(a, shift + s_here)] += 1
    return DVFTerm.build(1, num, den)


def tableau_term(t: Tableau, g: Grading, shift: int = 0) -> DVFTerm:
    """prod over cells of p_b z(b; u + shift + cell offset)."""
    sh = t.shape
    sign = 1
    num: Counter = Counter()
    den: Counter = Counter()
    for (i, j), b in t.entries:
        sign *= g.sign(b)
        z = z_term(g, b, shift + sh.spectral_shift(i, j))
        num.update(z.num_counter)
        den.update(z.den_counter)
    return DVFTerm.build(sign, num, den)


@lru_cache(maxsize=256)
def transfer_terms(g: Grading, sh: SkewShape, shift: int = 0,
                   max_cells: int = DEFAULT_MAX_CELLS) -> Tuple[Tuple[Tableau, DVFTerm], ...]:
    """Tableaux of sh with their terms; independent of the Bethe data."""
    return tuple((t, tableau_term(t, g, shift)) for t in iter_tableaux(sh, g, max_cells))


def terms_to_ratfun(d: BetheData, terms: Sequence[DVFTerm]) -> RatFun:
    """Sum of terms over their least common structural denominator."""
    backend = d.backend
    if not terms:
        return RatFun.zero(backend)
    common: Counter = Counter()
    for term in terms:
        common |= term.den_counter
    cache: Dict[FactorKey, Poly] = {}

    def factor(key: FactorKey) -> Poly:
        if key not in cache:
            cache[key] = d.factor_poly(key[0]).shift(key[1])
        return cache[key]

    numerator = Poly.zero(backend)
    for term in terms:
        part = Poly.const(term.sign, backend)
        missing = common - term.den_counter
        for key, m in list(term.num) + list(missing.items()):
            part = part * factor(key) ** m
        numerator = numerator + part
    denominator = Poly.one(backend)
    for key, m in sorted(common.items()):
        denominator = denominator * factor(key) ** m
    return RatFun(numerator, denominator)


# ---------------------------------------------------------------------------
# z-functions and tableau sums
# ---------------------------------------------------------------------------

def z_fn(d: BetheData, a: int) -> RatFun:
    """z(a; u) = psi_a Q_{a-1}(u+S_{a-1}+2p_a) Q_a(u+S_a-2p_a) / (Q_{a-1}(u+S_{a-1}) Q_a(u+S_a))."""
    return z_term(d.grading, a).ratfun(d)


def transfer_tableau_sum(d: BetheData, sh: SkewShape, max_cells: int = DEFAULT_MAX_CELLS) -> RatFun:
    """T_{mu/lambda}(u) as a single rational function."""
    terms = [term for _, term in transfer_terms(d.grading, sh, 0, max_cells)]
    if sh.is_empty():
        return RatFun.one(d.backend)
    return terms_to_ratfun(d, terms)


class _PointCache:
    """z(a; x + c) values at one evaluation point."""

    def __init__(self, d: BetheData, x: Any):
        self.d = d
        self.x = x
        self.values: Dict[Tuple[int, int], Any] = {}

    def z(self, a: int, c: int) -> Any:
        key = (a, c)
        if key not in self.values:
            self.values[key] = z_term(self.d.grading, a, c).value(self.d, self.x)
        return self.values[key]


@lru_cache(maxsize=64)
def _point_cache(d: BetheData, x: Any) -> _PointCache:
    return _PointCache(d, x)


@lru_cache(maxsize=1 << 14)
def transfer_value(d: BetheData, sh: SkewShape, x: Any, shift: int = 0) -> Any:
    """T_{mu/lambda}(x + shift) without building the rational function.

    Values are memoized per (data, shape, point, shift): shape grids evaluated
    at shared points reuse the column and row entries of their determinants.
    """
    g = d.grading
    cache = _point_cache(d, x)

    def weight(i: int, j: int, a: int) -> Any:
        return g.sign(a) * cache.z(a, shift + sh.spectral_shift(i, j))

    one = complex(1) if isinstance(x, complex) else to_coeff(1, d.backend)
    zero = one * 0
    return sum_over_tableaux(sh, g, weight, one, zero)


@lru_cache(maxsize=1024)
def cell_envelope(d: BetheData, c: int) -> Envelope:
    """Envelope covering every z(a; u + c), a in J."""
    return union_all([z_term(d.grading, a, c).envelope(d) for a in range(1, d.grading.n + 1)])


class TableauSumExpr(Expr):
    """T_{mu/lambda}(u + shift) as a certifiable expression.

    ``flip`` negates the term of one tableau (by enumeration index); only used
    to check that the certificates detect a wrong sign.
    """

    def __init__(self, d: BetheData, sh: SkewShape, shift: int = 0, flip: Optional[int] = None):
        if d.backend != EXACT:
            raise CertificationError("certifiable expressions need exact Bethe data")
        self.d = d
        self.sh = sh
        self.offset = shift
        self.flip = flip

    def _flipped_term(self) -> Optional[DVFTerm]:
        if self.flip is None:
            return None
        return transfer_terms(self.d.grading, self.sh, self.offset)[self.flip][1]

    def value(self, x: Any) -> Any:
        total = transfer_value(self.d, self.sh, x, self.offset)
        term = self._flipped_term()
        if term is not None:
            total = total - 2 * term.value(self.d, x)
        return total

    def envelope(self) -> Envelope:
        env = Envelope()
        for i, j in self.sh.cells():
            env = env * cell_envelope(self.d, self.offset + self.sh.spectral_shift(i, j))
        return env

    def ratfun(self) -> RatFun:
        if self.sh.is_empty():
            return RatFun.one()
        terms = [term for _, term in transfer_terms(self.d.grading, self.sh, self.offset)]
        if self.flip is not None:
            terms[self.flip] = DVFTerm(-terms[self.flip].sign, terms[self.flip].num, terms[self.flip].den)
        return terms_to_ratfun(self.d, terms)

    def shift(self, c: Any) -> Expr:
        c = Fraction(c)
        if c.denominator == 1 and self.flip is None:
            return TableauSumExpr(self.d, self.sh, self.offset + int(c))
        return super().shift(c)

    def __repr__(self) -> str:
        return f"T[{self.sh}](u{self.offset:+d})"


def column_expr(d: BetheData, a: int, shift: int = 0) -> Expr:
    """T^a(u + shift); 1 for a = 0 and 0 for a < 0."""
    if a < 0:
        return Const(0)
    if a == 0:
        return Const(1)
    return TableauSumExpr(d, SkewShape.straight(*([1] * a)), shift)


def row_expr(d: BetheData, m: int, shift: int = 0) -> Expr:
    """T_m(u + shift); 1 for m = 0 and 0 for m < 0."""
    if m < 0:
        return Const(0)
    if m == 0:
        return Const(1)
    return TableauSumExpr(d, SkewShape.straight(m), shift)


def tableau_sum_expr(d: BetheData, sh: SkewShape, flip: Optional[int] = None) -> Expr:
    if sh.is_empty():
        return Const(1)
    return TableauSumExpr(d, sh, 0, flip)


def _jacobi_trudi_entries(sh: SkewShape) -> List[List[Tuple[int, int]]]:
    """(order, shift) of each entry T^order(u + shift)."""
    mu_c, lam_c = sh.mu.conjugate(), sh.lam.conjugate()
    size = sh.mu1
    return [[(mu_c.part(i) - lam_c.part(j) - i + j,
              -sh.mu1 + sh.mu1_conj - mu_c.part(i) - lam_c.part(j) + i + j - 1)
             for j in range(1, size + 1)] for i in range(1, size + 1)]


def _giambelli_entries(sh: SkewShape) -> List[List[Tuple[int, int]]]:
    """(order, shift) of each entry T_order(u + shift)."""
    size = sh.mu1_conj
    return [[(sh.mu.part(j) - sh.lam.part(i) + i - j,
              -sh.mu1 + sh.mu1_conj + sh.mu.part(j) + sh.lam.part(i) - i - j + 1)
             for j in range(1, size + 1)] for i in range(1, size + 1)]


def jacobi_trudi_expr(d: BetheData, sh: SkewShape) -> Expr:
    return Determinant([[column_expr(d, k, c) for k, c in row] for row in _jacobi_trudi_entries(sh)])


def giambelli_expr(d: BetheData, sh: SkewShape) -> Expr:
    return Determinant([[row_expr(d, k, c) for k, c in row] for row in _giambelli_entries(sh)])


def _shape_ratfun(d: BetheData, shape: Tuple[int, ...], order: int, shift: int,
                  cache: Dict[Tuple[Tuple[int, ...], int], RatFun]) -> RatFun:
    if order < 0:
        return RatFun.zero(d.backend)
    if order == 0:
        return RatFun.one(d.backend)
    key = (shape, shift)
    if key not in cache:
        base = (shape, 0)
        if base not in cache:
            cache[base] = transfer_tableau_sum(d, SkewShape.straight(*shape))
        cache[key] = cache[base].shift(shift)
    return cache[key]


def jacobi_trudi_det(d: BetheData, sh: SkewShape) -> RatFun:
    """det_{i,j <= mu_1} T^{mu'_i - lambda'_j - i + j}(u - mu_1 + mu'_1 - mu'_i - lambda'_j + i + j - 1)."""
    cache: Dict[Tuple[Tuple[int, ...], int], RatFun] = {}
    matrix = [[_shape_ratfun(d, (1,) * max(k, 0), k, c, cache) for k, c in row]
              for row in _jacobi_trudi_entries(sh)]
    return ratfun_determinant(matrix, d.backend)


def giambelli_dual_det(d: BetheData, sh: SkewShape) -> RatFun:
    """det_{i,j <= mu'_1} T_{mu_j - lambda_i + i - j}(u - mu_1 + mu'_1 + mu_j + lambda_i - i - j + 1)."""
    cache: Dict[Tuple[Tuple[int, ...], int], RatFun] = {}
    matrix = [[_shape_ratfun(d, (max(k, 0),), k, c, cache) for k, c in row]
              for row in _giambelli_entries(sh)]
    return ratfun_determinant(matrix, d.backend)


# ---------------------------------------------------------------------------
# Operator generating series
# ---------------------------------------------------------------------------

@dataclass
class OperatorSeries:
    """sum_k c_k(u) X^k truncated at ``order``, with X f(u) = f(u + 2) X."""

    coeffs: List[RatFun]
    order: int
    backend: str = EXACT

    @classmethod
    def identity(cls, order: int, backend: str = EXACT) -> "OperatorSeries":
        return cls([RatFun.one(backend)] + [RatFun.zero(backend)] * order, order, backend)

    def coefficient(self, k: int) -> RatFun:
        if k < 0 or k > self.order:
            raise IndexError(f"coefficient X^{k} outside 0..{self.order}")
        return self.coeffs[k]

    def __mul__(self, other: "OperatorSeries") -> "OperatorSeries":
        order = min(self.order, other.order)
        out = [RatFun.zero(self.backend) for _ in range(order + 1)]
        for m, f in enumerate(self.coeffs[:order + 1]):
            if f.is_zero():
                continue
            for n, g in enumerate(other.coeffs[:order + 1 - m]):
                if g.is_zero():
                    continue
                out[m + n] = out[m + n] + f * g.shift(2 * m)
        return OperatorSeries(out, order, self.backend)

    def reflect(self) -> "OperatorSeries":
        """Substitute X -> -X."""
        return OperatorSeries([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)],
                              self.order, self.backend)

    def is_identity(self) -> bool:
        return self.coeffs[0] == RatFun.one(self.backend) and all(c.is_zero() for c in self.coeffs[1:])

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [c.to_json() for c in self.coeffs]}


def _factor_series(z: RatFun, sign: int, exponent: int, order: int, backend: str) -> OperatorSeries:
    """(1 + sign z X)^exponent, exponent = +-1, truncated."""
    coeffs = [RatFun.one(backend)] + [RatFun.zero(backend)] * order
    if exponent == 1:
        if order >= 1:
            coeffs[1] = z * sign
        return OperatorSeries(coeffs, order, backend)
    # (1 + sign z X)^-1 = sum_k (-sign)^k z(u) z(u+2) ... z(u+2k-2) X^k
    acc = RatFun.one(backend)
    for k in range(1, order + 1):
        acc = acc * z.shift(2 * (k - 1))
        coeffs[k] = acc * ((-sign) ** k)
    return OperatorSeries(coeffs, order, backend)


def generating_series_upper(d: BetheData, a_max: int) -> OperatorSeries:
    """(1 + z(n)X)^{p_n} ... (1 + z(1)X)^{p_1}; X^a coefficient is T^a(u + a - 1)."""
    if a_max < 0:
        raise ValueError("a_max must be non-negative")
    g = d.grading
    series = OperatorSeries.identity(a_max, d.backend)
    for a in range(g.n, 0, -1):
        series = series * _factor_series(z_fn(d, a), 1, g.sign(a), a_max, d.backend)
    return series


def generating_series_lower(d: BetheData, m_max: int) -> OperatorSeries:
    """(1 - z(1)X)^{-p_1} ... (1 - z(n)X)^{-p_n}; X^m coefficient is T_m(u + m - 1)."""
    if m_max < 0:
        raise ValueError("m_max must be non-negative")
    g = d.grading
    series = OperatorSeries.identity(m_max, d.backend)
    for a in range(1, g.n + 1):
        series = series * _factor_series(z_fn(d, a), -1, -g.sign(a), m_max, d.backend)
    return series


# ---------------------------------------------------------------------------
# Character limit
# ---------------------------------------------------------------------------

def _as_values(g: Grading, x: Any) -> Dict[int, Any]:
    if isinstance(x, dict):
        return {int(a): x[a] for a in x}
    return {a: x[a - 1] for a in range(1, g.n + 1)}


def character_limit(g: Grading, sh: SkewShape, x: Any) -> Any:
    """Tableau sum with z(a; .) replaced by the constant x_a."""
    values = _as_values(g, x)
    return sum_over_tableaux(sh, g, lambda i, j, a: g.sign(a) * values[a], Fraction(1), Fraction(0))


def elementary_characters(g: Grading, x: Any, order: int) -> List[Any]:
    """Coefficients of t^k in prod_a (1 + x_a t)^{p_a}, k <= order."""
    values = _as_values(g, x)
    series: List[Any] = [Fraction(1)] + [Fraction(0)] * order
    for a in range(1, g.n + 1):
        xa = values[a]
        if g.sign(a) == 1:
            factor = [Fraction(1), xa] + [Fraction(0)] * (order - 1)
        else:
            factor = [(-xa) ** k for k in range(order + 1)]
        series = [sum(series[i] * factor[k - i] for i in range(k + 1)) for k in range(order + 1)]
    return series


def character_jacobi_trudi(g: Grading, sh: SkewShape, x: Any) -> Any:
    """Classical super Jacobi-Trudi determinant det(e_{mu'_i - lambda'_j - i + j})."""
    entries = _jacobi_trudi_entries(sh)
    top = max((k for row in entries for k, _ in row), default=0)
    e = elementary_characters(g, x, max(top, 0))
    matrix = [[e[k] if k >= 0 else Fraction(0) for k, _ in row] for row in entries]
    return determinant(matrix, Fraction(1), Fraction(0))


# ---------------------------------------------------------------------------
# Identity suites
# ---------------------------------------------------------------------------

def verify_determinants(d: BetheData, sh: SkewShape, method: str = SAMPLED,
                        flip: Optional[int] = None) -> List[Certificate]:
    """Tableau sum against the Jacobi-Trudi and Giambelli determinants."""
    lhs = tableau_sum_expr(d, sh, flip)
    tag = f"{d.grading.label()} shape {sh}"
    return [
        certify_equal(lhs, jacobi_trudi_expr(d, sh), f"tableau=jacobi-trudi {tag}", method),
        certify_equal(lhs, giambelli_expr(d, sh), f"tableau=giambelli {tag}", method),
    ]


def verify_series(d: BetheData, order: int) -> List[Certificate]:
    """Generating-series coefficients against column/row tableau sums, plus the inverse relation."""
    upper = generating_series_upper(d, order)
    lower = generating_series_lower(d, order)
    tag = d.grading.label()
    certs = []
    for k in range(1, order + 1):
        col = transfer_tableau_sum(d, SkewShape.straight(*([1] * k))).shift(k - 1)
        row = transfer_tableau_sum(d, SkewShape.straight(k)).shift(k - 1)
        certs.append(Certificate(f"upper series X^{k} = T^{k}(u+{k - 1}) {tag}",
                                 upper.coefficient(k) == col, CANONICAL))
        certs.append(Certificate(f"lower series X^{k} = T_{k}(u+{k - 1}) {tag}",
                                 lower.coefficient(k) == row, CANONICAL))
    certs.append(Certificate(f"upper * lower(-X) = 1 up to X^{order} {tag}",
                             (upper * lower.reflect()).is_identity(), CANONICAL))
    return certs


def random_bethe_data(g: Grading, rng: np.random.Generator, max_roots: int = 2, max_sites: int = 2,
                      denominator: int = 7, spread: int = 5, min_sites: int = 1) -> BetheData:
    """Exact data with random rational roots p/denominator, |p| <= spread * denominator.

    At least min_sites sites are drawn (capped by max_sites); with no sites
    the boundary T-functions of sl(1|1)-like gradings vanish identically.
    """

    def draw(count: int) -> Tuple[Fraction, ...]:
        return tuple(Fraction(int(rng.integers(-spread * denominator, spread * denominator + 1)), denominator)
                     for _ in range(count))

    roots = tuple(draw(int(rng.integers(0, max_roots + 1))) for _ in range(g.rank))
    sites = draw(int(rng.integers(min(min_sites, max_sites), max_sites + 1)))
    return BetheData(g, roots, sites, EXACT)
