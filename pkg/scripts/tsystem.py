#!/usr/bin/env python3
"""
T-system checks for rectangular tableau sums T_m^a(u) = T_{(m^a)}(u).

A TGrid memoizes the rectangular transfer functions of one BetheData and
certifies the Hirota bilinear relation, the vanishing of the quarter-lattice
a >= r+2, m >= s+2 and the two reduced relations on its boundary.
"""

import threading
from typing import Any, Dict, List, Tuple

from certify import (
    SAMPLED,
    Certificate,
    Const,
    Envelope,
    Expr,
    certify_equal,
    certify_nonzero,
    certify_zero,
)
from diagrams import SkewShape
from dvf import BetheData, TableauSumExpr
from ratfun import RatFun


class GridBoundsError(ValueError):
    """Requested entry lies outside the grid bounds."""


class TGrid:
    """Rectangular T-functions of one BetheData, 0 <= a <= a_max, 0 <= m <= m_max."""

    def __init__(self, data: BetheData, a_max: int, m_max: int):
        if a_max < 0 or m_max < 0:
            raise GridBoundsError("grid bounds must be non-negative")
        self.data = data
        self.a_max = a_max
        self.m_max = m_max
        self._lock = threading.Lock()
        self._ratfuns: Dict[Tuple[int, int], RatFun] = {}

    def _check(self, a: int, m: int) -> None:
        if not (0 <= a <= self.a_max and 0 <= m <= self.m_max):
            raise GridBoundsError(f"T_{m}^{a} outside grid bounds a <= {self.a_max}, m <= {self.m_max}")

    def shape(self, a: int, m: int) -> SkewShape:
        return SkewShape.rectangle(a, m)

    def entry(self, a: int, m: int, shift: int = 0) -> Expr:
        """T_m^a(u + shift) as an expression."""
        self._check(a, m)
        if a == 0 or m == 0:
            return Const(1)
        return GridEntry(self, a, m, shift)

    def ratfun(self, a: int, m: int) -> RatFun:
        """Canonical T_m^a(u), computed once per entry."""
        self._check(a, m)
        with self._lock:
            if (a, m) not in self._ratfuns:
                if a == 0 or m == 0:
                    self._ratfuns[(a, m)] = RatFun.one(self.data.backend)
                else:
                    self._ratfuns[(a, m)] = TableauSumExpr(self.data, self.shape(a, m)).ratfun()
            return self._ratfuns[(a, m)]


class GridEntry(Expr):
    def __init__(self, grid: TGrid, a: int, m: int, shift: int):
        self.grid = grid
        self.a = a
        self.m = m
        self.offset = shift
        self._expr = TableauSumExpr(grid.data, grid.shape(a, m), shift)

    def value(self, x: Any) -> Any:
        return self._expr.value(x)

    def envelope(self) -> Envelope:
        return self._expr.envelope()

    def ratfun(self) -> RatFun:
        return self.grid.ratfun(self.a, self.m).shift(self.offset)

    def shift(self, c: Any) -> Expr:
        return GridEntry(self.grid, self.a, self.m, self.offset + int(c))


def _bilinear(grid: TGrid, a: int, m: int) -> Expr:
    return grid.entry(a, m, -1) * grid.entry(a, m, 1)


def hirota_check(grid: TGrid, a: int, m: int, method: str = SAMPLED) -> Certificate:
    """T_m^a(u-1) T_m^a(u+1) = T_{m+1}^a T_{m-1}^a + T_m^{a-1} T_m^{a+1}."""
    if a < 1 or m < 1:
        raise GridBoundsError("hirota_check needs a, m >= 1")
    if a + 1 > grid.a_max or m + 1 > grid.m_max:
        raise GridBoundsError(
            f"hirota_check at (a, m) = ({a}, {m}) needs bounds a_max >= {a + 1}, m_max >= {m + 1}"
        )
    rhs = grid.entry(a, m + 1) * grid.entry(a, m - 1) + grid.entry(a - 1, m) * grid.entry(a + 1, m)
    return certify_equal(_bilinear(grid, a, m), rhs,
                         f"hirota T_{m}^{a} {grid.data.grading.label()}", method)


def _combine(identity: str, checks: List[Certificate]) -> Certificate:
    passed = all(c.passed for c in checks)
    method = checks[0].method if checks else SAMPLED
    return Certificate(identity, passed, method, sum(c.samples for c in checks),
                       max((c.degree_bound or 0 for c in checks), default=None),
                       {"checks": [c.to_json() for c in checks]})


def vanishing_check(grid: TGrid, r: int, s: int, method: str = SAMPLED) -> Certificate:
    """T_m^a = 0 for a in {r+2, r+3}, m in {s+2, s+3}."""
    if grid.a_max < r + 3 or grid.m_max < max(s + 3, 1):
        raise GridBoundsError(f"vanishing_check needs a_max >= {r + 3}, m_max >= {max(s + 3, 1)}")
    checks = []
    for a in (r + 2, r + 3):
        for m in (s + 2, s + 3):
            if m < 1:
                continue
            checks.append(certify_zero(grid.entry(a, m), f"T_{m}^{a} = 0", method))
    return _combine(f"vanishing a >= {r + 2}, m >= {s + 2} {grid.data.grading.label()}", checks)


def boundary_nonzero_check(grid: TGrid, r: int, s: int) -> Certificate:
    """T_m^{r+1} and T_{s+1}^a are not identically zero (generic data)."""
    checks = []
    if r + 1 <= grid.a_max:
        for m in range(1, grid.m_max + 1):
            checks.append(certify_nonzero(grid.entry(r + 1, m), f"T_{m}^{r + 1} != 0"))
    if s + 1 >= 1 and s + 1 <= grid.m_max:
        for a in range(1, grid.a_max + 1):
            checks.append(certify_nonzero(grid.entry(a, s + 1), f"T_{s + 1}^{a} != 0"))
    return _combine(f"boundary nonzero {grid.data.grading.label()}", checks)


def restricted_relations(grid: TGrid, r: int, s: int, method: str = SAMPLED) -> Certificate:
    """Two-term relations on the edges a = r+1 (m >= s+2) and m = s+1 (a >= r+2)."""
    checks = []
    a = r + 1
    if a <= grid.a_max:
        for m in range(max(s + 2, 1), grid.m_max):
            rhs = grid.entry(a, m + 1) * grid.entry(a, m - 1)
            checks.append(certify_equal(_bilinear(grid, a, m), rhs, f"restricted T_{m}^{a}", method))
    m = s + 1
    if m >= 1 and m <= grid.m_max:
        for a in range(r + 2, grid.a_max):
            rhs = grid.entry(a - 1, m) * grid.entry(a + 1, m)
            checks.append(certify_equal(_bilinear(grid, a, m), rhs, f"restricted T_{m}^{a}", method))
    return _combine(f"restricted relations {grid.data.grading.label()}", checks)


def run_tsystem_suite(data: BetheData, a_max: int = 3, m_max: int = 3, method: str = SAMPLED) -> List[Certificate]:
    """Hirota on every 1 <= a, m within bounds, vanishing, restricted relations and nonzero boundary."""
    g = data.grading
    grid = TGrid(data, max(a_max + 1, g.r + 3), max(m_max + 1, g.s + 3, 1))
    certs = [hirota_check(grid, a, m, method) for a in range(1, a_max + 1) for m in range(1, m_max + 1)]
    certs.append(vanishing_check(grid, g.r, g.s, method))
    certs.append(restricted_relations(grid, g.r, g.s, method))
    certs.append(boundary_nonzero_check(grid, g.r, g.s))
    return certs
