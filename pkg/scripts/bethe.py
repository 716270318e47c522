#!/usr/bin/env python3
"""
Bethe ansatz equations for any grading, a multi-start Newton solver, and the
residue checks that show the tableau sums are pole-free on solutions.

For color a and each root u = u_k^(a) the equation is

    -P(u + zeta) / P(u - zeta) = sigma_a prod_b Q_b(u + c_ab) / Q_b(u - c_ab)

with c_ab = (alpha_a | alpha_b), sigma_a = p_a p_{a+1} = (-1)^deg(alpha_a),
zeta = p_1, and P replaced by 1 for every color but the first. Factors with
c_ab = 0 are trivially 1 and dropped. The solver works on the cleared form

    F = -P(u + zeta) prod_b Q_b(u - c_ab) - sigma_a P(u - zeta) prod_b Q_b(u + c_ab).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import qmc

from console import warn
from diagrams import SkewShape
from dvf import BetheData, DVFTerm, transfer_terms, z_term
from ratfun import FLOAT, PoleError, PoleOrderError, Poly, decode_coeff, encode_coeff, infer_backend
from superalgebra import Grading, cartan_pairing, root_degree


class RootCapError(ValueError):
    """Total number of Bethe roots exceeds the solver cap."""


@dataclass(frozen=True)
class BAESystem:
    grading: Grading
    n_roots: Tuple[int, ...]
    inhomogeneities: Tuple[complex, ...] = ()

    def __post_init__(self):
        counts = tuple(int(n) for n in self.n_roots)
        if len(counts) != self.grading.rank:
            raise ValueError(f"expected {self.grading.rank} root counts, got {len(counts)}")
        if any(n < 0 for n in counts):
            raise ValueError(f"root counts must be non-negative, got {counts}")
        object.__setattr__(self, "n_roots", counts)
        object.__setattr__(self, "inhomogeneities", tuple(complex(w) for w in self.inhomogeneities))

    @property
    def n_sites(self) -> int:
        return len(self.inhomogeneities)

    @property
    def total_roots(self) -> int:
        return sum(self.n_roots)

    @property
    def zeta(self) -> int:
        return self.grading.sign(1)

    def couplings(self, a: int) -> List[Tuple[int, int]]:
        """(b, (alpha_a|alpha_b)) for every nonzero pairing."""
        out = []
        for b in range(max(1, a - 1), min(self.grading.rank, a + 1) + 1):
            c = cartan_pairing(self.grading, a, b)
            if c != 0:
                out.append((b, c))
        return out

    def sigma(self, a: int) -> int:
        return -1 if root_degree(self.grading, a) else 1

    def vacuum(self) -> Poly:
        return Poly.from_roots(self.inhomogeneities, FLOAT)

    def to_json(self) -> dict:
        return {
            "grading": self.grading.to_json(),
            "n_roots": list(self.n_roots),
            "inhomogeneities": [encode_coeff(w) for w in self.inhomogeneities],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BAESystem":
        raw = data.get("inhomogeneities", [])
        backend = infer_backend(raw)
        return cls(Grading.from_json(data["grading"]), tuple(data["n_roots"]),
                   tuple(complex(decode_coeff(w, backend)) for w in raw))


@dataclass
class BAESolution:
    roots: Tuple[Tuple[complex, ...], ...]
    residual: float
    collided: Tuple[bool, ...] = ()
    seed_index: Optional[int] = None
    iterations: int = 0
    condition: float = 1.0

    def flat(self) -> np.ndarray:
        return np.array([x for col in self.roots for x in col], dtype=complex)

    def to_json(self) -> dict:
        return {
            "roots": [[encode_coeff(x) for x in col] for col in self.roots],
            "residual": self.residual,
            "collided": list(self.collided),
            "seed_index": self.seed_index,
            "iterations": self.iterations,
            "condition": self.condition,
        }

    @classmethod
    def from_json(cls, data: dict) -> "BAESolution":
        roots = tuple(tuple(complex(decode_coeff(x, FLOAT)) for x in col) for col in data["roots"])
        return cls(roots, float(data.get("residual", 0.0)),
                   tuple(data.get("collided", [False] * len(roots))),
                   data.get("seed_index"), int(data.get("iterations", 0)),
                   float(data.get("condition", 1.0)))


@dataclass
class SolverConfig:
    seeds: int = 32
    seed: int = 0
    box: Tuple[float, float, float, float] = (-3.0, 3.0, -3.0, 3.0)
    max_iterations: int = 200
    max_halvings: int = 30
    tol: float = 1e-10
    dedup_tol: float = 1e-6
    singular_tol: float = 1e-8
    ill_conditioned: float = 1e12
    max_total_roots: int = 8
    workers: int = 1

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]]) -> "SolverConfig":
        data = dict(data or {})
        if "box" in data:
            data["box"] = tuple(float(x) for x in data["box"])
        known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        return cls(**known)


@dataclass
class SeedReport:
    index: int
    outcome: str
    iterations: int
    residual: float
    condition: float

    def to_json(self) -> dict:
        return {"index": self.index, "outcome": self.outcome, "iterations": self.iterations,
                "residual": self.residual, "condition": self.condition}


# ---------------------------------------------------------------------------
# Cleared equations
# ---------------------------------------------------------------------------

def _products(values: Sequence[complex]) -> Tuple[complex, List[complex]]:
    """Product of values and, for each i, the product of all the others."""
    n = len(values)
    prefix = [1 + 0j] * (n + 1)
    for i, v in enumerate(values):
        prefix[i + 1] = prefix[i] * v
    suffix = [1 + 0j] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] * values[i]
    return prefix[n], [prefix[i] * suffix[i + 1] for i in range(n)]


def _offsets(sys: BAESystem) -> List[int]:
    out, acc = [], 0
    for n in sys.n_roots:
        out.append(acc)
        acc += n
    return out


class _Equations:
    """Cleared defects and their Jacobian over the flat root vector."""

    def __init__(self, sys: BAESystem):
        self.sys = sys
        self.offsets = _offsets(sys)
        self.size = sys.total_roots
        self.p = sys.vacuum()
        self.dp = self.p.derivative()
        self.couplings = {a: sys.couplings(a) for a in range(1, sys.grading.rank + 1)}

    def split(self, z: np.ndarray) -> List[np.ndarray]:
        return [z[o:o + n] for o, n in zip(self.offsets, self.sys.n_roots)]

    def sides(self, z: np.ndarray, a: int, k: int, want_grad: bool = False):
        """(left, right, grad) with F = left + right for root k of color a."""
        sys = self.sys
        u = z[self.offsets[a - 1] + k]
        zeta = sys.zeta
        sigma = sys.sigma(a)
        grads = np.zeros(self.size, dtype=complex) if want_grad else None
        side_values = []
        for sgn in (-1, 1):
            # sgn = -1: Q_b(u - c) side with P(u + zeta); sgn = +1: Q_b(u + c) side with P(u - zeta)
            values, deps = [], []
            for b, c in self.couplings[a]:
                base = self.offsets[b - 1]
                for j in range(sys.n_roots[b - 1]):
                    values.append(u + sgn * c - z[base + j])
                    deps.append(None if (b == a and j == k) else base + j)
            prod, others = _products(values)
            if a == 1:
                pv = complex(self.p.eval(u - sgn * zeta))
                dpv = complex(self.dp.eval(u - sgn * zeta))
            else:
                pv, dpv = 1 + 0j, 0j
            coeff = -1 if sgn == -1 else -sigma
            side_values.append(coeff * pv * prod)
            if want_grad:
                own = self.offsets[a - 1] + k
                grads[own] += coeff * dpv * prod
                for other, dep in zip(others, deps):
                    if dep is None:
                        continue
                    grads[own] += coeff * pv * other
                    grads[dep] -= coeff * pv * other
        return side_values[0], side_values[1], grads

    def defects(self, z: np.ndarray) -> np.ndarray:
        out = np.zeros(self.size, dtype=complex)
        for a in range(1, self.sys.grading.rank + 1):
            for k in range(self.sys.n_roots[a - 1]):
                lhs, rhs, _ = self.sides(z, a, k)
                out[self.offsets[a - 1] + k] = lhs + rhs
        return out

    def jacobian(self, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        f = np.zeros(self.size, dtype=complex)
        jac = np.zeros((self.size, self.size), dtype=complex)
        for a in range(1, self.sys.grading.rank + 1):
            for k in range(self.sys.n_roots[a - 1]):
                lhs, rhs, grad = self.sides(z, a, k, want_grad=True)
                row = self.offsets[a - 1] + k
                f[row] = lhs + rhs
                jac[row] = grad
        return f, jac

    def degenerate(self, z: np.ndarray, tol: float) -> List[Tuple[int, int]]:
        """Equations whose two cleared sides both vanish (0/0 in ratio form)."""
        out = []
        for a in range(1, self.sys.grading.rank + 1):
            for k in range(self.sys.n_roots[a - 1]):
                lhs, rhs, _ = self.sides(z, a, k)
                if abs(lhs) < tol and abs(rhs) < tol:
                    out.append((a, k))
        return out


def _flatten(sys: BAESystem, roots: Sequence[Sequence[Any]]) -> np.ndarray:
    roots = [list(col) for col in roots]
    if tuple(len(col) for col in roots) != sys.n_roots:
        raise ValueError(f"root counts {tuple(len(c) for c in roots)} do not match N_a = {sys.n_roots}")
    return np.array([complex(x) for col in roots for x in col], dtype=complex)


def bae_residual(sys: BAESystem, roots: Sequence[Sequence[Any]]) -> List[complex]:
    """Cleared-denominator defect of every equation, colors in order."""
    z = _flatten(sys, roots)
    return [complex(v) for v in _Equations(sys).defects(z)]


def relative_defects(sys: BAESystem, roots: Sequence[Sequence[Any]]) -> Dict[Tuple[int, int], float]:
    """|left + right| / max(1, |left|, |right|) keyed by (color, index)."""
    z = _flatten(sys, roots)
    eqs = _Equations(sys)
    out = {}
    for a in range(1, sys.grading.rank + 1):
        for k in range(sys.n_roots[a - 1]):
            left, right, _ = eqs.sides(z, a, k)
            out[(a, k)] = abs(left + right) / max(1.0, abs(left), abs(right))
    return out


def find_degenerate_equations(sys: BAESystem, roots: Sequence[Sequence[Any]],
                              tol: float = 1e-8) -> List[Tuple[int, int]]:
    """(color, index) of equations that read 0/0 at these roots."""
    return _Equations(sys).degenerate(_flatten(sys, roots), tol)


def bae_ratio_defect(sys: BAESystem, roots: Sequence[Sequence[Any]]) -> List[complex]:
    """Raw L - R of each equation; raises PoleError at collisions."""
    z = _flatten(sys, roots)
    eqs = _Equations(sys)
    out = []
    for a in range(1, sys.grading.rank + 1):
        for k in range(sys.n_roots[a - 1]):
            u = z[eqs.offsets[a - 1] + k]
            if a == 1:
                den = complex(eqs.p.eval(u - sys.zeta))
                if den == 0:
                    raise PoleError(f"P(u - zeta) vanishes at color 1 root {k}")
                lhs = -complex(eqs.p.eval(u + sys.zeta)) / den
            else:
                lhs = -1 + 0j
            rhs = complex(sys.sigma(a))
            for b, c in eqs.couplings[a]:
                base = eqs.offsets[b - 1]
                for j in range(sys.n_roots[b - 1]):
                    if b == a and j == k:
                        rhs *= c / -c
                        continue
                    den = u - c - z[base + j]
                    if den == 0:
                        raise PoleError(f"Q_{b}(u - {c}) vanishes at color {a} root {k}")
                    rhs *= (u + c - z[base + j]) / den
            out.append(lhs - rhs)
    return out


# ---------------------------------------------------------------------------
# Solver
# ---------------------------------------------------------------------------

def seed_points(sys: BAESystem, config: SolverConfig) -> np.ndarray:
    """Scrambled Halton points in the complex box, one row per seed."""
    dim = sys.total_roots
    sampler = qmc.Halton(d=2 * dim, scramble=True, seed=config.seed)
    unit = sampler.random(config.seeds)
    re_lo, re_hi, im_lo, im_hi = config.box
    re = re_lo + (re_hi - re_lo) * unit[:, :dim]
    im = im_lo + (im_hi - im_lo) * unit[:, dim:]
    return re + 1j * im


def _newton(eqs: _Equations, z0: np.ndarray, config: SolverConfig) -> Tuple[np.ndarray, SeedReport, int]:
    z = z0.copy()
    f, jac = eqs.jacobian(z)
    norm = float(np.max(np.abs(f)))
    condition = 1.0
    for it in range(config.max_iterations):
        if norm < config.tol:
            return z, SeedReport(-1, "converged", it, norm, condition), it
        step, _, _, sv = np.linalg.lstsq(jac, -f, rcond=None)
        condition = float(sv[0] / sv[-1]) if sv[-1] > 0 else float("inf")
        t = 1.0
        for _ in range(config.max_halvings + 1):
            trial = z + t * step
            f_trial = eqs.defects(trial)
            trial_norm = float(np.max(np.abs(f_trial)))
            if np.isfinite(trial_norm) and trial_norm < norm:
                break
            t *= 0.5
        else:
            return z, SeedReport(-1, "stalled", it, norm, condition), it
        z = trial
        f, jac = eqs.jacobian(z)
        norm = float(np.max(np.abs(f)))
    outcome = "converged" if norm < config.tol else "diverged"
    return z, SeedReport(-1, outcome, config.max_iterations, norm, condition), config.max_iterations


def _canonical(roots: Sequence[Sequence[complex]]) -> np.ndarray:
    return np.array([x for col in roots for x in sorted(col, key=lambda w: (w.real, w.imag))], dtype=complex)


def _collided(col: Sequence[complex], tol: float) -> bool:
    return any(abs(col[i] - col[j]) < tol for i in range(len(col)) for j in range(i + 1, len(col)))


def solve_with_report(sys: BAESystem, config: Optional[SolverConfig] = None
                      ) -> Tuple[List[BAESolution], List[SeedReport]]:
    """Multi-start damped Newton; distinct solutions plus one report per seed."""
    config = config or SolverConfig()
    if sys.total_roots > config.max_total_roots:
        raise RootCapError(f"{sys.total_roots} Bethe roots requested, cap is {config.max_total_roots}")
    if sys.total_roots == 0:
        empty = tuple(() for _ in sys.n_roots)
        return [BAESolution(empty, 0.0, tuple(False for _ in sys.n_roots))], []

    eqs = _Equations(sys)
    seeds = seed_points(sys, config)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            runs = list(pool.map(lambda z0: _newton(eqs, z0, config), seeds))
    else:
        runs = [_newton(eqs, z0, config) for z0 in seeds]

    solutions: List[BAESolution] = []
    reports: List[SeedReport] = []
    for index, (z, report, iterations) in enumerate(runs):
        report.index = index
        reports.append(report)
        if report.condition > config.ill_conditioned:
            warn(f"seed {index}: ill-conditioned Jacobian (condition {report.condition:.2e})")
        if report.outcome != "converged":
            continue
        if eqs.degenerate(z, config.singular_tol):
            report.outcome = "singular"
            continue
        roots = tuple(tuple(complex(x) for x in col) for col in eqs.split(z))
        canon = _canonical(roots)
        if any(np.max(np.abs(canon - _canonical(s.roots))) < config.dedup_tol for s in solutions):
            report.outcome = "duplicate"
            continue
        collided = tuple(_collided(col, config.dedup_tol) for col in roots)
        if any(collided):
            warn(f"seed {index}: converged to coinciding roots within one color")
        solutions.append(BAESolution(roots, report.residual, collided, index, iterations, report.condition))
    return solutions, reports


def solve(sys: BAESystem, config: Optional[SolverConfig] = None) -> List[BAESolution]:
    return solve_with_report(sys, config)[0]


def bethe_data_from_solution(sys: BAESystem, sol: BAESolution) -> BetheData:
    return BetheData(sys.grading, sol.roots, sys.inhomogeneities, FLOAT)


# ---------------------------------------------------------------------------
# Residues
# ---------------------------------------------------------------------------

def _vanishes(value: complex, scale: complex, tol: float) -> bool:
    return abs(value) <= tol * max(1.0, abs(scale))


def term_residue(d: BetheData, term: DVFTerm, u0: Any, tol: float = 1e-9) -> complex:
    """Residue of a term at u0 by removing its one vanishing linear factor."""
    u0 = complex(u0)
    vanishing = 0
    cofactor_den = 1 + 0j
    for (col, h), m in term.den:
        for root in d.factor_roots(col):
            lin = u0 + h - complex(root)
            if _vanishes(lin, u0, tol):
                vanishing += m
            else:
                cofactor_den *= lin ** m
    if vanishing == 0:
        return 0j
    if vanishing > 1:
        raise PoleOrderError(f"pole of order {vanishing} at u = {u0}")
    num = complex(term.sign)
    for (col, h), m in term.num:
        num *= complex(d.factor_poly(col).eval(u0 + h)) ** m
    return num / cofactor_den


def pair_residue_check(d: BetheData, b: int, tol: float = 1e-9) -> float:
    """max_k |Res_{u = u_k^(b) - S_b} (p_b z(b; u) + p_{b+1} z(b+1; u))|."""
    g = d.grading
    if not 1 <= b <= g.rank:
        raise ValueError(f"color {b} outside 1..{g.rank}")
    terms = [z_term(g, b), z_term(g, b + 1)]
    signs = [g.sign(b), g.sign(b + 1)]
    worst = 0.0
    for root in d.roots_of(b):
        u0 = complex(root) - g.partial_sum(b)
        total = sum(s * term_residue(d, t, u0, tol) for s, t in zip(signs, terms))
        worst = max(worst, abs(total))
    return worst


@dataclass
class PoleReport:
    max_residue: float
    locations: int
    overlaps: List[Dict[str, Any]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"max_residue": self.max_residue, "locations": self.locations, "overlaps": self.overlaps}


def _pole_groups(d: BetheData, terms: Sequence[DVFTerm], tol: float) -> List[Tuple[complex, set]]:
    groups: List[Tuple[complex, set]] = []
    for term in terms:
        for (col, h), _ in term.den:
            for root in d.factor_roots(col):
                loc = complex(root) - h
                for i, (where, colors) in enumerate(groups):
                    if _vanishes(loc - where, where, tol):
                        colors.add(col)
                        break
                else:
                    groups.append((loc, {col}))
    return groups


def pole_freeness_check(d: BetheData, a: int, tol: float = 1e-9) -> PoleReport:
    """Summed residues of the T^a(u) tableau terms at every candidate pole."""
    terms = [term for _, term in transfer_terms(d.grading, SkewShape.straight(*([1] * a)))]
    worst = 0.0
    groups = _pole_groups(d, terms, tol)
    overlaps = []
    for loc, colors in groups:
        if len(colors) > 1:
            overlaps.append({"location": encode_coeff(loc), "colors": sorted(colors)})
            warn(f"pole location {loc:.6g} shared by colors {sorted(colors)}; residue check skipped there")
            continue
        total = sum(term_residue(d, term, loc, tol) for term in terms)
        worst = max(worst, abs(total))
    return PoleReport(worst, len(groups), overlaps)


# ---------------------------------------------------------------------------
# Bethe-strap pairing
# ---------------------------------------------------------------------------

@dataclass
class StrapGroup:
    label: Tuple[int, int]
    terms: List[int]
    residue_sum: float

    def to_json(self) -> dict:
        return {"label": list(self.label), "terms": self.terms, "residue_sum": self.residue_sum}


@dataclass
class StrapReport:
    shape: SkewShape
    grading: Grading
    tableaux: List[str]
    signs: List[int]
    groups: List[StrapGroup]

    @property
    def max_residue_sum(self) -> float:
        return max((g.residue_sum for g in self.groups), default=0.0)

    def edges(self) -> List[Tuple[int, int, Tuple[int, int]]]:
        out = []
        for group in self.groups:
            for i, j in zip(group.terms, group.terms[1:]):
                out.append((i, j, group.label))
        return out

    def to_json(self) -> dict:
        return {
            "grading": self.grading.to_json(),
            "shape": self.shape.to_json(),
            "tableaux": self.tableaux,
            "signs": self.signs,
            "groups": [g.to_json() for g in self.groups],
            "max_residue_sum": self.max_residue_sum,
        }


def cancellation_pairs(d: BetheData, sh: SkewShape, b: Optional[int] = None,
                       tol: float = 1e-9) -> StrapReport:
    """Group tableau terms by shared pole label (color, c): pole at u = u_k^(color) + c.

    ``b`` restricts the groups to one color; ``None`` keeps every color.
    """
    g = d.grading
    pairs = transfer_terms(g, sh)
    by_label: Dict[Tuple[int, int], List[int]] = {}
    colors = [b] if b is not None else list(range(1, g.rank + 1))
    for index, (_, term) in enumerate(pairs):
        for color in colors:
            for label in term.pole_labels(color):
                by_label.setdefault(label, []).append(index)
    groups = []
    for label in sorted(by_label, key=lambda lab: (lab[0], min(by_label[lab]), lab[1])):
        members = by_label[label]
        color, c = label
        worst = 0.0
        for root in d.roots_of(color):
            loc = complex(root) + c
            total = sum(term_residue(d, pairs[i][1], loc, tol) for i in members)
            worst = max(worst, abs(total))
        groups.append(StrapGroup(label, members, worst))
    return StrapReport(sh, g, [str(t) for t, _ in pairs], [term.sign for _, term in pairs], groups)


def strap_dot(report: StrapReport, name: str = "strap") -> str:
    lines = [f"digraph {name} {{", f'  label="{report.grading.label()} shape {report.shape}";']
    for i, (text, sign) in enumerate(zip(report.tableaux, report.signs)):
        lines.append(f'  t{i} [shape=box, label="{"+" if sign > 0 else "-"} {text}"];')
    for i, j, (color, c) in report.edges():
        lines.append(f'  t{i} -> t{j} [label="({color},{c})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
