#!/usr/bin/env python3
"""
Particle-hole transformation of Bethe ansatz equations at an odd simple root.

For odd alpha_b the polynomial

    f(z) = A_{b-1}(z + p_b) A_{b+1}(z + p_{b+1}) - A_{b-1}(z - p_b) A_{b+1}(z - p_{b+1})

(A_0 = P, A_{r+s+2} = 1, A_a = Q_a otherwise) vanishes on every color-b root.
Its remaining zeros are the dual roots of the system in the grading with p_b
and p_{b+1} exchanged; every other color keeps its roots.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from bethe import BAESolution, BAESystem, relative_defects
from console import warn
from dvf import BetheData
from ratfun import FLOAT, FLOAT_CANCEL_TOL, Poly, encode_coeff
from superalgebra import Grading, odd_reflection, root_degree

DEFAULT_MATCH_TOL = 1e-6
DEFAULT_DEFECT_TOL = 1e-8


class DualityError(ValueError):
    """Particle-hole step requested at an even root or with f identically zero."""


class MatchingError(DualityError):
    """A color-b root is not close to any zero of f."""


@dataclass
class DualityResult:
    b: int
    f: Poly
    old_grading: Grading
    new_grading: Grading
    matched_roots: Tuple[complex, ...]
    dual_roots: Tuple[complex, ...]
    new_data: BetheData
    multiple_roots: bool = False
    verification: Dict[str, Any] = field(default_factory=dict)

    @property
    def n_dual(self) -> int:
        return len(self.dual_roots)

    def to_json(self) -> dict:
        return {
            "b": self.b,
            "f": [encode_coeff(complex(c)) for c in self.f.coeffs],
            "old_grading": self.old_grading.to_json(),
            "new_grading": self.new_grading.to_json(),
            "matched_roots": [encode_coeff(x) for x in self.matched_roots],
            "dual_roots": [encode_coeff(x) for x in self.dual_roots],
            "n_roots": list(self.new_data.n_roots),
            "multiple_roots": self.multiple_roots,
            "verification": self.verification,
        }


def _check_odd(g: Grading, b: int) -> None:
    if not 1 <= b <= g.rank:
        raise DualityError(f"color {b} outside 1..{g.rank}")
    if root_degree(g, b) != 1:
        raise DualityError(f"alpha_{b} is even in grading {g.label()}")


def f_poly(d: BetheData, b: int) -> Poly:
    g = d.grading
    _check_odd(g, b)
    left, right = d.factor_poly(b - 1), d.factor_poly(b + 1)
    pb, pb1 = g.sign(b), g.sign(b + 1)
    plus = left.shift(pb) * right.shift(pb1)
    minus = left.shift(-pb) * right.shift(-pb1)
    f = plus - minus
    if d.backend == FLOAT:
        # the leading term always cancels; in floats it leaves rounding noise behind
        scale = max((abs(c) for c in plus.coeffs + minus.coeffs), default=0.0)
        f = f.trim(FLOAT_CANCEL_TOL * scale)
    return f


def expected_dual_count(d: BetheData, b: int) -> int:
    """N_{b-1} + N_{b+1} - N_b - 1 with N_0 = N and N_{r+s+2} = 0."""
    g = d.grading
    _check_odd(g, b)
    return d.factor_degree(b - 1) + d.factor_degree(b + 1) - len(d.roots_of(b)) - 1


def _match(originals: Sequence[complex], zeros: List[complex], tol: float) -> Tuple[List[complex], List[complex]]:
    pool = list(zeros)
    matched = []
    for root in sorted(originals, key=lambda w: (w.real, w.imag)):
        if not pool:
            raise MatchingError(f"no zero of f left for root {root:.8g}")
        i = min(range(len(pool)), key=lambda j: abs(pool[j] - root))
        if abs(pool[i] - root) > tol * max(1.0, abs(root)):
            raise MatchingError(
                f"root {root:.8g} is {abs(pool[i] - root):.2e} from the nearest zero of f; data may be off-shell"
            )
        matched.append(pool.pop(i))
    return matched, pool


def _has_cluster(values: Sequence[complex], tol: float) -> bool:
    return any(abs(values[i] - values[j]) < tol for i in range(len(values)) for j in range(i + 1, len(values)))


def particle_hole(d: BetheData, sol: Optional[BAESolution], b: int,
                  match_tol: float = DEFAULT_MATCH_TOL, verify: bool = True) -> DualityResult:
    """Replace the color-b roots by the remaining zeros of f and reflect the grading at b."""
    g = d.grading
    if sol is not None:
        d = BetheData(g, sol.roots, d.inhomogeneities, FLOAT)
    # exact data gives an exact f, so the cancelled degrees vanish exactly
    f = f_poly(d, b).to_backend(FLOAT)
    d = d.to_backend(FLOAT)
    if f.is_zero():
        raise DualityError(f"f vanishes identically at color {b}; no particle-hole transform")
    zeros = f.roots()
    multiple = _has_cluster(zeros, match_tol)
    if multiple:
        warn(f"f has (nearly) multiple zeros at color {b}; matching may be ambiguous")
    matched, dual = _match([complex(x) for x in d.roots_of(b)], zeros, match_tol)
    dual.sort(key=lambda w: (w.real, w.imag))
    expected = expected_dual_count(d, b)
    if len(dual) != expected:
        warn(f"color {b}: {len(dual)} dual roots, {expected} from the root counts; f lost degree")
    new_grading = odd_reflection(g, b)
    roots = [list(col) for col in d.roots]
    roots[b - 1] = dual
    new_data = BetheData(new_grading, tuple(tuple(col) for col in roots), d.inhomogeneities, FLOAT)
    result = DualityResult(b, f, g, new_grading, tuple(matched), tuple(dual), new_data, multiple)
    if verify:
        result.verification = verify_dual_bae(result, d)
    return result


def verify_dual_bae(res: DualityResult, d: BetheData, tol: float = DEFAULT_DEFECT_TOL) -> Dict[str, Any]:
    """Equations of colors b-1, b, b+1 in the new grading, and f at every dual root."""
    new = res.new_data
    sys = BAESystem(new.grading, new.n_roots, tuple(complex(w) for w in d.inhomogeneities))
    defects = relative_defects(sys, new.roots)
    per_color: Dict[str, float] = {}
    for a in (res.b - 1, res.b, res.b + 1):
        if 1 <= a <= new.grading.rank:
            values = [v for (col, _), v in defects.items() if col == a]
            per_color[str(a)] = max(values, default=0.0)
    f_defect = 0.0
    scale = max(1.0, max((abs(complex(c)) for c in res.f.coeffs), default=1.0))
    for root in res.dual_roots:
        f_defect = max(f_defect, abs(complex(res.f.eval(root))) / scale)
    worst = max([f_defect] + list(per_color.values()))
    return {
        "colors": per_color,
        "f_at_dual_roots": f_defect,
        "max_defect": worst,
        "tolerance": tol,
        "passed": worst < tol,
    }


@dataclass
class PathResult:
    steps: List[DualityResult]
    data: BetheData

    @property
    def passed(self) -> bool:
        return all(step.verification.get("passed", True) for step in self.steps)

    def to_json(self) -> dict:
        return {"steps": [s.to_json() for s in self.steps], "final": self.data.to_json(), "passed": self.passed}


def grading_path_transform(d: BetheData, sol: Optional[BAESolution], path: Sequence[int],
                           match_tol: float = DEFAULT_MATCH_TOL) -> PathResult:
    steps: List[DualityResult] = []
    current = d if sol is None else BetheData(d.grading, sol.roots, d.inhomogeneities, FLOAT)
    for b in path:
        step = particle_hole(current, None, b, match_tol)
        steps.append(step)
        current = step.new_data
    return PathResult(steps, current)


def vacuum_solution(sys: BAESystem) -> BetheData:
    """Data with no Bethe roots in the grading of sys; every equation holds vacuously."""
    if sys.total_roots:
        raise ValueError(f"vacuum needs N_a = 0 for every color, got {sys.n_roots}")
    return BetheData(sys.grading, tuple(() for _ in sys.n_roots), sys.inhomogeneities, FLOAT)
