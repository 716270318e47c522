#!/usr/bin/env python3
"""
Gradings, Cartan data and odd reflections of sl(r+1|s+1).

A grading is a sign sequence p_1..p_{r+s+2} with r+1 entries +1 and s+1
entries -1. Indices are 1-based throughout, matching the usual labelling of
simple roots alpha_1..alpha_{r+s+1}. The degenerate case s = -1 (all +1) is
the ordinary sl(r+1).
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Sequence, Tuple


class GradingError(ValueError):
    """Invalid sign sequence or reflection request."""


def _check_algebra(r: int, s: int) -> None:
    if r < 0 or s < -1:
        raise GradingError(f"sl({r + 1}|{s + 1}) is not supported (need r >= 0, s >= -1)")
    if r + s + 1 < 1:
        raise GradingError(f"sl({r + 1}|{s + 1}) has no simple roots (need r + s >= 0)")


@dataclass(frozen=True)
class Grading:
    """Sign sequence (p_1, ..., p_{r+s+2})."""

    r: int
    s: int
    p: Tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.p)
        object.__setattr__(self, "p", p)
        _check_algebra(self.r, self.s)
        if len(p) != self.r + self.s + 2:
            raise GradingError(f"grading {p} has length {len(p)}, expected {self.r + self.s + 2}")
        if any(x not in (1, -1) for x in p):
            raise GradingError(f"grading {p} contains entries other than +1/-1")
        if p.count(1) != self.r + 1 or p.count(-1) != self.s + 1:
            raise GradingError(
                f"grading {p} must contain {self.r + 1} entries +1 and {self.s + 1} entries -1"
            )

    @classmethod
    def from_signs(cls, signs: Sequence[int]) -> "Grading":
        signs = tuple(int(x) for x in signs)
        return cls(signs.count(1) - 1, signs.count(-1) - 1, signs)

    @classmethod
    def parse(cls, text: str) -> "Grading":
        """Parse '+-+', '(+,-,+)' or '1,-1,1'."""
        cleaned = text.strip().strip("()[]").replace(" ", "")
        if "," in cleaned:
            tokens = [t for t in cleaned.split(",") if t]
        else:
            tokens = list(cleaned)
        signs = []
        for tok in tokens:
            if tok in ("+", "+1", "1"):
                signs.append(1)
            elif tok in ("-", "-1", "−"):
                signs.append(-1)
            else:
                raise GradingError(f"cannot parse grading token '{tok}' in '{text}'")
        if not signs:
            raise GradingError("empty grading")
        return cls.from_signs(signs)

    @property
    def n(self) -> int:
        """Size of the index set J."""
        return len(self.p)

    @property
    def rank(self) -> int:
        """Number of simple roots r+s+1."""
        return len(self.p) - 1

    def sign(self, a: int) -> int:
        """p_a for a in 1..n."""
        if not 1 <= a <= self.n:
            raise IndexError(f"index {a} outside J = 1..{self.n}")
        return self.p[a - 1]

    def partial_sum(self, a: int) -> int:
        """S_a = p_1 + ... + p_a (S_0 = 0)."""
        return sum(self.p[:a])

    @property
    def j_plus(self) -> Tuple[int, ...]:
        return tuple(a for a in range(1, self.n + 1) if self.p[a - 1] == 1)

    @property
    def j_minus(self) -> Tuple[int, ...]:
        return tuple(a for a in range(1, self.n + 1) if self.p[a - 1] == -1)

    def is_distinguished(self) -> bool:
        return self.p == (1,) * (self.r + 1) + (-1,) * (self.s + 1)

    def label(self) -> str:
        return "(" + ",".join("+" if x == 1 else "-" for x in self.p) + ")"

    def __str__(self) -> str:
        return self.label()

    def to_json(self) -> dict:
        return {"r": self.r, "s": self.s, "p": list(self.p)}

    @classmethod
    def from_json(cls, data) -> "Grading":
        if isinstance(data, str):
            return cls.parse(data)
        if isinstance(data, (list, tuple)):
            return cls.from_signs(data)
        g = cls(int(data["r"]), int(data["s"]), tuple(data["p"]))
        return g


def _check_root(g: Grading, a: int) -> None:
    if not 1 <= a <= g.rank:
        raise GradingError(f"simple root index {a} outside 1..{g.rank}")


def enumerate_gradings(r: int, s: int) -> List[Grading]:
    """All distinct gradings of sl(r+1|s+1), distinguished first.

    Ordered lexicographically with +1 before -1, so the distinguished grading
    (+..+ -..-) always comes first.
    """
    _check_algebra(r, s)
    n = r + s + 2
    gradings = []
    for minus in combinations(range(n), s + 1):
        p = [1] * n
        for i in minus:
            p[i] = -1
        gradings.append(tuple(p))
    gradings.sort(reverse=True)
    return [Grading(r, s, p) for p in gradings]


def cartan_pairing(g: Grading, k: int, l: int) -> int:
    """(alpha_k | alpha_l) for the simple roots of grading g."""
    _check_root(g, k)
    _check_root(g, l)
    pk, pk1 = g.sign(k), g.sign(k + 1)
    value = 0
    if k == l:
        value += pk + pk1
    if l == k + 1:
        value -= pk1
    if k == l + 1:
        value -= pk
    return value


def cartan_matrix(g: Grading) -> List[List[int]]:
    return [[cartan_pairing(g, k, l) for l in range(1, g.rank + 1)] for k in range(1, g.rank + 1)]


def root_degree(g: Grading, a: int) -> int:
    """0 for even, 1 for odd simple roots."""
    _check_root(g, a)
    return (1 - g.sign(a) * g.sign(a + 1)) // 2


def odd_reflection(g: Grading, b: int) -> Grading:
    """Swap p_b and p_{b+1}; only defined for odd alpha_b."""
    _check_root(g, b)
    if root_degree(g, b) != 1:
        raise GradingError(f"alpha_{b} is even in grading {g.label()}; odd reflection needs an odd root")
    p = list(g.p)
    p[b - 1], p[b] = p[b], p[b - 1]
    return Grading(g.r, g.s, tuple(p))


# ---------------------------------------------------------------------------
# epsilon/delta realisation
# ---------------------------------------------------------------------------

def basis_assignment(g: Grading) -> List[Tuple[str, int]]:
    """Assign e_a to the next unused epsilon (p_a=+1) or delta (p_a=-1)."""
    eps = delta = 0
    out = []
    for x in g.p:
        if x == 1:
            eps += 1
            out.append(("ε", eps))
        else:
            delta += 1
            out.append(("δ", delta))
    return out


def _basis_vector(kind: str, idx: int, r: int, s: int) -> List[int]:
    vec = [0] * (r + s + 2)
    vec[idx - 1 if kind == "ε" else r + idx] = 1
    return vec


def simple_roots(g: Grading) -> List[List[int]]:
    """alpha_a = e_a - e_{a+1} as integer vectors in (ε_1..ε_{r+1}, δ_1..δ_{s+1})."""
    basis = [_basis_vector(kind, idx, g.r, g.s) for kind, idx in basis_assignment(g)]
    return [[x - y for x, y in zip(basis[a], basis[a + 1])] for a in range(g.rank)]


def bilinear_form(x: Sequence[int], y: Sequence[int], r: int, s: int) -> int:
    """(ε_i|ε_j) = δ_ij, (δ_i|δ_j) = -δ_ij, (ε|δ) = 0."""
    return sum(a * b for a, b in zip(x[:r + 1], y[:r + 1])) - sum(a * b for a, b in zip(x[r + 1:], y[r + 1:]))


def reflect_root(alpha: Sequence[int], beta: Sequence[int], r: int, s: int) -> List[int]:
    """Weyl-supergroup reflection of beta at alpha."""
    alpha, beta = list(alpha), list(beta)
    aa = bilinear_form(alpha, alpha, r, s)
    ab = bilinear_form(alpha, beta, r, s)
    if aa != 0:
        # even root: ordinary reflection
        return [b - (2 * ab // aa) * a for a, b in zip(alpha, beta)]
    if beta == alpha:
        return [-a for a in alpha]
    if ab != 0:
        return [a + b for a, b in zip(alpha, beta)]
    return beta


def reflected_simple_roots(g: Grading, b: int) -> List[List[int]]:
    """Image of the simple system of g under the reflection at odd alpha_b."""
    if root_degree(g, b) != 1:
        raise GradingError(f"alpha_{b} is even in grading {g.label()}")
    roots = simple_roots(g)
    alpha = roots[b - 1]
    return [reflect_root(alpha, beta, g.r, g.s) for beta in roots]


def pairing_matrix(roots: Sequence[Sequence[int]], r: int, s: int) -> List[List[int]]:
    return [[bilinear_form(x, y, r, s) for y in roots] for x in roots]


def root_labels(g: Grading) -> List[str]:
    names = [f"{kind}{idx}" for kind, idx in basis_assignment(g)]
    return [f"{names[a]}−{names[a + 1]}" for a in range(g.rank)]


def reachable_gradings(g: Grading) -> Tuple[List[Grading], List[Tuple[Grading, int, Grading]]]:
    """Breadth-first closure of g under odd reflections, with the edges used."""
    seen = {g: None}
    order = [g]
    edges = []
    queue = deque([g])
    while queue:
        cur = queue.popleft()
        for b in range(1, cur.rank + 1):
            if root_degree(cur, b) != 1:
                continue
            nxt = odd_reflection(cur, b)
            if nxt not in seen:
                seen[nxt] = (cur, b)
                order.append(nxt)
                queue.append(nxt)
                edges.append((cur, b, nxt))
    return order, edges


# ---------------------------------------------------------------------------
# Dynkin diagrams
# ---------------------------------------------------------------------------

@dataclass
class DynkinNode:
    index: int
    odd: bool
    label: str


@dataclass
class DynkinDiagram:
    """Chain diagram of a grading: one node per simple root."""

    grading: Grading
    nodes: List[DynkinNode] = field(default_factory=list)
    edges: List[Tuple[int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "grading": self.grading.to_json(),
            "nodes": [{"index": n.index, "odd": n.odd, "label": n.label} for n in self.nodes],
            "edges": [list(e) for e in self.edges],
        }

    def to_dot(self, name: str = "dynkin") -> str:
        lines = [f"graph {name} {{", "  rankdir=LR;", f'  label="{self.grading.label()}";']
        for node in self.nodes:
            style = 'shape=circle, label="X"' if node.odd else 'shape=circle, label=""'
            lines.append(f'  a{node.index} [{style}, xlabel="{node.label}"];')
        for a, b in self.edges:
            lines.append(f"  a{a} -- a{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def dynkin_graph(g: Grading) -> DynkinDiagram:
    labels = root_labels(g)
    nodes = [DynkinNode(a, root_degree(g, a) == 1, labels[a - 1]) for a in range(1, g.rank + 1)]
    edges = [(a, a + 1) for a in range(1, g.rank)]
    return DynkinDiagram(g, nodes, edges)


def reflection_graph_dot(r: int, s: int) -> str:
    """DOT graph of all gradings linked by odd reflections."""
    gradings = enumerate_gradings(r, s)
    index: Dict[Grading, int] = {g: i for i, g in enumerate(gradings)}
    lines = ["digraph gradings {"]
    for g, i in index.items():
        lines.append(f'  g{i} [label="{g.label()}"];')
    for g in gradings:
        for b in range(1, g.rank + 1):
            if root_degree(g, b) == 1:
                h = odd_reflection(g, b)
                if index[g] < index[h]:
                    lines.append(f'  g{index[g]} -> g{index[h]} [label="α{b}", dir=both];')
    lines.append("}")
    return "\n".join(lines) + "\n"
