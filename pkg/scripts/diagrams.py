#!/usr/bin/env python3
"""
Young diagrams, skew shapes and admissible tableaux for a grading.

Cells are (row, column) pairs, 1-based, row-major. A tableau on the skew shape
mu/lambda fills every cell with an element of J = {1..n}, ordered 1 < 2 < ... < n,
subject to:

- entries weakly increase to the right and downwards;
- entries in J+ (p = +1) strictly increase down each column;
- entries in J- (p = -1) strictly increase along each row.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, TypeVar

from superalgebra import Grading

# Refuse to enumerate shapes larger than this many cells
DEFAULT_MAX_CELLS = 24

Cell = Tuple[int, int]
V = TypeVar("V")


class TableauError(ValueError):
    """Invalid tableau data or an enumeration request above the cell cap."""


@dataclass(frozen=True)
class Partition:
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = [int(x) for x in self.parts]
        if any(x < 0 for x in parts):
            raise TableauError(f"partition {parts} has negative parts")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise TableauError(f"partition {parts} is not weakly decreasing")
        while parts and parts[-1] == 0:
            parts.pop()
        object.__setattr__(self, "parts", tuple(parts))

    def part(self, i: int) -> int:
        """i-th part, 1-based, zero beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def contains(self, other: "Partition") -> bool:
        return all(self.part(i) >= other.part(i) for i in range(1, other.length + 1))

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.parts) or "0"


def conjugate(p: Partition) -> Partition:
    """Transpose: p'_j = #{i : p_i >= j}."""
    if not p.parts:
        return Partition(())
    return Partition(tuple(sum(1 for x in p.parts if x >= j) for j in range(1, p.parts[0] + 1)))


def parse_partition(text: str) -> Partition:
    text = text.strip().strip("()[]")
    if not text or text == "0":
        return Partition(())
    return Partition(tuple(int(x) for x in text.replace(" ", "").split(",") if x))


@dataclass(frozen=True)
class SkewShape:
    """The skew diagram mu/lambda (lambda = empty for straight shapes)."""

    mu: Partition
    lam: Partition = field(default_factory=Partition)

    def __post_init__(self):
        if not self.mu.contains(self.lam):
            raise TableauError(f"lambda = ({self.lam}) is not contained in mu = ({self.mu})")

    @classmethod
    def parse(cls, text: str) -> "SkewShape":
        """'3,2' or '3,2/1' (mu/lambda)."""
        if "/" in text:
            outer, inner = text.split("/", 1)
            return cls(parse_partition(outer), parse_partition(inner))
        return cls(parse_partition(text))

    @classmethod
    def straight(cls, *parts: int) -> "SkewShape":
        return cls(Partition(tuple(parts)))

    @classmethod
    def rectangle(cls, height: int, width: int) -> "SkewShape":
        """a x m rectangle (m^a): a rows, m columns."""
        return cls(Partition((width,) * height if width > 0 else ()))

    @property
    def mu1(self) -> int:
        return self.mu.part(1)

    @property
    def mu1_conj(self) -> int:
        return self.mu.length

    def contains_cell(self, i: int, j: int) -> bool:
        return i >= 1 and j >= 1 and self.lam.part(i) < j <= self.mu.part(i)

    def cells(self) -> List[Cell]:
        return [(i, j) for i in range(1, self.mu.length + 1)
                for j in range(self.lam.part(i) + 1, self.mu.part(i) + 1)]

    @property
    def size(self) -> int:
        return self.mu.size - self.lam.size

    def is_empty(self) -> bool:
        return self.size == 0

    def column_range(self, j: int) -> Tuple[int, int]:
        """Rows (top, bottom) occupied in column j; top > bottom when empty."""
        return self.lam.conjugate().part(j) + 1, self.mu.conjugate().part(j)

    def spectral_shift(self, i: int, j: int) -> int:
        """Offset of the spectral parameter at cell (i, j): -mu_1 + mu'_1 - 2i + 2j."""
        return -self.mu1 + self.mu1_conj - 2 * i + 2 * j

    def __str__(self) -> str:
        return f"{self.mu}/{self.lam}" if self.lam.parts else str(self.mu)

    def to_json(self) -> dict:
        return {"mu": list(self.mu.parts), "lambda": list(self.lam.parts)}

    @classmethod
    def from_json(cls, data) -> "SkewShape":
        if isinstance(data, str):
            return cls.parse(data)
        return cls(Partition(tuple(data["mu"])), Partition(tuple(data.get("lambda", ()))))


@dataclass(frozen=True)
class Tableau:
    shape: SkewShape
    entries: Tuple[Tuple[Cell, int], ...]

    @classmethod
    def from_mapping(cls, shape: SkewShape, mapping: Dict[Cell, int]) -> "Tableau":
        return cls(shape, tuple(sorted(mapping.items())))

    @classmethod
    def from_rows(cls, shape: SkewShape, rows: Sequence[Sequence[Optional[int]]]) -> "Tableau":
        """Rows of entries, ``None`` marking cells of lambda."""
        mapping = {}
        for i, row in enumerate(rows, start=1):
            for j, value in enumerate(row, start=1):
                if value is not None:
                    mapping[(i, j)] = int(value)
        return cls.from_mapping(shape, mapping)

    def as_dict(self) -> Dict[Cell, int]:
        return dict(self.entries)

    def __getitem__(self, cell: Cell) -> int:
        return self.as_dict()[cell]

    def rows(self) -> List[List[Optional[int]]]:
        entries = self.as_dict()
        return [[entries.get((i, j)) for j in range(1, self.shape.mu.part(i) + 1)]
                for i in range(1, self.shape.mu.length + 1)]

    def __str__(self) -> str:
        return " / ".join(" ".join("." if x is None else str(x) for x in row) for row in self.rows())

    def to_json(self) -> dict:
        return {"shape": self.shape.to_json(), "entries": self.rows()}

    @classmethod
    def from_json(cls, data: dict) -> "Tableau":
        return cls.from_rows(SkewShape.from_json(data["shape"]), data["entries"])


def _right_ok(g: Grading, left: int, right: int) -> bool:
    return left < right or (left == right and g.sign(left) == 1)


def _down_ok(g: Grading, up: int, down: int) -> bool:
    return up < down or (up == down and g.sign(up) == -1)


def is_admissible(t: Tableau, g: Grading) -> bool:
    entries = t.as_dict()
    cells = t.shape.cells()
    if set(entries) != set(cells):
        raise TableauError(f"tableau cells do not match shape {t.shape}")
    for cell, value in entries.items():
        if not 1 <= value <= g.n:
            raise TableauError(f"entry {value} at {cell} outside J = 1..{g.n}")
    for (i, j), b in entries.items():
        right = entries.get((i, j + 1))
        if right is not None and not _right_ok(g, b, right):
            return False
        down = entries.get((i + 1, j))
        if down is not None and not _down_ok(g, b, down):
            return False
    return True


def _lower_bound(g: Grading, filled: Dict[Cell, int], sh: SkewShape, i: int, j: int) -> int:
    lo = 1
    if sh.contains_cell(i, j - 1):
        left = filled[(i, j - 1)]
        lo = max(lo, left + (1 if g.sign(left) == -1 else 0))
    if sh.contains_cell(i - 1, j):
        up = filled[(i - 1, j)]
        lo = max(lo, up + (1 if g.sign(up) == 1 else 0))
    return lo


def iter_tableaux(sh: SkewShape, g: Grading, max_cells: int = DEFAULT_MAX_CELLS) -> Iterator[Tableau]:
    """Admissible tableaux in lexicographic order of row-major entries."""
    cells = sh.cells()
    if len(cells) > max_cells:
        raise TableauError(f"shape {sh} has {len(cells)} cells, above the cap of {max_cells}")
    filled: Dict[Cell, int] = {}

    def backtrack(k: int) -> Iterator[Tableau]:
        if k == len(cells):
            yield Tableau.from_mapping(sh, filled)
            return
        i, j = cells[k]
        for a in range(_lower_bound(g, filled, sh, i, j), g.n + 1):
            filled[(i, j)] = a
            yield from backtrack(k + 1)
        filled.pop((i, j), None)

    yield from backtrack(0)


def enumerate_tableaux(sh: SkewShape, g: Grading, max_cells: int = DEFAULT_MAX_CELLS) -> List[Tableau]:
    return list(iter_tableaux(sh, g, max_cells))


def column_fillings(height: int, g: Grading) -> List[Tuple[int, ...]]:
    """Admissible fillings of a single column of the given height, top to bottom."""
    out: List[Tuple[int, ...]] = []

    def extend(prefix: List[int]) -> None:
        if len(prefix) == height:
            out.append(tuple(prefix))
            return
        lo = 1
        if prefix:
            up = prefix[-1]
            lo = up + (1 if g.sign(up) == 1 else 0)
        for a in range(lo, g.n + 1):
            prefix.append(a)
            extend(prefix)
            prefix.pop()

    extend([])
    return out


def sum_over_tableaux(
    sh: SkewShape,
    g: Grading,
    weight: Callable[[int, int, int], V],
    one: V = 1,
    zero: V = 0,
) -> V:
    """Sum over admissible tableaux of the product of weight(i, j, entry).

    Column-by-column transfer: the state is the filling of the previous column,
    so tableaux are never materialized.
    """
    width = sh.mu1
    states: Dict[Tuple[int, Tuple[int, ...]], V] = {(0, ()): one}
    for j in range(1, width + 1):
        top, bottom = sh.column_range(j)
        height = bottom - top + 1
        fillings = column_fillings(height, g) if height > 0 else [()]
        col_weights = []
        for filling in fillings:
            w = one
            for offset, a in enumerate(filling):
                w = w * weight(top + offset, j, a)
            col_weights.append((filling, w))
        new_states: Dict[Tuple[int, Tuple[int, ...]], V] = {}
        for (ptop, prev), acc in states.items():
            for filling, w in col_weights:
                ok = True
                for offset, a in enumerate(filling):
                    row = top + offset
                    k = row - ptop
                    if 0 <= k < len(prev) and not _right_ok(g, prev[k], a):
                        ok = False
                        break
                if not ok:
                    continue
                key = (top, filling)
                new_states[key] = new_states.get(key, zero) + acc * w
        states = new_states
    total = zero
    for acc in states.values():
        total = total + acc
    return total


def contains_forbidden_rectangle(sh: SkewShape, r: int, s: int) -> bool:
    """True when sh contains an (r+2) x (s+2) block of cells (rows x columns)."""
    h, w = r + 2, s + 2
    if w <= 0:
        return False
    for i0 in range(1, sh.mu.length - h + 2):
        for j0 in range(1, sh.mu1 - w + 2):
            if all(sh.contains_cell(i, j) for i in range(i0, i0 + h) for j in range(j0, j0 + w)):
                return True
    return False


def partitions_in_box(height: int, width: int) -> Iterator[Partition]:
    """Every partition fitting in a height x width box."""

    def gen(prefix: List[int], rows_left: int, cap: int) -> Iterator[Partition]:
        yield Partition(tuple(prefix))
        if rows_left == 0:
            return
        for x in range(cap, 0, -1):
            prefix.append(x)
            yield from gen(prefix, rows_left - 1, x)
            prefix.pop()

    yield from gen([], height, width)


def all_skew_shapes(max_side: int, include_empty: bool = False) -> List[SkewShape]:
    """Skew shapes mu/lambda with mu_1, mu'_1 <= max_side."""
    out = []
    for mu in partitions_in_box(max_side, max_side):
        for lam in partitions_in_box(mu.length, mu.part(1)):
            if not mu.contains(lam):
                continue
            sh = SkewShape(mu, lam)
            if sh.is_empty() and not include_empty:
                continue
            out.append(sh)
    return out
