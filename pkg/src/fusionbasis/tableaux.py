"""Littlewood-Richardson tableaux encoded by fill counts.

A tableau for ``lam (x) mu`` is stored as the numbers ``n[i][j]``: how many
boxes carrying letter ``i`` sit in row ``j`` (1-based, ``i <= j <= N``),
together with the first-factor weight ``lam``. Everything else (``mu``, the
resulting ``nu``) is recovered from these counts.

Coordinate order used for every integer vector in the package::

    (l1, ..., l_{N-1}, n11, n12, ..., n1N, n22, ..., n2N, ..., n_{N-1,N})

i.e. first-factor labels, then fills row-major by letter then row.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError
from .weights import FiniteWeight


# -- inequality systems ------------------------------------------------------


@dataclass(frozen=True)
class InequalitySystem:
    """Homogeneous system ``A x >= 0`` over named variables.

    Solutions are always taken in the nonnegative integers; rows that
    restate ``x_i >= 0`` are allowed but never required.
    """

    variable_names: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        names = tuple(self.variable_names)
        rows = tuple(tuple(int(a) for a in row) for row in self.rows)
        object.__setattr__(self, "variable_names", names)
        object.__setattr__(self, "rows", rows)
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate variable names in {names}")
        for row in rows:
            if len(row) != len(names):
                raise DomainError(
                    f"row {row} has {len(row)} entries for {len(names)} variables"
                )

    @property
    def n_vars(self) -> int:
        return len(self.variable_names)

    @property
    def matrix(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, self.n_vars), dtype=np.int64)
        return np.array(self.rows, dtype=np.int64)

    def is_solution(self, x: Sequence[int]) -> bool:
        if len(x) != self.n_vars or any(v < 0 for v in x):
            return False
        return all(sum(a * v for a, v in zip(row, x)) >= 0 for row in self.rows)

    def row_str(self, row: Sequence[int]) -> str:
        """Render a row as ``lhs >= rhs`` with positive coefficients on both sides."""

        def side(terms: list[tuple[int, str]]) -> str:
            if not terms:
                return "0"
            return " + ".join(name if c == 1 else f"{c}*{name}" for c, name in terms)

        pos = [(a, n) for a, n in zip(row, self.variable_names) if a > 0]
        neg = [(-a, n) for a, n in zip(row, self.variable_names) if a < 0]
        return f"{side(pos)} >= {side(neg)}"

    def __str__(self) -> str:
        return "\n".join(self.row_str(row) for row in self.rows)

    def to_json_dict(self) -> dict:
        return {"vars": list(self.variable_names), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json_dict(cls, data: dict) -> InequalitySystem:
        return cls(tuple(data["vars"]), tuple(tuple(r) for r in data["rows"]))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> InequalitySystem:
        return cls.from_json_dict(json.loads(text))


# -- coordinates -------------------------------------------------------------


def fill_index_pairs(rank_n: int) -> list[tuple[int, int]]:
    """Letter/row pairs ``(i, j)`` with ``1 <= i <= N-1`` and ``i <= j <= N``."""
    return [(i, j) for i in range(1, rank_n) for j in range(i, rank_n + 1)]


def _fill_name(i: int, j: int) -> str:
    return f"n{i}{j}" if i < 10 and j < 10 else f"n{i}_{j}"


def lr_variable_names(rank_n: int) -> tuple[str, ...]:
    lams = [f"l{i}" for i in range(1, rank_n)]
    return tuple(lams + [_fill_name(i, j) for i, j in fill_index_pairs(rank_n)])


def shape_rows(lam: FiniteWeight) -> tuple[int, ...]:
    """Row lengths of the Young diagram of ``lam`` (N-1 rows, trailing zeros kept)."""
    lam.require_integrable()
    labels = lam.labels
    return tuple(sum(labels[j:]) for j in range(len(labels)))


@lru_cache(maxsize=None)
def lr_system(rank_n: int) -> InequalitySystem:
    """The LR inequalities in (l, n) coordinates, plus nonnegativity rows.

    Rows, in order: row-regularity/column-strictness
    ``l_{j-1} + sum_{i<k} n_{i,j-1} - sum_{i<=k} n_{ij} >= 0`` for
    ``1 <= k < j <= N``; lattice-word conditions
    ``sum_{j=i..k} (n_{i-1,j-1} - n_{ij}) >= 0`` for ``2 <= i <= k <= N``,
    ``i <= N-1``; then ``x >= 0`` for every variable. Duplicate rows are
    dropped.
    """
    if not isinstance(rank_n, int) or rank_n < 2:
        raise DomainError(f"lr_system needs N >= 2, got {rank_n!r}")
    names = lr_variable_names(rank_n)
    col = {name: c for c, name in enumerate(names)}
    m = len(names)

    def lam(j: int) -> int:
        return col[f"l{j}"]

    def fill(i: int, j: int) -> int | None:
        if i < 1 or i > rank_n - 1 or j < i or j > rank_n:
            return None
        return col[_fill_name(i, j)]

    rows: list[tuple[int, ...]] = []

    def add(coeffs: dict[int, int]) -> None:
        row = [0] * m
        for c, a in coeffs.items():
            row[c] += a
        t = tuple(row)
        if any(t) and t not in rows:
            rows.append(t)

    for j in range(2, rank_n + 1):
        for k in range(1, j):
            coeffs: Counter = Counter({lam(j - 1): 1})
            for i in range(1, k):
                c = fill(i, j - 1)
                if c is not None:
                    coeffs[c] += 1
            for i in range(1, k + 1):
                c = fill(i, j)
                if c is not None:
                    coeffs[c] -= 1
            add(coeffs)
    for i in range(2, rank_n):
        for k in range(i, rank_n + 1):
            coeffs = Counter()
            for j in range(i, k + 1):
                c = fill(i - 1, j - 1)
                if c is not None:
                    coeffs[c] += 1
                c = fill(i, j)
                if c is not None:
                    coeffs[c] -= 1
            add(coeffs)
    for c in range(m):
        add({c: 1})
    return InequalitySystem(names, tuple(rows))


# -- tableaux ----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class LRTableau:
    """One tensor-product coupling, as first-factor shape plus fill counts.

    ``fills[i-1][j-1]`` is the number of letters ``i`` in row ``j``; entries
    with ``j < i`` are zero. Construction validates the LR inequalities.
    """

    rank_n: int
    lam: FiniteWeight
    fills: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = self.rank_n
        fills = tuple(tuple(int(v) for v in row) for row in self.fills)
        object.__setattr__(self, "fills", fills)
        if self.lam.rank_n != n:
            raise DomainError("tableau shape has the wrong rank")
        if len(fills) != n - 1 or any(len(row) != n for row in fills):
            raise DomainError(f"fills must be a {n - 1}x{n} array, got {fills}")
        for i, row in enumerate(fills, start=1):
            if any(row[j - 1] for j in range(1, i)):
                raise DomainError(f"letter {i} cannot sit above row {i}")
        if not lr_system(n).is_solution(self.vector()):
            raise DomainError(f"fills {fills} with shape {self.lam} violate the LR conditions")

    @classmethod
    def from_vector(cls, rank_n: int, vec: Sequence[int]) -> LRTableau:
        r = rank_n - 1
        fills = [[0] * rank_n for _ in range(r)]
        for (i, j), v in zip(fill_index_pairs(rank_n), vec[r:]):
            fills[i - 1][j - 1] = v
        return cls(rank_n, FiniteWeight(rank_n, tuple(vec[:r])), tuple(map(tuple, fills)))

    @classmethod
    def empty(cls, rank_n: int) -> LRTableau:
        return cls.from_vector(rank_n, (0,) * len(lr_variable_names(rank_n)))

    def fill(self, i: int, j: int) -> int:
        return self.fills[i - 1][j - 1]

    def vector(self) -> tuple[int, ...]:
        return self.lam.labels + tuple(self.fill(i, j) for i, j in fill_index_pairs(self.rank_n))

    def letter_counts(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.fills)

    def row_lengths(self) -> tuple[int, ...]:
        """Lengths of all N rows of the filled diagram."""
        base = shape_rows(self.lam) + (0,)
        return tuple(base[j] + sum(row[j] for row in self.fills) for j in range(self.rank_n))

    @property
    def columns(self) -> int:
        return self.row_lengths()[0]

    def to_json_dict(self) -> dict:
        return {"lambda": list(self.lam.labels), "n": [list(row) for row in self.fills]}

    @classmethod
    def from_json_dict(cls, rank_n: int, data: dict) -> LRTableau:
        fills = [[0] * rank_n for _ in range(rank_n - 1)]
        for i, row in enumerate(data.get("n", [])):
            for j, v in enumerate(row):
                fills[i][j] = v
        return cls(rank_n, FiniteWeight(rank_n, tuple(data["lambda"])), tuple(map(tuple, fills)))

    def render(self) -> str:
        """ASCII picture: ``.`` for boxes of the first factor, digits for letters."""
        base = shape_rows(self.lam) + (0,)
        lines = []
        for j in range(self.rank_n):
            cells = "." * base[j] + "".join(
                str(i) * self.fills[i - 1][j] for i in range(1, self.rank_n)
            )
            if cells:
                lines.append(cells)
        return "\n".join(lines)


def weights_of(t: LRTableau) -> tuple[FiniteWeight, FiniteWeight, FiniteWeight]:
    """Recover ``(lam, mu, nu)`` from a tableau.

    ``mu_i`` is the excess of letter ``i`` over letter ``i+1``; ``nu`` comes
    from successive row-length differences, which discards complete columns
    of N boxes automatically.
    """
    n = t.rank_n
    counts = t.letter_counts() + (0,)
    mu = tuple(counts[i] - counts[i + 1] for i in range(n - 1))
    rows = t.row_lengths()
    nu = tuple(rows[j] - rows[j + 1] for j in range(n - 1))
    return t.lam, FiniteWeight(n, mu), FiniteWeight(n, nu)


def _check_pair(lam: FiniteWeight, mu: FiniteWeight) -> None:
    if lam.rank_n != mu.rank_n:
        raise DomainError(f"rank mismatch: su({lam.rank_n}) vs su({mu.rank_n})")
    lam.require_integrable()
    mu.require_integrable()


def _iter_fills(lam: FiniteWeight, mu: FiniteWeight) -> Iterator[list[list[int]]]:
    # Letters are placed in order 1..N-1; within a letter, rows top to bottom.
    # Each n_ij is capped by the column-strictness bound against row j-1 and
    # by the lattice-word bound against the previous letter's prefix.
    n = lam.rank_n
    base = list(shape_rows(lam)) + [0]
    counts = [sum(mu.labels[i:]) for i in range(n - 1)]
    fills = [[0] * (n + 1) for _ in range(n + 1)]  # 1-based scratch

    def place(i: int, j: int, remaining: int, prefix: int) -> Iterator[list[list[int]]]:
        # prefix: letters i placed so far in rows i..j-1
        if j > n:
            if remaining == 0:
                if i == n - 1:
                    yield [row[1:n + 1] for row in fills[1:n]]
                else:
                    yield from place(i + 1, i + 1, counts[i], 0)
            return
        upper = remaining
        if j > 1:
            # column strictness against row j-1 (base index j-2)
            above = base[j - 2] + sum(fills[a][j - 1] for a in range(1, i))
            here = base[j - 1] + sum(fills[a][j] for a in range(1, i))
            upper = min(upper, above - here)
        if i >= 2:
            # lattice word: letters i in rows i..j <= letters i-1 in rows i-1..j-1
            prev = sum(fills[i - 1][jj] for jj in range(i - 1, j))
            upper = min(upper, prev - prefix)
        if j == n:
            if upper < remaining:
                return
            lo = remaining
        else:
            lo = 0
        for v in range(lo, upper + 1):
            fills[i][j] = v
            yield from place(i, j + 1, remaining - v, prefix + v)
        fills[i][j] = 0

    if n == 1:
        return
    yield from place(1, 1, counts[0], 0)


def enumerate_lr(lam: FiniteWeight, mu: FiniteWeight) -> list[LRTableau]:
    """All LR tableaux for ``lam (x) mu``, sorted by fill vector."""
    _check_pair(lam, mu)
    out = [LRTableau(lam.rank_n, lam, tuple(map(tuple, f))) for f in _iter_fills(lam, mu)]
    out.sort(key=LRTableau.vector)
    return out


@lru_cache(maxsize=65536)
def _tensor_cached(rank_n: int, lam: tuple[int, ...], mu: tuple[int, ...]) -> tuple:
    a, b = FiniteWeight(rank_n, lam), FiniteWeight(rank_n, mu)
    mult: Counter = Counter(weights_of(t)[2] for t in enumerate_lr(a, b))
    return tuple(sorted(mult.items()))


def tensor_decompose(lam: FiniteWeight, mu: FiniteWeight) -> dict[FiniteWeight, int]:
    """Multiplicities of ``lam (x) mu`` as an ordered ``{nu: count}`` map."""
    _check_pair(lam, mu)
    return dict(_tensor_cached(lam.rank_n, lam.labels, mu.labels))


def tensor_multiplicity(lam: FiniteWeight, mu: FiniteWeight, nu: FiniteWeight) -> int:
    return tensor_decompose(lam, mu).get(nu, 0)


def stretched_product(t1: LRTableau, t2: LRTableau) -> LRTableau:
    """Componentwise sum of shapes and fill counts."""
    if t1.rank_n != t2.rank_n:
        raise DomainError(f"rank mismatch: su({t1.rank_n}) vs su({t2.rank_n})")
    return LRTableau.from_vector(t1.rank_n, [a + b for a, b in zip(t1.vector(), t2.vector())])
