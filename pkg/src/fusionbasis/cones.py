"""Fundamental solutions of homogeneous integer inequality systems.

``hilbert_nonneg`` computes the Hilbert basis of ``{x in N^m : A x >= 0}``
by adding one inequality at a time to the Hilbert basis of the orthant and
completing it with pairwise sums (Pottier's completion, in the form used by
the dual mode of Normaliz). ``hilbert_dual`` handles ``u^T V >= 0`` over
the integers by splitting ``u = u+ - u-``.

All generator lists are sorted in descending lexicographic order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, InconsistencyError, InternalError
from .tableaux import InequalitySystem

Vector = tuple[int, ...]


def canonical_order(vectors: Iterable[Sequence[int]]) -> list[Vector]:
    """Deduplicate and sort descending lexicographically."""
    return sorted({tuple(int(a) for a in v) for v in vectors}, reverse=True)


@dataclass(frozen=True)
class SolutionBasis:
    system: InequalitySystem
    generators: tuple[Vector, ...]

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


# -- Hilbert basis over N^m --------------------------------------------------


def _minimal_rows(ext: np.ndarray) -> np.ndarray:
    """Keep rows not dominated componentwise by a different row."""
    if len(ext) <= 1:
        return ext
    ext = np.unique(ext, axis=0)
    keep = []
    for idx in range(len(ext)):
        dominated = np.all(ext <= ext[idx], axis=1)
        dominated[idx] = False
        if not dominated.any():
            keep.append(idx)
    return ext[keep]


class _SignedSet:
    """Elements sharing the sign of the current linear form.

    Rows are ``(x, previous row values, |a.x|)``; ``y`` reduces ``x`` when
    its row is componentwise <= that of ``x``.
    """

    def __init__(self, width: int) -> None:
        self.rows = np.zeros((0, width), dtype=np.int64)

    def dominated(self, cand: np.ndarray) -> bool:
        if not len(self.rows):
            return False
        return bool(np.any(np.all(self.rows <= cand, axis=1)))

    def add(self, cand: np.ndarray) -> None:
        self.rows = np.vstack([self.rows, cand[None, :]])


def _add_inequality(ext: np.ndarray, a: np.ndarray, d: int, max_rounds: int) -> np.ndarray:
    """Hilbert basis of ``M cap {a.x >= 0}`` from the Hilbert basis of ``M``.

    ``ext`` rows are ``(x, values of the rows already imposed)``; the
    returned array has one more column holding ``a.x``.
    """
    vals = ext[:, :d] @ a
    width = ext.shape[1] + 1
    aug = np.hstack([ext, np.abs(vals)[:, None]])
    zero, pos, neg = _SignedSet(width), _SignedSet(width), _SignedSet(width)
    pos_new, neg_new = [], []
    for row, v in zip(aug, vals):
        if v == 0:
            zero.add(row)
        elif v > 0:
            pos.add(row)
            pos_new.append((row, v))
        else:
            neg.add(row)
            neg_new.append((row, v))
    pos_old: list[tuple[np.ndarray, int]] = []
    neg_old: list[tuple[np.ndarray, int]] = []

    for _ in range(max_rounds):
        if not pos_new and not neg_new:
            break
        pairs = itertools.chain(
            itertools.product(pos_new, neg_old + neg_new),
            itertools.product(pos_old, neg_new),
        )
        candidates: dict[tuple, tuple[np.ndarray, int]] = {}
        for (p, pv), (q, qv) in pairs:
            s = p[:-1] + q[:-1]
            sv = pv + qv
            key = tuple(s)
            if key not in candidates:
                candidates[key] = (np.append(s, abs(sv)), sv)
        pos_old += pos_new
        neg_old += neg_new
        pos_new, neg_new = [], []
        # small elements first so they can reduce later candidates
        for cand, sv in sorted(candidates.values(), key=lambda c: int(c[0].sum())):
            if zero.dominated(cand):
                continue
            if sv == 0:
                zero.add(cand)
            elif sv > 0:
                if pos.dominated(cand):
                    continue
                pos.add(cand)
                pos_new.append((cand, sv))
            else:
                if neg.dominated(cand):
                    continue
                neg.add(cand)
                neg_new.append((cand, sv))
    else:
        raise InternalError(f"completion did not finish within {max_rounds} rounds")

    out = np.vstack([zero.rows, pos.rows])
    # the last column is now a.x itself (all >= 0)
    return _minimal_rows(out)


def hilbert_nonneg(system: InequalitySystem, max_rounds: int = 10_000) -> SolutionBasis:
    """Elementary solutions of ``A x >= 0`` over the nonnegative integers."""
    d = system.n_vars
    if d == 0:
        raise DomainError("system has no variables")
    ext = np.eye(d, dtype=np.int64)
    A = system.matrix
    # rows without a negative entry hold on the whole orthant
    hard = [r for r in A if (r < 0).any()]
    hard.sort(key=lambda r: int((r != 0).sum()))
    for a in hard:
        ext = _add_inequality(ext, a, d, max_rounds)
    gens = canonical_order(ext[:, :d])
    gens = [g for g in gens if any(g)]
    for g in gens:
        if not system.is_solution(g):
            raise InternalError(f"generator {g} violates the system")
    return SolutionBasis(system, tuple(gens))


# -- Hilbert basis over Z^m --------------------------------------------------


def _reachable(v: Vector, gens: Sequence[Vector], bound: int) -> bool:
    """Is ``v`` a sum of ``gens`` via partial sums with all entries in ``[-bound, bound]``?"""
    zero = (0,) * len(v)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(a + b for a, b in zip(p, g))
                if q == v:
                    return True
                if q not in seen and max(map(abs, q)) <= bound:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return False


def hilbert_dual(V: Sequence[Sequence[int]] | np.ndarray, cap: int = 10) -> list[Vector]:
    """Fundamental system of ``u^T V >= 0``, ``u`` an integer m-vector.

    Solves the doubled system over ``N^{2m}`` and maps back with
    ``u = u+ - u-``. The images ``u^T V`` form a saturated pointed monoid,
    so a vector with nonzero image is kept iff no other image lies
    componentwise below its own (one lift per image, first in canonical
    order). Vectors with zero image span the lineality space; of those,
    any that is a sum of the others is dropped, searching partial sums
    with entries up to ``cap`` times the largest entry.
    """
    V = np.array(V, dtype=np.int64)
    if V.ndim != 2 or not V.any():
        raise DomainError("V must be a nonzero integer matrix")
    m = V.shape[0]
    rows = tuple(tuple(int(a) for a in np.concatenate([col, -col])) for col in V.T)
    names = tuple(f"u{i}+" for i in range(m)) + tuple(f"u{i}-" for i in range(m))
    doubled = hilbert_nonneg(InequalitySystem(names, rows))
    images = canonical_order(np.array(g[:m]) - np.array(g[m:]) for g in doubled.generators)
    images = [u for u in images if any(u)]

    line: list[Vector] = []
    lifts: dict[Vector, Vector] = {}
    for u in images:
        y = tuple(int(a) for a in np.array(u) @ V)
        if not any(y):
            line.append(u)
        else:
            lifts.setdefault(y, u)
    imgs = np.array(list(lifts), dtype=np.int64).reshape(-1, V.shape[1])
    keep = []
    for idx, u in enumerate(lifts.values()):
        below = np.all(imgs <= imgs[idx], axis=1)
        below[idx] = False
        if not below.any():
            keep.append(u)

    bound = cap * max((max(map(abs, u)) for u in line), default=0)
    idx = 0
    while idx < len(line):
        if _reachable(line[idx], line[:idx] + line[idx + 1 :], bound):
            line.pop(idx)
        else:
            idx += 1
    return canonical_order(keep + line)


def farkas_system(V: Sequence[Sequence[int]] | np.ndarray, variable_names: Sequence[str]) -> InequalitySystem:
    """Inequalities ``E x >= 0`` whose solutions in N^m are spanned by V's columns."""
    return InequalitySystem(tuple(variable_names), tuple(hilbert_dual(V)))


# -- checks and decompositions -----------------------------------------------


def is_elementary(x: Sequence[int], system: InequalitySystem) -> bool:
    """True when ``x`` is not the sum of two nonzero solutions."""
    x = tuple(x)
    if not system.is_solution(x) or not any(x):
        raise DomainError(f"{x} is not a nonzero solution")
    for y in itertools.product(*(range(v + 1) for v in x)):
        if not any(y) or y == x:
            continue
        z = tuple(a - b for a, b in zip(x, y))
        if system.is_solution(y) and system.is_solution(z):
            return False
    return True


def decompose(x: Sequence[int], basis: SolutionBasis | Sequence[Sequence[int]]) -> list[Vector]:
    """All exponent vectors ``a >= 0`` with ``sum_i a_i g_i = x``.

    Generators must be nonnegative. Raises ``InconsistencyError`` when no
    decomposition exists.
    """
    gens = [tuple(g) for g in (basis.generators if isinstance(basis, SolutionBasis) else basis)]
    if any(v < 0 for g in gens for v in g):
        raise DomainError("decompose needs nonnegative generators")
    target = tuple(x)
    found: list[Vector] = []
    coeffs = [0] * len(gens)

    def search(i: int, rest: list[int]) -> None:
        if i == len(gens):
            if not any(rest):
                found.append(tuple(coeffs))
            return
        g = gens[i]
        top = min((r // v for r, v in zip(rest, g) if v > 0), default=0)
        for c in range(top + 1):
            coeffs[i] = c
            search(i + 1, [r - c * v for r, v in zip(rest, g)])
        coeffs[i] = 0

    search(0, list(target))
    if not found:
        raise InconsistencyError(f"{target} has no decomposition over {len(gens)} generators")
    return sorted(found)


# -- brute-force cross-checks ------------------------------------------------


def box_solutions(system: InequalitySystem, bound: int) -> np.ndarray:
    """All solutions with every coordinate in ``0..bound``."""
    d = system.n_vars
    grid = np.indices((bound + 1,) * d, dtype=np.int64).reshape(d, -1).T
    A = system.matrix
    if len(A):
        grid = grid[np.all(grid @ A.T >= 0, axis=1)]
    return grid


def monoid_closure(generators: Sequence[Sequence[int]], bound: int, d: int) -> set[Vector]:
    """Nonnegative integer combinations of ``generators`` inside the box."""
    seen: set[Vector] = {(0,) * d}
    frontier = [(0,) * d]
    gens = [tuple(g) for g in generators]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple(a + b for a, b in zip(v, g))
                if max(w) <= bound and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def hilbert_bruteforce(system: InequalitySystem, bound: int) -> list[Vector]:
    """Irreducible solutions inside the box ``[0, bound]^m``.

    Solutions are visited by increasing coordinate sum; one that is not yet
    a sum of earlier irreducibles is irreducible. Equals the Hilbert basis
    whenever the whole basis fits in the box.
    """
    sols = box_solutions(system, bound)
    order = np.argsort(sols.sum(axis=1), kind="stable")
    d = system.n_vars
    reach: set[Vector] = {(0,) * d}
    irreducible: list[Vector] = []
    for idx in order:
        x = tuple(int(a) for a in sols[idx])
        if x in reach:
            continue
        irreducible.append(x)
        added = list(reach)
        for base in added:
            w = tuple(a + b for a, b in zip(base, x))
            while max(w) <= bound:
                reach.add(w)
                w = tuple(a + b for a, b in zip(w, x))
    return canonical_order(irreducible)
