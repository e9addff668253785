"""From LR inequalities to a fusion basis.

Pipeline, for su(N):

1. ``lr_system(N)`` gives the tensor-product inequalities.
2. Its Hilbert basis gives the elementary tensor couplings ``E_i``.
3. Each ``E_i`` is lifted to its threshold level; the outer-automorphism
   images of the lifted couplings are pooled and reduced to the fusion
   elementary couplings.
4. Dualizing the matrix whose columns are those couplings gives the
   inequalities of the fusion basis.

Fusion coupling vectors use coordinates ``(k, l1, ..., n11, n12, ...)``.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from .affine import fusion_coeff, kac_walton, threshold_levels
from .cones import canonical_order, decompose, hilbert_dual, hilbert_nonneg
from .errors import DomainError, InconsistencyError
from .tableaux import (
    InequalitySystem,
    LRTableau,
    enumerate_lr,
    fill_index_pairs,
    lr_system,
    lr_variable_names,
    weights_of,
)
from .weights import AffineWeight, FiniteWeight, affine_extend, finite_weights, outer_auto

MAX_RANK = 4

Triple = tuple[FiniteWeight, FiniteWeight, FiniteWeight]


def fusion_variable_names(rank_n: int) -> tuple[str, ...]:
    return ("k",) + lr_variable_names(rank_n)


@dataclass(frozen=True)
class ElementaryCoupling:
    """A generator of the tensor-product or fusion coupling monoid.

    ``vector`` is in LR coordinates for a tensor coupling and carries a
    leading level coordinate for a fusion coupling. ``threshold`` is the
    least level of a tensor coupling, and the level coordinate of a fusion
    coupling.
    """

    name: str
    rank_n: int
    vector: tuple[int, ...]
    triple: Triple
    threshold: int
    fusion: bool = False

    @property
    def level(self) -> int:
        return self.vector[0] if self.fusion else self.threshold

    @property
    def tableau(self) -> LRTableau:
        return LRTableau.from_vector(self.rank_n, self.vector[1:] if self.fusion else self.vector)

    @property
    def affine_triple(self) -> tuple[AffineWeight, AffineWeight, AffineWeight]:
        return tuple(affine_extend(w, self.level) for w in self.triple)  # type: ignore[return-value]

    def describe(self) -> str:
        lam, mu, nu = self.affine_triple if self.fusion else self.triple
        return f"{lam} x {mu} > {nu}"

    def to_json_dict(self) -> dict:
        lam, mu, nu = self.triple
        out = {
            "name": self.name,
            "vector": list(self.vector),
            "triple": [list(lam.labels), list(mu.labels), list(nu.labels)],
            "threshold": self.threshold,
        }
        if self.fusion:
            out["affine_triple"] = [list(w.labels) for w in self.affine_triple]
        return out


# -- step 2: tensor elementaries ---------------------------------------------


def _check_rank(rank_n: int) -> None:
    if not isinstance(rank_n, int) or rank_n < 2:
        raise DomainError(f"need N >= 2, got {rank_n!r}")


def elementary_tensor_couplings(rank_n: int) -> list[ElementaryCoupling]:
    """Hilbert basis of the LR system, named ``E1, E2, ...`` in canonical order."""
    _check_rank(rank_n)
    basis = hilbert_nonneg(lr_system(rank_n))
    out = []
    for idx, vec in enumerate(basis.generators, start=1):
        triple = weights_of(LRTableau.from_vector(rank_n, vec))
        k0 = threshold_levels(*triple)[0]
        out.append(ElementaryCoupling(f"E{idx}", rank_n, vec, triple, k0))
    return out


def affine_extend_elementary(e: ElementaryCoupling) -> ElementaryCoupling:
    """Lift a tensor coupling to its threshold level: prepend ``k = k0``."""
    if e.fusion:
        raise DomainError(f"{e.name} already carries a level coordinate")
    return ElementaryCoupling(
        "Ê" + e.name[1:], e.rank_n, (e.threshold,) + e.vector, e.triple, e.threshold, fusion=True
    )


# -- step 3: outer-automorphism closure --------------------------------------


@dataclass(frozen=True)
class Candidate:
    """A coupling produced by rotating a lifted elementary.

    ``ambiguous`` marks candidates whose triple has more tableaux than its
    fusion coefficient at this level: not all of them can be couplings.
    """

    vector: tuple[int, ...]
    source: str
    shifts: tuple[int, int]
    ambiguous: bool = False

    def to_json_dict(self) -> dict:
        return {"vector": list(self.vector), "source": self.source, "shifts": list(self.shifts)}


def rotated_couplings(
    e: ElementaryCoupling, pairs: Iterable[tuple[int, int]] | None = None
) -> list[Candidate]:
    """Coupling vectors of ``(a^n lam, a^m mu, a^{n+m} nu)`` at the level of ``e``.

    Every LR tableau of the rotated triple yields a candidate. ``pairs``
    defaults to all ``(n, m)`` with ``0 <= n, m < N`` in row-major order.
    """
    if not e.fusion:
        raise DomainError("rotate a lifted (fusion) coupling")
    n_rank = e.rank_n
    if pairs is None:
        pairs = product(range(n_rank), repeat=2)
    lam, mu, nu = e.affine_triple
    k = e.level
    out = []
    for a, b in pairs:
        rl, rm, rn = outer_auto(lam, a), outer_auto(mu, b), outer_auto(nu, a + b)
        tabs = [t for t in enumerate_lr(rl.finite, rm.finite) if weights_of(t)[2] == rn.finite]
        coeff = fusion_coeff(rl.finite, rm.finite, rn.finite, k)
        if not tabs or coeff == 0:
            raise InconsistencyError(
                f"rotation ({a},{b}) of {e.name} gives {rl} x {rm} > {rn} with no coupling at level {k}"
            )
        for t in tabs:
            out.append(Candidate((k,) + t.vector(), e.name, (a, b), ambiguous=len(tabs) > coeff))
    return out


def fusion_candidates(rank_n: int) -> list[Candidate]:
    """All rotated couplings of all lifted tensor elementaries."""
    _check_rank(rank_n)
    hats = [affine_extend_elementary(e) for e in elementary_tensor_couplings(rank_n)]
    return [c for h in hats for c in rotated_couplings(h)]


def _is_combination(v: tuple[int, ...], gens: Sequence[tuple[int, ...]]) -> bool:
    try:
        decompose(v, gens)
    except InconsistencyError:
        return False
    return True


def reduce_to_elementary(vectors: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    """Drop vectors that are sums of other vectors of the (nonnegative) set."""
    vecs = canonical_order(vectors)
    vecs = [v for v in vecs if any(v)]
    return [v for v in vecs if not _is_combination(v, [w for w in vecs if w != v])]


def _fusion_coupling(rank_n: int, name: str, vec: tuple[int, ...]) -> ElementaryCoupling:
    triple = weights_of(LRTableau.from_vector(rank_n, vec[1:]))
    return ElementaryCoupling(name, rank_n, vec, triple, vec[0], fusion=True)


def fusion_elementaries(
    rank_n: int, exclude: Iterable[Sequence[int]] = ()
) -> list[ElementaryCoupling]:
    """Fusion elementary couplings obtained by outer-automorphism closure.

    Candidate vectors listed in ``exclude`` are left out of the pool.
    Ordering: the pure level coupling ``Ê0`` first, then lifts of the tensor
    elementaries in tensor order, then any further couplings in canonical
    vector order.
    """
    _check_rank(rank_n)
    hats = [affine_extend_elementary(e) for e in elementary_tensor_couplings(rank_n)]
    banned = {tuple(v) for v in exclude}
    pool = [c.vector for h in hats for c in rotated_couplings(h) if c.vector not in banned]
    elementary = set(reduce_to_elementary(pool))

    scalar = (1,) + (0,) * (len(fusion_variable_names(rank_n)) - 1)
    out: list[ElementaryCoupling] = []
    if scalar in elementary:
        out.append(_fusion_coupling(rank_n, "Ê0", scalar))
    for h in hats:
        if h.vector in elementary:
            out.append(replace(h))
    named = {e.vector for e in out}
    idx = len(hats)
    for vec in canonical_order(elementary - named):
        idx += 1
        out.append(_fusion_coupling(rank_n, f"Ê{idx}", vec))
    return out


# -- step 4: dualization -----------------------------------------------------


def build_V(elementaries: Sequence[ElementaryCoupling | Sequence[int]]) -> list[list[int]]:
    """Matrix whose columns are the coupling vectors."""
    vecs = [e.vector if isinstance(e, ElementaryCoupling) else tuple(e) for e in elementaries]
    if not vecs:
        raise DomainError("no couplings given")
    if len({len(v) for v in vecs}) != 1:
        raise DomainError("coupling vectors have different lengths")
    return [list(row) for row in zip(*vecs)]


@dataclass(frozen=True)
class Mismatch:
    lam: FiniteWeight
    mu: FiniteWeight
    nu: FiniteWeight
    level: int
    basis_count: int
    fusion_count: int

    def to_json_dict(self) -> dict:
        return {
            "lambda": list(self.lam.labels),
            "mu": list(self.mu.labels),
            "nu": list(self.nu.labels),
            "k": self.level,
            "basis": self.basis_count,
            "fusion": self.fusion_count,
        }


@dataclass(frozen=True)
class VerificationReport:
    max_label: int
    max_level: int
    cells: int
    nonzero_cells: int
    mismatches: tuple[Mismatch, ...]
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json_dict(self) -> dict:
        return {
            "max_label": self.max_label,
            "max_level": self.max_level,
            "cells": self.cells,
            "nonzero_cells": self.nonzero_cells,
            "mismatches": len(self.mismatches),
            "mismatch_list": [m.to_json_dict() for m in self.mismatches],
        }


@dataclass(frozen=True)
class FusionBasis:
    """Inequalities in ``(k, l, n)`` plus everything needed to audit them.

    ``ambiguous`` lists candidate vectors whose triple has more tableaux
    than couplings at that level; ``excluded`` those left out of the pool
    (only non-empty when ambiguity resolution was requested).
    """

    algebra_rank: int
    system: InequalitySystem
    elementaries: tuple[ElementaryCoupling, ...]
    V: tuple[tuple[int, ...], ...]
    report: VerificationReport | None = field(default=None, compare=False)
    ambiguous: tuple[tuple[int, ...], ...] = ()
    excluded: tuple[tuple[int, ...], ...] = ()

    @property
    def verified(self) -> bool:
        return self.report is not None and self.report.ok

    def count(self, lam: FiniteWeight, mu: FiniteWeight, nu: FiniteWeight, k: int) -> int:
        """Number of basis solutions with the given boundary weights and level."""
        counts = _basis_counts(self.system, lam, mu, k)
        return counts.get(nu, 0)

    def to_json_dict(self) -> dict:
        data = self.system.to_json_dict()
        data["N"] = self.algebra_rank
        data["provenance"] = {
            "elementaries": [e.to_json_dict() for e in self.elementaries],
            "V": [list(r) for r in self.V],
            "ambiguous_candidates": [list(v) for v in self.ambiguous],
            "excluded_candidates": [list(v) for v in self.excluded],
            "verified_bounds": (
                None
                if self.report is None
                else {"max_label": self.report.max_label, "max_level": self.report.max_level}
            ),
            "verification": None if self.report is None else self.report.to_json_dict(),
        }
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _assemble(rank_n: int, exclude: Sequence[tuple[int, ...]], ambiguous) -> FusionBasis:
    elems = fusion_elementaries(rank_n, exclude=exclude)
    V = build_V(elems)
    system = InequalitySystem(fusion_variable_names(rank_n), tuple(hilbert_dual(V)))
    return FusionBasis(
        rank_n, system, tuple(elems), tuple(map(tuple, V)), None, tuple(ambiguous), tuple(exclude)
    )


def _exclusion_choices(rank_n: int, ambiguous: list[Candidate]) -> Iterable[tuple[tuple[int, ...], ...]]:
    # For each ambiguous triple keep as many tableaux as its fusion
    # coefficient; yield every way of dropping the rest.
    groups: dict[tuple, list[tuple[int, ...]]] = {}
    for c in ambiguous:
        lam, mu, nu = weights_of(LRTableau.from_vector(rank_n, c.vector[1:]))
        key = (c.vector[0], lam, mu, nu)
        groups.setdefault(key, [])
        if c.vector not in groups[key]:
            groups[key].append(c.vector)
    per_group = []
    for (k, lam, mu, nu), vecs in sorted(groups.items()):
        surplus = len(vecs) - fusion_coeff(lam, mu, nu, k)
        per_group.append(list(combinations(sorted(vecs), surplus)))
    for choice in product(*per_group):
        yield tuple(v for part in choice for v in part)


def construct_fusion_basis(
    rank_n: int,
    verify_labels: int | None = None,
    verify_level: int | None = None,
    resolve_ambiguous: bool = False,
    resolve_bounds: tuple[int, int] = (1, 5),
    max_trials: int = 64,
) -> FusionBasis:
    """Run the whole pipeline; optionally verify against Kac-Walton.

    By default every tableau of every rotated triple enters the candidate
    pool. With ``resolve_ambiguous`` set, surplus tableaux of ambiguous
    triples are dropped in turn and the first resulting basis that passes
    ``verify_basis`` at ``resolve_bounds`` is kept. A failed verification
    is recorded in ``basis.report``, not raised.
    """
    _check_rank(rank_n)
    if rank_n > MAX_RANK:
        raise DomainError(f"fusion bases are only built for N <= {MAX_RANK}")
    ambiguous = [c for c in fusion_candidates(rank_n) if c.ambiguous]
    amb_vectors = canonical_order(c.vector for c in ambiguous)
    basis = _assemble(rank_n, (), amb_vectors)
    if resolve_ambiguous and ambiguous:
        labels, level = resolve_bounds
        if not verify_basis(basis, labels, level).ok:
            for trial, drop in enumerate(_exclusion_choices(rank_n, ambiguous)):
                if trial >= max_trials:
                    break
                attempt = _assemble(rank_n, drop, amb_vectors)
                if verify_basis(attempt, labels, level).ok:
                    basis = attempt
                    break
    if verify_labels is not None and verify_level is not None:
        basis = replace(basis, report=verify_basis(basis, verify_labels, verify_level))
    return basis


# -- verification ------------------------------------------------------------


def _compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    if parts == 1:
        return [(total,)]
    return [(a,) + rest for a in range(total + 1) for rest in _compositions(total - a, parts - 1)]


def fill_candidates(lam: FiniteWeight, mu: FiniteWeight) -> np.ndarray:
    """All ``(l, n)`` vectors whose letter counts match ``mu``.

    No LR condition is imposed: the system under test must do the pruning.
    """
    n_rank = lam.rank_n
    counts = [sum(mu.labels[i:]) for i in range(n_rank - 1)]
    per_letter = [_compositions(counts[i - 1], n_rank - i + 1) for i in range(1, n_rank)]
    rows = [lam.labels + sum(choice, ()) for choice in product(*per_letter)]
    return np.array(rows, dtype=np.int64)


def _nu_labels(rank_n: int, X: np.ndarray) -> np.ndarray:
    """Resulting-weight labels for each ``(l, n)`` row of ``X``."""
    r = rank_n - 1
    lam = X[:, :r]
    # shape rows: row j = sum_{i >= j} l_i, plus a zero row N
    shape = np.concatenate([np.cumsum(lam[:, ::-1], axis=1)[:, ::-1], np.zeros((len(X), 1), np.int64)], axis=1)
    rows = shape.copy()
    for col, (_, j) in enumerate(fill_index_pairs(rank_n), start=r):
        rows[:, j - 1] += X[:, col]
    return rows[:, :-1] - rows[:, 1:]


def _basis_counts_all_levels(
    system: InequalitySystem, lam: FiniteWeight, mu: FiniteWeight, max_level: int
) -> list[Counter]:
    X = fill_candidates(lam, mu)
    E = system.matrix
    base = X @ E[:, 1:].T
    nus = _nu_labels(lam.rank_n, X)
    out = []
    for k in range(max_level + 1):
        ok = np.all(base + k * E[:, 0] >= 0, axis=1)
        out.append(Counter(tuple(int(a) for a in row) for row in nus[ok]))
    return out


def _basis_counts(system: InequalitySystem, lam: FiniteWeight, mu: FiniteWeight, k: int) -> dict:
    raw = _basis_counts_all_levels(system, lam, mu, k)[k]
    return {FiniteWeight(lam.rank_n, nu): c for nu, c in raw.items()}


def _verify_lambda(args: tuple) -> tuple[int, int, list[Mismatch]]:
    system, lam, max_label, max_level = args
    n_rank = lam.rank_n
    cells = nonzero = 0
    bad: list[Mismatch] = []
    nus = list(finite_weights(n_rank, max_label))
    for mu in finite_weights(n_rank, max_label):
        per_level = _basis_counts_all_levels(system, lam, mu, max_level)
        for k, counts in enumerate(per_level):
            fits = max(lam.total, mu.total) <= k
            fused = (
                {w.finite.labels: c for w, c in kac_walton(affine_extend(lam, k), affine_extend(mu, k)).coefficients.items()}
                if fits
                else {}
            )
            for nu in nus:
                cells += 1
                got = counts.get(nu.labels, 0)
                want = fused.get(nu.labels, 0)
                nonzero += want > 0
                if got != want:
                    bad.append(Mismatch(lam, mu, nu, k, got, want))
            # solutions whose resulting weight is not even integrable
            for labels, c in counts.items():
                if min(labels) < 0:
                    bad.append(Mismatch(lam, mu, FiniteWeight(n_rank, labels), k, c, 0))
    return cells, nonzero, bad


def verify_basis(
    basis: FusionBasis, max_label: int, max_level: int, workers: int = 1
) -> VerificationReport:
    """Compare basis solution counts with Kac-Walton for every cell in range.

    Cells are all ``(lam, mu, nu, k)`` with labels in ``0..max_label`` and
    ``0 <= k <= max_level``. Mismatches are collected, never raised.
    """
    start = time.perf_counter()
    jobs = [(basis.system, lam, max_label, max_level) for lam in finite_weights(basis.algebra_rank, max_label)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_verify_lambda, jobs))
    else:
        results = [_verify_lambda(j) for j in jobs]
    cells = sum(r[0] for r in results)
    nonzero = sum(r[1] for r in results)
    bad = tuple(m for r in results for m in r[2])
    return VerificationReport(max_label, max_level, cells, nonzero, bad, time.perf_counter() - start)


# -- decomposing a fusion coupling ------------------------------------------


@dataclass(frozen=True)
class FusionDecomposition:
    names: tuple[str, ...]
    exponents: tuple[tuple[int, ...], ...]
    threshold: int

    @property
    def unique(self) -> bool:
        return len(self.exponents) == 1

    def monomial(self, which: int = 0) -> str:
        sup = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
        parts = []
        for name, a in zip(self.names, self.exponents[which]):
            if a == 1:
                parts.append(name)
            elif a > 1:
                parts.append(name + str(a).translate(sup))
        return "".join(parts) or "1"


def decompose_fusion(
    t: LRTableau, k: int, basis: FusionBasis | Sequence[ElementaryCoupling]
) -> FusionDecomposition:
    """Write the level-k coupling of ``t`` over the fusion elementaries.

    The threshold is the least level consumed by the non-scalar factors
    over all decompositions.
    """
    elems = basis.elementaries if isinstance(basis, FusionBasis) else tuple(basis)
    x = (k,) + t.vector()
    if isinstance(basis, FusionBasis) and not basis.system.is_solution(x):
        raise DomainError(f"{x} is not a fusion coupling of this basis")
    exps = decompose(x, [e.vector for e in elems])
    pure = [not any(e.vector[1:]) for e in elems]
    k0 = min(sum(a * e.vector[0] for a, e, p in zip(ex, elems, pure) if not p) for ex in exps)
    return FusionDecomposition(tuple(e.name for e in elems), tuple(exps), k0)
