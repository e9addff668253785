"""Shifted affine Weyl action, Kac-Walton fusion, and threshold levels."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .errors import DomainError, InternalError
from .tableaux import LRTableau, tensor_decompose
from .weights import AffineWeight, FiniteWeight, affine_extend, is_integrable


@dataclass(frozen=True)
class ReflectionResult:
    """Outcome of shift-reflecting a weight into the integrable sector.

    ``weight`` is ``None`` when the weight lies on a shifted wall and drops
    out of the Kac-Walton sum; otherwise ``sign`` is the parity of the
    reflections used.
    """

    weight: AffineWeight | None
    sign: int = 0
    reflections: tuple[int, ...] = ()

    @property
    def on_wall(self) -> bool:
        return self.weight is None


def reflect_to_dominant(w: AffineWeight) -> ReflectionResult:
    """Bring ``w`` into the integrable chamber with the shifted action.

    Works on ``w + rho`` (all labels shifted by one). Reflection ``s_i``
    subtracts ``(w+rho)_i`` times the i-th row of the affine Cartan matrix.
    The most negative label is reflected first, ties to the lowest index.
    Needs ``level + N > 0``; below that the shifted orbit has no dominant
    representative.
    """
    n = w.rank_n
    if w.level + n <= 0:
        raise DomainError(f"shifted level of {w} is {w.level + n}, must be positive")
    shifted = [x + 1 for x in w.labels]
    cap = 10 * (sum(abs(x) for x in w.labels) + n) ** 2
    used: list[int] = []
    while True:
        if 0 in shifted:
            return ReflectionResult(None, 0, tuple(used))
        low = min(shifted)
        if low > 0:
            break
        if len(used) >= cap:
            raise InternalError(f"reflection of {w} did not terminate within {cap} steps")
        i = shifted.index(low)
        # s_i: label i flips sign, both neighbours absorb it (for N=2 the
        # single neighbour absorbs it twice).
        shifted[i] = -low
        shifted[(i - 1) % n] += low
        shifted[(i + 1) % n] += low
        used.append(i)
    sign = -1 if len(used) % 2 else 1
    return ReflectionResult(AffineWeight(n, tuple(x - 1 for x in shifted)), sign, tuple(used))


@dataclass(frozen=True)
class FusionResult:
    level: int
    coefficients: Mapping[AffineWeight, int] = field(default_factory=dict)

    def get(self, nu: AffineWeight) -> int:
        return self.coefficients.get(nu, 0)


def _check_fusion_inputs(lam: AffineWeight, mu: AffineWeight) -> int:
    if lam.rank_n != mu.rank_n:
        raise DomainError(f"rank mismatch: su({lam.rank_n}) vs su({mu.rank_n})")
    if not (is_integrable(lam) and is_integrable(mu)):
        raise DomainError(f"fusion inputs must be integrable: {lam}, {mu}")
    if lam.level != mu.level:
        raise DomainError(f"level mismatch: {lam.level} vs {mu.level}")
    return lam.level


@lru_cache(maxsize=65536)
def _kac_walton_cached(rank_n: int, lam: tuple[int, ...], mu: tuple[int, ...], k: int) -> tuple:
    total: dict[AffineWeight, int] = defaultdict(int)
    product = tensor_decompose(FiniteWeight(rank_n, lam), FiniteWeight(rank_n, mu))
    for xi, mult in product.items():
        res = reflect_to_dominant(affine_extend(xi, k))
        if not res.on_wall:
            total[res.weight] += res.sign * mult
    if any(c < 0 for c in total.values()):
        raise InternalError(f"negative fusion coefficient in {dict(total)}")
    return tuple(sorted((w, c) for w, c in total.items() if c))


def kac_walton(lam: AffineWeight, mu: AffineWeight) -> FusionResult:
    """Fusion product of two integrable affine weights at their common level."""
    k = _check_fusion_inputs(lam, mu)
    coeffs = _kac_walton_cached(lam.rank_n, lam.labels[1:], mu.labels[1:], k)
    return FusionResult(k, dict(coeffs))


def fusion_coeff(lam: FiniteWeight, mu: FiniteWeight, nu: FiniteWeight, k: int) -> int:
    """Level-k fusion coefficient; 0 whenever one of the weights does not fit."""
    for w in (lam, mu, nu):
        w.require_integrable()
    if max(lam.total, mu.total, nu.total) > k:
        return 0
    coeffs = _kac_walton_cached(lam.rank_n, lam.labels, mu.labels, k)
    target = affine_extend(nu, k)
    for w, c in coeffs:
        if w == target:
            return c
    return 0


def threshold_levels(lam: FiniteWeight, mu: FiniteWeight, nu: FiniteWeight) -> list[int]:
    """Ascending threshold levels, one per unit of tensor multiplicity.

    Entry ``m`` (1-based) is the least level at which the fusion coefficient
    reaches ``m``. Scanning stops at ``|lam| + |mu|`` where fusion and tensor
    product agree.
    """
    target = tensor_decompose(lam, mu).get(nu, 0)
    if target == 0:
        return []
    out: list[int] = []
    start = max(lam.total, mu.total, nu.total)
    for k in range(start, lam.total + mu.total + 1):
        c = fusion_coeff(lam, mu, nu, k)
        out.extend([k] * (c - len(out)))
        if len(out) >= target:
            break
    if len(out) != target:
        raise InternalError(f"threshold scan for {lam},{mu},{nu} ended at {out}, want {target} entries")
    return out


def threshold_su2_tableau(t: LRTableau) -> int:
    """su(2) threshold of one tableau: its number of columns, ``l1 + n11``."""
    if t.rank_n != 2:
        raise DomainError("the column rule for thresholds only holds for su(2)")
    return t.lam.labels[0] + t.fill(1, 1)
