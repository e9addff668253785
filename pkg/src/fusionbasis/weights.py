"""Finite and affine su(N) weights in Dynkin-label coordinates.

All arithmetic is on Python ints. Weights with negative labels are valid
values: they occur as intermediates of the Kac-Walton reflection procedure.
Integrability is checked only where an operation requires it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import DomainError


def _check_rank(rank_n: int) -> None:
    if not isinstance(rank_n, int) or rank_n < 2:
        raise DomainError(f"su(N) needs an integer N >= 2, got {rank_n!r}")


@dataclass(frozen=True, order=True)
class FiniteWeight:
    """Dynkin labels ``(l1, ..., l_{N-1})`` of an su(N) weight."""

    rank_n: int
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_rank(self.rank_n)
        labels = tuple(int(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) != self.rank_n - 1:
            raise DomainError(
                f"su({self.rank_n}) weight needs {self.rank_n - 1} labels, got {len(labels)}"
            )

    @classmethod
    def zero(cls, rank_n: int) -> FiniteWeight:
        return cls(rank_n, (0,) * (rank_n - 1))

    @property
    def total(self) -> int:
        """Sum of the labels, i.e. the minimal level the weight fits in."""
        return sum(self.labels)

    def is_integrable(self) -> bool:
        return all(x >= 0 for x in self.labels)

    def require_integrable(self) -> FiniteWeight:
        if not self.is_integrable():
            raise DomainError(f"weight {self} is not integrable")
        return self

    def __str__(self) -> str:
        return format_finite(self)


@dataclass(frozen=True, order=True)
class AffineWeight:
    """Affine Dynkin labels ``[l0, l1, ..., l_{N-1}]``."""

    rank_n: int
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_rank(self.rank_n)
        labels = tuple(int(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) != self.rank_n:
            raise DomainError(
                f"affine su({self.rank_n}) weight needs {self.rank_n} labels, got {len(labels)}"
            )

    @property
    def finite(self) -> FiniteWeight:
        return FiniteWeight(self.rank_n, self.labels[1:])

    @property
    def level(self) -> int:
        return level(self)

    def __str__(self) -> str:
        return format_affine(self)


def level(w: AffineWeight) -> int:
    """Level of an affine weight: the sum of all its labels."""
    return sum(w.labels)


def affine_extend(lam: FiniteWeight, k: int) -> AffineWeight:
    """Lift ``lam`` to level ``k`` by prepending ``k - sum(lam)``."""
    return AffineWeight(lam.rank_n, (k - lam.total,) + lam.labels)


def is_integrable(w: AffineWeight | FiniteWeight) -> bool:
    return all(x >= 0 for x in w.labels)


def outer_auto(w: AffineWeight, n: int = 1) -> AffineWeight:
    """Apply the basic outer automorphism ``n`` times.

    The basic automorphism rotates labels to the right:
    ``a[l0, ..., l_{N-1}] = [l_{N-1}, l0, ..., l_{N-2}]``.
    Negative ``n`` applies the inverse.
    """
    shift = n % w.rank_n
    if shift == 0:
        return w
    labels = w.labels
    return AffineWeight(w.rank_n, labels[-shift:] + labels[:-shift])


# -- text syntax -------------------------------------------------------------

_FINITE_RE = re.compile(r"^\(\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*\)$")
_AFFINE_RE = re.compile(r"^\[\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\]$")


def _split_labels(body: str | None) -> tuple[int, ...]:
    if not body:
        return ()
    return tuple(int(part) for part in body.split(","))


def parse_finite(text: str, rank_n: int) -> FiniteWeight:
    """Parse ``"(a,b,...)"``; whitespace is ignored."""
    m = _FINITE_RE.match(text.strip())
    if m is None:
        raise DomainError(f"malformed finite weight {text!r}; expected e.g. (2,0,1)")
    return FiniteWeight(rank_n, _split_labels(m.group(1)))


def parse_affine(text: str, rank_n: int) -> AffineWeight:
    """Parse ``"[a,b,...]"``; whitespace is ignored."""
    m = _AFFINE_RE.match(text.strip())
    if m is None:
        raise DomainError(f"malformed affine weight {text!r}; expected e.g. [1,2,0,1]")
    return AffineWeight(rank_n, _split_labels(m.group(1)))


def format_finite(w: FiniteWeight | Sequence[int]) -> str:
    labels = w.labels if isinstance(w, FiniteWeight) else w
    return "(" + ",".join(str(x) for x in labels) + ")"


def format_affine(w: AffineWeight | Sequence[int]) -> str:
    labels = w.labels if isinstance(w, AffineWeight) else w
    return "[" + ",".join(str(x) for x in labels) + "]"


def finite_weights(rank_n: int, max_label: int) -> Iterable[FiniteWeight]:
    """All integrable su(N) weights with every label in ``0..max_label``."""
    for labels in product(range(max_label + 1), repeat=rank_n - 1):
        yield FiniteWeight(rank_n, labels)
