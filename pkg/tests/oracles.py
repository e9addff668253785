"""Independent reference implementations used only by the tests.

None of these touch the LR machinery of the package:

* ``klimyk_tensor``: weight multiplicities from brute-force semistandard
  tableaux, then Klimyk's formula with the finite Weyl group (S_N acting on
  partition coordinates).
* ``epsilon_fusion``: Kac-Walton in partition (epsilon) coordinates, where
  the affine Weyl group acts by coordinate swaps and the affine reflection
  ``(v_1, ..., v_N) -> (v_N + k + N, ..., v_1 - k - N)``.
* ``su2_fusion``: the closed su(2)_k rule.
"""

from collections import Counter
from itertools import combinations_with_replacement


def partition(labels):
    """Dynkin labels -> N-part partition (last part 0)."""
    n = len(labels) + 1
    return tuple(sum(labels[j:]) for j in range(n - 1)) + (0,)


def dynkin(part):
    return tuple(part[i] - part[i + 1] for i in range(len(part) - 1))


def ssyt_contents(shape, n):
    """Contents of all semistandard tableaux of ``shape`` with entries 1..n."""
    out = Counter()

    def rows(idx, above, content):
        if idx == len(shape) or shape[idx] == 0:
            out[tuple(content)] += 1
            return
        for row in combinations_with_replacement(range(1, n + 1), shape[idx]):
            if above is not None and any(row[c] <= above[c] for c in range(len(row))):
                continue
            new = list(content)
            for e in row:
                new[e - 1] += 1
            rows(idx + 1, row, new)

    rows(0, None, [0] * n)
    return out


def _sort_with_sign(v):
    v = list(v)
    sign = 1
    for i in range(len(v)):
        for j in range(len(v) - 1 - i):
            if v[j] < v[j + 1]:
                v[j], v[j + 1] = v[j + 1], v[j]
                sign = -sign
    return tuple(v), sign


def klimyk_tensor(lam, mu):
    """``{nu: multiplicity}`` for su(N), all weights as Dynkin-label tuples."""
    n = len(lam) + 1
    delta = tuple(range(n - 1, -1, -1))
    pl = partition(lam)
    total = Counter()
    for content, mult in ssyt_contents(partition(mu)[:-1], n).items():
        v = tuple(a + b + d for a, b, d in zip(pl, content, delta))
        if len(set(v)) < n:
            continue
        s, sign = _sort_with_sign(v)
        total[dynkin(tuple(a - d for a, d in zip(s, delta)))] += sign * mult
    return {nu: c for nu, c in total.items() if c}


def _alcove_reduce(v, period):
    """Shifted epsilon vector -> (dominant vector, sign), or None on a wall."""
    v = list(v)
    sign = 1
    while True:
        moved = False
        for i in range(len(v) - 1):
            if v[i] == v[i + 1]:
                return None
            if v[i] < v[i + 1]:
                v[i], v[i + 1] = v[i + 1], v[i]
                sign = -sign
                moved = True
        if moved:
            continue
        gap = v[0] - v[-1]
        if gap == period:
            return None
        if gap < period:
            return tuple(v), sign
        v[0], v[-1] = v[-1] + period, v[0] - period
        sign = -sign


def epsilon_fusion(lam, mu, k):
    """Level-k fusion ``{nu: coefficient}`` (Dynkin tuples), Klimyk + alcove reduction."""
    n = len(lam) + 1
    if sum(lam) > k or sum(mu) > k:
        return {}
    delta = tuple(range(n - 1, -1, -1))
    total = Counter()
    for xi, mult in klimyk_tensor(lam, mu).items():
        v = tuple(a + d for a, d in zip(partition(xi), delta))
        red = _alcove_reduce(v, k + n)
        if red is None:
            continue
        u, sign = red
        total[dynkin(tuple(a - d for a, d in zip(u, delta)))] += sign * mult
    return {nu: c for nu, c in total.items() if c}


def su2_fusion(a, b, c, k):
    """Closed su(2)_k fusion coefficient for Dynkin labels a, b, c."""
    if max(a, b, c) > k or (a + b + c) % 2:
        return 0
    return int(abs(a - b) <= c <= min(a + b, 2 * k - a - b))
