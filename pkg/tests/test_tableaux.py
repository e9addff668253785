import json
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fusionbasis import DomainError
from fusionbasis.tableaux import (
    InequalitySystem,
    LRTableau,
    enumerate_lr,
    lr_system,
    lr_variable_names,
    stretched_product,
    tensor_decompose,
    tensor_multiplicity,
    weights_of,
)
from fusionbasis.weights import FiniteWeight, finite_weights

from oracles import klimyk_tensor


def W(*labels):
    return FiniteWeight(len(labels) + 1, labels)


def test_variable_order():
    assert lr_variable_names(2) == ("l1", "n11", "n12")
    assert lr_variable_names(3) == ("l1", "l2", "n11", "n12", "n13", "n22", "n23")


def test_su2_system():
    s = lr_system(2)
    rows = {tuple(r) for r in s.rows}
    assert rows == {(1, 0, -1), (1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert "l1 >= n12" in str(s)


def _su2_closed(l1, n11, n12):
    return min(l1, n11, n12) >= 0 and l1 >= n12


def _su3_closed(l1, l2, n11, n12, n13, n22, n23):
    # hand-written su(3) LR conditions
    return (
        min(l1, l2, n11, n12, n13, n22, n23) >= 0
        and l1 >= n12
        and l2 >= n13
        and l2 + n12 >= n13 + n23
        and n11 >= n22
        and n11 + n12 >= n22 + n23
    )


def test_system_matches_hand_conditions():
    s2, s3 = lr_system(2), lr_system(3)
    for x in product(range(4), repeat=3):
        assert s2.is_solution(x) == _su2_closed(*x)
    for x in product(range(3), repeat=7):
        assert s3.is_solution(x) == _su3_closed(*x)


def test_su3_octet_tableaux():
    # the two couplings of 8 x 8 > 8
    tabs = [t for t in enumerate_lr(W(1, 1), W(1, 1)) if weights_of(t)[2] == W(1, 1)]
    fills = sorted(t.vector()[2:] for t in tabs)
    assert fills == [(1, 0, 1, 1, 0), (1, 1, 0, 0, 1)]


@pytest.mark.parametrize("n,bound", [(2, 5), (3, 3), (4, 1)])
def test_tensor_matches_klimyk(n, bound):
    ws = list(finite_weights(n, bound))
    for a, b in product(ws, ws):
        got = {nu.labels: c for nu, c in tensor_decompose(a, b).items()}
        assert got == klimyk_tensor(a.labels, b.labels), (a, b)


@given(
    st.integers(2, 4).flatmap(
        lambda n: st.tuples(*[st.lists(st.integers(0, 3), min_size=n - 1, max_size=n - 1)] * 2).map(
            lambda p: (W(*p[0]), W(*p[1]))
        )
    )
)
@settings(max_examples=60, deadline=None)
def test_tableaux_are_consistent(pair):
    lam, mu = pair
    tabs = enumerate_lr(lam, mu)
    assert len(set(tabs)) == len(tabs)
    for t in tabs:
        l, m, _ = weights_of(t)
        assert (l, m) == (lam, mu)
        assert lr_system(lam.rank_n).is_solution(t.vector())
    # dimension-free check: product is symmetric in multiplicities
    assert tensor_decompose(lam, mu) == tensor_decompose(mu, lam)


def test_tensor_examples():
    assert tensor_decompose(W(2), W(4)) == {W(6): 1, W(4): 1, W(2): 1}
    assert tensor_multiplicity(W(1, 1), W(1, 1), W(1, 1)) == 2
    octet = tensor_decompose(W(1, 1), W(1, 1))
    assert octet == {W(2, 2): 1, W(3, 0): 1, W(1, 1): 2, W(0, 3): 1, W(0, 0): 1}


def test_invalid_tableau_rejected():
    with pytest.raises(DomainError):
        LRTableau.from_vector(2, (0, 0, 1))  # letter in row 2 with no box above
    with pytest.raises(DomainError):
        enumerate_lr(W(-1), W(1))


def test_stretched_product_su5():
    t1 = LRTableau.from_json_dict(
        5, {"lambda": [2, 0, 0, 0], "n": [[1, 2, 0, 0, 0], [0, 1, 1, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0]]}
    )
    t2 = LRTableau.from_json_dict(5, {"lambda": [1, 0, 1, 0], "n": [[1, 1, 0, 0, 0], [0, 1, 1, 0, 0]]})
    p = stretched_product(t1, t2)
    assert p.render().splitlines() == ["....11", ".11122", ".223", "4"]
    assert p.lam == W(3, 0, 1, 0)
    for part in (t1, t2):
        assert weights_of(part)[0].rank_n == 5
    sums = [a + b for a, b in zip(t1.vector(), t2.vector())]
    assert list(p.vector()) == sums


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_stretched_product_stays_in_cone(data):
    n = data.draw(st.integers(2, 4))
    lam = W(*data.draw(st.lists(st.integers(0, 2), min_size=n - 1, max_size=n - 1)))
    mu = W(*data.draw(st.lists(st.integers(0, 2), min_size=n - 1, max_size=n - 1)))
    t1 = data.draw(st.sampled_from(enumerate_lr(lam, mu)))
    t2 = data.draw(st.sampled_from(enumerate_lr(mu, lam)))
    p = stretched_product(t1, t2)
    a, b, c = weights_of(p)
    for x, y, z in zip(weights_of(t1), weights_of(t2), (a, b, c)):
        assert z.labels == tuple(i + j for i, j in zip(x.labels, y.labels))


def test_json_round_trips():
    s = lr_system(3)
    assert InequalitySystem.from_json(s.to_json()) == s
    data = json.loads(s.to_json())
    assert data["vars"] == list(lr_variable_names(3))
    for t in enumerate_lr(W(1, 1), W(1, 1)):
        assert LRTableau.from_json_dict(3, t.to_json_dict()) == t


def test_matrix_and_solution_semantics():
    s = lr_system(2)
    assert s.matrix.dtype == np.int64 and s.matrix.shape == (4, 3)
    assert not s.is_solution((1, -1, 0))
    assert s.row_str((1, 1, -1)) == "l1 + n11 >= n12"
