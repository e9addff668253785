import json
from itertools import product

import numpy as np
import pytest

from fusionbasis import DomainError
from fusionbasis.affine import fusion_coeff
from fusionbasis.basis import (
    affine_extend_elementary,
    build_V,
    construct_fusion_basis,
    decompose_fusion,
    elementary_tensor_couplings,
    fill_candidates,
    fusion_candidates,
    fusion_elementaries,
    reduce_to_elementary,
    rotated_couplings,
    verify_basis,
)
from fusionbasis.cones import box_solutions
from fusionbasis.tableaux import LRTableau, enumerate_lr, weights_of
from fusionbasis.weights import FiniteWeight, finite_weights

from oracles import su2_fusion


def F(*labels):
    return FiniteWeight(len(labels) + 1, labels)


@pytest.fixture(scope="module")
def su2():
    return construct_fusion_basis(2)


@pytest.fixture(scope="module")
def su3():
    return construct_fusion_basis(3)


def test_su2_tensor_elementaries():
    es = elementary_tensor_couplings(2)
    assert [(e.name, e.vector, e.threshold) for e in es] == [
        ("E1", (1, 0, 1), 1),
        ("E2", (1, 0, 0), 1),
        ("E3", (0, 1, 0), 1),
    ]
    assert [tuple(str(w) for w in e.triple) for e in es] == [
        ("(1)", "(1)", "(0)"),
        ("(1)", "(0)", "(1)"),
        ("(0)", "(1)", "(1)"),
    ]


def test_su2_fusion_elementaries(su2):
    assert [(e.name, e.vector) for e in su2.elementaries] == [
        ("Ê0", (1, 0, 0, 0)),
        ("Ê1", (1, 1, 0, 1)),
        ("Ê2", (1, 1, 0, 0)),
        ("Ê3", (1, 0, 1, 0)),
    ]
    assert [list(r) for r in su2.V] == [[1, 1, 1, 1], [0, 1, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0]]


def test_su2_fusion_inequalities(su2):
    rows = {su2.system.row_str(r) for r in su2.system.rows}
    assert rows == {"k >= l1 + n11", "l1 >= n12", "n11 >= 0", "n12 >= 0"}


def test_su2_basis_counts_match_closed_rule(su2):
    for a, b, c in product(range(6), repeat=3):
        for k in range(7):
            assert su2.count(F(a), F(b), F(c), k) == su2_fusion(a, b, c, k)


def test_lift_and_rotation():
    e1 = elementary_tensor_couplings(2)[0]
    h = affine_extend_elementary(e1)
    assert (h.name, h.vector, h.fusion) == ("Ê1", (1, 1, 0, 1), True)
    with pytest.raises(DomainError):
        affine_extend_elementary(h)
    with pytest.raises(DomainError):
        rotated_couplings(e1)
    vecs = {c.vector for c in rotated_couplings(h)}
    # rotations of [0,1]x[0,1]>[1,0] include the pure level coupling
    assert (1, 0, 0, 0) in vecs


@pytest.mark.parametrize("n", [2, 3])
def test_candidates_are_couplings(n):
    for c in fusion_candidates(n):
        lam, mu, nu = weights_of(LRTableau.from_vector(n, c.vector[1:]))
        assert fusion_coeff(lam, mu, nu, c.vector[0]) > 0
        assert not c.ambiguous


def test_reduce_to_elementary():
    assert reduce_to_elementary([(1, 0), (0, 1), (1, 1), (2, 1), (0, 0)]) == [(1, 0), (0, 1)]


def test_su3_structure(su3):
    names = [e.name for e in su3.elementaries]
    assert names[0] == "Ê0" and len(names) == 9
    assert len(su3.system.rows) == 12
    assert np.array(su3.V).shape == (8, 9)
    for e in su3.elementaries:
        assert su3.system.is_solution(e.vector)
        lam, mu, nu = e.triple
        assert fusion_coeff(lam, mu, nu, e.level) > 0


def test_su3_small_verification(su3):
    rep = verify_basis(su3, 1, 3)
    assert rep.ok and rep.cells == 4 ** 3 * 4 and rep.nonzero_cells > 0


def test_verification_parallel_agrees(su3):
    one, two = verify_basis(su3, 1, 2), verify_basis(su3, 1, 2, workers=2)
    assert (one.cells, one.nonzero_cells, one.mismatches) == (two.cells, two.nonzero_cells, two.mismatches)


def test_fill_candidates_cover_lr():
    for lam, mu in product(finite_weights(3, 2), repeat=2):
        cands = {tuple(int(a) for a in r) for r in fill_candidates(lam, mu)}
        for t in enumerate_lr(lam, mu):
            assert t.vector() in cands


def test_su2_decomposition(su2):
    t = LRTableau.from_json_dict(2, {"lambda": [2], "n": [[3, 1]]})
    assert [str(w) for w in weights_of(t)] == ["(2)", "(4)", "(4)"]
    d = decompose_fusion(t, 5, su2)
    assert d.unique and d.exponents == ((0, 1, 1, 3),) and d.threshold == 5
    assert d.monomial() == "Ê1Ê2Ê3³"
    d6 = decompose_fusion(t, 6, su2)
    assert d6.exponents == ((1, 1, 1, 3),) and d6.threshold == 5
    with pytest.raises(DomainError):
        decompose_fusion(t, 4, su2)


def test_json_provenance(su2):
    data = json.loads(su2.to_json())
    assert data["N"] == 2 and data["vars"] == ["k", "l1", "n11", "n12"]
    prov = data["provenance"]
    assert prov["V"] == [[1, 1, 1, 1], [0, 1, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0]]
    assert prov["verification"] is None and prov["ambiguous_candidates"] == []


def test_rank_limits():
    with pytest.raises(DomainError):
        construct_fusion_basis(5)
    with pytest.raises(DomainError):
        build_V([])


def test_fusion_solutions_in_box_are_couplings(su2):
    for x in box_solutions(su2.system, 4):
        k, l1, n11, n12 = map(int, x)
        t = LRTableau.from_vector(2, (l1, n11, n12))
        lam, mu, nu = weights_of(t)
        assert fusion_coeff(lam, mu, nu, k) > 0


@pytest.mark.slow
def test_su4_ambiguity_is_reported_and_resolvable():
    plain = construct_fusion_basis(4, verify_labels=1, verify_level=4)
    assert plain.ambiguous
    assert not plain.verified
    for m in plain.report.mismatches:
        assert m.basis_count > m.fusion_count
    fixed = construct_fusion_basis(4, verify_labels=1, verify_level=4, resolve_ambiguous=True)
    assert fixed.verified and fixed.excluded
    assert len(fusion_elementaries(4)) == len(plain.elementaries)
