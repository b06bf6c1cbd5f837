import itertools

import pytest

from zxnf._backend import diagram_matrix
from zxnf.clifford import (
    NotClifford,
    PauliPair,
    clifford_certificate,
    clifford_group,
    clifford_normalize,
    derive_subgroup_D,
    derive_W_transversal,
    enumerate_cliffords,
    pauli_conjugation,
)
from zxnf.diagram import H, X, Z
from zxnf.ring import projective_equal
from zxnf.rules import verify_certificate

g = clifford_group()


def cls(*nodes):
    return g.of_diagram(tuple(nodes))


def test_enumeration():
    classes = enumerate_cliffords()
    assert len(classes) == 24
    assert g[g.identity].canonical_diagram == ()
    assert cls(H) == cls(Z(2), X(2), Z(2))
    for c in classes:
        assert projective_equal(diagram_matrix(c.canonical_diagram), c.canonical_matrix)
        assert len(c.canonical_diagram) <= 3


def test_normalize_examples():
    assert clifford_normalize((Z(2), Z(2))).clifford == cls(Z(4))
    assert clifford_normalize((H, H)).clifford.index == g.identity
    res = clifford_normalize((Z(2), X(2), Z(2), X(2)))
    # one colour-change round leaves three nodes; the class itself has a shorter canonical form
    assert res.sizes == (4, 3)
    assert res.clifford == cls(Z(2), X(2), Z(2), X(2))
    assert "CC" in {s.rule for s in res.certificate.steps}


def test_not_clifford():
    with pytest.raises(NotClifford):
        clifford_normalize((Z(1),))


def test_reduction_shrinks_every_round():
    for w in itertools.product((Z(2), X(6), H, X(4)), repeat=6):
        sizes = clifford_normalize(w).sizes
        assert all(a > b for a, b in zip(sizes, sizes[1:]))


def test_certificates_verify():
    for n in range(5):
        for w in itertools.product((Z(2), X(2), H, Z(6)), repeat=n):
            cert = clifford_certificate(w)
            assert verify_certificate(cert)
            assert cert.target == g.of_diagram(w).canonical_diagram


def test_subgroup_D():
    D = {c.index for c in derive_subgroup_D()}
    assert len(D) == 8
    assert g.identity in D
    assert cls(Z(2)).index in D
    assert cls(X(4)).index in D
    assert cls(H).index not in D


def test_transversal():
    W = derive_W_transversal()
    assert len(W) == 3 and W[0].index == g.identity
    for c in range(24):
        factors = [(wi, d) for wi, w in enumerate(g.W) for d in g.subgroup_D if g.mul[w][d] == c]
        assert len(factors) == 1
        assert g.factor_WD(c) == factors[0]


def test_pauli_conjugation():
    assert pauli_conjugation(g[g.identity], "Z") == (1, "Z")
    assert pauli_conjugation(cls(H), "Z") == (1, "X")
    assert pauli_conjugation(cls(Z(2)), "X") == (1, "Y")


def test_pauli_pairs():
    for i in range(4):
        p = PauliPair.from_index(i)
        assert p.index == i
        assert g.as_pauli(g.pauli_class(p)) == p
    assert g.as_pauli(cls(H).index) is None


def test_multiplication_table():
    for a, b in itertools.product(range(24), repeat=2):
        m = g.unitary[a] @ g.unitary[b]
        assert projective_equal(m, g.unitary[g.mul[a][b]])
    assert all(g.mul[a][g.inv[a]] == g.identity for a in range(24))
