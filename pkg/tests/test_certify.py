import random

from hypothesis import given, settings
from hypothesis import strategies as st

from zxnf.certify import compile_certificate, normalization_certificate
from zxnf.diagram import H, X, Z, compile_to_generators, word_to_diagram
from zxnf.manf import check_equal, nf_to_diagram, normalize
from zxnf.rules import PRIMITIVE, expand_derived, verify_certificate

nodes = st.one_of(st.builds(Z, st.integers(0, 7)), st.builds(X, st.integers(0, 7)), st.just(H))


@given(st.lists(nodes, max_size=12).map(tuple))
@settings(max_examples=60, deadline=None)
def test_compile_certificate(d):
    cert = compile_certificate(d)
    assert cert.target == word_to_diagram(compile_to_generators(d))
    assert verify_certificate(cert)


@given(st.lists(nodes, max_size=25).map(tuple))
@settings(max_examples=60, deadline=None)
def test_normalization_certificate(d):
    nf, cert = normalize(d)
    assert not cert.partial
    assert cert.source == d and cert.target == nf_to_diagram(nf)
    assert verify_certificate(cert)


def test_certificate_reduces_to_primitives():
    _, cert = normalize((H, Z(3), X(5), H, Z(1)))
    flat = expand_derived(cert)
    assert all(s.rule in PRIMITIVE for s in flat.steps)
    assert verify_certificate(flat)


def test_equality_certificate_connects_inputs():
    rng = random.Random(3)
    from conftest import random_diagram

    for _ in range(30):
        d = random_diagram(rng, 15)
        e = (H, H) + d + (Z(4), X(4), Z(4), X(4))
        equal, cert = check_equal(d, e)
        assert equal
        assert cert.source == d and cert.target == e
        assert verify_certificate(cert)


def test_normalization_certificate_checks_nf():
    d = (Z(1), X(2))
    nf, _ = normalize(d, certificate=False)
    assert normalization_certificate(d, nf).target == nf_to_diagram(nf)
