import pytest

from zxnf._backend import diagram_matrix
from zxnf.diagram import H, X, Z, parse
from zxnf.rules import (
    PRIMITIVE,
    CertBuilder,
    Certificate,
    NotFound,
    PatternMismatch,
    RewriteStep,
    apply_step,
    derived_rule_proof,
    expand_derived,
    find_derivation,
    neighbours,
    replay,
    rule_instance,
    rule_instances,
    rule_soundness_selftest,
    verify_certificate,
)
from zxnf.ring import projective_equal


def test_rule_instance_examples():
    assert rule_instance("S", (0, 1, 1)) == ((Z(1), Z(1)), (Z(2),))
    lhs, rhs = rule_instance("P", (1, 4))
    assert (lhs, rhs) == ((X(4), Z(4)), (Z(4), X(4)))
    lhs, rhs = rule_instance("CC", (0, 2, 2, 2))
    assert (lhs, rhs) == ((Z(2), X(2), Z(2)), (X(2), Z(2), X(2)))
    assert projective_equal(diagram_matrix(lhs), diagram_matrix(rhs))
    assert rule_instance("Eu", (0,)) == ((H,), (Z(2), X(2), Z(2)))
    assert rule_instance("H", (0, 3)) == ((H, Z(3), H), (X(3),))


def test_instance_counts():
    counts = {}
    for inst in rule_instances():
        counts[inst.rule] = counts.get(inst.rule, 0) + 1
    assert counts == {"S": 128, "Id": 2, "P": 16, "Eu": 2, "H": 16, "HH": 1, "CC": 16}


def test_apply_step_examples():
    assert apply_step((Z(1), Z(1)), RewriteStep("S", "fwd", 0, (0, 1, 1))) == (Z(2),)
    assert apply_step((Z(2),), RewriteStep("S", "bwd", 0, (0, 1, 1))) == (Z(1), Z(1))
    assert apply_step((H,), RewriteStep("Eu", "fwd", 0, (0,))) == (Z(2), X(2), Z(2))


def test_apply_step_mismatch():
    with pytest.raises(PatternMismatch) as info:
        apply_step((Z(1), Z(2)), RewriteStep("S", "fwd", 0, (0, 1, 1)))
    assert info.value.position == 0


def test_every_step_is_invertible(rng):
    from conftest import random_diagram

    for _ in range(50):
        d = random_diagram(rng, 6)
        for s in neighbours(d, max_nodes=len(d) + 2):
            assert apply_step(apply_step(d, s), s.reversed()) == d


def test_verify_examples():
    assert verify_certificate(Certificate((Z(1),), (Z(1),)))
    cert = Certificate((Z(1), Z(1)), (Z(2),), (RewriteStep("S", "fwd", 0, (0, 1, 1)),))
    assert verify_certificate(cert)
    bad = Certificate(cert.source, cert.target, (RewriteStep("S", "fwd", 1, (0, 1, 1)),))
    v = verify_certificate(bad)
    assert not v and v.failed_step == 0


def test_wrong_target_fails():
    cert = Certificate((Z(1), Z(1)), (Z(3),), (RewriteStep("S", "fwd", 0, (0, 1, 1)),))
    assert not verify_certificate(cert)


def test_find_derivation_examples():
    cert = find_derivation((Z(4), X(4)), (X(4), Z(4)))
    assert [s.rule for s in cert.steps] == ["P"]
    assert len(find_derivation((Z(1),), (Z(1),))) == 0
    cert = find_derivation((H, H), (), rules=PRIMITIVE)
    assert verify_certificate(cert) and all(s.rule in PRIMITIVE for s in cert.steps)


def test_find_derivation_not_found():
    with pytest.raises(NotFound) as info:
        find_derivation((Z(1),), (Z(7),), max_depth=3)
    assert info.value.max_depth == 3


def test_jsonl_round_trip(tmp_path):
    b = CertBuilder(parse("H; H"))
    b.step("HH", "fwd", 0)
    b.step("Id", "bwd", 0, (1,))
    cert = b.build()
    path = tmp_path / "c.jsonl"
    cert.save(path)
    assert Certificate.load(path) == cert
    first = path.read_text().splitlines()[0]
    assert first == '{"source": "H; H", "target": "X(0)"}'


def test_replay_is_deterministic():
    cert = find_derivation((H, Z(2), H), (X(2),))
    assert replay(cert) == replay(cert) == (X(2),)


def test_derived_rules_expand_to_primitives():
    for params in [(0, 2, 2, 2), (1, 6, 2, 6), (0, 2, 6, 2)]:
        proof = derived_rule_proof("CC", params)
        assert all(s.rule in PRIMITIVE for s in proof.steps)
        assert verify_certificate(proof)
    cert = find_derivation((H, H, Z(2), X(2), Z(2)), (X(2), Z(2), X(2)))
    flat = expand_derived(cert)
    assert all(s.rule in PRIMITIVE for s in flat.steps)
    assert verify_certificate(flat) and flat.target == cert.target


def test_selftest_report():
    report = rule_soundness_selftest()
    assert report.ok, report.failures
    assert "S: 128/128 pass" in report.summary()
