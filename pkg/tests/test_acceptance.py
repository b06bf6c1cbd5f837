"""The ten acceptance criteria, each at its stated budget.

Every test records a single ``PASS``/``FAIL`` line that is printed in the
terminal summary (and immediately, when run with ``-s``).
"""

import itertools
import random
import time

import pytest

from conftest import ACCEPTANCE_LINES, random_diagram
from zxnf._backend import diagram_matrix, product_key
from zxnf.clifford import clifford_group, clifford_normalize
from zxnf.diagram import H, X, Z, dagger, word_to_diagram
from zxnf.manf import MA, all_normal_forms, check_equal, derive_tables, enumerate_nf, fold_word, nf_to_diagram, normalize
from zxnf.ring import Mat2, is_projective_identity, projective_equal, projective_key
from zxnf.rules import Certificate, RewriteStep, apply_step, neighbours, rule_soundness_selftest, verify_certificate
from zxnf.stabparity import assert_not_identity

pytestmark = pytest.mark.acceptance


def record(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {n:>2}. {title}: {detail}"
    ACCEPTANCE_LINES[n] = line
    print(line)
    assert ok, line


def test_01_rule_soundness():
    t0 = time.perf_counter()
    report = rule_soundness_selftest()
    elapsed = time.perf_counter() - t0
    total = sum(len(r) for r in report.results.values())
    ok = report.ok and elapsed < 1.0
    record(1, "rule soundness", ok, f"{total} instances, {len(report.failures)} failures, {elapsed:.2f}s (< 1s)")


def test_02_clifford_closure():
    t0 = time.perf_counter()
    g = clifford_group()
    words = [w for n in range(7) for w in itertools.product((Z(2), X(2), H), repeat=n)]
    wrong = sum(clifford_normalize(w).clifford.index != g.index_of(diagram_matrix(w)) for w in words)
    elapsed = time.perf_counter() - t0
    ok = len(g) == 24 and len(g.classes) == 24 and wrong == 0 and elapsed < 10
    record(2, "Clifford closure", ok, f"{len(g.classes)} classes, {len(words)} words, {wrong} misclassified, {elapsed:.2f}s (< 10s)")


def test_03_normal_forms_distinct():
    t0 = time.perf_counter()
    counts = enumerate_nf(8)  # raises CollisionFound on any clash
    elapsed = time.perf_counter() - t0
    total = sum(counts.values())
    ok = total == 24 + 72 * (2**8 - 1) == 18_384 and elapsed < 30
    record(3, "normal forms pairwise distinct", ok, f"{total} forms, 0 collisions, {elapsed:.2f}s (< 30s)")


def test_04_normalizer_soundness():
    rng = random.Random(4)
    t0 = time.perf_counter()
    bad = 0
    n = 100_000
    for _ in range(n):
        word = "".join(rng.choice("RT") for _ in range(rng.randint(0, 60)))
        nf = fold_word(word)
        if not projective_equal(diagram_matrix(nf_to_diagram(nf)), diagram_matrix(word_to_diagram(word))):
            bad += 1
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 120
    record(4, "normalizer soundness", ok, f"{n - bad}/{n} words sound, {elapsed:.1f}s (< 120s)")


def test_05_completeness_small_words():
    alphabet = (Z(2), X(2), H, Z(1))
    codes = {Z(2): 2, X(2): 10, H: 16, Z(1): 1}
    nf_of_key: dict = {}
    key_of_nf: dict = {}
    discrepancies = 0
    words = 0
    for n in range(9):
        for w in itertools.product(alphabet, repeat=n):
            words += 1
            key = projective_key(Mat2.from_key(product_key([codes[x] for x in w])))
            nf = normalize(w, certificate=False)[0]
            if nf_of_key.setdefault(key, nf) != nf or key_of_nf.setdefault(nf, key) != key:
                discrepancies += 1
    record(5, "completeness on words of length <= 8", discrepancies == 0, f"{words} words, {len(nf_of_key)} operators, {discrepancies} discrepancies")


def test_06_no_normal_form_is_identity():
    violations = 0
    checked = 0
    for nf in all_normal_forms(7):  # T-count <= 7 means n <= 6
        if not isinstance(nf, MA):
            continue
        checked += 1
        if is_projective_identity(diagram_matrix(nf_to_diagram(nf))):
            violations += 1
        ev = assert_not_identity(nf)
        if nf.n >= 1 and ev.final.x1 % 2 == 0:
            violations += 1
    record(6, "no MA normal form is the identity", violations == 0, f"{checked} forms with n <= 6, {violations} violations")


def test_07_adjoint_syllable_count():
    rng = random.Random(7)
    n = 10_000
    agree = 0
    for _ in range(n):
        d = random_diagram(rng, 40)
        a = normalize(d, certificate=False)[0]
        b = normalize(dagger(d), certificate=False)[0]
        agree += getattr(a, "n", -1) == getattr(b, "n", -1)
    record(7, "adjoint keeps the syllable count", agree == n, f"{agree}/{n} agree")


def _random_walk(rng: random.Random, d, steps: int):
    for _ in range(steps):
        options = list(neighbours(d, max_nodes=len(d) + 2))
        if not options:
            break
        d = apply_step(d, rng.choice(options))
    return d


def _mutate(rng: random.Random, cert: Certificate) -> Certificate:
    i = rng.randrange(len(cert.steps))
    s = cert.steps[i]
    while True:
        kind = rng.randrange(4)
        if kind == 0:
            m = RewriteStep(s.rule, s.direction, s.pos + rng.choice([-2, -1, 1, 2]), s.params)
        elif kind == 1:
            m = s.reversed()
        elif kind == 2 and s.params:
            j = rng.randrange(len(s.params))
            params = list(s.params)
            params[j] += rng.randint(1, 7)
            m = RewriteStep(s.rule, s.direction, s.pos, tuple(params))
        else:
            m = RewriteStep(rng.choice(["S", "Id", "P", "Eu", "H", "HH", "CC"]), s.direction, s.pos, s.params)
        if m != s:
            break
    steps = cert.steps[:i] + (m,) + cert.steps[i + 1 :]
    return Certificate(cert.source, cert.target, steps)


def test_08_certificate_integrity():
    rng = random.Random(8)
    n = 1000
    verified = rejected = 0
    for _ in range(n):
        d = random_diagram(rng, 16)
        e = _random_walk(rng, d, rng.randint(1, 8))
        if e == d:
            e = (H, H) + d
        equal, cert = check_equal(d, e)
        assert equal
        verified += cert.source == d and cert.target == e and bool(verify_certificate(cert))
        rejected += not verify_certificate(_mutate(rng, cert))
    ok = verified == n and rejected == n
    record(8, "certificate integrity", ok, f"{verified}/{n} verify, {rejected}/{n} mutated rejected")


def test_09_table_derivation():
    t = derive_tables()  # raises TableDerivationFailed on any ambiguity or gap
    sizes = {"CT": len(t.CT), "CV": len(t.CV), "PV": len(t.PV), "TV": len(t.TV), "TW": len(t.TW), "RW": len(t.RW)}
    expected = {"CT": 24, "CV": 48, "PV": 8, "TV": 2, "TW": 2, "RW": 3}
    detail = ", ".join(f"{k} {v}" for k, v in sizes.items()) + ", one candidate each"
    record(9, "table derivation", sizes == expected, detail)


def test_10_count_law():
    counts = enumerate_nf(8)
    expected = {0: 24, **{k: 72 * 2 ** (k - 1) for k in range(1, 9)}}
    record(10, "count law", counts == expected, " ".join(f"{k}:{v}" for k, v in counts.items()))
