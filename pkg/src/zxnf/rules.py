"""Rewrite rules for single-qubit ZX line diagrams, with certificates.

Primitive rules (``c`` is a colour: 0 green, 1 red; ``c'`` the other one;
patterns list nodes bottom to top):

=====  ===============  ============================  ==========================
rule   params           lhs                           rhs
=====  ===============  ============================  ==========================
S      (c, j, k)        c(j), c(k)                    c(j+k)
Id     (c,)             c(0)                          (empty)
P      (c, k)           c(4), c'(k)                   c'(-k), c(4)
Eu     (c,)             H                             c(2), c'(2), c(2)
H      (c, k)           H, c(k), H                    c'(k)
=====  ===============  ============================  ==========================

Derived rules, each backed by a stored derivation from primitives:

=====  ===============  ============================  ==========================
HH     ()               H, H                          (empty)
CC     (c, a, b, d)     c(a), c'(b), c(d)             c'(d), c(b), c'(a)
=====  ===============  ============================  ==========================

with ``a, b, d`` in ``{2, 6}`` for CC. Every rule holds up to a global scalar.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from ._backend import diagram_matrix
from .diagram import H, Diagram, parse, spider, to_text
from .ring import projective_equal

PRIMITIVE = ("S", "Id", "P", "Eu", "H")
DERIVED = ("HH", "CC")
RULE_IDS = PRIMITIVE + DERIVED
PI_HALVES = (2, 6)


class InvalidStep(ValueError):
    pass


class PatternMismatch(InvalidStep):
    def __init__(self, position: int, expected: Diagram, found: Diagram) -> None:
        super().__init__(
            f"at position {position}: expected [{to_text(expected)}], found [{to_text(found)}]"
        )
        self.position = position
        self.expected = expected
        self.found = found


class NotFound(LookupError):
    def __init__(self, max_depth: int) -> None:
        super().__init__(f"no derivation within {max_depth} steps")
        self.max_depth = max_depth


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    direction: str  # "fwd" or "bwd"
    pos: int
    params: tuple[int, ...] = ()

    def reversed(self) -> RewriteStep:
        return RewriteStep(self.rule, "bwd" if self.direction == "fwd" else "fwd", self.pos, self.params)

    def shifted(self, offset: int) -> RewriteStep:
        return RewriteStep(self.rule, self.direction, self.pos + offset, self.params)

    def to_json(self) -> dict:
        return {"rule": self.rule, "dir": self.direction, "pos": self.pos, "params": list(self.params)}

    @classmethod
    def from_json(cls, obj: dict) -> RewriteStep:
        return cls(obj["rule"], obj["dir"], int(obj["pos"]), tuple(int(p) for p in obj.get("params", ())))


@dataclass(frozen=True)
class Certificate:
    source: Diagram
    target: Diagram
    steps: tuple[RewriteStep, ...] = ()
    partial: bool = False

    def __len__(self) -> int:
        return len(self.steps)

    def reversed(self) -> Certificate:
        return Certificate(self.target, self.source, tuple(s.reversed() for s in reversed(self.steps)), self.partial)

    def then(self, other: Certificate) -> Certificate:
        if other.source != self.target:
            raise ValueError("certificates do not compose")
        return Certificate(self.source, other.target, self.steps + other.steps, self.partial or other.partial)

    def embedded(self, prefix: Diagram, suffix: Diagram = ()) -> Certificate:
        """The same derivation applied inside ``prefix + . + suffix``."""
        off = len(prefix)
        return Certificate(
            prefix + self.source + suffix,
            prefix + self.target + suffix,
            tuple(s.shifted(off) for s in self.steps),
            self.partial,
        )

    def dumps(self) -> str:
        lines = [json.dumps({"source": to_text(self.source), "target": to_text(self.target)})]
        lines += [json.dumps(s.to_json()) for s in self.steps]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> Certificate:
        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
        if not rows:
            raise ValueError("empty certificate")
        head = rows[0]
        return cls(parse(head["source"]), parse(head["target"]), tuple(RewriteStep.from_json(r) for r in rows[1:]))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def load(cls, path: str | Path) -> Certificate:
        return cls.loads(Path(path).read_text())


class CertBuilder:
    """Accumulates steps while tracking the current diagram."""

    def __init__(self, start: Diagram) -> None:
        self.source = start
        self.current = start
        self.steps: list[RewriteStep] = []
        self.partial = False

    def step(self, rule: str, direction: str, pos: int, params: Iterable[int] = ()) -> None:
        s = RewriteStep(rule, direction, pos, tuple(params))
        self.current = apply_step(self.current, s)
        self.steps.append(s)

    def extend(self, cert: Certificate, offset: int = 0) -> None:
        n = len(cert.source)
        if self.current[offset : offset + n] != cert.source:
            raise PatternMismatch(offset, cert.source, self.current[offset : offset + n])
        self.current = self.current[:offset] + cert.target + self.current[offset + n :]
        self.steps.extend(s.shifted(offset) for s in cert.steps)
        self.partial = self.partial or cert.partial

    def build(self) -> Certificate:
        return Certificate(self.source, self.current, tuple(self.steps), self.partial)


def _cc_rhs(c: int, a: int, b: int, d: int) -> Diagram:
    return (spider(1 - c, d), spider(c, b), spider(1 - c, a))


def rule_instance(rule: str, params: tuple[int, ...]) -> tuple[Diagram, Diagram]:
    """Concrete (lhs, rhs) of a rule schema."""
    try:
        if rule == "S":
            c, j, k = params
            return (spider(c, j), spider(c, k)), (spider(c, j + k),)
        if rule == "Id":
            (c,) = params
            return (spider(c, 0),), ()
        if rule == "P":
            c, k = params
            return (spider(c, 4), spider(1 - c, k)), (spider(1 - c, -k), spider(c, 4))
        if rule == "Eu":
            (c,) = params
            return (H,), (spider(c, 2), spider(1 - c, 2), spider(c, 2))
        if rule == "H":
            c, k = params
            return (H, spider(c, k), H), (spider(1 - c, k),)
        if rule == "HH":
            if params:
                raise ValueError
            return (H, H), ()
        if rule == "CC":
            c, a, b, d = params
            if a % 8 not in PI_HALVES or b % 8 not in PI_HALVES or d % 8 not in PI_HALVES:
                raise ValueError
            return (spider(c, a), spider(1 - c, b), spider(c, d)), _cc_rhs(c, a % 8, b % 8, d % 8)
    except (TypeError, ValueError):
        raise InvalidStep(f"bad parameters {params} for rule {rule}") from None
    raise InvalidStep(f"unknown rule {rule!r}")


def _check_colour(params: tuple[int, ...]) -> None:
    if params and params[0] not in (0, 1):
        raise InvalidStep(f"colour must be 0 or 1, got {params[0]}")


def apply_step(d: Diagram, s: RewriteStep) -> Diagram:
    """Replace the matched segment at ``s.pos``; raises PatternMismatch."""
    if s.direction not in ("fwd", "bwd"):
        raise InvalidStep(f"bad direction {s.direction!r}")
    if s.rule != "HH":
        _check_colour(s.params)
    lhs, rhs = rule_instance(s.rule, s.params)
    pat, rep = (lhs, rhs) if s.direction == "fwd" else (rhs, lhs)
    if s.pos < 0 or s.pos + len(pat) > len(d):
        raise PatternMismatch(s.pos, pat, d[max(s.pos, 0) : s.pos + len(pat)])
    found = d[s.pos : s.pos + len(pat)]
    if found != pat:
        raise PatternMismatch(s.pos, pat, found)
    return d[: s.pos] + rep + d[s.pos + len(pat) :]


@dataclass
class Verdict:
    ok: bool
    failed_step: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def replay(c: Certificate) -> Diagram:
    d = c.source
    for s in c.steps:
        d = apply_step(d, s)
    return d


def verify_certificate(c: Certificate) -> Verdict:
    """Replay every step from ``c.source``; must land exactly on ``c.target``."""
    d = c.source
    for i, s in enumerate(c.steps):
        try:
            d = apply_step(d, s)
        except InvalidStep as e:
            return Verdict(False, i, str(e))
    if d != c.target:
        return Verdict(False, len(c.steps), "replay does not end at the target")
    # redundant semantic check
    if not projective_equal(diagram_matrix(c.source), diagram_matrix(c.target)):
        return Verdict(False, len(c.steps), "endpoint matrices differ")
    return Verdict(True)


@dataclass(frozen=True)
class RuleInstance:
    rule: str
    params: tuple[int, ...]
    lhs: Diagram
    rhs: Diagram
    status: str  # "primitive" or "derived"


def rule_instances() -> list[RuleInstance]:
    out = []

    def add(rule: str, params: tuple[int, ...]) -> None:
        lhs, rhs = rule_instance(rule, params)
        out.append(RuleInstance(rule, params, lhs, rhs, "derived" if rule in DERIVED else "primitive"))

    for c in (0, 1):
        for j, k in itertools.product(range(8), repeat=2):
            add("S", (c, j, k))
        add("Id", (c,))
        for k in range(8):
            add("P", (c, k))
        add("Eu", (c,))
        for k in range(8):
            add("H", (c, k))
    add("HH", ())
    for c in (0, 1):
        for a, b, d in itertools.product(PI_HALVES, repeat=3):
            add("CC", (c, a, b, d))
    return out


def neighbours(d: Diagram, rules: Iterable[str] = RULE_IDS, max_nodes: int | None = None) -> Iterator[RewriteStep]:
    """All steps applicable to ``d`` (CC only forward: its backward form duplicates it)."""
    rules = set(rules)
    n = len(d)
    cap = max_nodes if max_nodes is not None else n + 4
    for i, node in enumerate(d):
        col = node.colour
        nxt = d[i + 1] if i + 1 < n else None
        if col is not None:
            if "S" in rules:
                if nxt is not None and nxt.colour == col:
                    yield RewriteStep("S", "fwd", i, (col, node.phase, nxt.phase))
                if n + 1 <= cap:
                    for j in range(1, 8):
                        if j != node.phase:
                            yield RewriteStep("S", "bwd", i, (col, j, node.phase - j))
            if "Id" in rules and node.phase == 0:
                yield RewriteStep("Id", "fwd", i, (col,))
            if "P" in rules and nxt is not None and nxt.colour == 1 - col:
                if node.phase == 4:
                    yield RewriteStep("P", "fwd", i, (col, nxt.phase))
                if nxt.phase == 4:
                    yield RewriteStep("P", "bwd", i, (1 - col, -node.phase % 8))
            if "H" in rules and n + 2 <= cap:
                yield RewriteStep("H", "bwd", i, (1 - col, node.phase))
            if (
                "CC" in rules
                and node.phase in PI_HALVES
                and i + 2 < n
                and nxt.colour == 1 - col
                and nxt.phase in PI_HALVES
                and d[i + 2].colour == col
                and d[i + 2].phase in PI_HALVES
            ):
                yield RewriteStep("CC", "fwd", i, (col, node.phase, nxt.phase, d[i + 2].phase))
            if (
                "Eu" in rules
                and node.phase == 2
                and i + 2 < n
                and nxt == spider(1 - col, 2)
                and d[i + 2] == node
            ):
                yield RewriteStep("Eu", "bwd", i, (col,))
        else:
            if "Eu" in rules and n + 2 <= cap:
                yield RewriteStep("Eu", "fwd", i, (0,))
                yield RewriteStep("Eu", "fwd", i, (1,))
            if i + 2 < n and d[i + 2] == H and nxt.colour is not None and "H" in rules:
                yield RewriteStep("H", "fwd", i, (nxt.colour, nxt.phase))
            if "HH" in rules and nxt == H:
                yield RewriteStep("HH", "fwd", i, ())
    for i in range(n + 1):
        if "Id" in rules and n + 1 <= cap:
            yield RewriteStep("Id", "bwd", i, (0,))
            yield RewriteStep("Id", "bwd", i, (1,))
        if "HH" in rules and n + 2 <= cap:
            yield RewriteStep("HH", "bwd", i, ())


def find_derivation(
    lhs: Diagram,
    rhs: Diagram,
    max_depth: int = 16,
    rules: Iterable[str] = RULE_IDS,
    max_nodes: int | None = None,
    max_states: int = 400_000,
) -> Certificate:
    """Bidirectional breadth-first search for a rewrite sequence ``lhs -> rhs``.

    ``max_nodes`` caps the size of intermediate diagrams (default: two more
    than the larger endpoint). Raises :class:`NotFound` on exhaustion, which
    says nothing about whether the diagrams are equal.
    """
    lhs, rhs = tuple(lhs), tuple(rhs)
    if lhs == rhs:
        return Certificate(lhs, rhs)
    rules = tuple(rules)
    cap = max_nodes if max_nodes is not None else max(len(lhs), len(rhs)) + 2
    # parent maps: diagram -> (previous diagram, step from previous)
    seen = [{lhs: None}, {rhs: None}]
    frontier = [[lhs], [rhs]]
    depth = [0, 0]
    meet = None
    while meet is None and depth[0] + depth[1] < max_depth:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        if not frontier[side]:
            break
        mine, other = seen[side], seen[1 - side]
        nxt = []
        for d in frontier[side]:
            for s in neighbours(d, rules, cap):
                e = apply_step(d, s)
                if e in mine:
                    continue
                mine[e] = (d, s)
                if e in other:
                    meet = e
                    break
                nxt.append(e)
            if meet is not None:
                break
        frontier[side] = nxt
        depth[side] += 1
        if len(seen[0]) + len(seen[1]) > max_states:
            break
    if meet is None:
        raise NotFound(max_depth)

    def path(table: dict, end: Diagram) -> list[RewriteStep]:
        out = []
        while table[end] is not None:
            prev, s = table[end]
            out.append(s)
            end = prev
        return out[::-1]

    fwd = path(seen[0], meet)
    back = [s.reversed() for s in reversed(path(seen[1], meet))]
    return Certificate(lhs, rhs, tuple(fwd + back))


@lru_cache(maxsize=None)
def derived_rule_proof(rule: str, params: tuple[int, ...]) -> Certificate:
    """Derivation of a derived rule instance from primitive rules only."""
    if rule == "HH":
        b = CertBuilder((H, H))
        b.step("Id", "bwd", 1, (0,))
        b.step("H", "fwd", 0, (0, 0))
        b.step("Id", "fwd", 0, (1,))
        return b.build()
    if rule == "CC":
        lhs, rhs = rule_instance(rule, params)
        return find_derivation(lhs, rhs, max_depth=12, rules=PRIMITIVE, max_nodes=5)
    raise ValueError(f"{rule} is not a derived rule")


@dataclass
class SelftestReport:
    results: dict[str, list[bool]] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> list[str]:
        return [
            f"{rule}: {sum(r)}/{len(r)} {'pass' if all(r) else 'FAIL'}" for rule, r in self.results.items()
        ]


def rule_soundness_selftest(check_derivations: bool = True) -> SelftestReport:
    report = SelftestReport()
    for inst in rule_instances():
        ok = projective_equal(diagram_matrix(inst.lhs), diagram_matrix(inst.rhs))
        if ok and check_derivations and inst.status == "derived":
            proof = derived_rule_proof(inst.rule, inst.params)
            ok = (
                proof.source == inst.lhs
                and proof.target == inst.rhs
                and all(s.rule in PRIMITIVE for s in proof.steps)
                and bool(verify_certificate(proof))
            )
        report.results.setdefault(inst.rule, []).append(ok)
        if not ok:
            report.failures.append(f"{inst.rule}{inst.params}")
    return report


def expand_derived(c: Certificate) -> Certificate:
    """Replace every derived-rule step by its primitive derivation."""
    b = CertBuilder(c.source)
    for s in c.steps:
        if s.rule in DERIVED:
            proof = derived_rule_proof(s.rule, s.params)
            b.extend(proof if s.direction == "fwd" else proof.reversed(), s.pos)
        else:
            b.step(s.rule, s.direction, s.pos, s.params)
    return b.build()


