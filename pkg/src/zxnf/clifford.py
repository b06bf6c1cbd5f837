"""The single-qubit Clifford group modulo global phase.

Builds the 24 projective classes by closure, a canonical Z-X-Z diagram for
each, the subgroup ``D`` of Cliffords that commute past ``T`` (up to another
Clifford), a left transversal ``W`` of ``D``, and the Pauli conjugation table.
Also provides the proof-producing reduction of any Clifford diagram to its
canonical diagram.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple

from ._backend import diagram_matrix
from .diagram import GREEN, Diagram, X, Z
from .ring import Mat2, RingScalar, projective_key
from .rules import CertBuilder, Certificate, find_derivation

PAULIS = ("X", "Y", "Z")


class InternalError(RuntimeError):
    pass


class NotClifford(ValueError):
    pass


@dataclass(frozen=True)
class CliffordClass:
    index: int
    canonical_diagram: Diagram
    canonical_matrix: Mat2

    def __str__(self) -> str:
        from .diagram import to_text

        return to_text(self.canonical_diagram) or "I"


class PauliPair(NamedTuple):
    """The operator X^a Z^b."""

    a: int
    b: int

    @property
    def index(self) -> int:
        return 2 * self.a + self.b

    @classmethod
    def from_index(cls, i: int) -> PauliPair:
        return cls(i >> 1, i & 1)


def _zxz(alpha: int, beta: int, gamma: int) -> Diagram:
    return tuple(n for n in (Z(alpha), X(beta), Z(gamma)) if n.phase)


def _pauli_matrix(p: str) -> Mat2:
    i = RingScalar.omega(2)
    z, o = RingScalar(0), RingScalar(1)
    if p == "X":
        return Mat2(z, o, o, z)
    if p == "Y":
        return Mat2(z, -i, i, z)
    return Mat2(o, z, z, -o)


class CliffordGroup:
    """Lookup tables for the 24 classes; build once via :func:`clifford_group`."""

    def __init__(self) -> None:
        gens = [diagram_matrix((Z(2),)), diagram_matrix((X(2),))]
        seen = {projective_key(Mat2.identity()): Mat2.identity()}
        frontier = [Mat2.identity()]
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    p = g @ m
                    k = projective_key(p)
                    if k not in seen:
                        seen[k] = p
                        nxt.append(p)
            frontier = nxt
        if len(seen) != 24:
            raise InternalError(f"Clifford closure has {len(seen)} classes, expected 24")
        best: dict[tuple, tuple] = {}
        for a, b, c in itertools.product((0, 2, 4, 6), repeat=3):
            d = _zxz(a, b, c)
            k = projective_key(diagram_matrix(d))
            rank = (len(d), a, b, c)
            if k not in best or rank < best[k][0]:
                best[k] = (rank, d)
        keys = sorted(seen)
        self.classes = [CliffordClass(i, best[k][1], Mat2.from_key(k)) for i, k in enumerate(keys)]
        self.by_key = {k: i for i, k in enumerate(keys)}
        # exact unitaries of the canonical diagrams
        self.unitary = [diagram_matrix(c.canonical_diagram) for c in self.classes]
        self.identity = self.index_of(Mat2.identity())
        self.mul = [[self.index_of(self.unitary[a] @ self.unitary[b]) for b in range(24)] for a in range(24)]
        self.inv = [next(b for b in range(24) if self.mul[a][b] == self.identity) for a in range(24)]

    def index_of(self, m: Mat2) -> int:
        try:
            return self.by_key[projective_key(m)]
        except KeyError:
            raise NotClifford("matrix is not a Clifford operator") from None

    def of_diagram(self, d: Diagram) -> CliffordClass:
        return self.classes[self.index_of(diagram_matrix(d))]

    def __getitem__(self, i: int) -> CliffordClass:
        return self.classes[i]

    def __len__(self) -> int:
        return 24

    @cached_property
    def conjugation(self) -> dict[tuple[int, str], tuple[int, str]]:
        """(class, P) -> (sign, Q) with C P C^dagger = sign Q."""
        paulis = {p: _pauli_matrix(p) for p in PAULIS}
        table = {}
        for c in range(24):
            u = self.unitary[c]
            for p in PAULIS:
                img = u @ paulis[p] @ u.dagger()
                for q in PAULIS:
                    for sign in (1, -1):
                        if img == paulis[q].scale(RingScalar(sign)):
                            table[c, p] = (sign, q)
                if (c, p) not in table:
                    raise InternalError(f"class {c} does not map {p} to a Pauli")
        return table

    @cached_property
    def subgroup_D(self) -> frozenset[int]:
        t = diagram_matrix((Z(1),))
        t_inv = diagram_matrix((Z(7),))
        members = set()
        for c in range(24):
            try:
                self.index_of(t_inv @ self.unitary[c] @ t)
            except NotClifford:
                continue
            members.add(c)
        if len(members) != 8:
            raise InternalError(f"|D| = {len(members)}, expected 8")
        for a, b in itertools.product(members, repeat=2):
            if self.mul[a][b] not in members:
                raise InternalError("D is not closed under multiplication")
        for d in members:
            if self.index_of(t_inv @ self.unitary[d] @ t) not in members:
                raise InternalError("D is not closed under T-conjugation")
        return frozenset(members)

    @cached_property
    def W(self) -> tuple[int, ...]:
        """Left transversal of D: identity first, then minimal-index coset reps."""
        D = self.subgroup_D
        cosets: dict[frozenset[int], int] = {}
        for c in range(24):
            coset = frozenset(self.mul[c][d] for d in D)
            cosets.setdefault(coset, c)
        if len(cosets) != 3:
            raise InternalError(f"{len(cosets)} cosets of D, expected 3")
        reps = [self.identity] + sorted(r for coset, r in cosets.items() if self.identity not in coset)
        t = diagram_matrix((Z(1),))
        keys = set()
        for w in reps:
            for c in range(24):
                keys.add(projective_key(self.unitary[w] @ t @ self.unitary[c]))
        if len(keys) != 72:
            raise InternalError("W.T.C products are not pairwise distinct")
        return tuple(reps)

    def factor_WD(self, c: int) -> tuple[int, int]:
        """(w, d) with C = W[w] . d and d in D."""
        for wi, w in enumerate(self.W):
            d = self.mul[self.inv[w]][c]
            if d in self.subgroup_D:
                return wi, d
        raise InternalError("transversal does not cover the group")

    def pauli_class(self, p: PauliPair) -> int:
        d = (Z(4),) * p.b + (X(4),) * p.a
        return self.index_of(diagram_matrix(d))

    def as_pauli(self, c: int) -> PauliPair | None:
        for i in range(4):
            p = PauliPair.from_index(i)
            if self.pauli_class(p) == c:
                return p
        return None


@lru_cache(maxsize=None)
def clifford_group() -> CliffordGroup:
    return CliffordGroup()


def enumerate_cliffords() -> list[CliffordClass]:
    return list(clifford_group().classes)


def derive_subgroup_D() -> set[CliffordClass]:
    g = clifford_group()
    return {g[i] for i in g.subgroup_D}


def derive_W_transversal() -> list[CliffordClass]:
    g = clifford_group()
    return [g[i] for i in g.W]


def pauli_conjugation(c: CliffordClass, p: str) -> tuple[int, str]:
    return clifford_group().conjugation[c.index, p]


class CliffordNormalization(NamedTuple):
    clifford: CliffordClass
    certificate: Certificate
    sizes: tuple[int, ...]  # node count at the start of each reduction round


def _is_clifford_node(n) -> bool:
    return n.kind == "H" or n.phase % 2 == 0


@lru_cache(maxsize=None)
def _finish(reduced: Diagram, target: Diagram) -> Certificate:
    return find_derivation(reduced, target, max_depth=16)


def _reduce_round(b: CertBuilder) -> bool:
    """One pass of cleanup; returns True when the diagram has <= 3 nodes."""
    while True:
        d = b.current
        zero = next((i for i, n in enumerate(d) if n.phase == 0), None)
        if zero is not None:
            b.step("Id", "fwd", zero, (d[zero].colour,))
            continue
        same = next((i for i in range(len(d) - 1) if d[i].colour == d[i + 1].colour), None)
        if same is not None:
            b.step("S", "fwd", same, (d[same].colour, d[same].phase, d[same + 1].phase))
            continue
        return len(d) <= 3


def clifford_normalize(d: Diagram) -> CliffordNormalization:
    """Reduce a Clifford diagram to the canonical diagram of its class.

    Hadamards are expanded, same-colour neighbours merged, zero phases dropped,
    pi nodes pushed into a same-colour neighbour, and alternating runs of
    +-pi/2 nodes shortened by a colour change, until at most three nodes
    remain. The remaining short diagram is matched to the canonical one by a
    cached search.
    """
    d = tuple(d)
    if not all(_is_clifford_node(n) for n in d):
        raise NotClifford("phase outside {0, 2, 4, 6}")
    g = clifford_group()
    b = CertBuilder(d)
    while True:
        i = next((i for i, n in enumerate(b.current) if n.kind == "H"), None)
        if i is None:
            break
        b.step("Eu", "fwd", i, (GREEN,))
    sizes = []
    while not _reduce_round(b):
        cur = b.current
        sizes.append(len(cur))
        pi = next((i for i, n in enumerate(cur) if n.phase == 4), None)
        if pi is not None:
            node = cur[pi]
            if pi + 2 < len(cur):
                b.step("P", "fwd", pi, (node.colour, cur[pi + 1].phase))
                after = b.current
                b.step("S", "fwd", pi + 1, (node.colour, 4, after[pi + 2].phase))
            else:
                b.step("P", "bwd", pi - 1, (node.colour, -cur[pi - 1].phase % 8))
                after = b.current
                b.step("S", "fwd", pi - 2, (node.colour, after[pi - 2].phase, 4))
        else:
            c = cur[1].colour
            b.step("CC", "fwd", 1, (c, cur[1].phase, cur[2].phase, cur[3].phase))
            after = b.current
            b.step("S", "fwd", 0, (after[0].colour, after[0].phase, after[1].phase))
        if len(b.current) >= sizes[-1]:
            raise InternalError("reduction round did not shrink the diagram")
    sizes.append(len(b.current))
    cls = g.of_diagram(b.current)
    b.extend(_finish(b.current, cls.canonical_diagram))
    return CliffordNormalization(cls, b.build(), tuple(sizes))


def clifford_certificate(d: Diagram) -> Certificate:
    return clifford_normalize(d).certificate


def is_clifford_diagram(d: Diagram) -> bool:
    return all(_is_clifford_node(n) for n in d)


__all__ = [
    "CliffordClass",
    "CliffordGroup",
    "CliffordNormalization",
    "InternalError",
    "NotClifford",
    "PauliPair",
    "clifford_group",
    "clifford_normalize",
    "derive_W_transversal",
    "derive_subgroup_D",
    "enumerate_cliffords",
    "pauli_conjugation",
]
