"""Rewrite certificates for normalization.

A certificate takes the input diagram to the diagram of its normal form.
It is built in two stages: every node is first expanded into the generator
letters ``R = X(2)`` and ``T = Z(1)``, then the fold that computes the normal
form is replayed letter by letter on diagrams.

The replay works on the "marker" view of a diagram: its ``Z(1)`` nodes cut
it into Clifford segments. Two diagrams with the same markers are aligned
from the top down: each source segment is rewritten into ``q`` followed by
the target segment, for some ``q`` in the subgroup that passes through
``T``, and ``q`` is then moved below the marker by a cached local proof.
"""

from __future__ import annotations

from functools import lru_cache

from ._backend import diagram_matrix
from .clifford import InternalError, clifford_certificate, clifford_group
from .diagram import GREEN, H, RED, Diagram, Node, X, Z, compile_to_generators, word_to_diagram
from .manf import CliffordNF, NormalForm, Tables, nf_to_diagram, push_R, push_T, tables
from .rules import CertBuilder, Certificate, NotFound, find_derivation

_T = Z(1)


@lru_cache(maxsize=4096)
def _to_canonical(seg: Diagram) -> Certificate:
    return clifford_certificate(seg)


def _clifford_rewrite(src: Diagram, dst: Diagram) -> Certificate:
    """Certificate between two Clifford diagrams of the same class."""
    if src == dst:
        return Certificate(src, dst)
    return _to_canonical(src).then(_to_canonical(dst).reversed())


@lru_cache(maxsize=None)
def _through_T(q: int) -> tuple[Diagram, Certificate]:
    """Proof of ``[Z(1)] + canon(q) -> canon(q') + [Z(1)]`` for q in D."""
    g = clifford_group()
    t = diagram_matrix((_T,))
    t_inv = diagram_matrix((Z(7),))
    e = g.index_of(t_inv @ g.unitary[q] @ t)
    lhs = (_T,) + g[q].canonical_diagram
    rhs = g[e].canonical_diagram + (_T,)
    return g[e].canonical_diagram, find_derivation(lhs, rhs, max_depth=16)


def _split_node(b: CertBuilder, pos: int, node: Node) -> int:
    """Expand the node at ``pos`` into R/T letters; returns the letter count."""
    k = node.phase
    if node.kind == "H":
        b.step("Eu", "fwd", pos, (GREEN,))
        n = _split_node(b, pos + 2, Z(2))
        n += _split_node(b, pos + 1, X(2))
        return n + _split_node(b, pos, Z(2))
    if node.kind == "X" and k % 2:
        b.step("H", "bwd", pos, (GREEN, k))
        n = _split_node(b, pos + 2, H)
        n += _split_node(b, pos + 1, Z(k))
        return n + _split_node(b, pos, H)
    c = GREEN if node.kind == "Z" else RED
    unit = 1 if c == GREEN else 2
    if k == 0:
        b.step("Id", "fwd", pos, (c,))
        return 0
    count = 1
    while k > unit:
        b.step("S", "bwd", pos, (c, unit, k - unit))
        pos += 1
        k -= unit
        count += 1
    return count


def compile_certificate(d: Diagram) -> Certificate:
    """``d`` to the R/T letter diagram of ``compile_to_generators(d)``."""
    b = CertBuilder(tuple(d))
    pos = 0
    for node in d:
        pos += _split_node(b, pos, node)
    expected = word_to_diagram(compile_to_generators(d))
    if b.current != expected:
        raise InternalError("letter expansion does not match the compiled word")
    return b.build()


def _split_markers(b: CertBuilder) -> None:
    """Rewrite every ``Z(3)`` as ``Z(1); Z(2)``."""
    while True:
        i = next((i for i, n in enumerate(b.current) if n == Z(3)), None)
        if i is None:
            return
        b.step("S", "bwd", i, (GREEN, 1, 2))


def _merge_markers(b: CertBuilder, target: Diagram) -> None:
    """Undo :func:`_split_markers` where ``target`` has a ``Z(3)``."""
    i = 0
    while i < len(target):
        if target[i] == Z(3) and b.current[i : i + 2] == (Z(1), Z(2)):
            b.step("S", "fwd", i, (GREEN, 1, 2))
        i += 1


def _marker_split(d: Diagram) -> Diagram:
    out: list[Node] = []
    for n in d:
        out += [Z(1), Z(2)] if n == Z(3) else [n]
    return tuple(out)


def _segments(d: Diagram) -> list[tuple[int, int]]:
    """(start, end) of each Clifford segment, bottom first."""
    marks = [i for i, n in enumerate(d) if n == _T]
    bounds = [-1] + marks + [len(d)]
    return [(bounds[j] + 1, bounds[j + 1]) for j in range(len(bounds) - 1)]


def _align(b: CertBuilder, target: Diagram) -> None:
    """Rewrite ``b.current`` into ``target``; both in marker form, equal as operators."""
    g = clifford_group()
    if sum(n == _T for n in b.current) != sum(n == _T for n in target):
        raise InternalError("marker counts differ")
    tsegs = _segments(target)
    for level in range(len(tsegs) - 1, -1, -1):
        s0, s1 = _segments(b.current)[level]
        t0, t1 = tsegs[level]
        src, dst = b.current[s0:s1], target[t0:t1]
        cs, ct = g.of_diagram(src).index, g.of_diagram(dst).index
        q = g.mul[g.inv[ct]][cs]
        if level == 0:
            if q != g.identity:
                raise InternalError("bottom segments disagree")
            b.extend(_clifford_rewrite(src, dst), s0)
            break
        if q not in g.subgroup_D:
            raise InternalError(f"segment quotient {q} does not pass through T")
        b.extend(_clifford_rewrite(src, g[q].canonical_diagram + dst), s0)
        _, proof = _through_T(q)
        b.extend(proof, s0 - 1)


def _letter_step(nf: NormalForm, letter: str, new: NormalForm) -> Certificate:
    """Certificate ``nf_to_diagram(nf) + letter -> nf_to_diagram(new)``."""
    src = nf_to_diagram(nf) + ((X(2),) if letter == "R" else (_T,))
    dst = nf_to_diagram(new)
    b = CertBuilder(src)
    if letter == "R" and isinstance(nf, CliffordNF):
        b.extend(_clifford_rewrite(src, dst))
        return b.build()
    if letter == "T" and isinstance(nf, CliffordNF):
        return b.build()  # already MA(0, (), c)
    if letter == "T" and nf.w == 0:
        # the new T sits on the top odd Z node; merge the two
        top = len(src) - 2
        b.step("S", "fwd", top, (GREEN, src[top].phase, 1))
        if isinstance(new, CliffordNF):
            b.extend(_clifford_rewrite(b.current, dst))
            return b.build()
    _split_markers(b)
    _align(b, _marker_split(dst))
    _merge_markers(b, dst)
    if b.current != dst:
        raise InternalError("letter step did not reach the normal form")
    return b.build()


@lru_cache(maxsize=65536)
def _cached_letter_step(nf: NormalForm, letter: str) -> Certificate:
    step = push_R if letter == "R" else push_T
    return _letter_step(nf, letter, step(nf))


def normalization_certificate(d: Diagram, nf: NormalForm | None = None, t: Tables | None = None) -> Certificate:
    """Certificate from ``d`` to ``nf_to_diagram`` of its normal form.

    If a local proof search gives up, the certificate built so far is
    returned with ``partial=True``.
    """
    t = t or tables()
    d = tuple(d)
    compiled = compile_certificate(d)
    word = compile_to_generators(d)
    b = CertBuilder(d)
    b.extend(compiled)
    state: NormalForm = CliffordNF(clifford_group().identity)
    for letter in word:
        try:
            cert = _cached_letter_step(state, letter)
        except NotFound:
            out = b.build()
            return Certificate(out.source, out.target, out.steps, True)
        # letters already consumed have collapsed into the prefix
        b.extend(cert, 0)
        state = push_R(state, t) if letter == "R" else push_T(state, t)
    if nf is not None and state != nf:
        raise InternalError("replayed fold disagrees with the kernel")
    return b.build()


__all__ = ["compile_certificate", "normalization_certificate"]
