"""Normal forms ``W . V_n ... V_1 . T . C`` for Clifford+T line diagrams.

``W`` ranges over a three-element transversal of the Cliffords that pass
through ``T``, each syllable ``V`` is ``T R`` or ``T S R`` (``R`` the red pi/2
node), and ``C`` is any Clifford. Operators with no ``T`` at all are kept as
bare Clifford classes.

Normalization is a left fold of the letters ``R`` and ``T`` over finite
transition tables; every table entry is found by brute force over its
candidate set and confirmed with the exact matrix oracle.
"""

from __future__ import annotations

import itertools
from array import array
from collections import Counter
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property, lru_cache

from . import _backend, _fallback
from ._backend import diagram_matrix
from .clifford import CliffordGroup, PauliPair, clifford_group
from .diagram import Diagram, X, Z, compile_to_generators, parse, to_text
from .ring import Mat2, projective_equal, projective_key


class VKind(IntEnum):
    V1 = 0  # T R
    V2 = 1  # T S R

    @property
    def diagram(self) -> Diagram:
        return (X(2), Z(1)) if self is VKind.V1 else (X(2), Z(3))


@dataclass(frozen=True)
class CliffordNF:
    c: int  # Clifford class index

    @property
    def t_count(self) -> int:
        return 0


@dataclass(frozen=True)
class MA:
    w: int  # index into the transversal
    syllables: tuple[VKind, ...]  # V_1 (bottom) first
    u: int  # Clifford class C in the bottom factor T . C

    @property
    def n(self) -> int:
        return len(self.syllables)

    @property
    def t_count(self) -> int:
        return len(self.syllables) + 1


NormalForm = CliffordNF | MA


class TableDerivationFailed(RuntimeError):
    def __init__(self, table: str, entry: object, found: int) -> None:
        super().__init__(f"table {table}, entry {entry}: {found} candidates (expected exactly 1)")
        self.table = table
        self.entry = entry


class SoundnessViolation(AssertionError):
    pass


class CollisionFound(AssertionError):
    def __init__(self, nf1: NormalForm, nf2: NormalForm) -> None:
        super().__init__(f"normal forms {render(nf1)} and {render(nf2)} denote the same operator")
        self.nf1 = nf1
        self.nf2 = nf2


_T = (Z(1),)
_R = (X(2),)
# tiny equal pairs get a short direct proof instead of one through normal forms
_DIRECT_SEARCH_NODES = 4


@dataclass(frozen=True)
class Tables:
    """Transition tables; ``w`` indexes the transversal, ``p`` a PauliPair index.

    RW[w] = class of R.W
    CT[c] = (w, c2) with C.T = W.T.C2
    CV[c, v] = (w, v2, p) with C.V = W.V2.P
    PV[p, v] = (v2, p2) with P.V = V2.P2
    TV[v] = class of T.V
    TW[w] = (v, d) with T.W = V.D  (w != 0)
    """

    RW: tuple[int, ...]
    CT: tuple[tuple[int, int], ...]
    CV: dict[tuple[int, int], tuple[int, int, int]]
    PV: dict[tuple[int, int], tuple[int, int]]
    TV: tuple[int, ...]
    TW: dict[int, tuple[int, int]]
    candidates: dict[str, int]  # total number of candidates examined per table

    @cached_property
    def packed(self) -> array:
        """Flat int table consumed by the fold kernels."""
        g = clifford_group()
        f = _fallback
        tab = [-1] * f.TABLE_SIZE
        for a in range(24):
            for b in range(24):
                tab[f.MUL + a * 24 + b] = g.mul[a][b]
        for w in range(3):
            tab[f.RW + w] = self.RW[w]
        for c in range(24):
            tab[f.CTW + c], tab[f.CTC + c] = self.CT[c]
            for v in range(2):
                e = c * 2 + v
                tab[f.CVW + e], tab[f.CVV + e], tab[f.CVP + e] = self.CV[c, v]
        for p in range(4):
            for v in range(2):
                tab[f.PVV + p * 2 + v], tab[f.PVP + p * 2 + v] = self.PV[p, v]
        for v in range(2):
            tab[f.TV + v] = self.TV[v]
        for w, (v, d) in self.TW.items():
            tab[f.TWV + w], tab[f.TWC + w] = v, d
        for p in range(4):
            tab[f.PCLS + p] = g.pauli_class(PauliPair.from_index(p))
        tab[f.RCLS] = g.index_of(diagram_matrix(_R))
        tab[f.SCLS] = g.index_of(diagram_matrix((Z(2),)))
        tab[f.ICLS] = g.identity
        return array("i", tab)


def _unique(table: str, entry: object, target: Mat2, candidates: dict) -> object:
    """The single candidate whose matrix equals ``target`` projectively."""
    key = projective_key(target)
    hits = [c for c, m in candidates.items() if projective_key(m) == key]
    if len(hits) != 1:
        raise TableDerivationFailed(table, entry, len(hits))
    if not projective_equal(target, candidates[hits[0]]):
        raise TableDerivationFailed(table, entry, 0)
    return hits[0]


def derive_tables(g: CliffordGroup | None = None) -> Tables:
    g = g or clifford_group()
    U = g.unitary
    W = [U[w] for w in g.W]
    T = diagram_matrix(_T)
    R = diagram_matrix(_R)
    V = [diagram_matrix(k.diagram) for k in VKind]
    P = [U[g.pauli_class(PauliPair.from_index(i))] for i in range(4)]
    classes = {c: U[c] for c in range(24)}
    counts: Counter[str] = Counter()

    RW = tuple(_unique("RW", w, R @ W[w], classes) for w in range(3))
    counts["RW"] = 3 * 24

    wtc = {(w, c): W[w] @ T @ U[c] for w in range(3) for c in range(24)}
    CT = tuple(_unique("CT", c, U[c] @ T, wtc) for c in range(24))
    counts["CT"] = 24 * len(wtc)

    wvp = {(w, v, p): W[w] @ V[v] @ P[p] for w in range(3) for v in range(2) for p in range(4)}
    CV = {(c, v): _unique("CV", (c, v), U[c] @ V[v], wvp) for c in range(24) for v in range(2)}
    counts["CV"] = 48 * len(wvp)

    vp = {(v, p): V[v] @ P[p] for v in range(2) for p in range(4)}
    PV = {(p, v): _unique("PV", (p, v), P[p] @ V[v], vp) for p in range(4) for v in range(2)}
    counts["PV"] = 8 * len(vp)

    TV = tuple(_unique("TV", v, T @ V[v], classes) for v in range(2))
    counts["TV"] = 2 * 24

    vd = {(v, d): V[v] @ U[d] for v in range(2) for d in sorted(g.subgroup_D)}
    TW = {w: _unique("TW", w, T @ W[w], vd) for w in (1, 2)}
    counts["TW"] = 2 * len(vd)
    # Paulis and D-elements must come out of a syllable with trivial W
    for d in g.subgroup_D:
        if CT[d][0] != 0 or any(CV[d, v][0] != 0 for v in range(2)):
            raise TableDerivationFailed("CV", d, 0)
    return Tables(RW, CT, CV, PV, TV, TW, dict(counts))


@lru_cache(maxsize=None)
def tables() -> Tables:
    from .cache import load_or_derive_tables

    return load_or_derive_tables()


# -- single-letter pushes ------------------------------------------------------


def _clifford_times(t: Tables, c: int, syl: list[int], u: int) -> tuple[int, int]:
    g = clifford_group()
    if not syl:
        w, c2 = t.CT[c]
        return w, g.mul[c2][u]
    w, syl[-1], p = t.CV[c, syl[-1]]
    for i in range(len(syl) - 2, -1, -1):
        syl[i], p = t.PV[p, syl[i]]
    _, c2 = t.CT[g.pauli_class(PauliPair.from_index(p))]
    return w, g.mul[c2][u]


def push_R(s: NormalForm, t: Tables | None = None) -> NormalForm:
    """Normal form of ``R . s``."""
    t = t or tables()
    g = clifford_group()
    if isinstance(s, CliffordNF):
        return CliffordNF(g.mul[t.packed[_fallback.RCLS]][s.c])
    syl = [int(v) for v in s.syllables]
    w, u = _clifford_times(t, t.RW[s.w], syl, s.u)
    return MA(w, tuple(VKind(v) for v in syl), u)


def push_T(s: NormalForm, t: Tables | None = None) -> NormalForm:
    """Normal form of ``T . s``."""
    t = t or tables()
    g = clifford_group()
    if isinstance(s, CliffordNF):
        return MA(0, (), s.c)
    syl = [int(v) for v in s.syllables]
    if s.w != 0:
        v, d = t.TW[s.w]
        _, u = _clifford_times(t, d, syl, s.u)
        return MA(0, tuple(VKind(x) for x in syl) + (VKind(v),), u)
    if not syl:
        return CliffordNF(g.mul[t.packed[_fallback.SCLS]][s.u])
    top = syl.pop()
    w, u = _clifford_times(t, t.TV[top], syl, s.u)
    return MA(w, tuple(VKind(x) for x in syl), u)


def fold_word(word: str, t: Tables | None = None) -> NormalForm:
    """Normal form of a generator word via the selected kernel."""
    t = t or tables()
    ma, w, syl, u = _backend.fold(word.encode("ascii"), t.packed)
    if not ma:
        return CliffordNF(u)
    return MA(w, tuple(VKind(v) for v in syl), u)


# -- diagrams ------------------------------------------------------------------


def nf_to_diagram(nf: NormalForm) -> Diagram:
    g = clifford_group()
    if isinstance(nf, CliffordNF):
        return g[nf.c].canonical_diagram
    out = g[nf.u].canonical_diagram + _T
    for v in nf.syllables:
        out += v.diagram
    return out + g[g.W[nf.w]].canonical_diagram


def render(nf: NormalForm) -> str:
    g = clifford_group()
    if isinstance(nf, CliffordNF):
        return f"Clifford{{{to_text(g[nf.c].canonical_diagram)}}}"
    vs = ",".join(str(int(v) + 1) for v in nf.syllables)
    return f"NF{{W={nf.w}, V=[{vs}], U={to_text(g[nf.u].canonical_diagram)}}}"


def normalize(d: Diagram | str, certificate: bool = True):
    """Return ``(normal_form, certificate)``; the certificate is None if not requested."""
    if isinstance(d, str):
        d = parse(d)
    nf = fold_word(compile_to_generators(d))
    if not certificate:
        return nf, None
    from .certify import normalization_certificate

    return nf, normalization_certificate(d, nf)


def check_equal(d1: Diagram | str, d2: Diagram | str, certificate: bool = True):
    """Decide projective equality by comparing normal forms.

    Returns ``(equal, certificate)``; the certificate rewrites ``d1`` into
    ``d2`` and is None when the diagrams differ.
    """
    d1 = parse(d1) if isinstance(d1, str) else tuple(d1)
    d2 = parse(d2) if isinstance(d2, str) else tuple(d2)
    nf1, c1 = normalize(d1, certificate)
    nf2, c2 = normalize(d2, certificate)
    if nf1 != nf2:
        if projective_equal(diagram_matrix(d1), diagram_matrix(d2)):
            raise SoundnessViolation(f"{render(nf1)} != {render(nf2)} but the matrices agree")
        return False, None
    if not certificate:
        return True, None
    if len(d1) + len(d2) <= _DIRECT_SEARCH_NODES:
        from .rules import NotFound, find_derivation

        try:
            return True, find_derivation(d1, d2, max_depth=4, max_states=20_000)
        except NotFound:
            pass
    return True, c1.then(c2.reversed())


def all_normal_forms(tcount_max: int):
    """Every normal form with at most ``tcount_max`` T nodes, Cliffords first."""
    for c in range(24):
        yield CliffordNF(c)
    for tc in range(1, tcount_max + 1):
        for syl in itertools.product(VKind, repeat=tc - 1):
            for w in range(3):
                for u in range(24):
                    yield MA(w, syl, u)


def enumerate_nf(tcount_max: int = 8, bound: int = 8) -> dict[int, int]:
    """Count normal forms per T-count, asserting pairwise projective distinctness."""
    if tcount_max > bound:
        raise ValueError(f"tcount_max {tcount_max} exceeds the configured bound {bound}")
    g = clifford_group()
    seen: dict[tuple[int, ...], NormalForm] = {}
    counts: Counter[int] = Counter()

    def record(nf: NormalForm, key: tuple[int, ...]) -> None:
        if key in seen:
            raise CollisionFound(seen[key], nf)
        seen[key] = nf
        counts[nf.t_count] += 1

    for c in range(24):
        record(CliffordNF(c), projective_key(g.unitary[c]))
    codes = {c: [_backend.node_code(n) for n in g[c].canonical_diagram] for c in range(24)}
    w_codes = [codes[w] for w in g.W]
    # T.C for every C, shared by all syllable strings
    tc_keys = [_backend.product_key(codes[u] + [1]) for u in range(24)]
    for tc in range(1, tcount_max + 1):
        for syl in itertools.product(VKind, repeat=tc - 1):
            syl_codes = [_backend.node_code(n) for v in syl for n in v.diagram]
            for u in range(24):
                base = _backend.product_key(syl_codes, tc_keys[u])
                for w in range(3):
                    m = Mat2.from_key(_backend.product_key(w_codes[w], base))
                    record(MA(w, syl, u), projective_key(m))
    return dict(sorted(counts.items()))
