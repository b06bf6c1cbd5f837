"""Stabilizer-vector argument that no T-containing normal form is the identity.

A pure state ``U|0>`` is stabilized by ``xX + yY + zZ`` for a real unit
vector (x, y, z). For Clifford+T operators the components live in
Z[sqrt2] / sqrt2^m, stored here as integer pairs ``(a1, a2) = a1 + a2 sqrt2``.
Tracking the parities of the six integers through the syllables shows that
the x and y components never vanish, so the state is never a Pauli
eigenstate and the operator is not a scalar.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from ._backend import diagram_matrix
from .clifford import clifford_group
from .diagram import Diagram
from .manf import MA, VKind, nf_to_diagram
from .ring import is_projective_identity

Zr2 = tuple[int, int]  # a1 + a2*sqrt2


class ParityViolation(AssertionError):
    pass


def _times_sqrt2(a: Zr2) -> Zr2:
    return 2 * a[1], a[0]


def _add(a: Zr2, b: Zr2) -> Zr2:
    return a[0] + b[0], a[1] + b[1]


def _sub(a: Zr2, b: Zr2) -> Zr2:
    return a[0] - b[0], a[1] - b[1]


def _square(a: Zr2) -> Zr2:
    return a[0] * a[0] + 2 * a[1] * a[1], 2 * a[0] * a[1]


@dataclass(frozen=True)
class StabVec:
    m: int
    x1: int
    x2: int
    y1: int
    y2: int
    z1: int
    z2: int

    @classmethod
    def make(cls, m: int, x: Zr2, y: Zr2, z: Zr2) -> StabVec:
        # divide by sqrt2 while every component allows it
        while m > 0 and x[0] % 2 == 0 and y[0] % 2 == 0 and z[0] % 2 == 0:
            x, y, z = (x[1], x[0] // 2), (y[1], y[0] // 2), (z[1], z[0] // 2)
            m -= 1
        return cls(m, *x, *y, *z)

    @property
    def x(self) -> Zr2:
        return self.x1, self.x2

    @property
    def y(self) -> Zr2:
        return self.y1, self.y2

    @property
    def z(self) -> Zr2:
        return self.z1, self.z2

    def norm_ok(self) -> bool:
        s = _add(_add(_square(self.x), _square(self.y)), _square(self.z))
        return s == (2**self.m, 0)

    def to_floats(self) -> tuple[float, float, float]:
        r2 = 2**0.5
        scale = r2**self.m
        return tuple((a + b * r2) / scale for a, b in (self.x, self.y, self.z))

    def parities(self) -> tuple[int, ...]:
        return tuple(v & 1 for v in (self.x1, self.x2, self.y1, self.y2, self.z1, self.z2))

    def __str__(self) -> str:
        return f"({self.x1},{self.x2}|{self.y1},{self.y2}|{self.z1},{self.z2})"


class ParityClass(NamedTuple):
    name: str
    mask: int  # bit 5 = x1 ... bit 0 = z2

    def __str__(self) -> str:
        return self.name if self.name != "Other" else f"Other({self.mask:06b})"


_NAMED = {
    0b101000: "P0",  # x1, y1 odd
    0b101001: "P1",  # x1, y1, z2 odd
    0b111101: "P2",  # all odd but z1
    0b000010: "PZ",  # z1 odd
}
P0, P1, P2, PZ = (ParityClass(name, mask) for mask, name in _NAMED.items())


def parity_class(v: StabVec) -> ParityClass:
    mask = 0
    for bit in v.parities():
        mask = (mask << 1) | bit
    return ParityClass(_NAMED.get(mask, "Other"), mask)


def stab_initial() -> StabVec:
    """Stabilizer of |0>, the vector (0, 0, 1)."""
    return StabVec(0, 0, 0, 0, 0, 1, 0)


def stab_apply_T(v: StabVec) -> StabVec:
    return StabVec.make(v.m + 1, _sub(v.x, v.y), _add(v.x, v.y), _times_sqrt2(v.z))


def stab_apply_V(kind: VKind, v: StabVec) -> StabVec:
    """Syllable update: V1 = T R, V2 = T S R."""
    if kind == VKind.V1:
        x, y = _add(v.x, v.z), _sub(v.x, v.z)
    else:
        x, y = _sub(v.z, v.x), _add(v.x, v.z)
    return StabVec.make(v.m + 1, x, y, _times_sqrt2(v.y))


def stab_apply_clifford(c: int, v: StabVec) -> StabVec:
    """Conjugate by Clifford class ``c``: a signed permutation of the axes."""
    conj = clifford_group().conjugation
    out: dict[str, Zr2] = {}
    for p, comp in zip("XYZ", (v.x, v.y, v.z)):
        sign, q = conj[c, p]
        out[q] = (sign * comp[0], sign * comp[1])
    return StabVec(v.m, *out["X"], *out["Y"], *out["Z"])


@dataclass(frozen=True)
class Evidence:
    """Trajectory of stabilizer vectors for ``nf`` applied to |0>."""

    nf: MA
    trajectory: tuple[tuple[str, StabVec], ...]  # (label, vector after that step)
    final: StabVec  # before W
    parity: ParityClass
    after_w: StabVec
    matrix_checked: bool  # n = 0 forms are excluded by the matrix check

    def lines(self) -> list[str]:
        out = [f"m={v.m} vec={v} parity={parity_class(v)} step={label}" for label, v in self.trajectory]
        if self.matrix_checked:
            out.append("n=0: operator T.C checked directly against the identity matrix")
        else:
            out.append("x1 odd and y1 odd: state is not a Pauli eigenstate, so the operator is not a scalar")
        return out


def stab_of_nf(nf: MA) -> tuple[tuple[str, StabVec], ...]:
    v = stab_initial()
    steps = [("start", v)]
    v = stab_apply_clifford(nf.u, v)
    steps.append(("C", v))
    v = stab_apply_T(v)
    steps.append(("T", v))
    for i, kind in enumerate(nf.syllables, 1):
        v = stab_apply_V(kind, v)
        steps.append((f"V{i}={int(kind) + 1}", v))
    return tuple(steps)


def assert_not_identity(nf: MA) -> Evidence:
    """Evidence that the operator of ``nf`` is not a scalar multiple of I.

    For ``n >= 1`` the vector before ``W`` has ``x1`` and ``y1`` odd, so it
    lies on no coordinate axis; ``W`` permutes axes, so ``U|0>`` is not
    ``|0>``. For ``n = 0`` the operator is compared with I directly.
    """
    if not isinstance(nf, MA):
        raise TypeError("assert_not_identity needs an MA normal form")
    traj = stab_of_nf(nf)
    final = traj[-1][1]
    g = clifford_group()
    after_w = stab_apply_clifford(g.W[nf.w], final)
    for label, v in traj:
        if not v.norm_ok():
            raise ParityViolation(f"norm broken at {label}: {v}")
    if nf.n == 0:
        if is_projective_identity(diagram_matrix(nf_to_diagram(nf))):
            raise ParityViolation(f"{nf} is the identity")
        checked = True
    else:
        if final.x1 % 2 == 0 or final.y1 % 2 == 0:
            raise ParityViolation(f"x1/y1 parity lost: {final} ({parity_class(final)})")
        if after_w.x == (0, 0) and after_w.y == (0, 0):
            raise ParityViolation(f"state after W is on the z axis: {after_w}")
        checked = False
    return Evidence(nf, traj, final, parity_class(final), after_w, checked)


def stab_from_matrix(d: Diagram) -> tuple[float, float, float]:
    """Oracle: Bloch vector of ``U|0>`` for the exact matrix ``U`` of ``d``."""
    m = diagram_matrix(d).to_complex()
    a, c = m[0][0], m[1][0]
    n2 = abs(a) ** 2 + abs(c) ** 2
    ac = a.conjugate() * c
    return 2 * ac.real / n2, 2 * ac.imag / n2, (abs(a) ** 2 - abs(c) ** 2) / n2


__all__ = [
    "Evidence",
    "P0",
    "P1",
    "P2",
    "PZ",
    "ParityClass",
    "ParityViolation",
    "StabVec",
    "assert_not_identity",
    "parity_class",
    "stab_apply_T",
    "stab_apply_V",
    "stab_apply_clifford",
    "stab_from_matrix",
    "stab_initial",
    "stab_of_nf",
]
