"""Exact arithmetic over Z[w, 1/sqrt2] with w = exp(i*pi/4).

Every node matrix of a Clifford+T line diagram has entries in this ring, so
matrix equality up to a global scalar can be decided without floating point.
An element is stored as ``(a + b w + c w^2 + d w^3) / sqrt2^k``; since
``sqrt2 = w - w^3`` the representation is reduced to the smallest ``k``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import reduce

from .diagram import Diagram, Node

_OMEGA = cmath.exp(1j * math.pi / 4)


def _times_sqrt2(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    return b - d, a + c, b + d, c - a


def _reduce(a: int, b: int, c: int, d: int, k: int) -> tuple[int, int, int, int, int]:
    if not (a or b or c or d):
        return 0, 0, 0, 0, 0
    # x is divisible by sqrt2 iff a = c and b = d (mod 2)
    while k > 0 and not ((a - c) & 1) and not ((b - d) & 1):
        a, b, c, d = (b - d) >> 1, (a + c) >> 1, (b + d) >> 1, (c - a) >> 1
        k -= 1
    return a, b, c, d, k


class RingScalar:
    """Canonical element of Z[w, 1/sqrt2]."""

    __slots__ = ("a", "b", "c", "d", "k")

    def __init__(self, a: int = 0, b: int = 0, c: int = 0, d: int = 0, k: int = 0) -> None:
        if k < 0:
            raise ValueError("denominator exponent must be non-negative")
        self.a, self.b, self.c, self.d, self.k = _reduce(a, b, c, d, k)

    @classmethod
    def _raw(cls, t: tuple[int, int, int, int, int]) -> RingScalar:
        x = object.__new__(cls)
        x.a, x.b, x.c, x.d, x.k = t
        return x

    @classmethod
    def omega(cls, j: int = 1) -> RingScalar:
        j %= 8
        coeffs = [0, 0, 0, 0]
        coeffs[j % 4] = -1 if j >= 4 else 1
        return cls(*coeffs)

    @property
    def quad(self) -> tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d

    def key(self) -> tuple[int, int, int, int, int]:
        return self.a, self.b, self.c, self.d, self.k

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def _lifted(self, k: int) -> tuple[int, int, int, int]:
        a, b, c, d = self.quad
        diff = k - self.k
        if diff >= 2:
            s = 1 << (diff >> 1)
            a, b, c, d = a * s, b * s, c * s, d * s
        if diff & 1:
            a, b, c, d = _times_sqrt2(a, b, c, d)
        return a, b, c, d

    def __add__(self, other: RingScalar) -> RingScalar:
        if isinstance(other, int):
            other = RingScalar(other)
        k = max(self.k, other.k)
        a1, b1, c1, d1 = self._lifted(k)
        a2, b2, c2, d2 = other._lifted(k)
        return RingScalar._raw(_reduce(a1 + a2, b1 + b2, c1 + c2, d1 + d2, k))

    __radd__ = __add__

    def __neg__(self) -> RingScalar:
        return RingScalar._raw((-self.a, -self.b, -self.c, -self.d, self.k))

    def __sub__(self, other: RingScalar) -> RingScalar:
        return self + (-other)

    def __mul__(self, other: RingScalar | int) -> RingScalar:
        if isinstance(other, int):
            return RingScalar(self.a * other, self.b * other, self.c * other, self.d * other, self.k)
        a1, b1, c1, d1 = self.quad
        a2, b2, c2, d2 = other.quad
        # negacyclic convolution, w^4 = -1
        a = a1 * a2 - b1 * d2 - c1 * c2 - d1 * b2
        b = a1 * b2 + b1 * a2 - c1 * d2 - d1 * c2
        c = a1 * c2 + b1 * b2 + c1 * a2 - d1 * d2
        d = a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2
        return RingScalar._raw(_reduce(a, b, c, d, self.k + other.k))

    __rmul__ = __mul__

    def conj(self) -> RingScalar:
        # conj(w) = w^7 = -w^3, conj(w^2) = -w^2, conj(w^3) = -w
        return RingScalar._raw((self.a, -self.d, -self.c, -self.b, self.k))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = RingScalar(other)
        if not isinstance(other, RingScalar):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __complex__(self) -> complex:
        w = _OMEGA
        return (self.a + self.b * w + self.c * w * w + self.d * w**3) / math.sqrt(2) ** self.k

    def __repr__(self) -> str:
        return f"RingScalar{self.quad}/rt2^{self.k}"

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c},{self.d})/rt2^{self.k}"


ZERO = RingScalar()
ONE = RingScalar(1)
SQRT2 = RingScalar(0, 1, 0, -1)
INV_SQRT2 = RingScalar(1, 0, 0, 0, 1)


def ring_add(x: RingScalar, y: RingScalar) -> RingScalar:
    return x + y


def ring_mul(x: RingScalar, y: RingScalar) -> RingScalar:
    return x * y


def ring_neg(x: RingScalar) -> RingScalar:
    return -x


def ring_conj(x: RingScalar) -> RingScalar:
    return x.conj()


class BothZero(ValueError):
    pass


class ZeroMatrix(ValueError):
    pass


@dataclass(frozen=True)
class Mat2:
    m00: RingScalar
    m01: RingScalar
    m10: RingScalar
    m11: RingScalar

    @classmethod
    def identity(cls) -> Mat2:
        return cls(ONE, ZERO, ZERO, ONE)

    @classmethod
    def from_ints(cls, rows: list[list[int]]) -> Mat2:
        (a, b), (c, d) = rows
        return cls(RingScalar(a), RingScalar(b), RingScalar(c), RingScalar(d))

    @property
    def entries(self) -> tuple[RingScalar, RingScalar, RingScalar, RingScalar]:
        return self.m00, self.m01, self.m10, self.m11

    def __matmul__(self, o: Mat2) -> Mat2:
        return Mat2(
            self.m00 * o.m00 + self.m01 * o.m10,
            self.m00 * o.m01 + self.m01 * o.m11,
            self.m10 * o.m00 + self.m11 * o.m10,
            self.m10 * o.m01 + self.m11 * o.m11,
        )

    def scale(self, s: RingScalar) -> Mat2:
        return Mat2(*(e * s for e in self.entries))

    def dagger(self) -> Mat2:
        return Mat2(self.m00.conj(), self.m10.conj(), self.m01.conj(), self.m11.conj())

    def key(self) -> tuple[int, ...]:
        return tuple(v for e in self.entries for v in e.key())

    @classmethod
    def from_key(cls, key: tuple[int, ...]) -> Mat2:
        return cls(*(RingScalar(*key[i : i + 5]) for i in range(0, 20, 5)))

    def to_complex(self) -> list[list[complex]]:
        return [[complex(self.m00), complex(self.m01)], [complex(self.m10), complex(self.m11)]]

    def __str__(self) -> str:
        return f"{self.m00} {self.m01}\n{self.m10} {self.m11}"


_H_MAT = Mat2(INV_SQRT2, INV_SQRT2, INV_SQRT2, -INV_SQRT2)


def _z_mat(k: int) -> Mat2:
    return Mat2(ONE, ZERO, ZERO, RingScalar.omega(k))


_NODE_MATS: dict[Node, Mat2] = {Node("H", 0): _H_MAT}
for _k in range(8):
    _NODE_MATS[Node("Z", _k)] = _z_mat(_k)
    _NODE_MATS[Node("X", _k)] = _H_MAT @ _z_mat(_k) @ _H_MAT


def node_matrix(n: Node) -> Mat2:
    """Green: diag(1, w^k); Hadamard; red: H diag(1, w^k) H."""
    return _NODE_MATS[n]


def diagram_matrix_py(d: Diagram) -> Mat2:
    """Ordered product, later nodes on the left; pure Python reference."""
    m = Mat2.identity()
    for n in d:
        m = _NODE_MATS[n] @ m
    return m


def _first_nonzero(m: Mat2) -> RingScalar | None:
    for e in m.entries:
        if not e.is_zero():
            return e
    return None


def projective_equal(m1: Mat2, m2: Mat2) -> bool:
    """True iff ``m1 = lambda * m2`` for some nonzero scalar (no division used)."""
    s1 = _first_nonzero(m1)
    s2 = _first_nonzero(m2)
    if s1 is None and s2 is None:
        raise BothZero("both matrices are zero")
    if s1 is None or s2 is None:
        return False
    return all(s2 * e1 == s1 * e2 for e1, e2 in zip(m1.entries, m2.entries))


def _quad_gcd(quads: list[tuple[int, int, int, int]]) -> int:
    return reduce(math.gcd, (v for q in quads for v in q), 0)


def canonical_projective(m: Mat2) -> Mat2:
    """Representative of the class of ``m`` under nonzero scalar multiples.

    The first nonzero entry is made real and positive by multiplying with its
    conjugate; then the common integer and sqrt2 content is divided out. The
    result has plain Z[w] entries.
    """
    s = _first_nonzero(m)
    if s is None:
        raise ZeroMatrix("zero matrix has no projective class")
    ents = [e * s.conj() for e in m.entries]
    k = max(e.k for e in ents)
    quads = [e._lifted(k) for e in ents]
    while True:
        g = _quad_gcd(quads)
        if g > 1:
            quads = [tuple(v // g for v in q) for q in quads]
        if all(not ((a - c) & 1) and not ((b - d) & 1) for a, b, c, d in quads):
            quads = [((b - d) >> 1, (a + c) >> 1, (b + d) >> 1, (c - a) >> 1) for a, b, c, d in quads]
            continue
        if g <= 1:
            break
    return Mat2(*(RingScalar(*q) for q in quads))


def projective_key(m: Mat2) -> tuple[int, ...]:
    return canonical_projective(m).key()


def is_projective_identity(m: Mat2) -> bool:
    return projective_equal(m, Mat2.identity())
