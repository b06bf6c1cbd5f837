"""On-disk cache for the derived tables (``clifford.tables``, ``manf.tables``).

Cached entries are re-checked against the matrix oracle on load; a missing,
corrupt or version-mismatched file is regenerated.
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

from ._backend import diagram_matrix
from .clifford import PauliPair, clifford_group
from .diagram import X, Z
from .ring import projective_equal

log = logging.getLogger(__name__)

VERSION = 1
_disabled = False


def disable() -> None:
    global _disabled
    _disabled = True


def cache_dir() -> Path | None:
    if _disabled or os.environ.get("ZXNF_NO_CACHE"):
        return None
    root = os.environ.get("ZXNF_CACHE_DIR")
    return Path(root) if root else Path.home() / ".cache" / "zxnf"


def _read(name: str) -> dict | None:
    root = cache_dir()
    if root is None:
        return None
    try:
        data = json.loads((root / name).read_text())
    except (OSError, ValueError):
        return None
    if data.get("version") != VERSION:
        return None
    return data


def _write(name: str, data: dict) -> None:
    root = cache_dir()
    if root is None:
        return
    try:
        root.mkdir(parents=True, exist_ok=True)
        (root / name).write_text(json.dumps({"version": VERSION, **data}))
    except OSError as e:
        log.warning("could not write %s: %s", root / name, e)


def _clifford_payload() -> dict:
    g = clifford_group()
    return {
        "classes": [list(c.canonical_matrix.key()) for c in g.classes],
        "D": sorted(g.subgroup_D),
        "W": list(g.W),
        "conjugation": {f"{c},{p}": list(v) for (c, p), v in g.conjugation.items()},
    }


def _check_tables(t) -> bool:
    from .manf import VKind

    g = clifford_group()
    U = g.unitary
    W = [U[w] for w in g.W]
    T = diagram_matrix((Z(1),))
    R = diagram_matrix((X(2),))
    V = [diagram_matrix(k.diagram) for k in VKind]
    P = [U[g.pauli_class(PauliPair.from_index(i))] for i in range(4)]
    checks = [projective_equal(R @ W[w], U[t.RW[w]]) for w in range(3)]
    checks += [projective_equal(U[c] @ T, W[t.CT[c][0]] @ T @ U[t.CT[c][1]]) for c in range(24)]
    for (c, v), (w, v2, p) in t.CV.items():
        checks.append(projective_equal(U[c] @ V[v], W[w] @ V[v2] @ P[p]))
    for (p, v), (v2, p2) in t.PV.items():
        checks.append(projective_equal(P[p] @ V[v], V[v2] @ P[p2]))
    checks += [projective_equal(T @ V[v], U[t.TV[v]]) for v in range(2)]
    for w, (v, d) in t.TW.items():
        checks.append(projective_equal(T @ W[w], V[v] @ U[d]))
    return all(checks) and len(t.CV) == 48 and len(t.PV) == 8 and len(t.TW) == 2


def load_or_derive_tables():
    from .manf import Tables, derive_tables

    clif = _clifford_payload()
    cached = _read("clifford.tables")
    stale = cached is None or {k: cached.get(k) for k in clif} != clif
    if stale:
        _write("clifford.tables", clif)
    data = None if stale else _read("manf.tables")
    if data is not None:
        try:
            t = Tables(
                RW=tuple(data["RW"]),
                CT=tuple(tuple(e) for e in data["CT"]),
                CV={(e[0], e[1]): tuple(e[2:]) for e in data["CV"]},
                PV={(e[0], e[1]): tuple(e[2:]) for e in data["PV"]},
                TV=tuple(data["TV"]),
                TW={e[0]: tuple(e[1:]) for e in data["TW"]},
                candidates=data["candidates"],
            )
            if _check_tables(t):
                return t
        except (KeyError, TypeError, ValueError, IndexError):
            pass
        log.info("manf.tables failed verification; regenerating")
    t = derive_tables()
    _write(
        "manf.tables",
        {
            "RW": list(t.RW),
            "CT": [list(e) for e in t.CT],
            "CV": [[c, v, *e] for (c, v), e in sorted(t.CV.items())],
            "PV": [[p, v, *e] for (p, v), e in sorted(t.PV.items())],
            "TV": list(t.TV),
            "TW": [[w, *e] for w, e in sorted(t.TW.items())],
            "candidates": t.candidates,
        },
    )
    return t
