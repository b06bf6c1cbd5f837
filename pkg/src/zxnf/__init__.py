"""Proof-producing normal forms for single-qubit Clifford+T ZX line diagrams."""

from ._backend import BACKEND, diagram_matrix
from .diagram import Diagram, Node, ParseError, dagger, parse, to_text
from .manf import MA, CliffordNF, VKind, check_equal, enumerate_nf, nf_to_diagram, normalize, render
from .rules import Certificate, RewriteStep, verify_certificate

__all__ = [
    "BACKEND",
    "MA",
    "Certificate",
    "CliffordNF",
    "Diagram",
    "Node",
    "ParseError",
    "RewriteStep",
    "VKind",
    "check_equal",
    "dagger",
    "diagram_matrix",
    "enumerate_nf",
    "nf_to_diagram",
    "normalize",
    "parse",
    "render",
    "to_text",
    "verify_certificate",
]
