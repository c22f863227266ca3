"""Exact holographic counting on planar bipartite instances via a single Pfaffian."""

from .errors import CapExceeded, HolantError, InstanceError, NotRealizable, OddEdgeCount, ParityMismatch
from .exact_algebra import Permutation, SkewMatrix, determinant, pfaffian, sub_pfaffian, tilde
from .fileformat import parse, read
from .forests import SimpleGraph, count_rooted_spanning_forests
from .holant import assemble, brute_force_contraction, brute_force_sat, count, emit_matrix
from .planar import EdgeOrder, Instance, build_curve, c_order, validate_order
from .signatures import BasisChange, Signature, builtin_equality, builtin_nae, realize

__version__ = "0.1.0"

__all__ = [
    "BasisChange",
    "CapExceeded",
    "EdgeOrder",
    "HolantError",
    "Instance",
    "InstanceError",
    "NotRealizable",
    "OddEdgeCount",
    "ParityMismatch",
    "Permutation",
    "Signature",
    "SimpleGraph",
    "SkewMatrix",
    "assemble",
    "brute_force_contraction",
    "brute_force_sat",
    "build_curve",
    "builtin_equality",
    "builtin_nae",
    "c_order",
    "count",
    "count_rooted_spanning_forests",
    "determinant",
    "emit_matrix",
    "parse",
    "pfaffian",
    "read",
    "realize",
    "sub_pfaffian",
    "tilde",
    "validate_order",
]
