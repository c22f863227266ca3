"""Planar bipartite instances, face tracing, separating curves and edge orders.

Edges are identified by string ids.  A dart is ``(edge_id, side)`` with side
0 at the generator end and side 1 at the recognizer end.  Rotations list the
edges around a vertex in clockwise order; face walks follow
``next = rotation_successor(reverse(dart))``, which keeps the face on the left.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Mapping, Optional, Sequence

from .errors import CapExceeded, InstanceError
from .exact_algebra import Permutation
from .signatures import Signature

VALIDATE_CAP = 16


def edge_key(edge_id: str):
    """Sort key for edge ids: numeric ids numerically, then everything else."""
    parts = re.split(r"(\d+)", edge_id)
    return tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in parts if p)


@dataclass(frozen=True)
class Instance:
    """Planar bipartite graph with per-vertex signatures and a rotation system.

    ``generators`` and ``recognizers`` map vertex names to signatures whose bit
    order is the vertex's rotation order.  ``edges`` maps an edge id to its
    ``(generator, recognizer)`` endpoints.
    """

    generators: Mapping[str, Signature]
    recognizers: Mapping[str, Signature]
    edges: Mapping[str, tuple]
    rotations: Mapping[str, tuple]
    _faces: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        for name in ("generators", "recognizers", "edges"):
            object.__setattr__(self, name, dict(getattr(self, name)))
        object.__setattr__(
            self, "rotations", {v: tuple(r) for v, r in dict(self.rotations).items()}
        )
        self._check_structure()
        object.__setattr__(self, "_faces", tuple(_trace_faces(self)))
        self._check_embedding()

    # -- structure ---------------------------------------------------------

    def _check_structure(self):
        shared = set(self.generators) & set(self.recognizers)
        if shared:
            raise InstanceError(f"vertex names used on both sides: {sorted(shared)}")
        incident = {v: [] for v in self.vertices}
        for e, (g, r) in self.edges.items():
            if g not in self.generators:
                raise InstanceError(f"edge {e}: {g!r} is not a generator")
            if r not in self.recognizers:
                raise InstanceError(f"edge {e}: {r!r} is not a recognizer")
            incident[g].append(e)
            incident[r].append(e)
        for v, inc in incident.items():
            rot = self.rotations.get(v)
            if rot is None:
                raise InstanceError(f"vertex {v!r} has no rotation")
            if sorted(rot) != sorted(inc) or len(set(rot)) != len(rot):
                raise InstanceError(
                    f"rotation of {v!r} lists {list(rot)}, incident edges are {sorted(inc, key=edge_key)}"
                )
            if not inc:
                raise InstanceError(f"vertex {v!r} is isolated")
            arity = self.signature(v).arity
            if arity != len(inc):
                raise InstanceError(f"vertex {v!r}: signature arity {arity} != degree {len(inc)}")
        extra = set(self.rotations) - set(self.vertices)
        if extra:
            raise InstanceError(f"rotation given for unknown vertices {sorted(extra)}")

    def _check_embedding(self):
        seen = {next(iter(self.vertices))}
        stack = list(seen)
        while stack:
            v = stack.pop()
            for e in self.rotations[v]:
                for w in self.edges[e]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        if len(seen) != len(self.vertices):
            raise InstanceError("graph is disconnected")
        chi = len(self.vertices) - len(self.edges) + len(self._faces)
        if chi != 2:
            raise InstanceError(
                f"rotation system is not planar: V - E + F = {chi} (faces: {len(self._faces)})"
            )

    # -- accessors ---------------------------------------------------------

    @property
    def vertices(self) -> list:
        return list(self.generators) + list(self.recognizers)

    @property
    def edge_ids(self) -> list:
        return sorted(self.edges, key=edge_key)

    def is_generator(self, v: str) -> bool:
        return v in self.generators

    def signature(self, v: str) -> Signature:
        return self.generators[v] if v in self.generators else self.recognizers[v]

    def degree(self, v: str) -> int:
        return len(self.rotations[v])

    def tail(self, dart) -> str:
        e, side = dart
        return self.edges[e][side]

    def successor(self, dart):
        """Next dart clockwise around the dart's tail."""
        e, side = dart
        rot = self.rotations[self.edges[e][side]]
        k = rot.index(e)
        return (rot[(k + 1) % len(rot)], side)

    def with_signature(self, v: str, sig: Signature) -> "Instance":
        gens = dict(self.generators)
        recs = dict(self.recognizers)
        (gens if v in gens else recs)[v] = sig
        return Instance(gens, recs, self.edges, self.rotations)


def reverse(dart):
    return (dart[0], 1 - dart[1])


def _trace_faces(inst: Instance) -> list:
    seen = set()
    faces = []
    for e in sorted(inst.edges, key=edge_key):
        for side in (0, 1):
            start = (e, side)
            if start in seen:
                continue
            walk = []
            d = start
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = inst.successor(reverse(d))
            if d != start:
                raise InstanceError("inconsistent rotation system")
            faces.append(tuple(walk))
    return faces


def faces(inst: Instance) -> list:
    """Face boundary walks as lists of darts, in discovery order."""
    return [list(f) for f in inst._faces]


def face_vertices(inst: Instance, walk) -> list:
    return [inst.tail(d) for d in walk]


# -- curves ------------------------------------------------------------------


@dataclass(frozen=True)
class Curve:
    """Closed curve given by the cyclic sequence of edges it crosses."""

    crossings: tuple

    def __len__(self):
        return len(self.crossings)


@dataclass(frozen=True)
class EdgeOrder:
    sequence: tuple
    kind: str = "user"

    def __post_init__(self):
        object.__setattr__(self, "sequence", tuple(self.sequence))
        if len(set(self.sequence)) != len(self.sequence):
            raise ValueError("edge order repeats an edge")

    def position(self) -> dict:
        return {e: k for k, e in enumerate(self.sequence)}

    def __len__(self):
        return len(self.sequence)

    def __iter__(self):
        return iter(self.sequence)


def _corner_chords(inst: Instance):
    """Initial chords: in every face, pair the two darts around each recognizer corner."""
    partner = {}
    corners = []  # per face: list of (dart_in, dart_out, recognizer)
    for walk in inst._faces:
        cs = []
        for k, d in enumerate(walk):
            nxt = walk[(k + 1) % len(walk)]
            v = inst.tail(nxt)
            if not inst.is_generator(v):
                partner[d] = nxt
                partner[nxt] = d
                cs.append((d, nxt, v))
        corners.append(cs)
    return partner, corners


def _trace_curves(partner) -> list:
    """Follow chord, cross the edge, repeat; returns the closed crossing sequences."""
    seen = set()
    curves = []
    for start in sorted(partner, key=lambda d: (edge_key(d[0]), d[1])):
        if start in seen:
            continue
        seq = []
        d = start
        while d not in seen:
            p = partner[d]
            seen.add(d)
            seen.add(p)
            seq.append(p[0])
            d = reverse(p)
        curves.append(seq)
    return curves


def build_curve(inst: Instance) -> Curve:
    """Closed curve crossing every edge once and separating generators from recognizers.

    Starts from one small circle per recognizer, then reconnects circles that
    meet inside a face: the chosen recognizer corners of a face are joined by
    a band through the face interior.  Faces with more distinct recognizers
    are used first (ties by face index), and only corners of recognizers not
    yet joined are opened, so every reconnection merges distinct curves.
    """
    partner, corners = _corner_chords(inst)
    parent = {u: u for u in inst.recognizers}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    face_rank = sorted(
        range(len(corners)), key=lambda f: (-len({c[2] for c in corners[f]}), f)
    )
    for f in face_rank:
        chosen = []
        roots = set()
        for d_in, d_out, u in corners[f]:
            root = find(u)
            if root not in roots:
                roots.add(root)
                chosen.append((d_in, d_out))
        if len(chosen) < 2:
            continue
        for k, (_, d_out) in enumerate(chosen):
            d_in_next = chosen[(k + 1) % len(chosen)][0]
            partner[d_out] = d_in_next
            partner[d_in_next] = d_out
        first = roots.pop()
        for r in roots:
            parent[r] = first
    curves = _trace_curves(partner)
    if len(curves) != 1:
        raise InstanceError(f"curve construction produced {len(curves)} components")
    return Curve(tuple(curves[0]))


def curve_components(inst: Instance) -> int:
    """Number of closed curves in the initial one-circle-per-recognizer configuration."""
    partner, _ = _corner_chords(inst)
    return len(_trace_curves(partner))


def c_order(curve: Curve, start_edge: Optional[str] = None, reverse_direction: Optional[bool] = None) -> EdgeOrder:
    """Cut the cyclic crossing sequence at ``start_edge`` and read it in one direction.

    Defaults: start at the smallest edge id, and pick the direction whose
    second edge id is smaller.
    """
    seq = list(curve.crossings)
    if start_edge is None:
        start_edge = min(seq, key=edge_key)
    if start_edge not in seq:
        raise KeyError(f"edge {start_edge!r} is not on the curve")
    k = seq.index(start_edge)
    forward = seq[k:] + seq[:k]
    backward = [forward[0]] + forward[1:][::-1]
    if reverse_direction is None:
        if len(seq) > 2:
            reverse_direction = edge_key(backward[1]) < edge_key(forward[1])
        else:
            reverse_direction = False
    return EdgeOrder(tuple(backward if reverse_direction else forward), "curve")


def _grouped_order(inst: Instance, order: EdgeOrder, side: int, kind: str):
    pos = order.position()
    if set(pos) != set(inst.edges):
        raise ValueError("order must list every edge exactly once")
    blocks = {}
    for e in order.sequence:
        blocks.setdefault(inst.edges[e][side], []).append(e)
    grouped = [e for block in blocks.values() for e in block]
    pi = Permutation(tuple(pos[e] for e in grouped))
    return EdgeOrder(tuple(grouped), kind), pi


def generator_order(inst: Instance, order: EdgeOrder):
    """Generator-grouped order with the lexicographically smallest permutation into ``order``.

    Returns ``(grouped_order, pi)`` where ``pi`` sends a position in the
    grouped order to the position of the same edge in ``order``.
    """
    return _grouped_order(inst, order, 0, "generator")


def recognizer_order(inst: Instance, order: EdgeOrder):
    return _grouped_order(inst, order, 1, "recognizer")


def crossing_number(pairs: Iterable[Sequence], order) -> int:
    """Number of interleaved pairs ``a < c < b < d`` under ``order``."""
    seq = order.sequence if isinstance(order, EdgeOrder) else tuple(order)
    pos = {e: k for k, e in enumerate(seq)}
    spans = []
    for a, b in pairs:
        if a not in pos or b not in pos:
            raise KeyError(f"pair ({a}, {b}) is not contained in the order")
        pa, pb = pos[a], pos[b]
        spans.append((min(pa, pb), max(pa, pb)))
    count = 0
    for (a, b), (c, d) in combinations(spans, 2):
        if a < c < b < d or c < a < d < b:
            count += 1
    return count


def partial_matchings(items: Sequence) -> list:
    """All sets of disjoint pairs drawn from ``items`` (including the empty set)."""
    items = list(items)
    if not items:
        return [()]
    first, rest = items[0], items[1:]
    out = list(partial_matchings(rest))
    for k, other in enumerate(rest):
        remaining = rest[:k] + rest[k + 1 :]
        out.extend(((first, other),) + m for m in partial_matchings(remaining))
    return out


@dataclass(frozen=True)
class Counterexample:
    side: str
    index_set: tuple
    pairing: tuple
    global_crossings: int
    local_crossings: int


def validate_order(inst: Instance, order: EdgeOrder, cap: int = VALIDATE_CAP) -> Optional[Counterexample]:
    """Brute-force certificate that ``order`` is valid; returns None or a counterexample.

    For every edge set ``I`` and every pairing of ``I`` whose pairs share a
    generator, the crossing parity under ``order`` must equal the summed
    per-generator crossing parity under the generator order; likewise for
    recognizers.
    """
    if len(inst.edges) > cap:
        raise CapExceeded("validate_order", len(inst.edges), cap)
    for side, name, grouping in ((0, "generator", generator_order), (1, "recognizer", recognizer_order)):
        grouped, _ = grouping(inst, order)
        by_vertex = {}
        for e in grouped.sequence:
            by_vertex.setdefault(inst.edges[e][side], []).append(e)
        local = [partial_matchings(es) for es in by_vertex.values()]
        candidates = []
        for choice in product(*local):
            pairing = tuple(p for part in choice for p in part)
            if pairing:
                candidates.append((len(pairing), choice, pairing))
        candidates.sort(key=lambda c: c[0])
        for _, choice, pairing in candidates:
            glob = crossing_number(pairing, order)
            loc = sum(crossing_number(part, grouped) for part in choice if part)
            if (glob - loc) % 2:
                index_set = tuple(sorted((e for p in pairing for e in p), key=order.position().get))
                return Counterexample(name, index_set, pairing, glob, loc)
    return None
