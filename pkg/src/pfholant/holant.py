"""Counting engine: assemble z and y, evaluate alpha * beta * Pf(tilde(z) + y).

Plus two exponential oracles, one on the tensor contraction and one on the
underlying satisfiability semantics.
"""

from __future__ import annotations

import json
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from .errors import CapExceeded, HolantError, NotRealizable, OddEdgeCount, ParityMismatch
from .exact_algebra import (
    Permutation,
    SkewMatrix,
    block_diagonal,
    conjugate_by_permutation,
    format_rational,
    pfaffian,
    tilde,
)
from .planar import (
    VALIDATE_CAP,
    EdgeOrder,
    Instance,
    build_curve,
    c_order,
    generator_order,
    recognizer_order,
    validate_order,
)
from .signatures import (
    BasisChange,
    LocalRealization,
    Signature,
    builtin_equality,
    parity,
    realize,
    transform_generator,
    transform_recognizer,
)

CONTRACTION_CAP = 24
SAT_CAP = 30
REPORT_SCHEMA = 1


@dataclass
class Assembly:
    z: SkewMatrix
    y: SkewMatrix
    pi: Permutation
    tau: Permutation
    alpha: Fraction
    beta: Fraction
    order: EdgeOrder
    generator_order: EdgeOrder
    recognizer_order: EdgeOrder
    flips: dict = field(default_factory=dict)
    realizations: dict = field(default_factory=dict)


@dataclass
class CountReport:
    count: Fraction
    pfaffian_value: Fraction
    alpha: Fraction
    beta: Fraction
    order: EdgeOrder
    matrix: Optional[SkewMatrix] = None

    def to_dict(self) -> dict:
        out = {
            "schema": REPORT_SCHEMA,
            "count": format_rational(self.count),
            "pfaffian": format_rational(self.pfaffian_value),
            "alpha": format_rational(self.alpha),
            "beta": format_rational(self.beta),
            "order": list(self.order.sequence),
        }
        if self.matrix is not None:
            out["matrix"] = [[format_rational(x) for x in row] for row in self.matrix.rows]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def resolve_order(inst: Instance, order=None, start_edge=None, reverse=None, validate_cap=VALIDATE_CAP) -> EdgeOrder:
    """The curve order by default; a user order is accepted only if certified valid."""
    if order is None:
        return c_order(build_curve(inst), start_edge, reverse)
    if not isinstance(order, EdgeOrder):
        order = EdgeOrder(tuple(order), "user")
    if sorted(order.sequence) != sorted(inst.edges):
        raise HolantError("order must list every edge exactly once")
    bad = validate_order(inst, order, cap=validate_cap)
    if bad is not None:
        raise HolantError(
            f"order is not valid: {bad.side} pairing {bad.pairing} has "
            f"{bad.global_crossings} crossings against {bad.local_crossings} locally"
        )
    return order


def _parity_bit(sig: Signature, vertex) -> int:
    p = parity(sig)
    if p == "mixed":
        raise NotRealizable("support has mixed parity", vertex)
    return 1 if p == "odd" else 0


def choose_flips(inst: Instance, gen_sigs: dict, rec_sigs: dict) -> dict:
    """Per-edge 0/1 relabelling that puts every local signature at even parity.

    ``flips[e] == 1`` swaps 0/1 on edge ``e`` at its generator; the recognizer
    end sees the swap exactly when ``flips[e] == 0``.  Applying the same swap
    on both sides leaves the pairing unchanged, and with the generator side
    complemented everywhere the recognizer blocks are read straight from the
    transformed recognizer coefficients.  That default is kept wherever the
    parities allow; otherwise a parity join along a spanning tree fixes it.
    """
    flips = {e: 1 for e in inst.edges}
    odd = set()
    for v in inst.vertices:
        want = _parity_bit(gen_sigs[v] if v in gen_sigs else rec_sigs[v], v)
        deg = inst.degree(v)
        have = deg % 2 if inst.is_generator(v) else 0
        if have != want:
            odd.add(v)
    if len(odd) % 2:
        raise ParityMismatch(
            "generator and recognizer parities differ in total; no relabelling makes them match",
            sorted(odd)[0],
        )
    if not odd:
        return flips
    root = inst.vertices[0]
    parent = {root: None}
    bfs = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in inst.rotations[v]:
            g, r = inst.edges[e]
            w = r if v == g else g
            if w not in parent:
                parent[w] = (v, e)
                bfs.append(w)
                queue.append(w)
    for v in reversed(bfs):
        if v in odd and parent[v] is not None:
            u, e = parent[v]
            flips[e] ^= 1
            odd.discard(v)
            odd ^= {u}
    return flips


def _local_realization(inst, v, sig, local_edges, flips, gen_side) -> LocalRealization:
    rot = inst.rotations[v]
    permuted = sig.permuted([rot.index(e) for e in local_edges])
    d = len(local_edges)
    mask = 0
    for k, e in enumerate(local_edges):
        swapped = flips[e] if gen_side else 1 - flips[e]
        if swapped:
            mask |= 1 << (d - 1 - k)
    real = realize(permuted.flipped(mask), v)
    if real.reversed:
        raise NotRealizable("normalizing coefficient vanishes under the chosen edge relabelling", v)
    return real


def assemble(inst: Instance, basis: BasisChange, order=None, start_edge=None, reverse=None,
             validate_cap=VALIDATE_CAP) -> Assembly:
    if len(inst.edges) % 2:
        raise OddEdgeCount(f"instance has {len(inst.edges)} edges; the total number of edges must be even")
    gen_sigs = {v: transform_generator(s, basis) for v, s in inst.generators.items()}
    rec_sigs = {v: transform_recognizer(s, basis) for v, s in inst.recognizers.items()}
    edge_order = resolve_order(inst, order, start_edge, reverse, validate_cap)
    gen_order, pi = generator_order(inst, edge_order)
    rec_order, tau = recognizer_order(inst, edge_order)
    flips = choose_flips(inst, gen_sigs, rec_sigs)

    realizations = {}

    def blocks(grouped, side, sigs):
        local = {}
        for e in grouped.sequence:
            local.setdefault(inst.edges[e][side], []).append(e)
        out = []
        scale = Fraction(1)
        for v, es in local.items():
            real = _local_realization(inst, v, sigs[v], es, flips, side == 0)
            realizations[v] = real
            out.append(real.matrix)
            scale *= real.scale
        return block_diagonal(out), scale

    z_grouped, alpha = blocks(gen_order, 0, gen_sigs)
    y_grouped, beta = blocks(rec_order, 1, rec_sigs)
    return Assembly(
        z=conjugate_by_permutation(z_grouped, pi),
        y=conjugate_by_permutation(y_grouped, tau),
        pi=pi,
        tau=tau,
        alpha=alpha,
        beta=beta,
        order=edge_order,
        generator_order=gen_order,
        recognizer_order=rec_order,
        flips=flips,
        realizations=realizations,
    )


def emit_matrix(asm: Assembly) -> SkewMatrix:
    """tilde(z) + y in the common edge order."""
    return tilde(asm.z) + asm.y


def count(inst: Instance, basis: BasisChange, order=None, start_edge=None, reverse=None,
          emit=False, validate_cap=VALIDATE_CAP) -> CountReport:
    asm = assemble(inst, basis, order, start_edge, reverse, validate_cap)
    m = emit_matrix(asm)
    pf = pfaffian(m)
    return CountReport(
        count=asm.alpha * asm.beta * pf,
        pfaffian_value=pf,
        alpha=asm.alpha,
        beta=asm.beta,
        order=asm.order,
        matrix=m if emit else None,
    )


# -- oracles -----------------------------------------------------------------


def _local_tables(inst: Instance):
    """Nonzero generator entries as edge assignments, recognizer lookups by edge."""
    gen_choices = []
    for v, sig in inst.generators.items():
        rot = inst.rotations[v]
        d = len(rot)
        opts = []
        for eps, c in enumerate(sig.coefficients):
            if c != 0:
                opts.append((c, tuple((e, (eps >> (d - 1 - k)) & 1) for k, e in enumerate(rot))))
        gen_choices.append(opts)
    recs = [(sig, inst.rotations[v]) for v, sig in inst.recognizers.items()]
    return gen_choices, recs


def _contract_chunk(args):
    gen_choices, recs = args
    total = Fraction(0)
    for choice in product(*gen_choices):
        weight = Fraction(1)
        assignment = {}
        for c, bits in choice:
            weight *= c
            assignment.update(bits)
        for sig, rot in recs:
            eps = 0
            for e in rot:
                eps = (eps << 1) | assignment[e]
            c = sig.coefficients[eps]
            if c == 0:
                weight = 0
                break
            weight *= c
        if weight:
            total += weight
    return total


def _split(gen_choices, workers):
    """Split the generator product into chunks by fixing a prefix of choices."""
    chunks = [[]]
    k = 0
    while len(chunks) < 4 * workers and k < len(gen_choices):
        chunks = [prefix + [[opt]] for prefix in chunks for opt in gen_choices[k]]
        k += 1
    return [prefix + gen_choices[k:] for prefix in chunks]


def brute_force_contraction(inst: Instance, cap: int = CONTRACTION_CAP, workers: int = 1) -> Fraction:
    """Sum over all edge assignments of the product of the original local signatures.

    Assignments where some generator coefficient vanishes contribute zero and
    are skipped.
    """
    if len(inst.edges) > cap:
        raise CapExceeded("brute_force_contraction", len(inst.edges), cap)
    gen_choices, recs = _local_tables(inst)
    if workers <= 1:
        return _contract_chunk((gen_choices, recs))
    parts = [(chunk, recs) for chunk in _split(gen_choices, workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_contract_chunk, parts))
    return sum(results, Fraction(0))


def brute_force_sat(inst: Instance, cap: int = SAT_CAP) -> int:
    """Count truth assignments to the variables satisfying every clause."""
    for v, sig in inst.generators.items():
        if sig != builtin_equality(sig.arity):
            raise HolantError(f"variable {v!r} does not carry an equality signature")
    for v, sig in inst.recognizers.items():
        if any(c not in (0, 1) for c in sig.coefficients):
            raise HolantError(f"clause {v!r} is not 0/1-valued")
    names = list(inst.generators)
    if len(names) > cap:
        raise CapExceeded("brute_force_sat", len(names), cap)
    clauses = [
        (sig, [names.index(inst.edges[e][0]) for e in inst.rotations[v]])
        for v, sig in inst.recognizers.items()
    ]
    total = 0
    for values in product((0, 1), repeat=len(names)):
        for sig, vars_ in clauses:
            eps = 0
            for i in vars_:
                eps = (eps << 1) | values[i]
            if sig.coefficients[eps] != 1:
                break
        else:
            total += 1
    return total
