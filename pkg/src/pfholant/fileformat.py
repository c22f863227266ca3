"""Line-oriented instance files (``.holo``).

Directives, one per line, ``#`` starts a comment::

    basis identity | basis b2 | basis custom a b c d
    sig NAME d c_0 ... c_{2^d-1}
    var NAME [SIG]          # default EQ
    clause NAME [SIG]       # default NAE
    edge ID VAR CLAUSE
    rot VERTEX ID ID ...    # clockwise
    order ID ID ...
    fvertex NAME
    fedge U V

Builtin signatures ``EQ`` and ``NAE`` take their arity from the vertex
degree.  Custom coefficients are listed with ``eps`` ascending as a binary
number whose most significant bit is the first edge of the vertex rotation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InstanceError
from .exact_algebra import as_rational
from .forests import SimpleGraph
from .planar import EdgeOrder, Instance, edge_key
from .signatures import BasisChange, Signature, builtin_equality, builtin_nae

BUILTINS = {"EQ": builtin_equality, "NAE": builtin_nae}


@dataclass
class HoloFile:
    instance: Instance
    basis: BasisChange
    order: Optional[EdgeOrder] = None
    basis_name: str = "identity"


def _parse_basis(args, line):
    if args == ["identity"]:
        return BasisChange.identity(), "identity"
    if args == ["b2"]:
        return BasisChange.b2(), "b2"
    if len(args) == 5 and args[0] == "custom":
        try:
            basis = BasisChange.from_columns(*(as_rational(a) for a in args[1:]))
        except (ValueError, ZeroDivisionError) as exc:
            raise InstanceError(f"bad custom basis: {exc}", line) from None
        return basis, "custom " + " ".join(args[1:])
    raise InstanceError(f"unknown basis {' '.join(args)!r}", line)


def parse(text: str):
    """Parse file text into a HoloFile, or a SimpleGraph for forest files."""
    basis = None
    basis_name = "identity"
    order = None
    custom = {}
    variables = {}
    clauses = {}
    edges = {}
    rotations = {}
    fvertices = []
    fedges = []
    holo_seen = False

    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        kw, args = tokens[0], tokens[1:]
        if kw in ("fvertex", "fedge"):
            if kw == "fvertex":
                if len(args) != 1:
                    raise InstanceError("fvertex takes one name", lineno)
                fvertices.append(args[0])
            else:
                if len(args) != 2:
                    raise InstanceError("fedge takes two vertex names", lineno)
                fedges.append((tuple(args), lineno))
            continue
        holo_seen = True
        if kw == "basis":
            if basis is not None:
                raise InstanceError("more than one basis directive", lineno)
            basis, basis_name = _parse_basis(args, lineno)
        elif kw == "ebasis":
            raise InstanceError("per-edge basis changes are reserved but not supported", lineno)
        elif kw == "sig":
            if len(args) < 2:
                raise InstanceError("sig needs a name and an arity", lineno)
            name = args[0]
            if name in BUILTINS or name in custom:
                raise InstanceError(f"signature {name!r} already defined", lineno)
            try:
                d = int(args[1])
                custom[name] = Signature(d, tuple(as_rational(c) for c in args[2:]))
            except (ValueError, ZeroDivisionError) as exc:
                raise InstanceError(f"bad signature {name!r}: {exc}", lineno) from None
        elif kw in ("var", "clause"):
            if len(args) not in (1, 2):
                raise InstanceError(f"{kw} takes a name and an optional signature", lineno)
            table = variables if kw == "var" else clauses
            name = args[0]
            if name in variables or name in clauses:
                raise InstanceError(f"vertex {name!r} declared twice", lineno)
            table[name] = (args[1] if len(args) == 2 else ("EQ" if kw == "var" else "NAE"), lineno)
        elif kw == "edge":
            if len(args) != 3:
                raise InstanceError("edge takes an id, a variable and a clause", lineno)
            eid, var, clause = args
            if eid in edges:
                raise InstanceError(f"edge {eid!r} declared twice", lineno)
            edges[eid] = (var, clause, lineno)
        elif kw == "rot":
            if len(args) < 1:
                raise InstanceError("rot needs a vertex", lineno)
            if args[0] in rotations:
                raise InstanceError(f"second rotation for {args[0]!r}", lineno)
            rotations[args[0]] = (tuple(args[1:]), lineno)
        elif kw == "order":
            if order is not None:
                raise InstanceError("more than one order directive", lineno)
            if len(set(args)) != len(args):
                raise InstanceError("order repeats an edge", lineno)
            order = (tuple(args), lineno)
        else:
            raise InstanceError(f"unknown directive {kw!r}", lineno)

    if holo_seen and (fvertices or fedges):
        raise InstanceError("file mixes forest directives with instance directives")
    if not holo_seen:
        return _forest_graph(fvertices, fedges)

    for eid, (var, clause, lineno) in edges.items():
        if var not in variables:
            raise InstanceError(f"edge {eid}: undeclared variable {var!r}", lineno)
        if clause not in clauses:
            raise InstanceError(f"edge {eid}: undeclared clause {clause!r}", lineno)
    for v, (rot, lineno) in rotations.items():
        if v not in variables and v not in clauses:
            raise InstanceError(f"rotation for undeclared vertex {v!r}", lineno)
        incident = sorted(e for e, (a, b, _) in edges.items() if v in (a, b))
        if sorted(rot) != incident or len(set(rot)) != len(rot):
            raise InstanceError(
                f"rotation of {v!r} must list exactly its incident edges {sorted(incident, key=edge_key)}",
                lineno,
            )
    for v in list(variables) + list(clauses):
        if v not in rotations:
            line = (variables.get(v) or clauses.get(v))[1]
            raise InstanceError(f"vertex {v!r} has no rot line", line)

    def resolve(v, name, lineno):
        degree = len(rotations[v][0])
        if name in BUILTINS:
            try:
                return BUILTINS[name](degree)
            except ValueError as exc:
                raise InstanceError(f"{v!r}: {exc}", lineno) from None
        if name not in custom:
            raise InstanceError(f"{v!r}: unknown signature {name!r}", lineno)
        sig = custom[name]
        if sig.arity != degree:
            raise InstanceError(f"{v!r}: signature {name!r} has arity {sig.arity}, degree is {degree}", lineno)
        return sig

    inst = Instance(
        generators={v: resolve(v, s, ln) for v, (s, ln) in variables.items()},
        recognizers={v: resolve(v, s, ln) for v, (s, ln) in clauses.items()},
        edges={e: (a, b) for e, (a, b, _) in edges.items()},
        rotations={v: r for v, (r, _) in rotations.items()},
    )
    edge_order = None
    if order is not None:
        seq, lineno = order
        if sorted(seq) != sorted(edges):
            raise InstanceError("order must list every edge exactly once", lineno)
        edge_order = EdgeOrder(seq, "user")
    return HoloFile(inst, basis or BasisChange.identity(), edge_order, basis_name)


def _forest_graph(fvertices, fedges) -> SimpleGraph:
    known = set(fvertices)
    for (u, v), lineno in fedges:
        for w in (u, v):
            if w not in known:
                raise InstanceError(f"fedge uses undeclared vertex {w!r}", lineno)
        if u == v:
            raise InstanceError(f"self-loop at {u!r}", lineno)
    if len(known) != len(fvertices):
        raise InstanceError("duplicate fvertex")
    return SimpleGraph(tuple(fvertices), tuple(e for e, _ in fedges))


def read(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def serialize(holo: HoloFile) -> str:
    """Text that parses back to an identical instance, basis and order."""
    inst = holo.instance
    lines = [f"basis {holo.basis_name}", ""]
    names = {}

    def sig_name(v, sig):
        for kind, fn in BUILTINS.items():
            try:
                if sig == fn(sig.arity):
                    return kind
            except ValueError:
                pass
        name = f"sig_{v}"
        names[name] = sig
        return name

    decls = []
    for v, sig in inst.generators.items():
        decls.append(f"var {v} {sig_name(v, sig)}")
    for v, sig in inst.recognizers.items():
        decls.append(f"clause {v} {sig_name(v, sig)}")
    for name, sig in names.items():
        lines.append(f"sig {name} {sig.arity} {sig.to_text()}")
    lines.extend(decls)
    lines.append("")
    for e in inst.edge_ids:
        g, r = inst.edges[e]
        lines.append(f"edge {e} {g} {r}")
    lines.append("")
    for v in inst.vertices:
        lines.append(f"rot {v} {' '.join(inst.rotations[v])}")
    if holo.order is not None:
        lines.append("")
        lines.append(f"order {' '.join(holo.order.sequence)}")
    return "\n".join(lines) + "\n"


def serialize_graph(g: SimpleGraph) -> str:
    lines = [f"fvertex {v}" for v in g.vertices]
    lines += [f"fedge {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
