"""Seeded random planar instances for fuzzing and property tests."""

from __future__ import annotations

import random
from typing import Optional

from .forests import SimpleGraph
from .planar import Instance
from .signatures import builtin_equality, builtin_nae


def _successor(edges, rotations, dart):
    e, side = dart
    rot = rotations[edges[e][side]]
    return (rot[(rot.index(e) + 1) % len(rot)], side)


def _raw_faces(edges, rotations):
    seen = set()
    out = []
    for e in edges:
        for side in (0, 1):
            d = (e, side)
            if d in seen:
                continue
            walk = []
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = _successor(edges, rotations, (d[0], 1 - d[1]))
            out.append(walk)
    return out


def random_nae_instance(rng: random.Random, n_clauses: int, max_vars: Optional[int] = None,
                        reuse: float = 0.5) -> Instance:
    """Connected plane bipartite graph: NAE clauses of degree 3, equality variables.

    Grows the graph by pendant insertions and face-splitting edges, so the
    rotation system stays planar at every step.
    """
    edges = {}
    rotations = {}
    variables = []
    clauses = []
    counter = [0]

    def new_edge(g, r):
        counter[0] += 1
        e = str(counter[0])
        edges[e] = (g, r)
        return e

    def insert_at_random_corner(v, e):
        rot = rotations[v]
        rot.insert(rng.randrange(len(rot)) + 1 if rot else 0, e)

    def add_variable():
        name = f"x{len(variables) + 1}"
        variables.append(name)
        rotations[name] = []
        return name

    def add_clause():
        name = f"c{len(clauses) + 1}"
        clauses.append(name)
        rotations[name] = []
        return name

    x = add_variable()
    c = add_clause()
    e = new_edge(x, c)
    rotations[x].append(e)
    rotations[c].append(e)

    while True:
        open_clauses = [c for c in clauses if len(rotations[c]) < 3]
        if len(clauses) < n_clauses and (not open_clauses or rng.random() < 0.35):
            x = rng.choice(variables)
            c = add_clause()
            e = new_edge(x, c)
            insert_at_random_corner(x, e)
            rotations[c].append(e)
            continue
        if not open_clauses:
            break
        c = rng.choice(open_clauses)
        neighbours = {edges[e][0] for e in rotations[c]}
        options = []
        for walk in _raw_faces(edges, rotations):
            corners = {}
            for k, d in enumerate(walk):
                nxt = walk[(k + 1) % len(walk)]
                v = edges[nxt[0]][nxt[1]]
                corners.setdefault(v, []).append(d[0])
            if c in corners:
                for v in corners:
                    if v in rotations and v in variables and v not in neighbours:
                        options.append((v, rng.choice(corners[v]), rng.choice(corners[c])))
        full = max_vars is not None and len(variables) >= max_vars
        if options and (full or rng.random() < reuse):
            x, after_x, after_c = rng.choice(options)
            e = new_edge(x, c)
            rx, rc = rotations[x], rotations[c]
            rx.insert(rx.index(after_x) + 1, e)
            rc.insert(rc.index(after_c) + 1, e)
        elif not full:
            x = add_variable()
            e = new_edge(x, c)
            insert_at_random_corner(c, e)
            rotations[x].append(e)
        else:
            # no room for a new variable and no face-sharing candidate: restart this clause
            return random_nae_instance(rng, n_clauses, max_vars, reuse)

    return Instance(
        generators={v: builtin_equality(len(rotations[v])) for v in variables},
        recognizers={c: builtin_nae(3) for c in clauses},
        edges=edges,
        rotations={v: tuple(r) for v, r in rotations.items()},
    )


def fuzz_corpus(seed: int, size: int, max_edges: int = 20, max_vars: int = 12) -> list:
    """Instances with an even number of edges, at most ``max_edges``."""
    rng = random.Random(seed)
    choices = [k for k in (2, 4, 6) if 3 * k <= max_edges]
    return [random_nae_instance(rng, rng.choice(choices), max_vars=max_vars) for _ in range(size)]


def random_multigraph(rng: random.Random, max_vertices: int = 6, max_edges: int = 12) -> SimpleGraph:
    n = rng.randint(1, max_vertices)
    vertices = tuple(f"v{i}" for i in range(n))
    m = rng.randint(0, max_edges) if n > 1 else 0
    edges = []
    for _ in range(m):
        u, v = rng.sample(vertices, 2)
        edges.append((u, v))
    return SimpleGraph(vertices, tuple(edges))
