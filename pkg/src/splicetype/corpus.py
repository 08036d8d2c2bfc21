"""Worked example diagrams and a random generator of valid diagrams."""
import random
from math import gcd

from .diagram import SpliceDiagram, check_determinant_condition, star
from .semigroup import check_semigroup_condition


def e8():
    """Single node with decorations 2, 3, 5 (the E8 surface singularity)."""
    return star([2, 3, 5], node="v", leaf_names=["x", "y", "z"])


def _two_node(left, middle, right):
    dec_a, dec_b = middle
    names = [f"l{i + 1}" for i in range(len(left) + len(right))]
    vertices = {"a": "node", "b": "node"}
    vertices.update({lam: "leaf" for lam in names})
    edges, decs = [], {}
    for lam, x in zip(names, left):
        edges.append(("a", lam))
        decs[("a", lam)] = x
    edges.append(("a", "b"))
    decs[("a", "b")] = dec_a
    decs[("b", "a")] = dec_b
    for lam, x in zip(names[len(left):], right):
        edges.append(("b", lam))
        decs[("b", lam)] = x
    return SpliceDiagram(vertices, edges, decs, names)


def two_node_7_11():
    """Two nodes: leaves 2, 3 at a; edge 7 | 11; leaves 5, 2 at b."""
    return _two_node([2, 3], (7, 11), [5, 2])


def two_node_49_11():
    """Two nodes: leaves 2, 3 at a; edge 49 | 11; leaves 7, 5, 2 at b."""
    return _two_node([2, 3], (49, 11), [7, 5, 2])


# fixed coefficient matrices (columns in node_edge_order) and deformation signs
COEFFS_7_11 = {"a": [[1, -1, 1]], "b": [[1, 1, -1]]}
COEFFS_49_11 = {"a": [[1, -2, 1]], "b": [[1, 1, 1, -2155], [33, 1, 2, -2123]]}
DEFORMATION_49_11 = {("a", 1): -1, ("b", 1): -1, ("b", 2): 1}


def _coprime_choice(rng, pool, taken, count):
    out = []
    for x in rng.sample(pool, len(pool)):
        if len(out) == count:
            break
        if all(gcd(x, y) == 1 for y in taken + out):
            out.append(x)
    return out if len(out) == count else None


def random_diagram(rng=None, max_leaves=8, max_nodes=3, max_tries=10_000):
    """A random diagram satisfying the determinant and semigroup conditions."""
    rng = rng or random.Random()
    for _ in range(max_tries):
        k = rng.choice([k for k in range(1, max_nodes + 1) for _ in range(k)])
        parents = [None] + [rng.randrange(i) for i in range(1, k)]
        degree = [0] * k
        for i in range(1, k):
            degree[i] += 1
            degree[parents[i]] += 1
        extra = [max(0, 3 - deg) for deg in degree]
        spare = max_leaves - sum(extra)
        if spare < 0:
            continue
        for _ in range(rng.randint(0, min(spare, 2))):
            extra[rng.randrange(k)] += 1
        nodes = [f"v{i}" for i in range(k)]
        vertices = {v: "node" for v in nodes}
        edges, decs = [], {}
        ok = True
        internal = {i: [] for i in range(k)}
        for i in range(1, k):
            internal[i].append(parents[i])
            internal[parents[i]].append(i)
        chosen = {}
        for i in range(k):
            vals = _coprime_choice(rng, list(range(5, 64)), [], len(internal[i]))
            if vals is None:
                ok = False
                break
            for j, x in zip(internal[i], vals):
                chosen[(i, j)] = x
        if not ok:
            continue
        leaf_no = 0
        for i in range(k):
            taken = [chosen[(i, j)] for j in internal[i]]
            vals = _coprime_choice(rng, list(range(1, 12)), taken, extra[i])
            if vals is None:
                ok = False
                break
            for x in vals:
                leaf_no += 1
                lam = f"l{leaf_no}"
                vertices[lam] = "leaf"
                edges.append((nodes[i], lam))
                decs[(nodes[i], lam)] = x
        if not ok:
            continue
        for i in range(1, k):
            p = parents[i]
            edges.append((nodes[p], nodes[i]))
            decs[(nodes[p], nodes[i])] = chosen[(p, i)]
            decs[(nodes[i], nodes[p])] = chosen[(i, p)]
        leaves = [v for v in vertices if vertices[v] == "leaf"]
        rng.shuffle(leaves)
        d = SpliceDiagram(vertices, edges, decs, leaves)
        if not check_determinant_condition(d).ok:
            continue
        if not all(c.ok for c in check_semigroup_condition(d)):
            continue
        return d
    raise RuntimeError("no valid diagram found")


def random_multinode_diagram(rng, **kwargs):
    kwargs.setdefault("max_nodes", 3)
    while True:
        d = random_diagram(rng, **kwargs)
        if len(d.nodes) >= 2:
            return d
