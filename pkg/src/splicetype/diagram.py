"""Splice diagrams: data model, file format, numeric invariants and surgery.

A splice diagram is a finite tree whose nodes carry a positive integer
decoration on every incident edge, pairwise coprime around each node.
Leaves carry no decorations.  Vertex identifiers are user strings; the
order of ``leaf_order`` fixes the indexing of the variables ``z_1 .. z_n``.

All arithmetic is exact integer arithmetic.
"""
import json
from dataclasses import dataclass, field
from math import gcd, prod


class DiagramError(ValueError):
    """Structural or syntactic problem with a splice diagram."""

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{message} (at {location})"
        super().__init__(message)


@dataclass
class ValidationReport:
    """Per-check verdicts for a diagram, with offending locations."""

    checks: dict = field(default_factory=dict)
    problems: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    def record(self, name, ok, problems=()):
        self.checks[name] = bool(ok)
        self.problems[name] = list(problems)

    @property
    def ok(self):
        return all(self.checks.values())

    def to_dict(self):
        out = {"ok": self.ok, "checks": {}}
        for name, verdict in self.checks.items():
            out["checks"][name] = {"ok": verdict, "problems": self.problems.get(name, [])}
        if self.witnesses:
            out["semigroup_witnesses"] = self.witnesses
        return out


class SpliceDiagram:
    """Decorated tree; immutable after construction.

    ``decorations`` maps ``(node, neighbour)`` to the positive integer written
    near ``node`` on the edge towards ``neighbour``.
    """

    def __init__(self, vertices, edges, decorations, leaf_order=None,
                 enriched=False, check=True):
        self._kinds = dict(vertices)
        self._order = tuple(self._kinds)
        self._adj = {v: [] for v in self._order}
        for u, v in edges:
            if u not in self._adj or v not in self._adj:
                raise DiagramError("edge refers to unknown vertex", f"{u}-{v}")
            self._adj[u].append(v)
            self._adj[v].append(u)
        self._adj = {v: tuple(ns) for v, ns in self._adj.items()}
        self._edges = tuple((u, v) for u, v in edges)
        self._dec = dict(decorations)
        self.enriched = enriched
        leaves = [v for v in self._order if self._kinds[v] == "leaf"]
        if leaf_order is None:
            leaf_order = leaves
        self.leaf_order = tuple(leaf_order)
        self._leaf_index = {lam: i for i, lam in enumerate(self.leaf_order)}
        if check:
            report = self.structural_report()
            if not report.ok:
                name = next(k for k, ok in report.checks.items() if not ok)
                problems = report.problems[name]
                raise DiagramError(f"{name} check failed", ", ".join(map(str, problems)) or None)

    # -- basic structure -------------------------------------------------

    @property
    def vertices(self):
        return self._order

    @property
    def edges(self):
        return self._edges

    @property
    def nodes(self):
        return tuple(v for v in self._order if self._kinds[v] == "node")

    @property
    def leaves(self):
        return self.leaf_order

    @property
    def n(self):
        return len(self.leaf_order)

    def kind(self, v):
        self._require(v)
        return self._kinds[v]

    def is_node(self, v):
        return self.kind(v) == "node"

    def is_leaf(self, v):
        return self.kind(v) == "leaf"

    def neighbours(self, v):
        self._require(v)
        return self._adj[v]

    def valency(self, v):
        return len(self.neighbours(v))

    def decoration(self, v, towards):
        """Decoration near ``v`` on the edge to ``towards``; 1 at a leaf end."""
        if self._kinds.get(v) != "node":
            return 1
        return self._dec[(v, towards)]

    def decorations(self):
        return dict(self._dec)

    def leaf_index(self, lam):
        return self._leaf_index[lam]

    def internal_edges(self):
        return tuple((u, v) for u, v in self._edges
                     if self._kinds[u] == "node" and self._kinds[v] == "node")

    def _require(self, v):
        if v not in self._kinds:
            raise DiagramError("unknown vertex", v)

    # -- tree walking ----------------------------------------------------

    def path(self, u, v):
        """Vertex list of the unique path from u to v."""
        self._require(u)
        self._require(v)
        parent = {u: None}
        stack = [u]
        while stack:
            x = stack.pop()
            if x == v:
                break
            for y in self._adj[x]:
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        if v not in parent:
            raise DiagramError("vertices are not connected", f"{u}-{v}")
        out = [v]
        while out[-1] != u:
            out.append(parent[out[-1]])
        return out[::-1]

    def component(self, start, removed_edge):
        """Vertices reachable from ``start`` without crossing ``removed_edge``."""
        a, b = removed_edge
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self._adj[x]:
                if {x, y} == {a, b} or y in seen:
                    continue
                seen.add(y)
                stack.append(y)
        return [v for v in self._order if v in seen]

    def leaves_beyond(self, v, towards):
        """Leaves seen from ``v`` in the direction of the edge to ``towards``,
        listed in leaf order."""
        side = set(self.component(towards, (v, towards)))
        return [lam for lam in self.leaf_order if lam in side]

    def node_edge_order(self, v):
        """Neighbours of node ``v`` sorted by the first leaf seen through them.

        This fixes the column order of the coefficient matrices at ``v``.
        """
        def key(w):
            beyond = self.leaves_beyond(v, w)
            return min(self._leaf_index[lam] for lam in beyond)
        return tuple(sorted(self.neighbours(v), key=key))

    # -- validation ------------------------------------------------------

    def structural_report(self):
        report = ValidationReport()
        n_v = len(self._order)
        seen = set()
        if self._order:
            stack = [self._order[0]]
            seen.add(self._order[0])
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        pairs = [frozenset(e) for e in self._edges]
        problems = []
        if n_v == 0:
            problems.append("empty diagram")
        if len(seen) != n_v:
            problems.append("disconnected: " + ",".join(v for v in self._order if v not in seen))
        if len(set(pairs)) != len(pairs) or any(len(p) == 1 for p in pairs):
            problems.append("repeated edge or loop")
        if len(self._edges) >= n_v > 0 or (len(seen) < n_v and len(self._edges) == n_v - 1):
            problems.append("cycle")
        report.record("tree", not problems, problems)

        problems = []
        twos = []
        for v in self._order:
            k = len(self._adj[v])
            kind = self._kinds[v]
            if kind not in ("node", "leaf"):
                problems.append(f"{v}: unknown kind {kind!r}")
            elif kind == "leaf" and k > 1:
                problems.append(f"{v}: leaf of valency {k}")
            elif kind == "leaf" and k == 0 and n_v > 1:
                problems.append(f"{v}: isolated leaf")
            elif kind == "node" and k == 2:
                twos.append(v)
            elif kind == "node" and k < 2:
                problems.append(f"{v}: node of valency {k}")
        if twos and not (self.enriched and len(twos) == 1):
            problems += [f"{v}: valency 2" for v in twos]
        if self.enriched and len(twos) != 1:
            problems.append("enriched diagram needs exactly one valency-2 root")
        report.record("valency", not problems, problems)

        problems = []
        for v in self._order:
            if self._kinds[v] != "node":
                continue
            for w in self._adj[v]:
                d = self._dec.get((v, w))
                if d is None:
                    problems.append(f"{v}-{w}: missing decoration at {v}")
                elif not isinstance(d, int) or isinstance(d, bool) or d <= 0:
                    problems.append(f"{v}-{w}: non-positive decoration {d!r}")
        report.record("positivity", not problems, problems)

        problems = []
        for v in self._order:
            if self._kinds[v] != "node":
                continue
            decs = [(w, self._dec.get((v, w))) for w in self._adj[v]]
            decs = [(w, d) for w, d in decs if isinstance(d, int) and d > 0]
            for i, (w1, d1) in enumerate(decs):
                for w2, d2 in decs[i + 1:]:
                    if gcd(d1, d2) != 1:
                        problems.append(f"{v}: {d1} towards {w1} and {d2} towards {w2}")
        report.record("coprimality", not problems, problems)

        problems = []
        leaves = [v for v in self._order if self._kinds[v] == "leaf"]
        if sorted(self.leaf_order) != sorted(leaves) or len(set(self.leaf_order)) != len(self.leaf_order):
            problems.append("leaf_order must list every leaf exactly once")
        report.record("leaf_order", not problems, problems)
        return report

    # -- identity --------------------------------------------------------

    def _rooted_code(self, root):
        def code(x, parent):
            kids = []
            for y in self._adj[x]:
                if y == parent:
                    continue
                kids.append((self.decoration(x, y), self.decoration(y, x), code(y, x)))
            up = self.decoration(x, parent) if parent is not None else 0
            return (self._kinds[x], up, tuple(sorted(kids)))
        return code(root, None)

    def canonical_form(self):
        """Isomorphism invariant of the decorated tree (labels and leaf order forgotten)."""
        return min(self._rooted_code(v) for v in self._order)

    def is_isomorphic(self, other):
        return (len(self._order) == len(other._order)
                and self.canonical_form() == other.canonical_form())

    def __eq__(self, other):
        if not isinstance(other, SpliceDiagram):
            return NotImplemented
        return (self._kinds == other._kinds
                and {frozenset(e) for e in self._edges} == {frozenset(e) for e in other._edges}
                and self._dec == other._dec
                and self.leaf_order == other.leaf_order
                and self.enriched == other.enriched)

    def __hash__(self):
        return hash(self.canonical_form())

    def __repr__(self):
        return (f"SpliceDiagram(nodes={list(self.nodes)}, leaves={list(self.leaf_order)}, "
                f"edges={len(self._edges)})")

    # -- serialisation ---------------------------------------------------

    def to_dict(self):
        out = {"vertices": [{"id": v, "kind": self._kinds[v]} for v in self._order],
               "edges": []}
        for u, v in self._edges:
            e = {"u": u, "v": v}
            if self._kinds[u] == "node":
                e["dec_u"] = self._dec[(u, v)]
            if self._kinds[v] == "node":
                e["dec_v"] = self._dec[(v, u)]
            out["edges"].append(e)
        out["leaf_order"] = list(self.leaf_order)
        if self.enriched:
            out["enriched"] = True
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_dot(self):
        lines = ["graph splice {"]
        for v in self._order:
            shape = "point" if self._kinds[v] == "node" else "circle"
            lines.append(f'  "{v}" [shape={shape}, xlabel="{v}"];')
        for u, v in self._edges:
            attrs = []
            if self._kinds[u] == "node":
                attrs.append(f'taillabel="{self._dec[(u, v)]}"')
            if self._kinds[v] == "node":
                attrs.append(f'headlabel="{self._dec[(v, u)]}"')
            lines.append(f'  "{u}" -- "{v}" [{", ".join(attrs)}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def diagram_from_dict(doc, check=True):
    if not isinstance(doc, dict):
        raise DiagramError("diagram document must be a JSON object")
    try:
        raw_vertices = doc["vertices"]
        raw_edges = doc.get("edges", [])
    except KeyError as exc:
        raise DiagramError(f"missing field {exc.args[0]!r}") from None
    vertices = {}
    for i, item in enumerate(raw_vertices):
        try:
            vid, kind = str(item["id"]), item["kind"]
        except (KeyError, TypeError):
            raise DiagramError("vertex needs 'id' and 'kind'", f"vertices[{i}]") from None
        if vid in vertices:
            raise DiagramError("duplicate vertex id", vid)
        vertices[vid] = kind
    edges = []
    decorations = {}
    for i, item in enumerate(raw_edges):
        try:
            u, v = str(item["u"]), str(item["v"])
        except (KeyError, TypeError):
            raise DiagramError("edge needs 'u' and 'v'", f"edges[{i}]") from None
        for end, other, key in ((u, v, "dec_u"), (v, u, "dec_v")):
            if end not in vertices:
                raise DiagramError("edge refers to unknown vertex", f"edges[{i}]: {end}")
            if vertices[end] != "node":
                continue
            if key in item:
                decorations[(end, other)] = item[key]
            else:
                raise DiagramError(f"missing {key} at node end", f"edges[{i}]: {u}-{v}")
        edges.append((u, v))
    leaf_order = doc.get("leaf_order")
    if leaf_order is not None:
        leaf_order = [str(x) for x in leaf_order]
    return SpliceDiagram(vertices, edges, decorations, leaf_order,
                         enriched=bool(doc.get("enriched", False)), check=check)


def parse_diagram(document, check=True):
    """Parse the JSON diagram format; raises DiagramError with a location."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"syntax error: {exc.msg}",
                           f"line {exc.lineno}, column {exc.colno}") from None
    return diagram_from_dict(doc, check=check)


def star(decorations, node="v", leaf_names=None):
    """Star-shaped diagram with the given leaf-edge decorations."""
    if leaf_names is None:
        leaf_names = [f"l{i + 1}" for i in range(len(decorations))]
    vertices = {node: "node"}
    vertices.update({lam: "leaf" for lam in leaf_names})
    edges = [(node, lam) for lam in leaf_names]
    decs = {(node, lam): d for lam, d in zip(leaf_names, decorations)}
    return SpliceDiagram(vertices, edges, decs, leaf_names)


# -- numeric invariants --------------------------------------------------


def linking_number(d, u, v):
    """Product of the decorations adjacent to (but not on) the path [u, v]."""
    p = d.path(u, v)
    on_path = set()
    for x, y in zip(p, p[1:]):
        on_path.add((x, y))
        on_path.add((y, x))
    out = 1
    for x in p:
        if not d.is_node(x):
            continue
        for y in d.neighbours(x):
            if (x, y) not in on_path:
                out *= d.decoration(x, y)
    return out


def reduced_linking_number(d, u, v):
    """As linking_number, but ignoring the decorations around u and v."""
    p = d.path(u, v)
    on_path = set()
    for x, y in zip(p, p[1:]):
        on_path.add((x, y))
        on_path.add((y, x))
    out = 1
    for x in p[1:-1]:
        if not d.is_node(x):
            continue
        for y in d.neighbours(x):
            if (x, y) not in on_path:
                out *= d.decoration(x, y)
    return out


def node_degree(d, v):
    if not d.is_node(v):
        raise DiagramError("not a node", v)
    return linking_number(d, v, v)


def edge_determinant(d, edge):
    """d_{u,e} d_{v,e} minus the product of the other decorations at u and v."""
    u, v = edge
    if v not in d.neighbours(u):
        raise DiagramError("not an edge", f"{u}-{v}")
    if not (d.is_node(u) and d.is_node(v)):
        raise DiagramError("edge is not internal", f"{u}-{v}")
    du, dv = d.decoration(u, v), d.decoration(v, u)
    others = prod(d.decoration(u, w) for w in d.neighbours(u) if w != v)
    others *= prod(d.decoration(v, w) for w in d.neighbours(v) if w != u)
    return du * dv - others


def check_determinant_condition(d, report=None):
    report = report if report is not None else ValidationReport()
    bad = []
    for e in d.internal_edges():
        det = edge_determinant(d, e)
        if det <= 0:
            bad.append(f"{e[0]}-{e[1]}: determinant {det}")
    report.record("determinant", not bad, bad)
    return report


def seifert_data(d, v):
    """Decorations around node v with the 1's removed, sorted."""
    if not d.is_node(v):
        raise DiagramError("not a node", v)
    return sorted(x for x in (d.decoration(v, w) for w in d.neighbours(v)) if x != 1)


def linking_matrix(d):
    return {u: {v: linking_number(d, u, v) for v in d.vertices} for u in d.vertices}


# -- surgery -------------------------------------------------------------


def _fresh(name, taken):
    out = name
    while out in taken:
        out += "'"
    return out


def split_edge(d, edge):
    """Cut an internal edge [a, b]; each side gets a new leaf r_a resp. r_b."""
    a, b = edge
    if b not in d.neighbours(a) or not (d.is_node(a) and d.is_node(b)):
        raise DiagramError("edge is not internal", f"{a}-{b}")
    taken = set(d.vertices)
    out = []
    for x, y in ((a, b), (b, a)):
        side = d.component(x, (x, y))
        sset = set(side)
        root = _fresh(f"r_{x}", taken)
        taken.add(root)
        vertices = {v: d.kind(v) for v in side}
        vertices[root] = "leaf"
        edges = [e for e in d.edges if e[0] in sset and e[1] in sset]
        edges.append((x, root))
        decs = {k: val for k, val in d.decorations().items() if k[0] in sset and k[1] in sset}
        decs[(x, root)] = d.decoration(x, y)
        leaf_order = [lam for lam in d.leaf_order if lam in sset] + [root]
        out.append(SpliceDiagram(vertices, edges, decs, leaf_order))
    return tuple(out)


def splice(d1, leaf1, d2, leaf2):
    """Join two diagrams by fusing the leaf edges at leaf1 and leaf2."""
    for d, lam in ((d1, leaf1), (d2, leaf2)):
        if not d.is_leaf(lam) or d.valency(lam) != 1:
            raise DiagramError("not a leaf", lam)
        if not d.is_node(d.neighbours(lam)[0]):
            raise DiagramError("leaf is not attached to a node", lam)
    clash = set(d1.vertices) & set(d2.vertices)
    if clash:
        raise DiagramError("vertex ids collide; relabel first", ",".join(sorted(clash)))
    x1, x2 = d1.neighbours(leaf1)[0], d2.neighbours(leaf2)[0]
    vertices = {v: d1.kind(v) for v in d1.vertices if v != leaf1}
    vertices.update({v: d2.kind(v) for v in d2.vertices if v != leaf2})
    edges = [e for e in d1.edges if leaf1 not in e] + [e for e in d2.edges if leaf2 not in e]
    edges.append((x1, x2))
    decs = {k: v for k, v in d1.decorations().items() if leaf1 not in k}
    decs.update({k: v for k, v in d2.decorations().items() if leaf2 not in k})
    decs[(x1, x2)] = d1.decoration(x1, leaf1)
    decs[(x2, x1)] = d2.decoration(x2, leaf2)
    leaf_order = [lam for lam in d1.leaf_order if lam != leaf1]
    leaf_order += [lam for lam in d2.leaf_order if lam != leaf2]
    return SpliceDiagram(vertices, edges, decs, leaf_order)


def relabel(d, prefix):
    """Copy of ``d`` with every vertex id prefixed."""
    m = {v: prefix + v for v in d.vertices}
    return SpliceDiagram({m[v]: d.kind(v) for v in d.vertices},
                         [(m[u], m[v]) for u, v in d.edges],
                         {(m[u], m[v]): x for (u, v), x in d.decorations().items()},
                         [m[lam] for lam in d.leaf_order], enriched=d.enriched)
