"""Edge enrichment and edge deformations of splice type systems.

Subdividing an internal edge [a, b] at a root r with decorations k_a, k_b
(and choosing D) gives an enriched diagram; each equation of the system then
gains a term -c * z0^(D * l_{r,v}).  The deformed variables are ordered
``z0`` followed by the original leaves.
"""
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .diagram import (DiagramError, SpliceDiagram, check_determinant_condition,
                      diagram_from_dict, edge_determinant, linking_number, node_degree)
from .polysys import Polynomial, SpliceSystem, node_weight_vector, system_from_dict


class EnrichmentError(ValueError):
    pass


def _internal(d, edge):
    a, b = edge
    if a not in d.vertices or b not in d.vertices or b not in d.neighbours(a):
        raise DiagramError("not an edge", f"{a}-{b}")
    if not (d.is_node(a) and d.is_node(b)):
        raise DiagramError("edge is not internal", f"{a}-{b}")
    return a, b


def ratio_interval(d, edge):
    """Open interval (d_a / d_{a,b}^2, d_{b,a}^2 / d_b) for k_a / k_b."""
    a, b = _internal(d, edge)
    lo = Fraction(node_degree(d, a), d.decoration(a, b) ** 2)
    hi = Fraction(d.decoration(b, a) ** 2, node_degree(d, b))
    return lo, hi


def simplest_fraction_between(lo, hi):
    """Fraction of least denominator strictly inside (lo, hi), 0 <= lo < hi.

    Stern-Brocot descent; runs of equal moves are taken in one step.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not 0 <= lo < hi:
        raise ValueError("need 0 <= lo < hi")
    lp, lq = 0, 1   # left bound, <= lo
    rp, rq = 1, 0   # right bound, >= hi (1/0 is infinity)
    while True:
        p, q = lp + rp, lq + rq
        if p <= lo * q:
            # largest t with (lp + t rp) / (lq + t rq) <= lo
            t = (lo * lq - lp) // (rp - lo * rq)
            lp, lq = lp + t * rp, lq + t * rq
        elif p >= hi * q:
            # largest t with (rp + t lp) / (rq + t lq) >= hi
            t = (rp - hi * rq) // (hi * lq - lp)
            rp, rq = rp + t * lp, rq + t * lq
        else:
            return p, q


@dataclass(frozen=True)
class EnrichedDiagram:
    base: SpliceDiagram
    edge: tuple
    root: str
    ka: int
    kb: int
    D: int
    tilde: SpliceDiagram

    @property
    def triple(self):
        return (self.ka, self.kb, self.D)

    def to_dict(self):
        return {"edge": list(self.edge), "root": self.root, "ka": self.ka, "kb": self.kb,
                "D": self.D}


def _subdivide(d, edge, ka, kb, root=None):
    a, b = edge
    if root is None:
        root = "r"
        while root in d.vertices:
            root += "'"
    vertices = {v: d.kind(v) for v in d.vertices}
    vertices[root] = "node"
    edges = [e for e in d.edges if set(e) != {a, b}] + [(a, root), (root, b)]
    decs = {k: v for k, v in d.decorations().items() if set(k) != {a, b}}
    decs[(a, root)] = d.decoration(a, b)
    decs[(b, root)] = d.decoration(b, a)
    decs[(root, a)] = ka
    decs[(root, b)] = kb
    return SpliceDiagram(vertices, edges, decs, d.leaf_order, enriched=True), root


def toward_root_decorations(d, edge):
    """d_{u,r} for every node u of d: decoration at u on the first edge towards [a,b]."""
    a, b = edge
    out = {}
    for u in d.nodes:
        if u == a:
            out[u] = d.decoration(a, b)
        elif u == b:
            out[u] = d.decoration(b, a)
        else:
            p = d.path(u, a)
            if b in p:
                p = d.path(u, b)
            out[u] = d.decoration(u, p[1])
    return out


def minimal_D(d, edge):
    return lcm(*toward_root_decorations(d, edge).values())


def adapted_triple(d, edge, policy="min-denominator", ka=None, kb=None, D=None):
    """Triple (k_a, k_b, D) adapted to the internal edge.

    ``policy="min-denominator"`` picks the fraction k_a/k_b of least
    denominator inside the admissible interval; ``"explicit"`` validates the
    given pair.  D defaults to the lcm of the towards-root decorations.
    """
    a, b = _internal(d, edge)
    if edge_determinant(d, edge) <= 0:
        raise EnrichmentError(f"edge {a}-{b} has non-positive determinant; interval is empty")
    lo, hi = ratio_interval(d, edge)
    if policy in ("min", "min-denominator"):
        if ka is not None or kb is not None:
            raise EnrichmentError("min-denominator policy takes no k_a, k_b")
        ka, kb = simplest_fraction_between(lo, hi)
    elif policy == "explicit":
        if ka is None or kb is None:
            raise EnrichmentError("explicit policy needs k_a and k_b")
    else:
        raise EnrichmentError(f"unknown policy {policy!r}")
    _check_pair(lo, hi, ka, kb)
    base_D = minimal_D(d, edge)
    if D is None:
        D = base_D
    elif D <= 0 or D % base_D:
        raise EnrichmentError(f"D={D} is not divisible by all towards-root decorations (lcm {base_D})")
    return ka, kb, D


def _check_pair(lo, hi, ka, kb):
    if ka <= 0 or kb <= 0:
        raise EnrichmentError("k_a, k_b must be positive")
    if gcd(ka, kb) != 1:
        raise EnrichmentError(f"k_a={ka}, k_b={kb} are not coprime")
    if not (lo * kb < ka < hi * kb):
        raise EnrichmentError(f"{ka}/{kb} is not inside ({lo}, {hi})")


def enrich(d, edge, triple, root=None):
    a, b = _internal(d, edge)
    ka, kb, D = triple
    lo, hi = ratio_interval(d, edge)
    _check_pair(lo, hi, ka, kb)
    for u, dec in toward_root_decorations(d, edge).items():
        if D <= 0 or D % dec:
            raise EnrichmentError(f"D={D} is not divisible by d_({u},r)={dec}")
    tilde, root = _subdivide(d, (a, b), ka, kb, root)
    if not check_determinant_condition(tilde).ok:
        raise EnrichmentError("enriched diagram violates the edge determinant condition")
    return EnrichedDiagram(d, (a, b), root, ka, kb, D, tilde)


def root_linking(ed, u):
    return linking_number(ed.tilde, ed.root, u)


def extension_scale(ed, u):
    """D * l_{r,u} / d_u, an integer by the divisibility of D."""
    num = ed.D * root_linking(ed, u)
    du = node_degree(ed.tilde, u)
    if num % du:
        raise AssertionError(f"D l_(r,{u}) / d_{u} is not an integer")
    return num // du


def extended_weight_vector(ed, u):
    """w0 + (D l_{r,u} / d_u) w_u, of length n + 1."""
    if u not in ed.tilde.vertices or not ed.tilde.is_node(u):
        raise DiagramError("not a node of the enriched diagram", u)
    s = extension_scale(ed, u)
    return (1,) + tuple(s * x for x in node_weight_vector(ed.tilde, u))


@dataclass
class DeformedSystem:
    enriched: EnrichedDiagram
    base: SpliceSystem
    equations: dict
    coefficients: dict

    @property
    def variables(self):
        return ("z0",) + tuple(self.base.variables)

    def polynomials(self):
        return [f for v in self.equations for f in self.equations[v]]

    def labelled(self):
        return [((v, i + 1), f) for v in self.equations for i, f in enumerate(self.equations[v])]

    def deformation_exponent(self, v):
        return self.enriched.D * root_linking(self.enriched, v)

    def strict_part(self, v, i):
        return self.base.equations[v][i].prepend_variable()

    def restrict_to_special_fibre(self):
        """Equations with z0 = 0, as polynomials in the original variables."""
        return {v: [f.restrict_first_to_zero() for f in fs] for v, fs in self.equations.items()}

    def __eq__(self, other):
        if not isinstance(other, DeformedSystem):
            return NotImplemented
        return (self.enriched == other.enriched and self.base == other.base
                and self.equations == other.equations and self.coefficients == other.coefficients)

    def to_dict(self):
        doc = self.base.to_dict()
        doc["kind"] = "deformed_system"
        doc["variables"] = list(self.variables)
        ed = self.enriched
        doc["deformation"] = {
            "edge": list(ed.edge), "root": ed.root, "ka": ed.ka, "kb": ed.kb, "D": ed.D,
            "coefficients": [{"node": v, "index": i, "c": str(c)}
                             for (v, i), c in self.coefficients.items()],
            "z0_exponents": {v: self.deformation_exponent(v) for v in self.equations},
        }
        base_nodes = doc["nodes"]
        doc["base_equations"] = [{"node": item["node"], "equations": item["equations"]}
                                 for item in base_nodes]
        for item in base_nodes:
            v = item["node"]
            item["equations"] = [f.to_terms() for f in self.equations[v]]
        return doc

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"


def deformed_from_dict(doc):
    if doc.get("kind") != "deformed_system":
        raise ValueError("not a deformed_system document")
    base_doc = dict(doc)
    base_doc["kind"] = "splice_system"
    base_doc["variables"] = doc["variables"][1:]
    eqs = {item["node"]: item["equations"] for item in doc["base_equations"]}
    base_doc["nodes"] = [dict(item, equations=eqs[item["node"]]) for item in doc["nodes"]]
    base = system_from_dict(base_doc)
    info = doc["deformation"]
    ed = enrich(base.diagram, tuple(info["edge"]), (info["ka"], info["kb"], info["D"]),
                root=info["root"])
    coeffs = {(c["node"], c["index"]): Fraction(c["c"]) for c in info["coefficients"]}
    out = edge_deformation(base, ed, coeffs)
    stored = {item["node"]: [Polynomial.from_terms(len(doc["variables"]), t)
                             for t in item["equations"]] for item in doc["nodes"]}
    if stored != out.equations:
        raise ValueError("deformed equations do not match the deformation data")
    return out


def edge_deformation(system, ed, coefficients=None):
    """F_{v,i} - c_{v,i} z0^(D l_{r,v}) for every equation; c defaults to 1."""
    if system.diagram != ed.base:
        raise EnrichmentError("system and enrichment are built on different diagrams")
    coefficients = dict(coefficients or {})
    equations, used = {}, {}
    n1 = system.nvars + 1
    for v, fs in system.equations.items():
        exp = ed.D * root_linking(ed, v)
        out = []
        for i, f in enumerate(fs, start=1):
            c = Fraction(coefficients.pop((v, i), 1))
            if c == 0:
                raise EnrichmentError(f"deformation coefficient for ({v}, {i}) is zero")
            used[(v, i)] = c
            term = Polynomial(n1, {(exp,) + (0,) * system.nvars: c})
            out.append(f.prepend_variable() - term)
        equations[v] = out
    if coefficients:
        raise EnrichmentError(f"coefficients for unknown equations: {sorted(coefficients)}")
    return DeformedSystem(ed, system, equations, used)


def side_systems(ds):
    """Split the deformed equations by the side of [a, b] their node lies on."""
    a, b = ds.enriched.edge
    d = ds.enriched.base
    a_side = set(d.component(a, (a, b)))
    left = {v: fs for v, fs in ds.equations.items() if v in a_side}
    right = {v: fs for v, fs in ds.equations.items() if v not in a_side}
    return left, right


def load_deformed(text):
    return deformed_from_dict(json.loads(text))
