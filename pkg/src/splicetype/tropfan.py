"""Cones, fans and the explicit tropicalizing fans of splice type germs.

All decisions (membership, rank, extremality, faces) are exact: cone
membership is checked by solving the linear system on every basis of
generators and looking for a non-negative solution, which is complete by
Caratheodory's theorem for the cone sizes met here.
"""
import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import prod

from .deform import extended_weight_vector
from .diagram import DiagramError, check_determinant_condition
from .linalg import (bareiss_determinant, independent_columns, matmul, nullspace, primitive, rank,
                     row_echelon, smith_normal_form, solve, transpose)
from .polysys import node_weight_vector
from .semigroup import check_semigroup_condition


def _unit(dim, i):
    return tuple(int(j == i) for j in range(dim))


def in_cone(generators, x):
    """Is x a non-negative rational combination of ``generators``?"""
    x = [Fraction(t) for t in x]
    if not any(x):
        return True
    gens = [list(g) for g in generators if any(g)]
    if not gens:
        return False
    if any(len(g) != len(x) for g in gens):
        raise ValueError("dimension mismatch")
    aug = [[g[i] for g in gens] + [x[i]] for i in range(len(x))]
    red, pivots = row_echelon(aug)
    if len(gens) in pivots:
        return False
    r = len(pivots)
    if r == len(gens):
        # independent generators: the solution is unique
        return all(row[-1] >= 0 for row in red[:r])
    # Caratheodory: some r-subset carries a non-negative solution; any
    # non-negative solution on any subset is itself a witness
    for subset in combinations(range(len(gens)), r):
        sol = solve(transpose([gens[i] for i in subset]), x)
        if sol is not None and all(c >= 0 for c in sol):
            return True
    return False


class Cone:
    """Polyhedral cone given by primitive extreme ray generators."""

    def __init__(self, generators, dim=None):
        gens = []
        for g in generators:
            p = primitive(g)
            if p not in gens:
                gens.append(p)
        if dim is None:
            if not gens:
                raise ValueError("dimension of the zero cone must be given")
            dim = len(gens[0])
        if any(len(g) != dim for g in gens):
            raise ValueError("generators of different lengths")
        self.dim = dim
        self.generators = tuple(g for i, g in enumerate(gens)
                                if not in_cone(gens[:i] + gens[i + 1:], g))

    def __repr__(self):
        return f"Cone({list(self.generators)})"

    def __eq__(self, other):
        return isinstance(other, Cone) and set(self.generators) == set(other.generators)

    def __hash__(self):
        return hash(frozenset(self.generators))

    @property
    def rank(self):
        return rank(list(self.generators)) if self.generators else 0

    def contains(self, x):
        if len(x) != self.dim:
            raise ValueError("dimension mismatch")
        return in_cone(self.generators, x)

    def facets(self):
        """Index sets (into ``generators``) of the facets."""
        return facets(self.generators)

    def faces(self):
        return faces(self.generators)


def cone_contains(cone, x):
    return cone.contains(x)


def facets(gens):
    """Facets of the cone spanned by extreme generators, as index frozensets."""
    gens = [list(g) for g in gens]
    k = len(gens)
    if k == 0:
        return []
    r = rank(gens)
    if r == 1:
        return [frozenset()]
    # coordinates inside the span
    basis = [gens[i] for i in independent_columns(gens)]
    coords = [solve(transpose(basis), g) for g in gens]
    out = set()
    for subset in combinations(range(k), r - 1):
        sub = [coords[i] for i in subset]
        if rank(sub) < r - 1:
            continue
        normal = nullspace(sub, r)
        if len(normal) != 1:
            continue
        nvec = normal[0]
        vals = [sum(a * b for a, b in zip(nvec, c)) for c in coords]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            out.add(frozenset(i for i, v in enumerate(vals) if v == 0))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def faces(gens):
    """All faces (including the zero face and the cone itself) as index frozensets."""
    k = len(gens)
    top = frozenset(range(k))
    found = {top}
    frontier = [top]
    while frontier:
        f = frontier.pop()
        sub = [gens[i] for i in sorted(f)]
        idx = sorted(f)
        for facet in facets(sub):
            g = frozenset(idx[i] for i in facet)
            if g not in found:
                found.add(g)
                frontier.append(g)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


@dataclass
class Fan:
    """Rays plus a list of cones (ray index tuples); faces are implied."""

    dim: int
    rays: tuple
    cones: tuple
    partial: bool = False
    labels: tuple = None

    def __post_init__(self):
        self.rays = tuple(primitive(r) for r in self.rays)
        self.cones = tuple(tuple(c) for c in self.cones)
        if any(len(r) != self.dim for r in self.rays):
            raise ValueError("ray of wrong dimension")

    def cone(self, i):
        return Cone([self.rays[j] for j in self.cones[i]], self.dim)

    def all_cones(self):
        """Every face of every listed cone, zero cone first."""
        out = {()}
        for c in self.cones:
            gens = [self.rays[j] for j in c]
            for f in faces(gens):
                out.add(tuple(sorted(c[i] for i in f)))
        return sorted(out, key=lambda s: (len(s), s))

    def contains(self, x):
        if len(x) != self.dim:
            raise ValueError("dimension mismatch")
        return any(in_cone([self.rays[j] for j in c], x) for c in self.cones)

    def two_cones(self):
        return [c for c in self.all_cones() if len(c) == 2]

    def to_dict(self):
        out = {"dim": self.dim, "rays": [list(r) for r in self.rays],
               "cones": [list(c) for c in self.cones], "partial": self.partial}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_dot(self):
        """Transversal section: rays as vertices, 2-dimensional faces as edges."""
        names = self.labels or [str(i) for i in range(len(self.rays))]
        lines = ["graph fan {"]
        for i, r in enumerate(self.rays):
            lines.append(f'  "{names[i]}" [tooltip="{tuple(r)}"];')
        for i, j in self.two_cones():
            lines.append(f'  "{names[i]}" -- "{names[j]}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def fan_from_dict(doc):
    return Fan(doc["dim"], [tuple(r) for r in doc["rays"]], [tuple(c) for c in doc["cones"]],
               bool(doc.get("partial", False)),
               tuple(doc["labels"]) if "labels" in doc else None)


def _require_conditions(d):
    if not check_determinant_condition(d).ok:
        raise DiagramError("edge determinant condition fails")
    if not all(c.ok for c in check_semigroup_condition(d)):
        raise DiagramError("semigroup condition fails")


def surface_trop_fan(d):
    """Cone over the diagram: rays e_lambda and w_v, 2-cones along the edges."""
    _require_conditions(d)
    n = d.n
    ray_of = {}
    rays, labels = [], []
    for i, lam in enumerate(d.leaf_order):
        ray_of[lam] = len(rays)
        rays.append(_unit(n, i))
        labels.append(lam)
    for v in d.nodes:
        ray_of[v] = len(rays)
        rays.append(node_weight_vector(d, v))
        labels.append(v)
    cones = [tuple(sorted((ray_of[u], ray_of[v]))) for u, v in d.edges]
    return Fan(n, rays, cones, partial=False, labels=tuple(labels))


def deformation_trop_rays(ed):
    """e_0, the images of e_lambda, and the extended weight vectors of all nodes."""
    n1 = ed.base.n + 1
    rays = [_unit(n1, 0)] + [_unit(n1, i + 1) for i in range(ed.base.n)]
    labels = ["z0"] + list(ed.base.leaf_order)
    for u in ed.tilde.nodes:
        rays.append(primitive(extended_weight_vector(ed, u)))
        labels.append(u)
    return rays, labels


@dataclass
class CentralConeReport:
    cone: Cone
    rank: int
    extreme: tuple
    simplicial: bool
    warnings: list = field(default_factory=list)

    @property
    def non_simplicial(self):
        return not self.simplicial


def cone_report(generators):
    """Rank, per-generator extremality and simplicial verdict."""
    gens = [tuple(g) for g in generators]
    msgs = []
    extreme = []
    for i, g in enumerate(gens):
        others = gens[:i] + gens[i + 1:]
        same = [h for h in others if primitive(h) == primitive(g)]
        extreme.append(not same and not in_cone(others, g))
    if len({primitive(g) for g in gens}) < len(gens):
        msgs.append("duplicate generators")
    cone = Cone(gens)
    r = cone.rank
    simplicial = len(cone.generators) == r
    for m in msgs:
        warnings.warn(m)
    return CentralConeReport(cone, r, tuple(extreme), simplicial, msgs)


def central_cone(ed):
    """The cone spanned by e_0 and the extended weights of a, b and r."""
    a, b = ed.edge
    n1 = ed.base.n + 1
    gens = [_unit(n1, 0)] + [primitive(extended_weight_vector(ed, u)) for u in (a, b, ed.root)]
    return cone_report(gens)


def deformation_fan(ed):
    """Documented part of the tropicalizing fan of the edge deformation.

    Listed: the central cone, and the 2-cones joining adjacent vertices of
    the enriched diagram that are not already faces of it.  Flagged partial.
    """
    rays, labels = deformation_trop_rays(ed)
    index = {lab: i for i, lab in enumerate(labels)}
    a, b = ed.edge
    central = tuple(sorted(index[x] for x in ("z0", a, b, ed.root)))
    cones = [central]
    central_faces = set()
    gens = [rays[j] for j in central]
    for f in faces(gens):
        central_faces.add(tuple(sorted(central[i] for i in f)))
    for u, v in ed.tilde.edges:
        c = tuple(sorted((index[u], index[v])))
        if c not in central_faces:
            cones.append(c)
    return Fan(len(rays[0]), rays, cones, partial=True, labels=tuple(labels))


@dataclass
class DualComplex:
    vertices: tuple
    edges: tuple

    def to_dict(self):
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    def to_dot(self):
        lines = ["graph dual_complex {"]
        lines += [f'  "{v}";' for v in self.vertices]
        lines += [f'  "{u}" -- "{v}";' for u, v in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"


def node_subtree(tilde):
    nodes = set(tilde.nodes)
    edges = sorted(tuple(sorted(e)) for e in tilde.edges if set(e) <= nodes)
    return DualComplex(tuple(sorted(nodes)), tuple(edges))


def dual_complex(ed):
    """Interior rays of the deformation fan, joined along 2-dimensional faces."""
    fan = deformation_fan(ed)
    interior = [i for i, r in enumerate(fan.rays) if all(x > 0 for x in r)]
    names = {i: fan.labels[i] for i in interior}
    iset = set(interior)
    edges = sorted(tuple(sorted((names[i], names[j]))) for i, j in fan.two_cones()
                   if i in iset and j in iset)
    return DualComplex(tuple(sorted(names.values())), tuple(edges))


def stellar_subdivide(fan, ray):
    """Stellar subdivision of ``fan`` along ``ray``."""
    p = primitive(ray)
    if len(p) != fan.dim:
        raise ValueError("dimension mismatch")
    if p in fan.rays:
        return fan
    if not fan.contains(p):
        raise ValueError("ray lies outside the support of the fan")
    rays = list(fan.rays) + [p]
    new = len(rays) - 1
    cones = []
    for c in fan.cones:
        gens = [fan.rays[j] for j in c]
        if not in_cone(gens, p):
            cones.append(c)
            continue
        for facet in facets(gens):
            fgens = [gens[i] for i in facet]
            if fgens and in_cone(fgens, p):
                continue
            cones.append(tuple(sorted([c[i] for i in facet] + [new])))
    # keep only maximal cones
    uniq = []
    for c in cones:
        if c not in uniq:
            uniq.append(c)
    maximal = [c for c in uniq if not any(set(c) < set(o) for o in uniq)]
    labels = None if fan.labels is None else fan.labels + (f"ray{new}",)
    return Fan(fan.dim, rays, maximal, fan.partial, labels)


def orbit_fiber_dimension(fan, cone_index):
    """Dimension of the cone (index into ``fan.all_cones()``)."""
    cones = fan.all_cones()
    if not 0 <= cone_index < len(cones):
        raise IndexError(f"cone index {cone_index} out of range")
    c = cones[cone_index]
    return rank([fan.rays[j] for j in c]) if c else 0


# -- rounding fibres ----------------------------------------------------------


@dataclass
class MonoidPresentation:
    generators: int
    relations: list = field(default_factory=list)


@dataclass
class RoundingFiber:
    rank: int
    torsion: list
    components: int

    def to_dict(self):
        return {"rank": self.rank, "torsion": list(self.torsion), "components": self.components}


def rounding_fiber_group(p, verify=True):
    """Rank, torsion and component count of Hom((M/M*)^gp, S^1)."""
    g = p.generators
    rel = [list(map(int, r)) for r in p.relations if len(r)]
    if any(len(r) != g for r in rel):
        raise ValueError(f"relations must have {g} entries")
    if not rel:
        return RoundingFiber(g, [], 1)
    s, u, v = smith_normal_form(rel)
    if verify:
        if matmul(matmul(u, rel), v) != s:
            raise AssertionError("Smith normal form does not factor the relation matrix")
        if abs(bareiss_determinant(u)) != 1 or abs(bareiss_determinant(v)) != 1:
            raise AssertionError("Smith transforms are not unimodular")
    diag = [s[i][i] for i in range(min(len(s), g)) if s[i][i]]
    for x, y in zip(diag, diag[1:]):
        if y % x:
            raise AssertionError("invariant factors do not divide successively")
    torsion = [x for x in diag if x > 1]
    return RoundingFiber(g - len(diag), torsion, prod(torsion))

