"""Polynomials with rational coefficients, weight vectors, and splice type systems.

Exponent and weight vectors are dense tuples indexed by the diagram's leaf
order (or by ``z0`` followed by the leaves for deformed systems).
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .diagram import DiagramError, linking_number, node_degree, star
from .linalg import maximal_minors
from .semigroup import check_semigroup_condition


class HammError(ValueError):
    """A coefficient matrix has a vanishing maximal minor."""


class SpliceSystemError(ValueError):
    """A splice type system cannot be built for the given diagram."""


class Polynomial:
    """Sparse polynomial: exponent tuple -> non-zero Fraction."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self._terms = {}
        for exp, c in (terms.items() if isinstance(terms, dict) else (terms or ())):
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent {exp}")
            c = self._terms.get(exp, Fraction(0)) + Fraction(c)
            if c:
                self._terms[exp] = c
            else:
                self._terms.pop(exp, None)

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @property
    def terms(self):
        return dict(self._terms)

    def support(self):
        return sorted(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different numbers of variables")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.nvars, {e: c for e, c in out.items() if c})

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = Fraction(other)
            return Polynomial(self.nvars, {e: c * other for e, c in self._terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def weights(self, w):
        """Weight w.m of each support exponent."""
        if len(w) != self.nvars:
            raise ValueError(f"weight vector of length {len(w)} for {self.nvars} variables")
        return {e: sum(Fraction(a) * b for a, b in zip(w, e)) for e in self._terms}

    def prepend_variable(self, power=0):
        """Same polynomial in one more variable, placed first."""
        return Polynomial(self.nvars + 1, {(power,) + e: c for e, c in self._terms.items()})

    def restrict_first_to_zero(self):
        """Drop the first variable by setting it to zero."""
        return Polynomial(self.nvars - 1, {e[1:]: c for e, c in self._terms.items() if e[0] == 0})

    def format(self, names=None):
        if not self._terms:
            return "0"
        if names is None:
            names = [f"z{i + 1}" for i in range(self.nvars)]
        parts = []
        for exp in sorted(self._terms, reverse=True):
            c = self._terms[exp]
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Polynomial({self.format()})"

    def to_terms(self):
        return [{"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in sorted(self._terms.items())]

    @classmethod
    def from_terms(cls, nvars, terms):
        return cls(nvars, [(t["exp"], Fraction(int(t["num"]), int(t.get("den", "1"))))
                           for t in terms])


# -- weight vectors -----------------------------------------------------------


def node_weight_vector(d, v):
    """w_v: the linking numbers l_{v,lambda} in leaf order."""
    if not d.is_node(v):
        raise DiagramError("not a node", v)
    return tuple(linking_number(d, v, lam) for lam in d.leaf_order)


def weighted_degree(exp, w):
    return sum(Fraction(a) * b for a, b in zip(w, exp))


def _as_int(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def initial_form(f, w):
    """Terms of ``f`` of minimal w-weight."""
    weights = f.weights(w)
    if not weights:
        return Polynomial.zero(f.nvars)
    low = min(weights.values())
    return Polynomial(f.nvars, {e: c for e, c in f.terms.items() if weights[e] == low})


def min_weight(f, w):
    weights = f.weights(w)
    return _as_int(min(weights.values())) if weights else None


def homogeneous_degree(f, w):
    """Common w-weight of the support, or None if f is not w-homogeneous."""
    values = set(f.weights(w).values())
    if len(values) != 1:
        return None
    return _as_int(values.pop())


def validate_higher_order(g, v, d):
    """True iff every exponent of g has w_v-weight strictly above d_v."""
    w = node_weight_vector(d, v)
    dv = node_degree(d, v)
    return all(x > dv for x in g.weights(w).values())


@dataclass
class InitialSystem:
    """Initial forms of each generator.

    ``generators_monomial_free`` only says that no single generator has a
    monomial initial form; it is necessary, not sufficient, for the weight to
    lie in the local tropicalization.
    """

    forms: list
    generators_monomial_free: bool


def initial_system(system, w):
    polys = system.polynomials() if hasattr(system, "polynomials") else list(system)
    forms = [initial_form(f, w) for f in polys]
    return InitialSystem(forms, all(len(f) >= 2 for f in forms))


# -- Hamm condition -----------------------------------------------------------


@dataclass
class HammVerdict:
    ok: bool
    failing_columns: tuple = None

    def __bool__(self):
        return self.ok


def hamm_check(matrix):
    """All maximal minors of a k x m matrix (k <= m) non-zero?"""
    k = len(matrix)
    if k == 0:
        return HammVerdict(True)
    m = len(matrix[0])
    if any(len(row) != m for row in matrix):
        raise ValueError("ragged matrix")
    if k > m:
        raise ValueError(f"hamm_check needs k <= m, got {k} x {m}")
    rows = [[Fraction(x) for x in row] for row in matrix]
    for cols, det in maximal_minors(rows):
        if det == 0:
            return HammVerdict(False, cols)
    return HammVerdict(True)


def vandermonde_matrix(ncols, nrows, seed=0):
    """Row i, column j holds t_j^i with t_j = seed + j + 1."""
    if seed < 0:
        raise ValueError("seed must be non-negative")
    return [[(seed + j + 1) ** i for j in range(ncols)] for i in range(nrows)]


# -- systems ----------------------------------------------------------------


@dataclass
class SpliceSystem:
    """Strict splice type system: per node, valency - 2 polynomials.

    ``matrices[v]`` has one row per equation and one column per edge at v,
    columns ordered by ``diagram.node_edge_order(v)``; ``exponents[(v, w)]``
    is the admissible exponent vector chosen for the edge from v to w.
    """

    diagram: object
    equations: dict
    matrices: dict
    exponents: dict
    variables: tuple = field(default=None)

    def __post_init__(self):
        if self.variables is None:
            self.variables = tuple(self.diagram.leaf_order)

    @property
    def nvars(self):
        return len(self.variables)

    def polynomials(self):
        return [f for v in self.equations for f in self.equations[v]]

    def labelled(self):
        return [((v, i + 1), f) for v in self.equations for i, f in enumerate(self.equations[v])]

    def __len__(self):
        return sum(len(fs) for fs in self.equations.values())

    def __eq__(self, other):
        if not isinstance(other, SpliceSystem):
            return NotImplemented
        return (self.diagram == other.diagram and self.equations == other.equations
                and self.matrices == other.matrices and self.exponents == other.exponents)

    def to_dict(self):
        nodes = []
        for v, fs in self.equations.items():
            order = self.diagram.node_edge_order(v)
            nodes.append({
                "node": v,
                "edges": list(order),
                "exponents": [list(self.exponents[(v, w)]) for w in order],
                "matrix": [[str(Fraction(x)) for x in row] for row in self.matrices[v]],
                "equations": [f.to_terms() for f in fs],
            })
        return {"kind": "splice_system", "variables": list(self.variables),
                "diagram": self.diagram.to_dict(), "nodes": nodes}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"


def system_from_dict(doc):
    from .diagram import diagram_from_dict

    if doc.get("kind") != "splice_system":
        raise ValueError("not a splice_system document")
    d = diagram_from_dict(doc["diagram"])
    variables = tuple(doc["variables"])
    equations, matrices, exponents = {}, {}, {}
    for item in doc["nodes"]:
        v = item["node"]
        equations[v] = [Polynomial.from_terms(len(variables), t) for t in item["equations"]]
        matrices[v] = [[Fraction(x) for x in row] for row in item["matrix"]]
        for w, m in zip(item["edges"], item["exponents"]):
            exponents[(v, w)] = tuple(m)
    return SpliceSystem(d, equations, matrices, exponents, variables)


def admissible_exponents(d, overrides=None):
    """m_{v,e} for every (node, neighbour), lexicographically minimal by default.

    Raises SpliceSystemError when the semigroup condition fails somewhere.
    """
    overrides = overrides or {}
    out = {}
    for check in check_semigroup_condition(d):
        key = (check.node, check.towards)
        if key in overrides:
            m = tuple(overrides[key])
            w = node_weight_vector(d, check.node)
            beyond = {d.leaf_index(lam) for lam in check.leaves}
            if any(m[i] for i in range(len(m)) if i not in beyond):
                raise SpliceSystemError(f"exponent for {key} uses leaves not beyond the edge")
            if weighted_degree(m, w) != check.degree:
                raise SpliceSystemError(f"exponent for {key} is not admissible")
            out[key] = m
            continue
        if not check.ok:
            raise SpliceSystemError(f"semigroup condition fails at {check.node} towards {check.towards}")
        m = [0] * d.n
        for lam, a in zip(check.leaves, check.representation.coefficients):
            m[d.leaf_index(lam)] = a
        out[key] = tuple(m)
    return out


def strict_splice_system(d, coefficients=None, seed=0, exponents=None):
    """Strict splice type system of ``d``.

    ``coefficients`` maps a node to its matrix (rows = equations, columns =
    edges in ``d.node_edge_order(v)``); missing nodes get the Vandermonde
    matrix with parameters seed+1, seed+2, ...
    """
    from .diagram import check_determinant_condition

    if not check_determinant_condition(d).ok:
        raise SpliceSystemError("edge determinant condition fails")
    coefficients = coefficients or {}
    ms = admissible_exponents(d, exponents)
    equations, matrices = {}, {}
    for v in d.nodes:
        order = d.node_edge_order(v)
        k = len(order) - 2
        if v in coefficients:
            mat = [[Fraction(x) for x in row] for row in coefficients[v]]
            if len(mat) != k or any(len(row) != len(order) for row in mat):
                raise SpliceSystemError(f"matrix at {v} must be {k} x {len(order)}")
        else:
            mat = [[Fraction(x) for x in row] for row in vandermonde_matrix(len(order), k, seed)]
        verdict = hamm_check(mat)
        if not verdict:
            raise HammError(f"matrix at {v} has a vanishing minor on columns {verdict.failing_columns}")
        matrices[v] = mat
        equations[v] = [
            Polynomial(d.n, {ms[(v, w)]: row[j] for j, w in enumerate(order)}) for row in mat
        ]
    return SpliceSystem(d, equations, matrices, {k: ms[k] for k in ms})


def bph_system(degrees, matrix):
    """Pham-Brieskorn-Hamm system: row i is sum_j c_ij z_j^{p_j}."""
    n = len(degrees)
    if n < 3:
        raise SpliceSystemError("need at least three exponents")
    if len(matrix) != n - 2 or any(len(row) != n for row in matrix):
        raise SpliceSystemError(f"matrix must be {n - 2} x {n}")
    mat = [[Fraction(x) for x in row] for row in matrix]
    verdict = hamm_check(mat)
    if not verdict:
        raise HammError(f"vanishing minor on columns {verdict.failing_columns}")
    d = star(degrees)
    exps = []
    for j, p in enumerate(degrees):
        e = [0] * n
        e[j] = p
        exps.append(tuple(e))
    equations = {"v": [Polynomial(n, dict(zip(exps, row))) for row in mat]}
    exponents = {("v", lam): exps[j] for j, lam in enumerate(d.leaf_order)}
    return SpliceSystem(d, equations, {"v": mat}, exponents)
