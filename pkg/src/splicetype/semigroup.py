"""Numerical semigroup membership and the semigroup condition.

Membership is decided with the residue-class table of the smallest
generator: for each residue ``r`` modulo ``g_min`` we store the least
element of the semigroup congruent to ``r`` (a shortest-path problem on the
residues).  ``t`` is representable iff ``t >= table[t % g_min]``.  A table
per suffix of the generator list lets us read off the lexicographically
smallest coefficient tuple greedily.
"""
import heapq
from dataclasses import dataclass

from .diagram import linking_number, node_degree, reduced_linking_number

DEFAULT_CAP = 64


def residue_table(generators):
    """Least semigroup element in each residue class mod min(generators)."""
    m = min(generators)
    inf = None
    best = [inf] * m
    best[0] = 0
    heap = [(0, 0)]
    while heap:
        value, r = heapq.heappop(heap)
        if value != best[r]:
            continue
        for g in generators:
            nv = value + g
            nr = nv % m
            if best[nr] is None or nv < best[nr]:
                best[nr] = nv
                heapq.heappush(heap, (nv, nr))
    return best


class _Suffixes:
    """Residue tables for every suffix generators[i:]."""

    def __init__(self, generators):
        self.generators = list(generators)
        self.tables = []
        for i in range(len(self.generators)):
            tail = self.generators[i:]
            self.tables.append((min(tail), residue_table(tail)))

    def representable(self, target, i):
        if target < 0:
            return False
        if i == len(self.generators):
            return target == 0
        m, table = self.tables[i]
        least = table[target % m]
        return least is not None and target >= least


def _check(target, generators):
    if not generators:
        raise ValueError("generator list is empty")
    if any(int(g) != g or g <= 0 for g in generators):
        raise ValueError("generators must be positive integers")
    if target < 0:
        raise ValueError("target must be non-negative")


def membership(target, generators):
    """Lexicographically smallest coefficient tuple writing ``target`` over
    ``generators``, or None when ``target`` is not in the semigroup."""
    _check(target, generators)
    suf = _Suffixes(generators)
    if not suf.representable(target, 0):
        return None
    coeffs = []
    rest = target
    for i, g in enumerate(generators):
        a = 0
        while not suf.representable(rest - a * g, i + 1):
            a += 1
        coeffs.append(a)
        rest -= a * g
    return tuple(coeffs)


def enumerate_representations(target, generators, cap=DEFAULT_CAP):
    """All representations in increasing lexicographic order, at most ``cap``."""
    _check(target, generators)
    if cap <= 0:
        raise ValueError("cap must be positive")
    suf = _Suffixes(generators)
    out = []

    def walk(i, rest, prefix):
        if len(out) >= cap:
            return
        if i == len(generators):
            out.append(tuple(prefix))
            return
        g = generators[i]
        a = 0
        while a * g <= rest and len(out) < cap:
            if suf.representable(rest - a * g, i + 1):
                prefix.append(a)
                walk(i + 1, rest - a * g, prefix)
                prefix.pop()
            a += 1

    walk(0, target, [])
    return out


@dataclass(frozen=True)
class Representation:
    """Coefficients a_lambda with sum a_lambda * g_lambda == target."""

    labels: tuple
    generators: tuple
    coefficients: tuple
    target: int

    def evaluate(self):
        return sum(a * g for a, g in zip(self.coefficients, self.generators))

    def as_dict(self):
        return dict(zip(self.labels, self.coefficients))


@dataclass(frozen=True)
class SemigroupCheck:
    node: str
    towards: str
    leaves: tuple
    generators: tuple          # linking numbers l_{v,lambda}
    reduced_generators: tuple  # reduced linking numbers l'_{v,lambda}
    degree: int                # d_v
    decoration: int            # d_{v,e}
    representation: Representation = None

    @property
    def ok(self):
        return self.representation is not None

    def to_dict(self):
        return {"node": self.node, "towards": self.towards, "leaves": list(self.leaves),
                "generators": list(self.generators),
                "reduced_generators": list(self.reduced_generators),
                "degree": self.degree, "decoration": self.decoration,
                "ok": self.ok,
                "coefficients": list(self.representation.coefficients) if self.ok else None}


def semigroup_checks(d, node, towards):
    leaves = tuple(d.leaves_beyond(node, towards))
    gens = tuple(linking_number(d, node, lam) for lam in leaves)
    red = tuple(reduced_linking_number(d, node, lam) for lam in leaves)
    dv = node_degree(d, node)
    dve = d.decoration(node, towards)
    full = membership(dv, gens)
    reduced = membership(dve, red)
    # both formulations scale into each other: l_{v,lam} d_{v,e} = l'_{v,lam} d_v
    if full != reduced:
        raise AssertionError(f"semigroup formulations disagree at {node}->{towards}")
    rep = None if full is None else Representation(leaves, gens, full, dv)
    return SemigroupCheck(node, towards, leaves, gens, red, dv, dve, rep)


def check_semigroup_condition(d, report=None):
    """One SemigroupCheck per (node, incident edge); optionally fills a report."""
    checks = []
    for v in d.nodes:
        for w in d.node_edge_order(v):
            checks.append(semigroup_checks(d, v, w))
    if report is not None:
        bad = [f"{c.node}->{c.towards}: {c.degree} not in <{', '.join(map(str, c.generators))}>"
               for c in checks if not c.ok]
        report.record("semigroup", not bad, bad)
        report.witnesses = [c.to_dict() for c in checks]
    return checks


def validate_diagram(d):
    """Full ValidationReport: structure, determinant and semigroup conditions."""
    from .diagram import check_determinant_condition

    report = d.structural_report()
    if not report.ok:
        report.record("determinant", False, ["skipped: structural checks failed"])
        report.record("semigroup", False, ["skipped: structural checks failed"])
        return report
    check_determinant_condition(d, report)
    check_semigroup_condition(d, report)
    return report
