import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from splicetype import corpus
from splicetype.deform import adapted_triple, enrich
from splicetype.polysys import initial_form, strict_splice_system
from splicetype.tropfan import (Cone, Fan, MonoidPresentation, central_cone, cone_report,
                                deformation_fan, dual_complex, facets, faces, fan_from_dict,
                                in_cone, orbit_fiber_dimension, rounding_fiber_group,
                                stellar_subdivide, surface_trop_fan)

seeds = st.integers(min_value=0, max_value=2**32)
vec3 = st.tuples(*[st.integers(-5, 5)] * 3)


@settings(max_examples=200, deadline=None)
@given(st.lists(vec3, min_size=1, max_size=4), st.lists(st.integers(0, 6), min_size=4, max_size=4))
def test_nonnegative_combinations_are_members(gens, coeffs):
    x = tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(3))
    assert in_cone(gens, x)


@settings(max_examples=200, deadline=None)
@given(vec3, vec3, vec3, st.integers(0, 5), st.integers(0, 5), st.integers(1, 5))
def test_negative_coordinate_excluded(g1, g2, g3, a, b, c):
    gens = [g1, g2, g3]
    from splicetype.linalg import rank
    if rank(gens) < 3:
        return
    x = tuple(a * g1[i] + b * g2[i] - c * g3[i] for i in range(3))
    assert not in_cone(gens, x)


def test_square_pyramid():
    gens = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (0, 0, 1)]
    cone = Cone(gens)
    assert len(cone.generators) == 4
    assert cone.rank == 3
    assert len(cone.facets()) == 4 and all(len(f) == 2 for f in cone.facets())
    assert len(cone.faces()) == 1 + 4 + 4 + 1
    assert cone.contains((0, 0, 5)) and not cone.contains((1, 1, 1))


def test_simplicial_faces():
    gens = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert len(faces(gens)) == 8
    assert facets([(1, 0)]) == [frozenset()]


def test_cone_report_duplicates():
    with pytest.warns(UserWarning, match="duplicate"):
        rep = cone_report([(1, 0), (2, 0), (0, 1)])
    assert rep.extreme == (False, False, True)
    assert rep.simplicial


def test_two_node_49_11_surface_fan(pair4911):
    fan = surface_trop_fan(pair4911)
    assert fan.dim == 5 and len(fan.rays) == 7
    assert len(fan.cones) == 6
    assert fan.rays[5] == (147, 98, 60, 84, 210)
    assert fan.contains((147 + 210, 98 + 140, 60 + 110, 84 + 154, 210 + 385))
    assert not fan.contains((1, 1, 0, 0, 0))
    assert fan_from_dict(json.loads(fan.to_json())) == fan
    assert '"a" -- "b"' in fan.to_dot() or '"b" -- "a"' in fan.to_dot()


def test_surface_fan_needs_valid_diagram():
    from splicetype.diagram import DiagramError, SpliceDiagram
    vertices = {"a": "node", "b": "node", "l1": "leaf", "l2": "leaf", "l3": "leaf", "l4": "leaf"}
    edges = [("a", "l1"), ("a", "l2"), ("a", "b"), ("b", "l3"), ("b", "l4")]
    decs = {("a", "l1"): 2, ("a", "l2"): 3, ("a", "b"): 23, ("b", "a"): 11,
            ("b", "l3"): 5, ("b", "l4"): 7}
    with pytest.raises(DiagramError, match="semigroup"):
        surface_trop_fan(SpliceDiagram(vertices, edges, decs))


def _pair4911_ed():
    d = corpus.two_node_49_11()
    return enrich(d, ("a", "b"), adapted_triple(d, ("a", "b")))


def test_central_cone_faces():
    rep = central_cone(_pair4911_ed())
    assert rep.rank == 3 and all(rep.extreme) and rep.non_simplicial
    assert len(rep.cone.faces()) == 10


def test_deformation_fan_is_partial():
    ed = _pair4911_ed()
    fan = deformation_fan(ed)
    assert fan.partial
    assert fan.labels[0] == "z0"
    assert len(fan.cones[0]) == 4
    assert fan_from_dict(fan.to_dict()) == fan


def test_dual_complex_dot():
    dot = dual_complex(_pair4911_ed()).to_dot()
    assert '"a" -- "r"' in dot and '"b" -- "r"' in dot


def test_stellar_subdivision_of_e8(e8):
    fan = surface_trop_fan(e8)
    ray = (16, 10, 6)  # inside the cone spanned by e_x and w_v
    new = stellar_subdivide(fan, ray)
    assert len(new.rays) == 5 and len(new.cones) == 4
    assert stellar_subdivide(fan, (15, 10, 6)) is fan
    with pytest.raises(ValueError, match="outside"):
        stellar_subdivide(fan, (1, 1, 1))
    rng = random.Random(3)
    for _ in range(200):
        c = rng.choice(fan.cones)
        s, t = rng.randint(0, 9), rng.randint(0, 9)
        x = tuple(s * a + t * b for a, b in zip(fan.rays[c[0]], fan.rays[c[1]]))
        assert new.contains(x)


def test_stellar_subdivision_full_cone():
    fan = Fan(2, [(1, 0), (0, 1)], [(0, 1)])
    new = stellar_subdivide(fan, (1, 1))
    assert sorted(new.cones) == [(0, 2), (1, 2)]
    assert [orbit_fiber_dimension(new, i) for i in range(len(new.all_cones()))] == [0, 1, 1, 1, 2, 2]
    with pytest.raises(IndexError):
        orbit_fiber_dimension(new, 99)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_initial_forms_constant_on_random_fans(seed):
    rng = random.Random(seed)
    d = corpus.random_diagram(rng)
    s = strict_splice_system(d)
    fan = surface_trop_fan(d)
    for c in fan.cones:
        a, b = (fan.rays[j] for j in c)
        base = None
        for _ in range(10):
            s1, s2 = Fraction(rng.randint(1, 30), rng.randint(1, 30)), rng.randint(1, 30)
            w = tuple(s1 * x + s2 * y for x, y in zip(a, b))
            forms = [initial_form(f, w) for f in s.polynomials()]
            base = base or forms
            assert forms == base


@pytest.mark.parametrize("g, rel, expected", [
    (2, [], (2, [], 1)),
    (2, [[2, -2]], (1, [2], 2)),
    (3, [[2, 0, 0], [0, 3, 0]], (1, [6], 6)),
    (2, [[1, -1]], (1, [], 1)),
    (2, [[4, 6], [6, 4]], (0, [2, 10], 20)),
])
def test_rounding_fiber(g, rel, expected):
    r = rounding_fiber_group(MonoidPresentation(g, rel))
    assert (r.rank, r.torsion, r.components) == expected


def test_rounding_fiber_bad_relation():
    with pytest.raises(ValueError):
        rounding_fiber_group(MonoidPresentation(2, [[1, 2, 3]]))


def test_fan_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        Fan(2, [(1, 0, 0)], [(0,)])
