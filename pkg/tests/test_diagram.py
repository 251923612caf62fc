import random
from fractions import Fraction

import pytest

from legdga import fixtures
from legdga.diagram import (
    DiagramError,
    KnotDiagram,
    PlaneCurve,
    capping_rotation,
    dump_curve,
    parse_curve,
    perturb_curve,
    reverse_orientation,
    rotation_number,
    signed_area,
    validate,
    validation_report,
)

from conftest import ALL_SIX, knot_diagram

F = Fraction


def square(k=1):
    return [(F(0), F(0)), (F(k), F(0)), (F(k), F(k)), (F(0), F(k))]


class TestParsing:
    def test_fixture_round_trip(self):
        curve = fixtures.load("unknot-fig4")
        assert parse_curve(dump_curve(curve)) == curve

    def test_division_by_zero(self):
        with pytest.raises(DiagramError):
            parse_curve('{"name": "x", "vertices": [["1/0", "0"], ["1", "0"], ["0", "1"]]}')

    def test_unknown_key(self):
        with pytest.raises(DiagramError):
            parse_curve('{"name": "x", "vertices": [["0", "0"], ["1", "0"], ["0", "1"]], "z": 1}')

    def test_malformed_json(self):
        with pytest.raises(DiagramError):
            parse_curve("{")

    def test_reverse_is_reversed_order(self):
        curve = fixtures.load("unknot-fig4")
        rev = reverse_orientation(curve)
        assert rev.vertices == curve.vertices[::-1]
        assert reverse_orientation(rev) == curve


class TestValidation:
    def test_unit_square_area(self):
        problems = validation_report(PlaneCurve("sq", tuple(square())))
        assert any("signed area = 1" in p for p in problems)
        assert signed_area(square()) == 1

    def test_concurrent_segments(self):
        # a figure with three segments through the origin
        v = [(F(-1), F(-1)), (F(1), F(1)), (F(1), F(-1)), (F(-1), F(1)),
             (F(0), F(2)), (F(0), F(-2)), (F(-2), F(-2))]
        with pytest.raises(DiagramError):
            validate(PlaneCurve("c", tuple(v)))

    def test_fixtures_valid(self):
        for name in fixtures.KNOTS:
            validate(fixtures.load(name))

    def test_bowtie_is_valid(self):
        v = [(F(-1), F(-1)), (F(1), F(1)), (F(1), F(-1)), (F(-1), F(1))]
        d = KnotDiagram(PlaneCurve("bowtie", tuple(v)))
        assert len(d.crossings) == 1 and d.crossings[0].height > 0

    def test_zero_height_rejected(self):
        pts = [(-2, -1), (1, 1), (-2, 0), (-1, 2), (-2, 1), (1, 0), (-1, 0)]
        curve = PlaneCurve("flat", tuple((F(x), F(y)) for x, y in pts))
        assert validation_report(curve) == []
        with pytest.raises(DiagramError, match="zero height"):
            KnotDiagram(curve)


class TestCombinatorics:
    def test_unknot_counts(self):
        d = knot_diagram("unknot-fig4")
        assert len(d.crossings) == 2
        assert d.n_arcs == 4
        assert len(d.faces) == 4
        assert sum(not f.bounded for f in d.faces) == 1

    def test_trefoil_counts(self):
        d = knot_diagram("trefoil-fig5")
        assert len(d.crossings) == 6 and d.n_arcs == 12

    def test_fig8_counts(self):
        assert len(knot_diagram("fig8-fig5").crossings) == 7

    def test_heights_positive_and_distinct(self):
        d = knot_diagram("unknot-fig4")
        ha, hb = d.crossing("a").height, d.crossing("b").height
        assert ha > 0 and hb > 0 and ha != hb

    def test_heights_survive_reversal(self):
        for name in fixtures.KNOTS:
            d, r = knot_diagram(name), knot_diagram(name, True)
            assert {c.label: c.height for c in d.crossings} == {c.label: c.height for c in r.crossings}

    def test_reeb_alternation(self):
        for name, rev in ALL_SIX:
            for c in knot_diagram(name, rev).crossings:
                rs = c.reeb_signs
                assert rs in ((1, -1, 1, -1), (-1, 1, -1, 1))

    def test_local_lemmas_hold(self):
        for name, rev in ALL_SIX:
            assert knot_diagram(name, rev).local_checks() == []


class TestCapping:
    def test_unknot_capping_paths(self):
        d = knot_diagram("unknot-fig4")
        a, b = d.crossing("a").capping, d.crossing("b").capping
        assert a.rotation == F(-3, 4) and b.rotation == F(1, 4)
        assert sum(a.arcs) == 1 and sum(b.arcs) == 3
        # the single arc of gamma_a is also traversed by gamma_b
        assert all(y for x, y in zip(a.arcs, b.arcs) if x)

    def test_loop_rotation(self):
        curve = fixtures.load("unknot-fig4")
        n = len(curve)
        dirs = [curve.vertices[(i + 1) % n] for i in range(n)]
        dirs = [(q[0] - p[0], q[1] - p[1]) for p, q in zip(curve.vertices, dirs)]
        assert rotation_number(dirs + dirs[:1], F(1)) == 1

    def test_convex_polygon(self):
        dirs = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 0)]
        assert rotation_number(dirs, F(1)) == 1

    def test_capping_snap(self):
        # a quarter turn bent by 30 degrees still snaps to 1/4
        assert capping_rotation([(1, 0), (1, 2)]) == F(1, 4)
        assert capping_rotation([(1, 0), (-1, 2)]) == F(1, 4)


class TestInvariants:
    @pytest.mark.parametrize(
        "name,rev,tb,r,degrees",
        [
            ("unknot-fig4", False, -2, 1, {"a": 1, "b": -1}),
            ("unknot-fig4", True, -2, -1, {"a": 3, "b": 1}),
            ("trefoil-fig5", False, -6, 1, {f"a{i}": -1 for i in range(1, 7)}),
            ("trefoil-fig5", True, -6, -1, {f"a{i}": 1 for i in range(1, 7)}),
            ("fig8-fig5", False, -3, 0, {"a1": 0, "a2": 1, "a3": 0, "a4": 1, "a5": 1, "a6": -1, "a7": 1}),
            ("fig8-fig5", True, -3, 0, {"a1": 0, "a2": 1, "a3": 0, "a4": 1, "a5": 1, "a6": -1, "a7": 1}),
        ],
    )
    def test_table(self, name, rev, tb, r, degrees):
        d = knot_diagram(name, rev)
        assert (d.invariants.tb, d.invariants.r) == (tb, r)
        assert {c.label: c.grading for c in d.crossings} == degrees

    def test_orientation_signs(self):
        for name in ("unknot-fig4", "trefoil-fig5"):
            for c in knot_diagram(name).crossings:
                assert c.orientation_signs == (1, 1, 1, 1)
        d = knot_diagram("fig8-fig5")
        for c in d.crossings:
            negatives = c.orientation_signs.count(-1)
            assert negatives == (2 if c.label in ("a1", "a3") else 0)


class TestPerturbation:
    @pytest.mark.parametrize("name", fixtures.KNOTS)
    def test_perturbation_keeps_combinatorics(self, name):
        curve = fixtures.load(name)
        ref = KnotDiagram(curve)
        rng = random.Random(7)
        for _ in range(3):
            p = perturb_curve(curve, rng, same_as=ref)
            assert p != curve
            assert signed_area(p.vertices) == 0
            d = KnotDiagram(p)
            assert d.invariants == ref.invariants
