import pytest

from legdga.disks import (
    dimension,
    enumerate_rigid_disks,
    oracle_enumerate,
    verify_area_identity,
)

from conftest import ALL_SIX, knot_diagram


def disks_at(name, label, rev=False):
    d = knot_diagram(name, rev)
    return d, enumerate_rigid_disks(d, d.crossing(label).index)


def test_unknot_a_has_two_disks():
    d, disks = disks_at("unknot-fig4", "a")
    by_word = {x.word: x for x in disks}
    assert set(by_word) == {(), ("b", "b")}
    assert by_word[("b", "b")].winding == -1 and by_word[("b", "b")].t_exponent == 1
    assert by_word[()].winding == 0
    assert all(x.sign == 1 for x in disks)


def test_unknot_dimension_formula():
    d, disks = disks_at("unknot-fig4", "a")
    for x in disks:
        assert dimension(d, x.crossing, x.negatives, x.winding) == 0


def test_empty_word_area_is_height():
    d, disks = disks_at("unknot-fig4", "a")
    unit = next(x for x in disks if not x.word)
    assert unit.area == d.crossing("a").height


def test_trefoil_disk_counts():
    d = knot_diagram("trefoil-fig5")
    counts = {lab: len(enumerate_rigid_disks(d, d.crossing(lab).index)) for lab in d.labels}
    assert counts == {"a1": 2, "a2": 2, "a3": 2, "a4": 0, "a5": 0, "a6": 0}
    for lab in d.labels:
        for x in enumerate_rigid_disks(d, d.crossing(lab).index):
            assert x.sign == 1


def test_fig8_a1():
    d, disks = disks_at("fig8-fig5", "a1")
    words = sorted((x.word for x in disks), key=len)
    assert words == [("a6",), ("a6", "a3"), ("a6", "a3", "a5", "a6")]
    signs = {x.word: x.sign for x in disks}
    assert signs[("a6",)] == -1


@pytest.mark.parametrize("name,rev", ALL_SIX)
def test_area_and_oracle(name, rev):
    d = knot_diagram(name, rev)
    for c in range(len(d.crossings)):
        primary = enumerate_rigid_disks(d, c)
        for x in primary:
            assert verify_area_identity(d, x)
            assert x.area > 0 and x.area == sum(d.faces[f].area * m for f, m in x.tiles)
        assert [x.key for x in primary] == [x.key for x in oracle_enumerate(d, c)]
