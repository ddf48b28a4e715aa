import pytest

from lncsat.antipodal import (
    ConstructionError,
    a,
    antipodal_boxes,
    antipodal_cycle,
    b,
    c,
    construct_antipodal_map,
    d,
    e,
    special_states,
    verify_antipodal,
)
from lncsat.dynamics import BooleanMap, attractors, fixed_points, hamming, state_from_bits as s, state_to_bits
from lncsat.regulatory import has_local_negative_circuit

# Boxes of the six-dimensional construction, each with the cycle state it is sent to.
N6_BOXES = [
    ({"101010", "101100", "111010"}, "111110"),
    ({"110101", "110110", "111101"}, "111111"),
    ({"011010", "111011", "011110"}, "011111"),
    ({"010100", "110100", "011000"}, "111100"),
    ({"101001", "101000", "110001"}, "111000"),
    ({"010010", "010000", "100010"}, "110000"),
    ({"011101", "101111", "101101"}, "001111"),
    ({"001110", "010111", "010110"}, "000111"),
    ({"100111", "001011", "101011"}, "000011"),
    ({"100001", "000100", "100101"}, "100000"),
    ({"000010", "001001", "001010"}, "000000"),
    ({"000101", "010011", "010101"}, "000001"),
]


def test_cycle_small():
    assert [state_to_bits(x, 2) for x in antipodal_cycle(2)] == ["00", "10", "11", "01"]
    assert [state_to_bits(x, 3) for x in antipodal_cycle(3)] == ["000", "100", "110", "111", "011", "001"]


def test_cycle_n6():
    cyc = antipodal_cycle(6)
    assert len(cyc) == len(set(cyc)) == 12
    assert state_to_bits(cyc[0], 6) == "000000"
    assert state_to_bits(cyc[6], 6) == "111111"
    assert a(13, 6) == a(1, 6) and a(0, 6) == a(12, 6)


@pytest.mark.parametrize("n", [3, 6, 7])
def test_cycle_distances(n):
    for i in range(1, 2 * n + 1):
        assert hamming(a(i, n), a(i + 1, n)) == 1
        assert hamming(a(i, n), a(i + n, n)) == n


def test_unit_and_helper_states():
    assert state_to_bits(e(7, 6), 6) == "100000"
    assert b(1, 6) == a(1, 6) ^ e(2, 6)
    assert c(3, 6) == b(3, 6) ^ e(5, 6)
    assert d(5, 6) == b(5, 6) ^ e(8, 6)


@pytest.mark.parametrize("n", [6, 7, 8])
def test_special_states_distinct(n):
    fam = special_states(n)
    allstates = [x for v in fam.values() for x in v]
    assert len(allstates) == len(set(allstates)) == 8 * n


@pytest.mark.parametrize("n", [3, 4, 5])
def test_special_states_collide_small(n):
    allstates = [x for v in special_states(n).values() for x in v]
    assert len(set(allstates)) < len(allstates)


def test_n6_boxes():
    boxes = {frozenset(state_to_bits(x, 6) for x in box): state_to_bits(t, 6) for box, t in antipodal_boxes(6)}
    assert boxes == {frozenset(box): target for box, target in N6_BOXES}


def test_n6_box_images():
    f = construct_antipodal_map(6)
    for box, target in N6_BOXES:
        assert all(f(s(x)) == s(target) for x in box)
    assert f(s("000000")) == s("100000")
    assert f(s("010000")) == s("110000")


def test_n6_counts():
    f = construct_antipodal_map(6)
    special = {x for v in special_states(6).values() for x in v}
    assert len(fixed_points(f)) == 16
    assert len([x for x in f.states() if f(x) != x]) == 48
    assert all(f(x) == x for x in f.states() if x not in special)


@pytest.mark.parametrize("n", [6, 7, 8])
def test_verify_passes(n):
    report = verify_antipodal(n)
    assert report.passed
    assert report.well_defined and report.cycle_trap and report.cycle_is_attractor
    assert report.negative_circuit is None
    assert report.special_count == 8 * n
    assert any(line.startswith("result: PASS") for line in report.lines())


def test_cycle_is_attractor_and_no_negative_circuit():
    f = construct_antipodal_map(6)
    cyclic = [att for att in attractors(f) if att.is_cyclic]
    assert len(cyclic) == 1
    assert set(cyclic[0].states) == set(antipodal_cycle(6))
    assert not has_local_negative_circuit(f)


@pytest.mark.parametrize("n", [1, 3, 5])
def test_small_n_rejected(n):
    with pytest.raises(ConstructionError):
        construct_antipodal_map(n)
    assert not verify_antipodal(n).passed


def test_map_text_roundtrip():
    f = construct_antipodal_map(6)
    text = f.to_text()
    assert text.splitlines()[0] == "6"
    assert BooleanMap.from_text(text) == f
