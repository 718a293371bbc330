import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unidisc.frequency import (
    FrequencyBox,
    SubspaceIndex,
    box_of_s,
    composition_count,
    enumerate_compositions,
    from_json_dict,
    hyperbolic_cross,
    to_json_dict,
)


def test_box_counts():
    box = FrequencyBox((2, 3))
    assert box.d == 2
    assert box.dim == 5 * 7
    assert box.degree_volume == 6
    assert box.shape() == (5, 7)
    assert list(box.axis_frequencies(0)) == [-2, -1, 0, 1, 2]


def test_box_zero_axis():
    # N_j = 0 contributes a single zero frequency but still counts as
    # scale 1 in the degree volume
    box = FrequencyBox((0, 4))
    assert box.dim == 9
    assert box.degree_volume == 4
    assert box.shape() == (1, 9)


def test_box_rejects_negative_degree():
    with pytest.raises(ValueError):
        FrequencyBox((2, -1))
    with pytest.raises(ValueError):
        FrequencyBox(())


def test_frequencies_lexicographic():
    box = FrequencyBox((1, 1))
    F = box.frequencies()
    assert F.shape == (9, 2)
    assert F[0].tolist() == [-1, -1]
    assert F[-1].tolist() == [1, 1]
    # strictly increasing lexicographically
    order = np.lexsort((F[:, 1], F[:, 0]))
    assert np.array_equal(order, np.arange(9))


def test_subspace_index():
    s = SubspaceIndex((3, 0, 1))
    assert s.n == 4
    assert s.d == 3
    assert s.box().N == (7, 0, 1)
    assert box_of_s((3, 0, 1)) == s.box()


def test_compositions_small():
    got = [c.s for c in enumerate_compositions(2, 2)]
    assert got == [(0, 2), (1, 1), (2, 0)]
    assert composition_count(4, 3) == 15
    assert len(enumerate_compositions(4, 3)) == 15


@given(n=st.integers(0, 7), d=st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_compositions_count_and_order(n, d):
    comps = enumerate_compositions(n, d)
    assert len(comps) == composition_count(n, d)
    seen = [c.s for c in comps]
    assert seen == sorted(seen)
    assert all(sum(s) == n for s in seen)
    assert len(set(seen)) == len(seen)


def test_hyperbolic_cross_small():
    cross = hyperbolic_cross(1, 2)
    # (+-1, 0) and (0, +-1) and the origin
    assert cross.size == 5
    assert {tuple(f) for f in cross.freqs} == {
        (-1, 0), (0, -1), (0, 0), (0, 1), (1, 0)}


def test_hyperbolic_cross_is_union_of_rectangles():
    n, d = 3, 2
    cross = hyperbolic_cross(n, d)
    members = set()
    for s in enumerate_compositions(n, d):
        members |= {tuple(f) for f in s.box().frequencies()}
    assert {tuple(f) for f in cross.freqs} == members
    # symmetric under negation
    assert {tuple(-f) for f in cross.freqs} == {tuple(f) for f in cross.freqs}


def test_cross_growth():
    sizes = [hyperbolic_cross(n, 2).size for n in range(5)]
    assert sizes[0] == 1
    assert all(a < b for a, b in zip(sizes, sizes[1:]))


def test_json_round_trip():
    box = FrequencyBox((2, 0, 1))
    assert from_json_dict(to_json_dict(box)) == box
    cross = hyperbolic_cross(2, 2)
    assert from_json_dict(to_json_dict(cross)) == cross


def test_json_cross_mismatch_rejected():
    data = to_json_dict(hyperbolic_cross(2, 2))
    data["freqs"] = data["freqs"][:-1]
    with pytest.raises(ValueError):
        from_json_dict(data)
