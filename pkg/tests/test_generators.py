import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chordgraph.generators import AXES, gen_convex, gen_onesided, gen_uniform, lattice_side
from chordgraph.geometry import Direction, is_convex_position, is_generic, is_one_sided


class TestConvex:
    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 200), st.integers(0, 100_000))
    def test_convex_and_generic(self, n, seed):
        ps = gen_convex(n, seed)
        assert len(ps) == n
        assert is_convex_position(ps)
        assert all(is_generic(ps, d) for d in AXES)

    def test_seeded(self):
        assert gen_convex(20, seed=5) == gen_convex(20, seed=5)
        assert gen_convex(20, seed=5) != gen_convex(20, seed=6)

    def test_too_small(self):
        with pytest.raises(ValueError):
            gen_convex(1, seed=0)


class TestOneSided:
    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 80), st.integers(0, 100_000), st.floats(0.0, 359.0, allow_nan=False))
    def test_one_sided(self, n, seed, angle):
        d = Direction(angle)
        ps = gen_onesided(n, d, seed)
        assert len(ps) == n
        assert is_one_sided(ps, d)
        assert is_generic(ps, d.normal)


class TestUniform:
    def test_unit_square(self):
        ps = gen_uniform(50, seed=1)
        assert len(ps) == 50
        assert ps.coords.min() >= 0.0 and ps.coords.max() < 1.0


def test_lattice_side():
    assert lattice_side(2) == 2
    assert lattice_side(64) == 8
    assert lattice_side(1000) == 32
