import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kinfacade.facade import (
    DEFAULT_BOUNDS,
    FOLD_LIMIT,
    FacadeGenotype,
    FacadeLayout,
    ModuleType,
    decode,
    element_direct_block,
    encode,
    facade_shading,
    genotype_dims,
)
from kinfacade.solar import SunState


def sun_with_profile(profile, azimuth=math.pi):
    """A sun in front of a south facade with the given profile angle."""
    return SunState(altitude=max(profile, 1e-6), azimuth=azimuth, profile_angle=profile,
                    incidence_cos=math.cos(profile), facade_azimuth=180.0)


class TestTaxonomy:
    def test_element_counts(self):
        assert [t.elements for t in ModuleType] == [1, 4, 16]

    @pytest.mark.parametrize("value", [1, "2", "type3", ModuleType.TYPE1])
    def test_parse(self, value):
        assert isinstance(ModuleType.parse(value), ModuleType)

    def test_parse_rejects(self):
        with pytest.raises(ValueError):
            ModuleType.parse(4)

    def test_layout_size_mismatch(self):
        with pytest.raises(ValueError):
            FacadeLayout(2, 2, (ModuleType.TYPE1,) * 3)

    def test_default_layout(self):
        layout = FacadeLayout()
        assert layout.n_modules == 16 and layout.facade_azimuth == 180.0


class TestDims:
    def test_all_type3(self):
        assert genotype_dims(FacadeLayout()) == 256

    def test_single_type1(self):
        assert genotype_dims(FacadeLayout.uniform(1, 1, 1)) == 1

    def test_all_type2(self):
        assert genotype_dims(FacadeLayout.uniform(4, 4, 2)) == 64

    @given(st.lists(st.sampled_from(list(ModuleType)), min_size=1, max_size=12))
    def test_mixture(self, types):
        layout = FacadeLayout(1, len(types), tuple(types))
        assert genotype_dims(layout) == sum({1: 1, 2: 4, 3: 16}[t.value] for t in types)


class TestDecode:
    def test_type2_order(self):
        g = decode([0.5, 0.7, 0.9, 1.1], FacadeLayout.uniform(1, 1, 2))
        np.testing.assert_array_equal(g.angles[0], [0.5, 0.7, 0.9, 1.1])
        # labels run down the columns: R1 R3 / R2 R4
        np.testing.assert_array_equal(g.matrix(0), [[0.5, 0.9], [0.7, 1.1]])

    def test_type3_matrix_corners(self):
        v = np.linspace(0.5, 1.5, 16)
        m = decode(v, FacadeLayout.uniform(1, 1, 3)).matrix(0)
        assert (m[0, 0], m[3, 0], m[0, 3], m[3, 3]) == (v[0], v[3], v[12], v[15])

    def test_all_min(self):
        layout = FacadeLayout()
        g = decode(np.full(256, 0.5), layout)
        assert all(np.all(a == 0.5) for a in g.angles)

    def test_module_grouping(self):
        layout = FacadeLayout(1, 3, (1, 2, 1))
        g = decode([0.6, 0.7, 0.8, 0.9, 1.0, 1.1], layout)
        assert [a.tolist() for a in g.angles] == [[0.6], [0.7, 0.8, 0.9, 1.0], [1.1]]

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            decode(np.full(10, 1.0), FacadeLayout())

    def test_out_of_bounds(self):
        with pytest.raises(ValueError):
            decode([0.2], FacadeLayout.uniform(1, 1, 1), DEFAULT_BOUNDS)

    def test_bounds_beyond_quarter_turn(self):
        with pytest.raises(ValueError):
            decode([1.0], FacadeLayout.uniform(1, 1, 1), (0.0, 2.0))

    @settings(max_examples=100, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_round_trip(self, seed):
        rng = np.random.default_rng(seed)
        layout = FacadeLayout(2, 3, tuple(rng.integers(1, 4, size=6)))
        v = rng.uniform(*DEFAULT_BOUNDS, genotype_dims(layout))
        np.testing.assert_array_equal(encode(decode(v, layout)), v)

    def test_json_round_trip(self):
        rng = np.random.default_rng(1)
        g = decode(rng.uniform(0.5, 1.57, 256), FacadeLayout())
        text = g.to_json()
        assert set(json.loads(text)) == {"layout", "bounds", "angles"}
        assert FacadeGenotype.from_json(text) == g


class TestElementBlock:
    def test_closed_blocks_everything(self):
        for gamma in np.linspace(-1.5, 1.5, 13):
            assert element_direct_block(0.0, gamma) == 1.0

    def test_perpendicular_normal_sun(self):
        assert element_direct_block(math.pi / 2, 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_clamped_above_one(self):
        assert math.cos(math.pi / 4) + math.sin(math.pi / 4) == pytest.approx(1.4142135623730951)
        assert element_direct_block(math.pi / 4, math.pi / 4) == 1.0

    def test_projected_shadow(self):
        # shadow depth of a unit panel folded out by R under profile angle G
        r, g = 1.2, 0.3
        assert element_direct_block(r, g) == pytest.approx(math.cos(r) + math.sin(r) * math.tan(g))

    def test_sun_behind(self):
        with pytest.raises(ValueError):
            element_direct_block(1.0, math.pi / 2)

    def test_vectorised_in_unit_interval(self):
        rng = np.random.default_rng(0)
        r = rng.uniform(0, FOLD_LIMIT, 10**5)
        g = rng.uniform(-math.pi / 2 + 1e-9, math.pi / 2 - 1e-9, 10**5)
        b = element_direct_block(r, g)
        assert b.shape == (10**5,) and b.min() >= 0.0 and b.max() <= 1.0

    def test_monotone_at_normal_incidence(self):
        r = np.linspace(0, FOLD_LIMIT, 1001)
        assert np.all(np.diff(element_direct_block(r, 0.0)) <= 0)


class TestFacadeShading:
    def test_closed(self):
        g = FacadeGenotype.constant(FacadeLayout(), 0.0)
        assert facade_shading(g, sun_with_profile(0.4)) == (1.0, 1.0)

    def test_open_normal_sun(self):
        g = FacadeGenotype.constant(FacadeLayout(), math.pi / 2)
        d, f = facade_shading(g, sun_with_profile(0.0))
        assert d == pytest.approx(0.0, abs=1e-15) and f == pytest.approx(0.0, abs=1e-15)

    def test_sun_behind_no_direct_block(self):
        g = FacadeGenotype.constant(FacadeLayout(), 0.0)
        sun = SunState(0.5, 0.0, math.pi - 0.5, -math.cos(0.5), 180.0)
        assert facade_shading(g, sun) == (0.0, 1.0)

    def test_mixed_matches_brute_force(self):
        rng = np.random.default_rng(5)
        layout = FacadeLayout(2, 2, (1, 2, 3, 3))
        g = decode(rng.uniform(0.5, 1.57, genotype_dims(layout)), layout)
        sun = sun_with_profile(0.6)
        # per element: area share of its module divided by the module's element count
        direct = diffuse = 0.0
        for angles, t in zip(g.angles, layout.module_types):
            for a in angles:
                share = 1.0 / (4 * t.elements)
                direct += share * min(1.0, max(0.0, math.cos(a) + math.sin(a) * math.tan(0.6)))
                diffuse += share * math.cos(a)
        d, f = facade_shading(g, sun)
        assert d == pytest.approx(direct, rel=1e-12)
        assert f == pytest.approx(diffuse, rel=1e-12)

    def test_uniform_layout_is_plain_mean(self):
        rng = np.random.default_rng(2)
        g = decode(rng.uniform(0.5, 1.57, 256), FacadeLayout())
        _, f = facade_shading(g, sun_with_profile(0.2))
        assert f == pytest.approx(np.mean(np.cos(g.flat())), rel=1e-12)

    def test_permutation_invariant(self):
        rng = np.random.default_rng(3)
        v = rng.uniform(0.5, 1.57, 64)
        layout = FacadeLayout.uniform(4, 4, 2)
        sun = sun_with_profile(0.5)
        a = facade_shading(decode(v, layout), sun)
        b = facade_shading(decode(rng.permutation(v), layout), sun)
        assert a == pytest.approx(b, rel=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), profile=st.floats(-1.5, 1.5))
    def test_fractions_in_unit_interval(self, seed, profile):
        rng = np.random.default_rng(seed)
        g = decode(rng.uniform(0, FOLD_LIMIT, 16), FacadeLayout.uniform(1, 1, 3), (0.0, FOLD_LIMIT))
        d, f = facade_shading(g, sun_with_profile(profile))
        assert 0.0 <= d <= 1.0 and 0.0 <= f <= 1.0
