import pytest

from topsectors.classify2d import TargetData, classify_based, pi1_sectors
from topsectors.cohomology import (
    CoefficientModule,
    build_complex,
    special_case_classify,
    twisted_second_cohomology,
)
from topsectors.complexes import catalog
from topsectors.xmod import target_catalog
from topsectors.zlinalg import AbelianGroup, IntMatrix

RP2 = target_catalog("rp2")


def untwisted(M, rank=1):
    return CoefficientModule.untwisted(rank, M.alphabet.names)


class TestCochainComplex:
    def test_dd_zero_everywhere(self):
        data = TargetData(RP2)
        spaces = [
            catalog("torus2"),
            catalog("rp2"),
            catalog("klein_bottle"),
            catalog("genus_surface", g=2),
            catalog("torus_knot", p=3, q=2),
            catalog("s1_wedge_s2"),
            catalog("sphere2"),
        ]
        for M in spaces:
            for sector in pi1_sectors(M, data):
                coeffs = CoefficientModule.for_target_sector(data, sector)
                cx = build_complex(M, coeffs)  # raises when d.d != 0
                if cx.d1.rows and cx.d0.rows:
                    assert cx.d1 @ cx.d0 == IntMatrix.zeros(cx.d1.rows, cx.d0.cols)

    def test_dd_zero_with_three_cells(self):
        for name in ("torus3", "s1_x_s2"):
            M = catalog(name)
            coeffs = untwisted(M)
            cx = build_complex(M, coeffs)
            if cx.d2.rows and cx.d1.rows:
                assert cx.d2 @ cx.d1 == IntMatrix.zeros(cx.d2.rows, cx.d1.cols)

    def test_torus2_trivial_sector_d1_vanishes(self):
        M = catalog("torus2")
        data = TargetData(RP2)
        coeffs = CoefficientModule.for_target_sector(data, {"a": (0,), "b": (0,)})
        cx = build_complex(M, coeffs)
        assert cx.d1 == IntMatrix.zeros(1, 2)


class TestUntwistedSanity:
    def test_ordinary_h2(self):
        # H^2 with integer coefficients of the closed surfaces
        assert twisted_second_cohomology(catalog("torus2"), untwisted(catalog("torus2"))) == AbelianGroup((0,))
        for g in (1, 2, 3):
            M = catalog("genus_surface", g=g)
            assert twisted_second_cohomology(M, untwisted(M)) == AbelianGroup((0,))
        M = catalog("rp2")
        assert twisted_second_cohomology(M, untwisted(M)) == AbelianGroup((2,))
        M = catalog("sphere2")
        assert twisted_second_cohomology(M, untwisted(M)) == AbelianGroup((0,))

    def test_klein_bottle_untwisted(self):
        M = catalog("klein_bottle")
        assert twisted_second_cohomology(M, untwisted(M)) == AbelianGroup((2,))


class TestTwistedValues:
    def test_torus2_sectors(self):
        M = catalog("torus2")
        data = TargetData(RP2)
        expected = {
            (0, 0): AbelianGroup((0,)),
            (1, 0): AbelianGroup((2,)),
            (0, 1): AbelianGroup((2,)),
            (1, 1): AbelianGroup((2,)),
        }
        for sector in pi1_sectors(M, data):
            coeffs = CoefficientModule.for_target_sector(data, sector)
            key = (sector["a"][0], sector["b"][0])
            assert twisted_second_cohomology(M, coeffs) == expected[key]

    def test_rp2_sectors(self):
        M = catalog("rp2")
        data = TargetData(RP2)
        values = {}
        for sector in pi1_sectors(M, data):
            coeffs = CoefficientModule.for_target_sector(data, sector)
            values[sector["a"][0]] = twisted_second_cohomology(M, coeffs)
        assert values == {0: AbelianGroup((2,)), 1: AbelianGroup((0,))}

    def test_klein_bottle_sectors(self):
        M = catalog("klein_bottle")
        data = TargetData(RP2)
        values = {}
        for sector in pi1_sectors(M, data):
            coeffs = CoefficientModule.for_target_sector(data, sector)
            values[(sector["a"][0], sector["b"][0])] = twisted_second_cohomology(
                M, coeffs
            )
        assert values == {
            (0, 0): AbelianGroup((2,)),
            (0, 1): AbelianGroup((2,)),
            (1, 0): AbelianGroup((2,)),
            (1, 1): AbelianGroup((0,)),
        }


class TestOracleEquivalence:
    def test_classification_matches_cohomology(self):
        data = TargetData(RP2)
        spaces = [
            catalog("torus2"),
            catalog("rp2"),
            catalog("klein_bottle"),
            catalog("genus_surface", g=2),
            catalog("torus_knot", p=2, q=3),
            catalog("torus_knot", p=3, q=3),
            catalog("torus_knot", p=4, q=6),
            catalog("s1_wedge_s2"),
            catalog("sphere2"),
        ]
        for M in spaces:
            res = classify_based(M, RP2)
            for sector in res.sectors:
                coeffs = CoefficientModule.for_target_sector(data, sector.phi1)
                assert twisted_second_cohomology(M, coeffs) == sector.based_group


class TestSpecialCase:
    def test_lens_targets(self):
        T = catalog("torus3")
        for p in (2, 3, 5):
            res = special_case_classify(T, [p], 1)
            assert len(res.sectors) == p**3
            assert all(s.group == AbelianGroup((0,)) for s in res.sectors)
            assert res.action_is_trivial

    def test_so3(self):
        res = special_case_classify(catalog("torus3"), [2], 1)
        assert len(res.sectors) == 8
        assert all(s.group == AbelianGroup((0,)) for s in res.sectors)

    def test_simply_connected_target(self):
        # pi_1 = 1, pi_3 = Z: a single sector worth Z
        res = special_case_classify(catalog("torus3"), [], 1)
        assert len(res.sectors) == 1
        assert res.sectors[0].group == AbelianGroup((0,))

    def test_s1_x_s2_source(self):
        res = special_case_classify(catalog("s1_x_s2"), [2], 1)
        assert len(res.sectors) == 2
        assert all(s.group == AbelianGroup((0,)) for s in res.sectors)

    def test_requires_three_cells(self):
        with pytest.raises(ValueError):
            special_case_classify(catalog("torus2"), [2], 1)
