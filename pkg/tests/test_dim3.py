import itertools
import math

import pytest

from topsectors.complexes import catalog, validate_triad
from topsectors.dim3 import (
    CLetter,
    CupData,
    Dim3Error,
    LinForm,
    TensorLetter,
    XSqHom,
    classify_s2,
    crossed_square_report,
    cup_preset,
    cylinder_preset,
    evaluate_L,
    pontrjagin_classify,
    pontrjagin_sector_group,
    sector_group_s2,
    xsq_hom_lattice,
)
from topsectors.words import Alphabet, Word
from topsectors.zlinalg import AbelianGroup


def z_or(n):
    return AbelianGroup((0,)) if n == 0 else AbelianGroup.from_factors([abs(n)])


class TestHomLattice:
    def test_s1_x_s2_all_pairs(self):
        layout, lattice = xsq_hom_lattice(catalog("s1_x_s2"))
        assert layout.dim == 2
        for v in [(0, 0), (3, -1), (-2, 5)]:
            assert v in lattice

    def test_lattice_points_commute(self):
        M = catalog("torus3")
        layout, lattice = xsq_hom_lattice(M)
        for v in [(0, 0, 0, 0), (1, 2, 3, 4), (-1, 0, 7, 2)]:
            hom = XSqHom.from_vector(layout, v)
            assert hom.commutes(M)
            assert hom.to_vector(layout) == v

    def test_torus3_all_quadruples(self):
        layout, lattice = xsq_hom_lattice(catalog("torus3"))
        assert layout.dim == 4
        for v in [(0, 0, 0, 0), (1, 2, 3, 4), (-1, 0, 7, 2)]:
            assert v in lattice

    def test_two_complex_unconstrained(self):
        layout, lattice = xsq_hom_lattice(catalog("sphere2"))
        assert layout.dim == 1
        assert (5,) in lattice


class TestEvaluateL:
    def test_tensor_square(self):
        # (t0 (x) t0) with phi2(t0) = q evaluates to q^2
        e = Word.identity(Alphabet(["a0"]))
        word = (TensorLetter(h=((e, "t0", 1),), k=((e, "t0", 1),), sign=1),)
        for q in range(-3, 4):
            assert evaluate_L(word, {"t0": q}) == q * q

    def test_s1_x_s2_relation_word(self):
        preset = cylinder_preset("s1_x_s2")
        word = preset.boundary4["xI"]
        for q, aI, psi, phi in [(3, 1, 10, 4), (0, 7, 1, 1), (-2, 2, 0, 8)]:
            values = {"t0": q, "t1": q, "aI": aI, "tI": 0, "x0": phi, "x1": psi}
            assert evaluate_L(word, values) == 2 * q * aI + psi - phi

    def test_torus3_relation_word(self):
        preset = cylinder_preset("torus3")
        word = preset.boundary4["xI"]
        values = {
            "t0": 2, "t1": 2, "u0": 3, "u1": 3, "v0": 5, "v1": 5,
            "aI": 1, "bI": -1, "cI": 2, "tI": 4, "uI": 0, "vI": -3,
            "x0": 7, "x1": 11,
        }
        expected = 11 - 7 - 2 * 2 * 1 - 2 * 3 * (-1) - 2 * 5 * 2
        assert evaluate_L(word, values) == expected

    def test_additive_over_concatenation(self):
        e = Word.identity(Alphabet(["a0"]))
        w1 = (TensorLetter(h=((e, "t0", 1),), k=((e, "t0", 1),), sign=1),)
        w2 = (CLetter(conj_f=e, conj_h=(), cell="x0", sign=-1),)
        values = {"t0": 3, "x0": 5}
        assert evaluate_L(w1 + w2, values) == evaluate_L(w1, values) + evaluate_L(
            w2, values
        )

    def test_negates_under_inversion(self):
        e = Word.identity(Alphabet(["a0"]))
        letter = TensorLetter(h=((e, "t0", 1),), k=((e, "aI", 1),), sign=1)
        flipped = TensorLetter(h=letter.h, k=letter.k, sign=-1)
        values = {"t0": 3, "aI": 4}
        assert evaluate_L((letter,), values) == -evaluate_L((flipped,), values)

    def test_unassigned_cell(self):
        e = Word.identity(Alphabet(["a0"]))
        with pytest.raises(Dim3Error):
            evaluate_L((CLetter(e, (), "zz", 1),), {})

    def test_linform_rejects_nonlinear(self):
        x, y = LinForm.symbol("x"), LinForm.symbol("y")
        with pytest.raises(Dim3Error):
            _ = x * y


class TestCylinderPresets:
    def test_s1_x_s2_inventory(self):
        preset = cylinder_preset("s1_x_s2")
        assert preset.cylinder.cell_counts() == (2, 3, 3)
        assert set(preset.i_two_cells) == {"aI"}
        assert set(preset.i_three_cells) == {"tI"}

    def test_torus3_inventory(self):
        preset = cylinder_preset("torus3")
        assert preset.cylinder.cell_counts() == (6, 9, 5)
        assert set(preset.i_two_cells) == {"aI", "bI", "cI"}
        assert set(preset.i_three_cells) == {"tI", "uI", "vI"}

    def test_cylinder_triads_validate(self):
        for name in ("s1_x_s2", "torus3"):
            cyl = cylinder_preset(name).cylinder
            for _, triad in cyl.three_cells:
                assert validate_triad(cyl, triad) is None

    def test_ends_restrict_to_copies(self):
        for name in ("s1_x_s2", "torus3"):
            M = catalog(name)
            cyl = cylinder_preset(name).cylinder
            for suffix in ("0", "1"):
                for cell, word in M.two_cells:
                    end = cyl.attaching_word(f"{cell}{suffix}")
                    assert end.runs == tuple(
                        (f"{n}{suffix}", e) for n, e in word.runs
                    )

    def test_missing_preset(self):
        with pytest.raises(Dim3Error):
            cylinder_preset("torus2")


class TestClassifyS2:
    def test_s1_x_s2_sector_groups(self):
        M = catalog("s1_x_s2")
        for q in range(-5, 6):
            group, _ = sector_group_s2(M, {"t": q})
            assert group == z_or(2 * q), q

    def test_torus3_sector_groups(self):
        M = catalog("torus3")
        for q in [(0, 0, 0), (2, 4, 6), (1, 1, 1), (0, 3, 0), (-2, 2, 4)]:
            group, _ = sector_group_s2(M, dict(zip("tuv", q)))
            g = math.gcd(math.gcd(abs(q[0]), abs(q[1])), abs(q[2]))
            assert group == z_or(2 * g), q

    def test_hopf_sector_is_z(self):
        for name in ("s1_x_s2", "torus3"):
            M = catalog(name)
            zero = {c: 0 for c in M.two_cell_names()}
            group, _ = sector_group_s2(M, zero)
            assert group == AbelianGroup((0,))

    def test_translation_invariance(self):
        # homotopy of (q, x) and (q, x') depends only on x - x'
        M = catalog("s1_x_s2")
        _, lattice = sector_group_s2(M, {"t": 3})
        for delta in range(-12, 13):
            fwd = (delta,) in lattice
            back = (-delta,) in lattice
            assert fwd == back
            assert fwd == (delta % 6 == 0)

    def test_classify_sweep(self):
        res = classify_s2(catalog("s1_x_s2"), sweep=2)
        assert len(res.sectors) == 5
        by_q = {s.phi2["t"]: s.group for s in res.sectors}
        assert by_q == {q: z_or(2 * q) for q in range(-2, 3)}

    def test_bad_sector_rejected(self):
        # a phi2 assignment violating the triad-sum constraint is not a
        # homomorphism; build a complex where the constraint is nontrivial
        M = catalog("s1_x_s2")
        with pytest.raises(Dim3Error):
            sector_group_s2(catalog("torus2"), {"t": 0})


class TestPontrjagin:
    def test_s1_x_s2(self):
        cup = cup_preset("s1_x_s2")
        for q in range(-5, 6):
            assert pontrjagin_sector_group(cup, (q,)) == z_or(2 * q)

    def test_torus3(self):
        cup = cup_preset("torus3")
        for q in [(1, 2, 3), (2, 4, 6), (0, 0, 0), (5, 0, 0)]:
            g = math.gcd(math.gcd(abs(q[0]), abs(q[1])), abs(q[2]))
            assert pontrjagin_sector_group(cup, q) == z_or(2 * g)

    def test_alpha_zero_gives_full_h3(self):
        cup = cup_preset("torus3")
        assert pontrjagin_sector_group(cup, (0, 0, 0)) == AbelianGroup((0,))

    def test_classify_list(self):
        cup = cup_preset("s1_x_s2")
        out = pontrjagin_classify(cup, [(0,), (1,), (2,)])
        assert [g for _, g in out] == [z_or(0), z_or(2), z_or(4)]

    def test_inconsistent_table_rejected(self):
        # torsion H^2 generator whose cup value does not die
        with pytest.raises(Dim3Error):
            CupData(h1_rank=1, h2=(2,), h3=(0,), cup=(((1,),),))

    def test_torsion_consistent_table(self):
        CupData(h1_rank=1, h2=(2,), h3=(2,), cup=(((1,),),))


class TestRouteAgreement:
    def test_s1_x_s2_sweep(self):
        M = catalog("s1_x_s2")
        cup = cup_preset("s1_x_s2")
        for q in range(-5, 6):
            lattice_route, _ = sector_group_s2(M, {"t": q})
            cup_route = pontrjagin_sector_group(cup, (q,))
            assert lattice_route == cup_route

    def test_torus3_small_sweep(self):
        M = catalog("torus3")
        cup = cup_preset("torus3")
        for q in itertools.product(range(-2, 3), repeat=3):
            lattice_route, _ = sector_group_s2(M, dict(zip("tuv", q)))
            cup_route = pontrjagin_sector_group(cup, q)
            assert lattice_route == cup_route, q


class TestReport:
    def test_torus3_report(self):
        rep = crossed_square_report(catalog("torus3"))
        text = rep.render()
        assert rep.cell_counts == (3, 3, 1)
        assert "sigma_2(t) = b c b^-1 c^-1" in text
        assert "sigma_3(x)" in text
        assert "pi_1 = < a, b, c |" in text

    def test_s1_x_s2_report_notes_hbar(self):
        rep = crossed_square_report(catalog("s1_x_s2"))
        assert any("H-bar = H" in n for n in rep.notes)
        assert any("pi_3 = Z" in n for n in rep.notes)

    def test_sphere2_report(self):
        rep = crossed_square_report(catalog("sphere2"))
        text = rep.render()
        assert any("H = H-bar = G = Z" in n for n in rep.notes)
        assert "pi_1 = 1" in text

    def test_knot_group_presentation(self):
        rep = crossed_square_report(catalog("torus_knot", p=2, q=3))
        assert rep.pi1_presentation == "< a, b | a^2 b^-3 = 1 >"
