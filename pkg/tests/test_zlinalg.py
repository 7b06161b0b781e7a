import itertools
import math
import random

import pytest

from topsectors.zlinalg import (
    AbelianGroup,
    AffineLattice,
    IntMatrix,
    Lattice,
    LatticeQuotient,
    SublatticeError,
    quotient,
    quotient_with_representatives,
    smith_normal_form,
    solve,
)


def random_matrix(rng, max_dim=8, lo=-50, hi=50):
    m = rng.randrange(1, max_dim + 1)
    n = rng.randrange(1, max_dim + 1)
    return IntMatrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)])


def check_snf(A):
    dec = smith_normal_form(A)
    assert dec.U @ dec.S @ dec.V == A
    assert dec.U.is_unimodular
    assert dec.V.is_unimodular
    diag = dec.diagonal
    for i in range(A.rows):
        for j in range(A.cols):
            if i != j:
                assert dec.S.data[i][j] == 0
    assert all(d >= 0 for d in diag)
    for d1, d2 in zip(diag, diag[1:]):
        if d2 == 0:
            assert all(x == 0 for x in diag[diag.index(d2):])
            break
        assert d1 != 0 and d2 % d1 == 0
    return dec


def minors_gcd(A, k):
    """Brute-force gcd of all k x k minors."""
    g = 0
    for rows in itertools.combinations(range(A.rows), k):
        for cols in itertools.combinations(range(A.cols), k):
            sub = IntMatrix([[A.data[i][j] for j in cols] for i in rows])
            g = math.gcd(g, sub.det())
    return g


class TestIntMatrix:
    def test_matmul(self):
        A = IntMatrix([[1, 2], [3, 4]])
        B = IntMatrix([[0, 1], [1, 0]])
        assert A @ B == IntMatrix([[2, 1], [4, 3]])

    def test_empty_shapes(self):
        A = IntMatrix.zeros(0, 3)
        B = IntMatrix.zeros(3, 0)
        assert (A @ B).shape == (0, 0)
        assert (B @ A).shape == (3, 3)
        assert IntMatrix.zeros(0, 0).det() == 1

    def test_det(self):
        assert IntMatrix([[2, 4], [6, 8]]).det() == -8
        assert IntMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]]).det() == 0
        assert IntMatrix.identity(4).det() == 1

    def test_det_matches_permanent_expansion(self):
        rng = random.Random(3)
        for _ in range(50):
            n = rng.randrange(1, 5)
            A = IntMatrix([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])
            expansion = sum(
                (1 if _parity(p) else -1)
                * math.prod(A.data[i][p[i]] for i in range(n))
                for p in itertools.permutations(range(n))
            )
            assert A.det() == expansion

    def test_inverse_unimodular(self):
        U = IntMatrix([[1, 2], [3, 7]])
        assert U @ U.inverse_unimodular() == IntMatrix.identity(2)


def _parity(perm):
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return inversions % 2 == 0


class TestSmithNormalForm:
    def test_identity(self):
        dec = check_snf(IntMatrix.identity(2))
        assert dec.diagonal == (1, 1)

    def test_frozen_example(self):
        # gcd of entries is 2, |det| = 8, so the factors are (2, 4).
        dec = check_snf(IntMatrix([[2, 4], [6, 8]]))
        assert dec.diagonal == (2, 4)

    def test_zero_matrix(self):
        dec = check_snf(IntMatrix.zeros(2, 3))
        assert dec.diagonal == (0, 0)

    def test_random_reconstruction(self):
        rng = random.Random(97)
        for _ in range(120):
            check_snf(random_matrix(rng))

    def test_divisibility_against_minor_gcds(self):
        # product of the first k invariant factors == gcd of k x k minors
        rng = random.Random(101)
        for _ in range(60):
            A = random_matrix(rng, max_dim=4, lo=-9, hi=9)
            diag = check_snf(A).diagonal
            prod = 1
            for k in range(1, min(A.shape) + 1):
                prod *= diag[k - 1]
                assert abs(prod) == minors_gcd(A, k)


class TestSolve:
    def test_parity_obstruction(self):
        assert solve(IntMatrix([[2]]), (3,)) is None

    def test_single_equation(self):
        particular, kernel = solve(IntMatrix([[2]]), (4,))
        assert particular == (2,)
        assert kernel == []

    def test_kernel(self):
        particular, kernel = solve(IntMatrix([[1, 1]]), (0,))
        assert particular == (0, 0)
        assert len(kernel) == 1
        assert kernel[0] in ((1, -1), (-1, 1))

    def test_no_constraints(self):
        particular, kernel = solve(IntMatrix.zeros(0, 2), ())
        assert particular == (0, 0)
        assert len(kernel) == 2

    def test_random_solutions_verify(self):
        rng = random.Random(13)
        for _ in range(100):
            A = random_matrix(rng, max_dim=4, lo=-6, hi=6)
            x = tuple(rng.randint(-5, 5) for _ in range(A.cols))
            b = A.apply(x)
            sol = solve(A, b)
            assert sol is not None
            particular, kernel = sol
            assert A.apply(particular) == b
            for k in kernel:
                assert A.apply(k) == tuple(0 for _ in range(A.rows))
            # the known solution must be particular + integer kernel combo
            lat = Lattice(A.cols, kernel)
            diff = tuple(a - b_ for a, b_ in zip(x, particular))
            assert diff in lat

    def test_solution_set_complete_small(self):
        # On tiny instances, every box solution is reachable from the
        # particular one through the kernel lattice.
        rng = random.Random(17)
        for _ in range(40):
            m, n = rng.randrange(1, 4), rng.randrange(1, 4)
            A = IntMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)])
            b = A.apply(tuple(rng.randint(-2, 2) for _ in range(n)))
            sol = solve(A, b)
            assert sol is not None
            particular, kernel = sol
            lat = Lattice(n, kernel)
            for candidate in itertools.product(range(-4, 5), repeat=n):
                if A.apply(candidate) == b:
                    diff = tuple(c - p for c, p in zip(candidate, particular))
                    assert diff in lat


class TestAbelianGroup:
    def test_normal_form(self):
        assert AbelianGroup.from_factors([4, 2]).invariant_factors == (2, 4)
        assert AbelianGroup.from_factors([2, 3]).invariant_factors == (6,)
        assert AbelianGroup.from_factors([1, 1]).is_trivial
        assert AbelianGroup.from_factors([0, 2]).invariant_factors == (2, 0)

    def test_order(self):
        assert AbelianGroup.from_factors([2, 4]).order() == 8
        assert AbelianGroup.free(1).order() is None
        assert AbelianGroup.trivial().order() == 1

    def test_str(self):
        assert str(AbelianGroup.from_factors([2, 0])) == "Z_2 x Z"
        assert str(AbelianGroup.trivial()) == "1"


class TestQuotient:
    def test_z_mod_2(self):
        assert quotient(1, [(2,)]) == AbelianGroup((2,))

    def test_free(self):
        assert quotient(2, []) == AbelianGroup((0, 0))

    def test_diag(self):
        assert quotient(2, [(2, 0), (0, 4)]) == AbelianGroup((2, 4))


class TestLattice:
    def test_membership(self):
        lat = Lattice(2, [(2, 0), (0, 2)])
        assert (4, -2) in lat
        assert (1, 0) not in lat

    def test_reduce_canonical(self):
        lat = Lattice(2, [(2, 0), (0, 2)])
        seen = {}
        for v in itertools.product(range(-4, 5), repeat=2):
            r = lat.reduce(v)
            key = (v[0] % 2, v[1] % 2)
            seen.setdefault(key, r)
            assert seen[key] == r

    def test_reduce_is_coset_representative(self):
        rng = random.Random(29)
        for _ in range(50):
            dim = rng.randrange(1, 5)
            lat = Lattice(dim)
            for _ in range(rng.randrange(4)):
                lat.add([rng.randint(-6, 6) for _ in range(dim)])
            v = [rng.randint(-10, 10) for _ in range(dim)]
            r = lat.reduce(v)
            assert tuple(a - b for a, b in zip(v, r)) in lat
            assert lat.reduce(r) == r

    def test_gcd_pivot_replacement(self):
        lat = Lattice(1, [(4,), (6,)])
        assert (2,) in lat
        assert (1,) not in lat

    def test_coords_in_basis(self):
        lat = Lattice(3, [(2, 0, 1), (0, 3, 1)])
        basis = lat.basis()
        v = tuple(2 * basis[0][i] - basis[1][i] for i in range(3))
        coords = lat.coords_in_basis(v)
        assert coords == (2, -1)
        assert lat.coords_in_basis((1, 1, 1)) is None


class TestLatticeQuotient:
    def test_z_mod_2z(self):
        amb = AffineLattice.from_solution((0,), [(1,)])
        q = quotient_with_representatives(amb, [(2,)])
        assert q.group == AbelianGroup((2,))
        assert sorted(q.representatives()) == [(0,), (1,)]
        assert q.same_class((0,), (4,))
        assert not q.same_class((0,), (3,))

    def test_free_plane(self):
        amb = AffineLattice.from_solution((0, 0), [(1, 0), (0, 1)])
        q = quotient_with_representatives(amb, [])
        assert q.group == AbelianGroup((0, 0))
        assert len(q.free_generator_vectors()) == 2

    def test_z3_mod_one_vector(self):
        amb = AffineLattice.from_solution((0, 0, 0), [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        q = quotient_with_representatives(amb, [(2, 0, 0)])
        assert q.group == AbelianGroup((2, 0, 0))
        # one torsion generator of order 2 and two free generators
        assert q.factors.count(0) == 2
        shell = q.torsion_shell_representatives()
        assert len(shell) == 2
        assert not q.same_class(shell[0], shell[1])

    def test_membership_is_equivalence(self):
        amb = AffineLattice.from_solution((1, 2, 3), [(2, 0, 1), (0, 1, 1), (0, 0, 5)])
        q = quotient_with_representatives(amb, [(2, 0, 1), (0, 2, 2)])
        rng = random.Random(37)
        pts = []
        for _ in range(12):
            v = list(amb.particular)
            for row in amb.directions.basis():
                c = rng.randint(-3, 3)
                v = [a + c * b for a, b in zip(v, row)]
            pts.append(tuple(v))
        for u in pts:
            assert q.same_class(u, u)
            for v in pts:
                assert q.same_class(u, v) == q.same_class(v, u)
                for w in pts:
                    if q.same_class(u, v) and q.same_class(v, w):
                        assert q.same_class(u, w)

    def test_class_coords_consistent(self):
        amb = AffineLattice.from_solution((0, 0), [(1, 0), (0, 1)])
        q = quotient_with_representatives(amb, [(2, 0), (0, 3)])
        assert q.group == AbelianGroup((6,)) or q.group == AbelianGroup((2, 3))
        for v in itertools.product(range(-5, 6), repeat=2):
            rep = q.representative(q.class_coords(v))
            assert q.same_class(v, rep)

    def test_rejects_non_sublattice(self):
        amb = AffineLattice.from_solution((0, 0), [(2, 0)])
        with pytest.raises(SublatticeError):
            LatticeQuotient(amb, [(1, 0)])
