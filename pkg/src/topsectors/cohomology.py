"""Twisted cellular cohomology via Fox calculus.

The cochain complex of a reduced complex with local coefficients twisted by
a sector map has differentials built from exact integer data: d0 blocks are
rho(phi1(a)) - 1, d1 blocks evaluate Fox derivatives of the attaching words,
and d2 blocks evaluate the derivation image of the triad words.  Because
every supported target has abelian pi_1, words are labeled through their
exponent sums; the composite action factors through pi_1 of the target, so
this labeling is exact for the twist.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .classify2d import TargetData, Vector
from .complexes import CWComplex
from .words import Word, fox_derivative
from .xmod import ModuleXMod, derivation_image
from .zlinalg import (
    AbelianGroup,
    AffineLattice,
    IntMatrix,
    Lattice,
    LatticeQuotient,
    quotient,
    quotient_with_representatives,
)


class CoefficientError(Exception):
    pass


@dataclass(frozen=True)
class CoefficientModule:
    """Z^rank as a module over pi_1 of the source, through a sector map.

    ``factors`` are the invariant factors of the (abelian, finite) pi_1 of
    the target, ``generator_matrices`` the action of its generators on the
    coefficients, and ``sector`` assigns a label to every 1-cell.  Words are
    labeled additively via exponent sums, which is exact because the action
    factors through the abelian pi_1 of the target.
    """

    rank: int
    factors: tuple[int, ...]
    generator_matrices: tuple[IntMatrix, ...]
    sector: dict

    def __post_init__(self):
        if len(self.generator_matrices) != len(self.factors):
            raise CoefficientError("need one action matrix per pi_1 generator")
        identity = IntMatrix.identity(self.rank)
        for m, f in zip(self.generator_matrices, self.factors):
            if m.shape != (self.rank, self.rank):
                raise CoefficientError("action matrix of wrong shape")
            power = identity
            for _ in range(f):
                power = power @ m
            if f and power != identity:
                raise CoefficientError(
                    "action does not respect the order of a pi_1 generator"
                )

    @staticmethod
    def untwisted(rank: int, generators: Sequence[str]) -> "CoefficientModule":
        return CoefficientModule(
            rank=rank,
            factors=(),
            generator_matrices=(),
            sector={g: () for g in generators},
        )

    @staticmethod
    def for_target_sector(
        data: TargetData | ModuleXMod, sector: dict
    ) -> "CoefficientModule":
        """Coefficients pi_2 X = ker(d) with the action induced by the sector."""
        if isinstance(data, ModuleXMod):
            data = TargetData(data)
        basis = data.kernel_basis()
        lat = Lattice(data.target.rank, basis)
        matrices = []
        for gen_vec in data.pi1.generator_vectors:
            rho = data.target.rho_of_coords(gen_vec)
            cols = []
            for b in basis:
                coords = lat.coords_in_basis(rho.apply(b))
                if coords is None:
                    raise CoefficientError("action does not preserve ker(d)")
                cols.append(coords)
            matrices.append(IntMatrix.from_columns(cols, height=len(basis)))
        return CoefficientModule(
            rank=len(basis),
            factors=data.pi1.factors,
            generator_matrices=tuple(matrices),
            sector=dict(sector),
        )

    # -- label arithmetic ---------------------------------------------------

    def label_of_word(self, w: Word) -> Vector:
        out = [0] * len(self.factors)
        for gen, s in zip(w.alphabet.names, w.exponent_sums()):
            for i, c in enumerate(self.sector[gen]):
                out[i] += s * c
        return tuple(
            v % f if f else v for v, f in zip(out, self.factors)
        )

    def matrix_of_label(self, label: Sequence[int]) -> IntMatrix:
        out = IntMatrix.identity(self.rank)
        for m, c, f in zip(self.generator_matrices, label, self.factors):
            c = c % f if f else c
            base = m if c >= 0 else m.inverse_unimodular()
            for _ in range(abs(c)):
                out = out @ base
        return out

    def matrix_of_word(self, w: Word) -> IntMatrix:
        return self.matrix_of_label(self.label_of_word(w))


@dataclass(frozen=True)
class CochainComplex:
    """Integer differentials d0: C^0 -> C^1, d1: C^1 -> C^2, d2: C^2 -> C^3;
    d1 d0 = 0 and d2 d1 = 0 hold exactly (asserted on construction)."""

    d0: IntMatrix
    d1: IntMatrix
    d2: IntMatrix


def build_complex(M: CWComplex, coeffs: CoefficientModule) -> CochainComplex:
    """Cellular cochain complex of M with the given local coefficients."""
    r = coeffs.rank
    gens = M.alphabet.names
    n1, n2, n3 = len(gens), len(M.two_cells), len(M.three_cells)
    identity = IntMatrix.identity(r)

    d0_rows = []
    for gen in gens:
        block = coeffs.matrix_of_word(M.alphabet.gen(gen)) - identity
        d0_rows.extend([list(row) for row in block.data])
    d0 = IntMatrix(d0_rows, cols=r)

    d1_rows = []
    for _, word in M.two_cells:
        row_blocks = []
        for gen in gens:
            ring = fox_derivative(word, gen)
            labeled = ring.project(coeffs.label_of_word)
            total = IntMatrix.zeros(r, r)
            for label, coeff in labeled.items():
                total = total + coeffs.matrix_of_label(label).scaled(coeff)
            row_blocks.append(total)
        for i in range(r):
            d1_rows.append(
                [x for block in row_blocks for x in block.data[i]]
            )
    d1 = IntMatrix(d1_rows, cols=n1 * r)

    d2_rows = []
    for _, triad in M.three_cells:
        _, hword = M.triad_normal_form(triad)
        image = derivation_image(M, hword, coeffs.label_of_word)
        row_blocks = []
        for cell in M.two_cell_names():
            total = IntMatrix.zeros(r, r)
            for label, coeff in image[cell].items():
                total = total + coeffs.matrix_of_label(label).scaled(coeff)
            row_blocks.append(total)
        for i in range(r):
            d2_rows.append(
                [x for block in row_blocks for x in block.data[i]]
            )
    d2 = IntMatrix(d2_rows, cols=n2 * r)

    if d0.rows and d1.rows and d1 @ d0 != IntMatrix.zeros(d1.rows, d0.cols):
        raise AssertionError("d1 . d0 != 0: labeling is inconsistent")
    if d1.rows and d2.rows and d2 @ d1 != IntMatrix.zeros(d2.rows, d1.cols):
        raise AssertionError("d2 . d1 != 0: labeling is inconsistent")
    return CochainComplex(d0=d0, d1=d1, d2=d2)


def twisted_second_cohomology(M: CWComplex, coeffs: CoefficientModule) -> AbelianGroup:
    """H^2 of a 2-complex with local coefficients: coker(d1)."""
    if M.three_cells:
        raise ValueError("twisted_second_cohomology needs a complex without 3-cells")
    cx = build_complex(M, coeffs)
    n2r = len(M.two_cells) * coeffs.rank
    return quotient(n2r, cx.d1.columns())


# ---------------------------------------------------------------------------
# Special-case dimension-3 classification (vanishing intermediate homotopy)
# ---------------------------------------------------------------------------


@dataclass
class SpecialSector:
    phi1: dict
    group: AbelianGroup
    quotient: LatticeQuotient

    def to_json(self) -> dict:
        phi1 = {
            g: (label[0] if len(label) == 1 else list(label))
            for g, label in self.phi1.items()
        }
        return {"phi1": phi1, "group": self.group.to_json()}


@dataclass
class SpecialCaseResult:
    """Per-sector top cohomology groups for a target with pi_i = 0 below the
    top dimension; free classes follow the action on the coefficients."""

    pi1_factors: tuple[int, ...]
    sectors: list[SpecialSector]
    action_is_trivial: bool

    def groups(self) -> list[AbelianGroup]:
        return [s.group for s in self.sectors]

    def to_json(self) -> dict:
        return {
            "pi1": list(self.pi1_factors),
            "action_trivial": self.action_is_trivial,
            "sectors": [s.to_json() for s in self.sectors],
        }


def special_case_classify(
    M: CWComplex,
    pi1_factors: Sequence[int],
    pi_d_rank: int,
    pi_d_action: Sequence[IntMatrix] | None = None,
) -> SpecialCaseResult:
    """Classes of maps from a 3-complex into a target whose only homotopy in
    range is pi_1 (finite, given by invariant factors) and pi_3 (free of the
    given rank, with an optional action matrix per pi_1 generator).

    Per sector the answer is H^3 = coker(d2) with the twisted differentials.
    """
    if not M.three_cells:
        raise ValueError("special_case_classify needs a complex with 3-cells")
    factors = tuple(int(f) for f in pi1_factors)
    if any(f < 2 for f in factors):
        raise ValueError("pi_1 invariant factors must be >= 2")
    matrices = (
        tuple(pi_d_action)
        if pi_d_action is not None
        else tuple(IntMatrix.identity(pi_d_rank) for _ in factors)
    )
    identity = IntMatrix.identity(pi_d_rank)
    trivial_action = all(m == identity for m in matrices)

    labels = list(itertools.product(*[range(f) for f in factors]))
    gens = M.alphabet.names
    sectors = []
    n3r = len(M.three_cells) * pi_d_rank
    ambient = AffineLattice.from_solution(
        (0,) * n3r,
        [tuple(1 if i == j else 0 for j in range(n3r)) for i in range(n3r)],
    )
    for combo in itertools.product(labels, repeat=len(gens)):
        assignment = dict(zip(gens, combo))
        coeffs = CoefficientModule(
            rank=pi_d_rank,
            factors=factors,
            generator_matrices=matrices,
            sector=assignment,
        )
        if any(
            any(coeffs.label_of_word(word)) for _, word in M.two_cells
        ):
            continue  # relator does not die in pi_1 X: not a sector
        cx = build_complex(M, coeffs)
        quot = quotient_with_representatives(ambient, cx.d2.columns())
        sectors.append(
            SpecialSector(phi1=assignment, group=quot.group, quotient=quot)
        )
    return SpecialCaseResult(
        pi1_factors=factors, sectors=sectors, action_is_trivial=trivial_action
    )
