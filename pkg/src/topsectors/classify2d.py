"""Homotopy classification of maps from a 2-complex into a crossed-module
target: homomorphisms form integer affine lattices, based homotopy is an
integer sublattice, and free classes are orbits of the fundamental group of
the target acting on the based classes.

Everything is sector-wise linear: within a sector (a homomorphism of
fundamental groups) the twisted action factors through the finite pi_1 of
the target, so the homotopy relation is the span of finitely many integer
directions and each sector's answer is one Smith normal form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .complexes import CWComplex
from .fingrp import FiniteGroup
from .words import Word, fox_derivative
from .xmod import ModuleXMod, XModError, validate
from .zlinalg import (
    AbelianGroup,
    AffineLattice,
    IntMatrix,
    Lattice,
    LatticeQuotient,
    quotient_with_representatives,
    solve,
)

Vector = tuple[int, ...]


class UnsupportedTargetError(Exception):
    """Target outside the supported family (e.g. infinite pi_1)."""


# ---------------------------------------------------------------------------
# Target bookkeeping
# ---------------------------------------------------------------------------


class TargetData:
    """Precomputed quotient machinery for a crossed-module target.

    pi_1 X = G / im(d) is computed as a lattice quotient of the coordinate
    space Z^k of G; labels are class coordinates, and every label lifts to a
    coordinate vector so the action can be evaluated on it.
    """

    def __init__(self, target: ModuleXMod):
        violations = validate(target)
        if violations:
            raise XModError("invalid target: " + "; ".join(violations))
        self.target = target
        k = target.num_g_generators
        self.k = k
        ambient = AffineLattice.from_solution(
            (0,) * k, [tuple(1 if i == j else 0 for j in range(k)) for i in range(k)]
        )
        relations = target.torsion_relation_columns() + [
            target.boundary.column(j) for j in range(target.rank)
        ]
        self.pi1 = quotient_with_representatives(ambient, relations)
        self.pi1_group = self.pi1.group

    @property
    def pi1_is_finite(self) -> bool:
        return self.pi1_group.is_finite

    def require_finite_pi1(self) -> None:
        if not self.pi1_is_finite:
            raise UnsupportedTargetError(
                f"pi_1 of the target is infinite ({self.pi1_group}); "
                "sector enumeration needs a finite fundamental group"
            )

    def labels(self) -> list[Vector]:
        return list(self.pi1.enumerate_class_coords())

    def label_of_coords(self, coords: Sequence[int]) -> Vector:
        return self.pi1.class_coords(tuple(coords))

    def lift_of_label(self, label: Sequence[int]) -> Vector:
        """A coordinate vector of G representing the pi_1 X label."""
        vec = [0] * self.k
        for c, g in zip(label, self.pi1.generator_vectors):
            for j in range(self.k):
                vec[j] += c * g[j]
        return tuple(vec)

    def rho_of_label(self, label: Sequence[int]) -> IntMatrix:
        return self.target.rho_of_coords(self.lift_of_label(label))

    def label_add(self, a: Sequence[int], scale: int, b: Sequence[int]) -> Vector:
        """a + scale * b in label coordinates."""
        out = []
        for x, y, d in zip(a, b, self.pi1.factors):
            v = x + scale * y
            out.append(v % d if d else v)
        return tuple(out)

    def zero_label(self) -> Vector:
        return tuple(0 for _ in self.pi1.factors)

    def kernel_basis(self) -> list[Vector]:
        """Basis of ker(d) = pi_2 X inside Z^rank."""
        t = self.target
        cols = [list(t.boundary.column(j)) for j in range(t.rank)]
        torsion = t.torsion_relation_columns()
        mat = IntMatrix.from_columns([tuple(c) for c in cols] + list(torsion), height=self.k)
        sol = solve(mat, (0,) * self.k)
        assert sol is not None
        _, kernel = sol
        lat = Lattice(t.rank, [vec[: t.rank] for vec in kernel])
        return lat.basis()


# ---------------------------------------------------------------------------
# Sectors and the coordinate layout
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomLayout:
    """Coordinate layout of homomorphism vectors: one block of G-coordinates
    per 1-cell followed by one block of Z^r coordinates per 2-cell."""

    generators: tuple[str, ...]
    k: int
    two_cells: tuple[str, ...]
    r: int

    @property
    def dim(self) -> int:
        return len(self.generators) * self.k + len(self.two_cells) * self.r

    def phi1_offset(self, gen: str) -> int:
        return self.generators.index(gen) * self.k

    def phi2_offset(self, cell: str) -> int:
        return len(self.generators) * self.k + self.two_cells.index(cell) * self.r

    def phi1(self, vec: Sequence[int], gen: str) -> Vector:
        off = self.phi1_offset(gen)
        return tuple(vec[off : off + self.k])

    def phi2(self, vec: Sequence[int], cell: str) -> Vector:
        off = self.phi2_offset(cell)
        return tuple(vec[off : off + self.r])

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "g_coords": self.k,
            "two_cells": list(self.two_cells),
            "pi2_rank": self.r,
        }


def layout_for(M: CWComplex, X: ModuleXMod) -> HomLayout:
    return HomLayout(
        generators=M.alphabet.names,
        k=X.num_g_generators,
        two_cells=M.two_cell_names(),
        r=X.rank,
    )


@dataclass(frozen=True)
class XModHom:
    """A crossed-module homomorphism recorded on the cells."""

    phi1: dict
    phi2: dict

    @staticmethod
    def from_vector(layout: HomLayout, vec: Sequence[int]) -> "XModHom":
        return XModHom(
            phi1={g: layout.phi1(vec, g) for g in layout.generators},
            phi2={t: layout.phi2(vec, t) for t in layout.two_cells},
        )

    def to_vector(self, layout: HomLayout) -> Vector:
        out: list[int] = []
        for g in layout.generators:
            out.extend(self.phi1[g])
        for t in layout.two_cells:
            out.extend(self.phi2[t])
        return tuple(out)

    def commutes(self, M: CWComplex, X: ModuleXMod) -> bool:
        """d . phi2(t) == phi1(sigma_2(t)) in G, for every 2-cell."""
        torsion = X.torsion
        for cell, word in M.two_cells:
            lhs = X.boundary_of(self.phi2[cell])
            sums = word.exponent_sums()
            rhs = [0] * X.num_g_generators
            for gen, s in zip(M.alphabet.names, sums):
                for j in range(X.num_g_generators):
                    rhs[j] += s * self.phi1[gen][j]
            for j in range(X.num_g_generators):
                order = 0 if j < X.free_rank else torsion[j - X.free_rank]
                diff = lhs[j] - rhs[j]
                if (diff % order if order else diff) != 0:
                    return False
        return True


# ---------------------------------------------------------------------------
# Sector enumeration
# ---------------------------------------------------------------------------


def pi1_sectors(M: CWComplex, X: ModuleXMod | TargetData) -> list[dict]:
    """All homomorphisms pi_1 M -> pi_1 X as label assignments to 1-cells.

    An assignment qualifies iff every 2-cell relator maps to the identity.
    """
    data = X if isinstance(X, TargetData) else TargetData(X)
    data.require_finite_pi1()
    labels = data.labels()
    sectors = []
    for combo in itertools.product(labels, repeat=len(M.alphabet.names)):
        assignment = dict(zip(M.alphabet.names, combo))
        if all(
            _word_label(data, assignment, word) == data.zero_label()
            for _, word in M.two_cells
        ):
            sectors.append(assignment)
    return sectors


def _word_label(data: TargetData, assignment: dict, word: Word) -> Vector:
    out = data.zero_label()
    for gen, s in zip(word.alphabet.names, word.exponent_sums()):
        out = data.label_add(out, s, assignment[gen])
    return out


# ---------------------------------------------------------------------------
# The homomorphism lattice and the homotopy sublattice
# ---------------------------------------------------------------------------


def hom_lattice(
    M: CWComplex, X: ModuleXMod | TargetData, sector: dict
) -> Optional[AffineLattice]:
    """Affine lattice of all homomorphisms inducing the given sector.

    Unknowns are the phi1 coordinate blocks and phi2 vectors; auxiliary
    unknowns absorb the lift ambiguity of the sector labels and the torsion
    relations of G, then get projected away.  Returns None when the system
    has no integer solution (cannot happen for sectors from pi1_sectors).
    """
    data = X if isinstance(X, TargetData) else TargetData(X)
    target = data.target
    layout = layout_for(M, target)
    k, r = layout.k, layout.r
    n1, n2 = len(layout.generators), len(layout.two_cells)

    lift_cols = data.target.torsion_relation_columns() + [
        target.boundary.column(j) for j in range(r)
    ]
    n_lift = len(lift_cols)
    n_tor = len(target.torsion)

    dim = layout.dim
    aux = n1 * n_lift + n2 * n_tor
    total = dim + aux
    rows: list[list[int]] = []
    rhs: list[int] = []

    def new_row() -> list[int]:
        return [0] * total

    # phi1(a) = lift(sector label) + combination of lift columns
    for gi, gen in enumerate(layout.generators):
        base = data.lift_of_label(sector[gen])
        for coord in range(k):
            row = new_row()
            row[layout.phi1_offset(gen) + coord] = 1
            for li, col in enumerate(lift_cols):
                row[dim + gi * n_lift + li] = -col[coord]
            rows.append(row)
            rhs.append(base[coord])

    # d . phi2(t) - phi1(sigma_2(t)) = 0 in G (torsion slack per 2-cell)
    for ti, (cell, word) in enumerate(M.two_cells):
        sums = word.exponent_sums()
        for coord in range(k):
            row = new_row()
            for j in range(r):
                row[layout.phi2_offset(cell) + j] = target.boundary.data[coord][j]
            for gen, s in zip(layout.generators, sums):
                row[layout.phi1_offset(gen) + coord] -= s
            for si, col in enumerate(target.torsion_relation_columns()):
                row[dim + n1 * n_lift + ti * n_tor + si] = col[coord]
            rows.append(row)
            rhs.append(0)

    sol = solve(IntMatrix(rows, cols=total), tuple(rhs))
    if sol is None:
        return None
    particular, kernel = sol
    return AffineLattice.from_solution(
        particular[:dim], [vec[:dim] for vec in kernel]
    )


def sector_action_matrices(
    M: CWComplex, data: TargetData, sector: dict
) -> dict[str, dict[str, IntMatrix]]:
    """For each 2-cell t and 1-cell a, the matrix of the Fox derivative
    d(sigma_2 t)/da evaluated through the sector's pi_1 X action."""
    out: dict[str, dict[str, IntMatrix]] = {}
    r = data.target.rank
    for cell, word in M.two_cells:
        per_gen = {}
        for gen in M.alphabet.names:
            ring = fox_derivative(word, gen)
            labeled = ring.project(lambda w: _word_label(data, sector, w))
            total = IntMatrix.zeros(r, r)
            for label, coeff in labeled.items():
                total = total + data.rho_of_label(label).scaled(coeff)
            per_gen[gen] = total
        out[cell] = per_gen
    return out


def homotopy_sublattice(
    M: CWComplex, X: ModuleXMod | TargetData, sector: dict
) -> list[Vector]:
    """Directions spanned by based homotopies within a sector.

    A homotopy is a free derivation theta determined by theta(a) in Z^r per
    1-cell a; it moves phi1(a) by d(theta(a)) and phi2(t) by the Fox
    derivative of the attaching word evaluated through the sector.  Torsion
    coordinate shifts of phi1 (same element of G, different coordinates) are
    included so that coset equality means equality of based classes.
    """
    data = X if isinstance(X, TargetData) else TargetData(X)
    target = data.target
    layout = layout_for(M, target)
    r = target.rank
    fox_matrices = sector_action_matrices(M, data, sector)

    directions: list[Vector] = []
    for gen in layout.generators:
        for p in range(r):
            vec = [0] * layout.dim
            col = target.boundary.column(p)
            off = layout.phi1_offset(gen)
            for coord in range(layout.k):
                vec[off + coord] = col[coord]
            for cell, _ in M.two_cells:
                mcol = fox_matrices[cell][gen].column(p)
                off2 = layout.phi2_offset(cell)
                for j in range(r):
                    vec[off2 + j] = mcol[j]
            directions.append(tuple(vec))
    for gen in layout.generators:
        for i, order in enumerate(target.torsion):
            vec = [0] * layout.dim
            vec[layout.phi1_offset(gen) + target.free_rank + i] = order
            directions.append(tuple(vec))
    return directions


# ---------------------------------------------------------------------------
# Sector classification
# ---------------------------------------------------------------------------


@dataclass
class SectorResult:
    """One sector's answer: the based class group, canonical representative
    vectors, and (in free mode) the orbit structure under pi_1 X."""

    phi1: dict
    quotient: LatticeQuotient
    layout: HomLayout
    target_data: TargetData
    free_orbits: Optional[list[list[int]]] = None

    @property
    def based_group(self) -> AbelianGroup:
        return self.quotient.group

    @property
    def is_finite(self) -> bool:
        return self.quotient.is_finite

    def representatives(self) -> list[Vector]:
        """Canonical representatives: full enumeration when finite, the
        torsion shell otherwise (extend along free_generators)."""
        if self.is_finite:
            return self.quotient.representatives()
        return self.quotient.torsion_shell_representatives()

    def free_generators(self) -> list[Vector]:
        return self.quotient.free_generator_vectors()

    # -- the pi_1 X action on based classes ---------------------------------

    def act(self, label: Sequence[int], vec: Sequence[int]) -> Vector:
        """Move a homomorphism vector by a loop of the target: phi1 is fixed
        and every phi2 block is rotated by the action of the loop."""
        rho = self.target_data.rho_of_label(label)
        out = list(vec)
        for cell in self.layout.two_cells:
            off = self.layout.phi2_offset(cell)
            block = rho.apply(tuple(vec[off : off + self.layout.r]))
            out[off : off + self.layout.r] = block
        return tuple(out)

    def free_equivalent(self, v1: Sequence[int], v2: Sequence[int]) -> bool:
        """Are two homomorphisms in the same free homotopy class?"""
        return any(
            self.quotient.same_class(self.act(label, v1), v2)
            for label in self.target_data.labels()
        )

    def orbit_of_class(self, coords: Sequence[int]) -> list[Vector]:
        """All class coordinates in the pi_1 X orbit of the given class."""
        rep = self.quotient.representative(coords)
        seen = []
        for label in self.target_data.labels():
            c = self.quotient.class_coords(self.act(label, rep))
            if c not in seen:
                seen.append(c)
        return sorted(seen)

    def canonical_free_class(self, coords: Sequence[int]) -> Vector:
        """Deterministic orbit representative: the class whose canonical
        vector is lexicographically greatest in the orbit."""
        orbit = self.orbit_of_class(coords)
        return max(orbit, key=lambda c: self.quotient.representative(c))

    def to_json(self) -> dict:
        phi1 = {
            g: (label[0] if len(label) == 1 else list(label))
            for g, label in self.phi1.items()
        }
        out = {
            "phi1": phi1,
            "based_group": self.based_group.to_json(),
            "representatives": [list(v) for v in self.representatives()],
        }
        if not self.is_finite:
            out["free_generators"] = [list(v) for v in self.free_generators()]
        if self.free_orbits is not None:
            out["free_orbits"] = [list(o) for o in self.free_orbits]
        return out


@dataclass
class SectorClassification:
    """The full answer over all sectors of Hom(pi_1 M, pi_1 X)."""

    source: str
    target: str
    mode: str  # "based" | "free"
    layout: HomLayout
    sectors: list[SectorResult]

    def based_groups(self) -> list[AbelianGroup]:
        return [s.based_group for s in self.sectors]

    def total_free_classes(self) -> Optional[int]:
        """Number of free classes when every sector is finite, else None."""
        total = 0
        for s in self.sectors:
            if not s.is_finite or s.free_orbits is None:
                return None
            total += len(s.free_orbits)
        return total

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "mode": self.mode,
            "layout": self.layout.to_json(),
            "sectors": [s.to_json() for s in self.sectors],
        }


def classify_based(M: CWComplex, X: ModuleXMod) -> SectorClassification:
    """Based homotopy classes sector by sector.

    Requires M of dimension <= 2 and finite pi_1 of the target.
    """
    if M.three_cells:
        raise ValueError("classify_based needs a complex of dimension <= 2")
    data = TargetData(X)
    data.require_finite_pi1()
    layout = layout_for(M, X)
    sectors = []
    for assignment in pi1_sectors(M, data):
        lattice = hom_lattice(M, data, assignment)
        if lattice is None:
            raise AssertionError("enumerated sector has no homomorphisms")
        sub = homotopy_sublattice(M, data, assignment)
        quot = quotient_with_representatives(lattice, sub)
        sectors.append(
            SectorResult(
                phi1=assignment, quotient=quot, layout=layout, target_data=data
            )
        )
    return SectorClassification(
        source=M.name or "complex",
        target=X.name or "target",
        mode="based",
        layout=layout,
        sectors=sectors,
    )


def classify_free(M: CWComplex, X: ModuleXMod) -> SectorClassification:
    """Free homotopy classes: the pi_1 X orbits of the based classes.

    Since G is abelian, conjugation on sectors is trivial and each orbit
    stays inside its sector; finite sectors get an explicit orbit partition
    of the representative list.
    """
    out = classify_based(M, X)
    out.mode = "free"
    for sector in out.sectors:
        if not sector.is_finite:
            continue
        reps = sector.representatives()
        coord_index = {
            sector.quotient.class_coords(rep): i for i, rep in enumerate(reps)
        }
        assigned: dict[int, int] = {}
        orbits: list[list[int]] = []
        for i, rep in enumerate(reps):
            if i in assigned:
                continue
            orbit = sorted(
                coord_index[c]
                for c in sector.orbit_of_class(sector.quotient.class_coords(rep))
            )
            for j in orbit:
                assigned[j] = len(orbits)
            orbits.append(orbit)
        sector.free_orbits = orbits
    return out


# ---------------------------------------------------------------------------
# Dimension 1 and the wedge formula
# ---------------------------------------------------------------------------


@dataclass
class Dim1Classification:
    """Maps from a wedge of circles: based classes are tuples of elements of
    pi_1 X, free classes their orbits under simultaneous conjugation."""

    n_circles: int
    based: list[tuple[int, ...]]
    free_orbits: list[list[tuple[int, ...]]]

    @property
    def based_count(self) -> int:
        return len(self.based)

    @property
    def free_count(self) -> int:
        return len(self.free_orbits)


def classify_dim1(n_circles: int, pi1x: FiniteGroup) -> Dim1Classification:
    """Classification for a 1-complex: Hom(free group, pi_1 X) and its
    conjugation orbits, by direct enumeration."""
    based = list(itertools.product(pi1x.elements(), repeat=n_circles))
    seen: set[tuple[int, ...]] = set()
    orbits = []
    for tup in based:
        if tup in seen:
            continue
        orbit = {
            tuple(pi1x.conj(g, x) for x in tup) for g in pi1x.elements()
        }
        seen |= orbit
        orbits.append(sorted(orbit))
    return Dim1Classification(n_circles=n_circles, based=based, free_orbits=orbits)


@dataclass
class WedgeClasses:
    """Closed-form answer for the wedge of a circle and a 2-sphere."""

    pi2: AbelianGroup
    pi1: AbelianGroup
    kernel_basis: list[Vector]
    pi2_action: list[IntMatrix]  # one matrix per pi_1 X generator, on the kernel basis

    @property
    def based_description(self) -> str:
        return f"{self.pi2} x {self.pi1}"


def wedge_formula(X: ModuleXMod) -> WedgeClasses:
    """Based classes of maps from S^1 v S^2: ker(d) x coker(d), with free
    classes the pi_1 X orbits (the action on phi2 and trivial conjugation)."""
    data = TargetData(X)
    basis = data.kernel_basis()
    lat = Lattice(X.rank, basis)
    matrices = []
    for gen_vec in data.pi1.generator_vectors:
        rho = X.rho_of_coords(gen_vec)
        cols = []
        for b in basis:
            coords = lat.coords_in_basis(rho.apply(b))
            if coords is None:
                raise XModError("action does not preserve ker(d)")
            cols.append(coords)
        matrices.append(IntMatrix.from_columns(cols, height=len(basis)))
    return WedgeClasses(
        pi2=AbelianGroup.free(len(basis)),
        pi1=data.pi1_group,
        kernel_basis=basis,
        pi2_action=matrices,
    )
