"""Dimension-3 classification for the 2-sphere target.

The target's crossed square is rigid (all four groups are Z, the side maps
are an identity and a zero pair), which collapses the nonabelian tensor
calculus to integer bilinear algebra: a formal word in tensor and conjugated
3-cell letters evaluates to an integer once every cell carries a value, and
homotopy of homomorphisms becomes a linear Diophantine system over the
cylinder cells.  The boundary word of the cylinder's 4-cell is per-space
preset data; the Pontrjagin cup-product route provides an independent check.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .complexes import CWComplex, HWord, TriadLetter, catalog
from .words import Alphabet, Word
from .zlinalg import (
    AbelianGroup,
    AffineLattice,
    IntMatrix,
    Lattice,
    quotient,
    solve,
)

Vector = tuple[int, ...]


class Dim3Error(Exception):
    pass


# ---------------------------------------------------------------------------
# The target crossed square of the 2-sphere
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class S2CrossedSquareTarget:
    """The crossed square of the 2-sphere: L = K = H = G = Z with kappa and
    eta the zero maps, nu and mu the identity, and all actions trivial.
    pi_3 = ker(eta) = Z; the zero side maps are what collapse the tensor
    calculus to products of integers in :func:`evaluate_L`."""

    L: AbelianGroup = AbelianGroup.free(1)
    K: AbelianGroup = AbelianGroup.free(1)
    H: AbelianGroup = AbelianGroup.free(1)
    G: AbelianGroup = AbelianGroup.free(1)
    kappa: int = 0  # multiplier of the map L -> K
    eta: int = 0  # multiplier of the map L -> H
    nu: int = 1  # multiplier of the map K -> G
    mu: int = 1  # multiplier of the map H -> G

    @property
    def pi3(self) -> AbelianGroup:
        return AbelianGroup.free(1)


# ---------------------------------------------------------------------------
# Formal words in the triad group of the cylinder and their evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TensorLetter:
    """A tensor generator h (x) k of two pre-crossed module words, to a sign."""

    h: HWord
    k: HWord
    sign: int


@dataclass(frozen=True)
class CLetter:
    """A conjugated 3-cell (or cylinder 3-cell) generator, to a sign."""

    conj_f: Word
    conj_h: HWord
    cell: str
    sign: int


FormalLWord = tuple[TensorLetter | CLetter, ...]


class LinForm:
    """An affine integer form over named unknowns; products are allowed only
    when one factor is constant (all preset data stays bilinear in constants)."""

    __slots__ = ("const", "coeffs")

    def __init__(self, const: int = 0, coeffs: Mapping[str, int] | None = None):
        self.const = int(const)
        self.coeffs = {k: int(v) for k, v in (coeffs or {}).items() if v}

    @staticmethod
    def symbol(name: str) -> "LinForm":
        return LinForm(0, {name: 1})

    @staticmethod
    def lift(value: "LinForm | int") -> "LinForm":
        return value if isinstance(value, LinForm) else LinForm(value)

    @property
    def is_constant(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LinForm | int") -> "LinForm":
        other = LinForm.lift(other)
        coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            coeffs[k] = coeffs.get(k, 0) + v
        return LinForm(self.const + other.const, coeffs)

    def __neg__(self) -> "LinForm":
        return LinForm(-self.const, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "LinForm | int") -> "LinForm":
        return self + (-LinForm.lift(other))

    def __mul__(self, other: "LinForm | int") -> "LinForm":
        other = LinForm.lift(other)
        if not self.is_constant and not other.is_constant:
            raise Dim3Error("nonlinear product of two unknown-bearing values")
        if self.is_constant:
            scalar, form = self.const, other
        else:
            scalar, form = other.const, self
        return LinForm(scalar * form.const, {k: scalar * v for k, v in form.coeffs.items()})

    def scaled(self, n: int) -> "LinForm":
        return LinForm(n * self.const, {k: n * v for k, v in self.coeffs.items()})

    def as_int(self) -> int:
        if not self.is_constant:
            raise Dim3Error(f"form still depends on unknowns: {sorted(self.coeffs)}")
        return self.const

    def __eq__(self, other: object) -> bool:
        other = LinForm.lift(other) if isinstance(other, (LinForm, int)) else None
        return other is not None and self.const == other.const and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        bits = [str(self.const)] if self.const or not self.coeffs else []
        bits += [f"{v}*{k}" for k, v in sorted(self.coeffs.items())]
        return " + ".join(bits)


def _phi2_of_hword(word: HWord, values: Mapping[str, "LinForm | int"]) -> LinForm:
    """Signed sum of cell values over an H-word; conjugators drop because the
    target group acts trivially."""
    out = LinForm(0)
    for _, cell, sign in word:
        if cell not in values:
            raise Dim3Error(f"no value assigned to cell {cell!r}")
        out = out + LinForm.lift(values[cell]).scaled(sign)
    return out


def evaluate_L(
    word: FormalLWord,
    phi2_values: Mapping[str, "LinForm | int"],
    phi3_values: Mapping[str, "LinForm | int"] | None = None,
    i_values: Mapping[str, "LinForm | int"] | None = None,
) -> "LinForm | int":
    """Image of a formal triad-group word in pi_3 S^2 = Z.

    Tensor letters multiply the signed phi2 sums of their two factors; a
    conjugated 3-cell letter contributes its own value, conjugators dropping
    since the target action is trivial.  Returns an int when every referenced
    value is an int.
    """
    values: dict[str, LinForm | int] = dict(phi2_values)
    for extra in (phi3_values, i_values):
        if extra:
            values.update(extra)
    total = LinForm(0)
    for letter in word:
        if isinstance(letter, TensorLetter):
            term = _phi2_of_hword(letter.h, values) * _phi2_of_hword(letter.k, values)
        else:
            if letter.cell not in values:
                raise Dim3Error(f"no value assigned to cell {letter.cell!r}")
            term = LinForm.lift(values[letter.cell])
        total = total + term.scaled(letter.sign)
    return total.as_int() if total.is_constant else total


# ---------------------------------------------------------------------------
# Homomorphism lattice (crossed squares into the sphere target)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class XSqHomLayout:
    two_cells: tuple[str, ...]
    three_cells: tuple[str, ...]

    @property
    def dim(self) -> int:
        return len(self.two_cells) + len(self.three_cells)

    def phi2_index(self, cell: str) -> int:
        return self.two_cells.index(cell)

    def phi3_index(self, cell: str) -> int:
        return len(self.two_cells) + self.three_cells.index(cell)


@dataclass(frozen=True)
class XSqHom:
    """A crossed-square homomorphism into the sphere target, recorded on the
    cells: one integer per 2-cell and per 3-cell (phi1 is forced trivial)."""

    phi2: dict
    phi3: dict

    @staticmethod
    def from_vector(layout: XSqHomLayout, vec: Sequence[int]) -> "XSqHom":
        return XSqHom(
            phi2={c: vec[layout.phi2_index(c)] for c in layout.two_cells},
            phi3={c: vec[layout.phi3_index(c)] for c in layout.three_cells},
        )

    def to_vector(self, layout: XSqHomLayout) -> Vector:
        return tuple(
            [self.phi2[c] for c in layout.two_cells]
            + [self.phi3[c] for c in layout.three_cells]
        )

    def commutes(self, M: CWComplex) -> bool:
        """The signed phi2 sum over every 3-cell's triad word vanishes (the
        image of the second structure map is zero in the sphere square)."""
        for name, triad in M.three_cells:
            _, hword = M.triad_normal_form(triad)
            if sum(sign * self.phi2[cell] for _, cell, sign in hword):
                return False
        return True


def xsq_hom_lattice(M: CWComplex) -> tuple[XSqHomLayout, AffineLattice]:
    """All crossed-square homomorphisms into the sphere target, as an affine
    lattice in (phi2, phi3) coordinates.

    phi1 is forced trivial (the target has no 1-cells); the only constraints
    are, per 3-cell, that the signed phi2 sum over its triad word vanishes.
    """
    layout = XSqHomLayout(M.two_cell_names(), M.three_cell_names())
    rows = []
    for _, triad in M.three_cells:
        _, hword = M.triad_normal_form(triad)
        row = [0] * layout.dim
        for _, cell, sign in hword:
            row[layout.phi2_index(cell)] += sign
        rows.append(row)
    if not rows:
        return layout, AffineLattice.from_solution(
            (0,) * layout.dim,
            [tuple(1 if i == j else 0 for j in range(layout.dim)) for i in range(layout.dim)],
        )
    sol = solve(IntMatrix(rows, cols=layout.dim), (0,) * len(rows))
    assert sol is not None
    particular, kernel = sol
    return layout, AffineLattice.from_solution(particular, kernel)


# ---------------------------------------------------------------------------
# Cylinder presets
# ---------------------------------------------------------------------------


@dataclass
class CylinderPreset:
    """The based cylinder of a catalog 3-complex: its CW data (doubled cells
    plus interval cells) and the boundary word of each interval 4-cell.

    The 4-cell boundary words are transcribed data, not computed objects;
    the Pontrjagin route independently validates every sector group they
    produce.
    """

    space: str
    cylinder: CWComplex
    i_two_cells: tuple[str, ...]
    i_three_cells: tuple[str, ...]
    boundary4: dict[str, FormalLWord]
    end_cell_pairs: dict[str, tuple[str, str]]  # base cell -> (0-end, 1-end)

    def __post_init__(self):
        self._check_phi2_rigidity()

    def _check_phi2_rigidity(self) -> None:
        """Every interval 3-cell must force the two phi2 end values of one
        base 2-cell to agree and be free of interval unknowns; this is what
        makes the phi2 assignment a sector invariant."""
        values: dict[str, LinForm] = {}
        for name in self.cylinder.two_cell_names():
            values[name] = LinForm.symbol(name)
        attach = dict(self.cylinder.three_cells)
        expected = set()
        for name in self.i_three_cells:
            _, hword = self.cylinder.triad_normal_form(attach[name])
            form = _phi2_of_hword(hword, values)
            if form.const:
                raise Dim3Error(f"interval 3-cell {name} has a constant defect")
            coeffs = form.coeffs
            pair = None
            for base, (end0, end1) in self.end_cell_pairs.items():
                if set(coeffs) == {end0, end1}:
                    if coeffs[end0] + coeffs[end1] != 0 or abs(coeffs[end1]) != 1:
                        break
                    pair = base
                    break
            if pair is None:
                raise Dim3Error(
                    f"interval 3-cell {name} does not pin a single 2-cell: {form!r}"
                )
            expected.add(pair)
        if expected != set(self.end_cell_pairs):
            raise Dim3Error("interval 3-cells do not pin every base 2-cell")


def _relabel(word: Word, target: Alphabet, suffix: str) -> Word:
    return Word(target, tuple((f"{n}{suffix}", e) for n, e in word.runs))


def _relabel_triad(
    letters: Sequence[TriadLetter], target: Alphabet, suffix: str
) -> list[TriadLetter]:
    out = []
    for letter in letters:
        out.append(
            TriadLetter(
                conj_f=_relabel(letter.conj_f, target, suffix),
                conj_h=tuple(
                    (_relabel(f, target, suffix), f"{cell}{suffix}", sign)
                    for f, cell, sign in letter.conj_h
                ),
                cell=f"{letter.cell}{suffix}",
                sign=letter.sign,
            )
        )
    return out


@functools.lru_cache(maxsize=None)
def cylinder_preset(space: str) -> CylinderPreset:
    """Preset cylinders: available for s1_x_s2 and torus3.

    Cached: presets are read-only data and sector sweeps request them often.
    """
    if space == "s1_x_s2":
        return _s1_x_s2_preset()
    if space == "torus3":
        return _torus3_preset()
    raise Dim3Error(f"no cylinder preset for {space!r}")


def _doubled_cells(M: CWComplex, alphabet: Alphabet):
    two = []
    three = []
    for suffix in ("0", "1"):
        for name, word in M.two_cells:
            two.append((f"{name}{suffix}", _relabel(word, alphabet, suffix)))
        for name, triad in M.three_cells:
            three.append((f"{name}{suffix}", _relabel_triad(triad, alphabet, suffix)))
    return two, three


def _s1_x_s2_preset() -> CylinderPreset:
    M = catalog("s1_x_s2")
    alphabet = Alphabet(["a0", "a1"])
    two, three = _doubled_cells(M, alphabet)
    two.append(("aI", alphabet.word("a1 a0^-1")))
    e = Word.identity(alphabet)
    tI = [
        TriadLetter(e, (), "t1", 1),
        TriadLetter(e, (), "t0", -1),
    ]
    three.append(("tI", tI))
    cylinder = CWComplex(
        alphabet.names, two, three, name="cylinder(s1_x_s2)"
    )
    t0_inv: HWord = ((e, "t0", -1),)
    boundary4: FormalLWord = (
        TensorLetter(h=((e, "aI", -1),), k=((e, "t0", 1),), sign=-1),
        TensorLetter(h=((alphabet.word("a1"), "t0", -1),), k=((e, "aI", 1),), sign=-1),
        CLetter(conj_f=e, conj_h=t0_inv, cell="tI", sign=1),
        CLetter(conj_f=e, conj_h=t0_inv, cell="x1", sign=1),
        CLetter(conj_f=e, conj_h=t0_inv, cell="tI", sign=-1),
        CLetter(conj_f=e, conj_h=t0_inv + ((e, "aI", 1),), cell="x0", sign=-1),
    )
    return CylinderPreset(
        space="s1_x_s2",
        cylinder=cylinder,
        i_two_cells=("aI",),
        i_three_cells=("tI",),
        boundary4={"xI": boundary4},
        end_cell_pairs={"t": ("t0", "t1")},
    )


def _torus3_preset() -> CylinderPreset:
    M = catalog("torus3")
    alphabet = Alphabet(["a0", "b0", "c0", "a1", "b1", "c1"])
    two, three = _doubled_cells(M, alphabet)
    for gen in ("a", "b", "c"):
        two.append((f"{gen}I", alphabet.word(f"{gen}1 {gen}0^-1")))
    e = Word.identity(alphabet)

    def w(text: str) -> Word:
        return alphabet.word(text)

    # sigma_3 of the interval 3-cells, cyclically in (t,a) -> (u,b) -> (v,c).
    cyclic = [("t", "b", "c"), ("u", "c", "a"), ("v", "a", "b")]
    for cell, y, z in cyclic:
        letters = [
            TriadLetter(e, (), f"{cell}1", 1),
            TriadLetter(w(f"{z}1"), (), f"{y}I", 1),
            TriadLetter(e, (), f"{z}I", 1),
            TriadLetter(e, (), f"{cell}0", -1),
            TriadLetter(e, (), f"{y}I", -1),
            TriadLetter(w(f"{y}1"), (), f"{z}I", -1),
        ]
        three.append((f"{cell}I", letters))
    cylinder = CWComplex(alphabet.names, two, three, name="cylinder(torus3)")

    tensor_pairs = [("a", "t"), ("b", "u"), ("c", "v")]
    letters: list[TensorLetter | CLetter] = []
    for gen, cell in tensor_pairs:
        letters.append(
            TensorLetter(h=((e, f"{gen}I", -1),), k=((e, f"{cell}0", 1),), sign=1)
        )
        letters.append(
            TensorLetter(
                h=((w(f"{gen}1"), f"{cell}0", -1),), k=((e, f"{gen}I", 1),), sign=1
            )
        )
    letters += [
        CLetter(e, (), "x1", 1),
        CLetter(e, (), "tI", -1),
        CLetter(w("c1"), (), "vI", 1),
        CLetter(e, (), "uI", -1),
        CLetter(e, (), "x0", -1),
        CLetter(w("a1"), (), "tI", 1),
        CLetter(e, (), "vI", -1),
        CLetter(w("b1"), (), "uI", 1),
    ]
    return CylinderPreset(
        space="torus3",
        cylinder=cylinder,
        i_two_cells=("aI", "bI", "cI"),
        i_three_cells=("tI", "uI", "vI"),
        boundary4={"xI": tuple(letters)},
        end_cell_pairs={"t": ("t0", "t1"), "u": ("u0", "u1"), "v": ("v0", "v1")},
    )


# ---------------------------------------------------------------------------
# Classification through the cylinder
# ---------------------------------------------------------------------------


@dataclass
class S2Sector:
    phi2: dict
    group: AbelianGroup
    delta_lattice: Lattice  # achievable phi3 differences

    def to_json(self) -> dict:
        return {"phi2": dict(self.phi2), "group": self.group.to_json()}


@dataclass
class S2Classification:
    source: str
    layout: XSqHomLayout
    sectors: list[S2Sector]

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": "sphere2",
            "two_cells": list(self.layout.two_cells),
            "three_cells": list(self.layout.three_cells),
            "sectors": [s.to_json() for s in self.sectors],
        }


def sector_group_s2(M: CWComplex, phi2: Mapping[str, int]) -> tuple[AbelianGroup, Lattice]:
    """Based = free classes over one phi2 assignment (the target is simply
    connected): quotient of Z^{3-cells} by the achievable phi3 differences.

    A difference is achievable when the interval cells of the preset cylinder
    admit integer values solving every interval 3-cell constraint and the
    4-cell boundary relation.
    """
    preset = cylinder_preset(M.name or "")
    layout, lattice = xsq_hom_lattice(M)
    vec = [0] * layout.dim
    for cell in layout.two_cells:
        vec[layout.phi2_index(cell)] = int(phi2[cell])
    if tuple(vec) not in lattice:
        raise Dim3Error(f"phi2 assignment {dict(phi2)} is not a homomorphism")

    unknowns: list[str] = []
    values: dict[str, LinForm | int] = {}
    for base, (end0, end1) in preset.end_cell_pairs.items():
        values[end0] = int(phi2[base])
        values[end1] = int(phi2[base])
    for name in preset.i_two_cells + preset.i_three_cells:
        values[name] = LinForm.symbol(name)
        unknowns.append(name)
    deltas = []
    for name in layout.three_cells:
        values[f"{name}0"] = 0
        delta = f"delta_{name}"
        values[f"{name}1"] = LinForm.symbol(delta)
        deltas.append(delta)

    equations: list[LinForm] = []
    attach = dict(preset.cylinder.three_cells)
    for name in preset.i_three_cells:
        _, hword = preset.cylinder.triad_normal_form(attach[name])
        equations.append(_phi2_of_hword(hword, values))
    for name in layout.three_cells:
        form = LinForm.lift(evaluate_L(preset.boundary4[f"{name}I"], values))
        equations.append(form)

    columns = unknowns + deltas
    rows = [[eq.coeffs.get(u, 0) for u in columns] for eq in equations]
    rhs = tuple(-eq.const for eq in equations)
    sol = solve(IntMatrix(rows, cols=len(columns)), rhs)
    delta_lattice = Lattice(len(deltas))
    if sol is not None:
        particular, kernel = sol
        base_delta = particular[len(unknowns):]
        if any(base_delta):
            raise Dim3Error("inhomogeneous homotopy system; preset data is broken")
        for k in kernel:
            delta_lattice.add(k[len(unknowns):])
    group = quotient(len(deltas), delta_lattice.basis())
    return group, delta_lattice


def classify_s2(
    M: CWComplex, sectors: Iterable[Mapping[str, int]] | None = None, sweep: int = 2
) -> S2Classification:
    """Classify maps of a preset 3-complex into the 2-sphere, per sector.

    ``sectors`` is an iterable of phi2 assignments; when omitted, all
    assignments with entries in [-sweep, sweep] are used.
    """
    layout, _ = xsq_hom_lattice(M)
    if sectors is None:
        names = layout.two_cells
        sectors = [
            dict(zip(names, combo))
            for combo in itertools.product(range(-sweep, sweep + 1), repeat=len(names))
        ]
    out = []
    for phi2 in sectors:
        group, lattice = sector_group_s2(M, phi2)
        out.append(S2Sector(phi2=dict(phi2), group=group, delta_lattice=lattice))
    return S2Classification(source=M.name or "complex", layout=layout, sectors=out)


# ---------------------------------------------------------------------------
# The Pontrjagin cup-product route
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CupData:
    """Cohomology of a 3-complex with its cup pairing H^1 x H^2 -> H^3.

    ``h2`` and ``h3`` list invariant factors (0 = infinite); ``cup[i][j]``
    gives the H^3 coordinates of the product of the i-th H^1 generator with
    the j-th H^2 generator.
    """

    h1_rank: int
    h2: tuple[int, ...]
    h3: tuple[int, ...]
    cup: tuple[tuple[Vector, ...], ...]

    def __post_init__(self):
        if len(self.cup) != self.h1_rank:
            raise Dim3Error("cup table must have one row per H^1 generator")
        for row in self.cup:
            if len(row) != len(self.h2):
                raise Dim3Error("cup table row must have one entry per H^2 generator")
            for entry in row:
                if len(entry) != len(self.h3):
                    raise Dim3Error("cup entry must give coordinates over H^3 generators")
        relations = self._h3_relations()
        lat = Lattice(len(self.h3), relations)
        for i, row in enumerate(self.cup):
            for j, entry in enumerate(row):
                order = self.h2[j]
                if order and tuple(order * x for x in entry) not in lat:
                    raise Dim3Error(
                        f"cup table not bilinear: {order} * cup[{i}][{j}] != 0 in H^3"
                    )

    def _h3_relations(self) -> list[Vector]:
        out = []
        for idx, f in enumerate(self.h3):
            if f:
                col = [0] * len(self.h3)
                col[idx] = f
                out.append(tuple(col))
        return out

    @staticmethod
    def from_json(obj: dict) -> "CupData":
        allowed = {"h1_rank", "h2", "h3", "cup"}
        unknown = set(obj) - allowed
        if unknown:
            raise Dim3Error(f"unknown keys in cup file: {sorted(unknown)}")
        try:
            return CupData(
                h1_rank=int(obj["h1_rank"]),
                h2=tuple(int(x) for x in obj["h2"]),
                h3=tuple(int(x) for x in obj["h3"]),
                cup=tuple(
                    tuple(tuple(int(x) for x in entry) for entry in row)
                    for row in obj["cup"]
                ),
            )
        except (KeyError, TypeError, ValueError) as err:
            raise Dim3Error(f"malformed cup file: {err}") from None

    def to_json(self) -> dict:
        return {
            "h1_rank": self.h1_rank,
            "h2": list(self.h2),
            "h3": list(self.h3),
            "cup": [[list(entry) for entry in row] for row in self.cup],
        }


def cup_preset(space: str) -> CupData:
    """Cup pairing data for the catalog 3-manifolds."""
    if space == "s1_x_s2":
        return CupData(h1_rank=1, h2=(0,), h3=(0,), cup=(((1,),),))
    if space == "torus3":
        cup = tuple(
            tuple((1,) if i == j else (0,) for j in range(3)) for i in range(3)
        )
        return CupData(h1_rank=3, h2=(0, 0, 0), h3=(0,), cup=cup)
    raise Dim3Error(f"no cup preset for {space!r}")


def pontrjagin_sector_group(cup: CupData, alpha: Sequence[int]) -> AbelianGroup:
    """H^3 modulo the sublattice 2 alpha u H^1 for one class alpha in H^2."""
    if len(alpha) != len(cup.h2):
        raise Dim3Error("alpha must have one coordinate per H^2 generator")
    columns = list(cup._h3_relations())
    for i in range(cup.h1_rank):
        vec = [0] * len(cup.h3)
        for j, a in enumerate(alpha):
            for idx, x in enumerate(cup.cup[i][j]):
                vec[idx] += 2 * a * x
        columns.append(tuple(vec))
    return quotient(len(cup.h3), columns)


def pontrjagin_classify(
    cup: CupData, alphas: Iterable[Sequence[int]]
) -> list[tuple[Vector, AbelianGroup]]:
    """Classes of maps to the 2-sphere over each pullback class alpha."""
    return [(tuple(a), pontrjagin_sector_group(cup, a)) for a in alphas]


# ---------------------------------------------------------------------------
# Structural report
# ---------------------------------------------------------------------------


@dataclass
class CrossedSquareReport:
    space: str
    cell_counts: tuple[int, int, int]
    generators: tuple[str, ...]
    sigma2: list[tuple[str, str]]
    sigma3: list[tuple[str, str, str]]  # name, H-component, boundary witness
    pi1_presentation: str
    notes: list[str]

    def render(self) -> str:
        n1, n2, n3 = self.cell_counts
        lines = [
            f"crossed square of {self.space}",
            f"  cells: {n1} one-cells, {n2} two-cells, {n3} three-cells",
            f"  F = free group on {{{', '.join(self.generators) or ''}}}",
        ]
        for name, attach in self.sigma2:
            lines.append(f"  sigma_2({name}) = {attach or '1'}")
        lines.append(
            "  H = free pre-crossed module on the 2-cells over F;"
            " G = F |x H, the free group on 1-cells and 2-cells"
        )
        lines.append(
            "  H-bar = {(d h, h^-1)} in F |x H; mu, nu are the two inclusions"
        )
        for name, hword, witness in self.sigma3:
            lines.append(f"  sigma_3({name}) = {hword}")
            lines.append(f"    boundary closes: d(sigma_3({name})) = {witness}")
        lines.append(
            "  L = (H (x) H-bar) o C with C the free crossed module on sigma_3,"
            " modulo i(dc (x) k) = j(c) j(^k c^-1) and i(h (x) dc) = j(^h c) j(c^-1)"
        )
        lines.append(f"  pi_1 = {self.pi1_presentation}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


_KNOWN_PI3 = {"sphere2": "Z", "s1_x_s2": "Z"}


def crossed_square_report(M: CWComplex) -> CrossedSquareReport:
    """Structural description of the free crossed square of a complex."""
    sigma2 = [(name, str(word)) for name, word in M.two_cells]
    sigma3 = []
    for name, triad in M.three_cells:
        _, hword = M.triad_normal_form(triad)
        text = " ".join(
            ("" if f.is_identity else f"^({f})") + cell + ("" if sign == 1 else "^-1")
            for f, cell, sign in hword
        )
        witness = str(M.hword_boundary(hword)) or "1"
        sigma3.append((name, text or "1", witness))
    gens = ", ".join(M.alphabet.names)
    relators = ", ".join(
        f"{w} = 1" for _, w in M.two_cells if not w.is_identity
    )
    if not gens:
        pi1 = "1"
    elif relators:
        pi1 = f"< {gens} | {relators} >"
    else:
        pi1 = f"< {gens} | >"
    notes = []
    if not M.three_cells:
        notes.append("no 3-cells: C is trivial and L = H (x) H-bar")
    for name, word in M.two_cells:
        if word.is_identity and not M.alphabet.names:
            notes.append("H = H-bar = G = Z, the tensor square L = Z")
    if M.name == "s1_x_s2":
        notes.append("d: H -> F is trivial, so H-bar = H as subgroups of F |x H")
    if M.name in _KNOWN_PI3:
        notes.append(f"pi_3 = {_KNOWN_PI3[M.name]} (catalog constant)")
    return CrossedSquareReport(
        space=M.name or "complex",
        cell_counts=M.cell_counts(),
        generators=M.alphabet.names,
        sigma2=sigma2,
        sigma3=sigma3,
        pi1_presentation=pi1,
        notes=notes,
    )
