"""Reduced CW complexes of dimension <= 3 and the catalog of model spaces.

A complex has exactly one (implicit) 0-cell, named 1-cells, 2-cells attached
by reduced words in the 1-cells, and 3-cells attached by triad words: products
of conjugated 2-cell generators that land in the intersection of the two
canonical relative subgroups of the semidirect group F |x H.  Membership is
checked on construction, so every held complex is valid.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .words import Alphabet, AlphabetError, Word

# An HWord is a freely reduced word in the generators (f, t) of the free
# pre-crossed module: a tuple of (conjugator word, 2-cell name, sign).
HLetter = tuple[Word, str, int]
HWord = tuple[HLetter, ...]


class ComplexError(Exception):
    """Structural problem in a CW complex or its file form."""


@dataclass(frozen=True)
class TriadLetter:
    """One factor of a triad attaching word: a 2-cell generator conjugated
    by a group element (conj_f, conj_h) of F |x H, raised to sign +-1."""

    conj_f: Word
    conj_h: HWord
    cell: str
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ComplexError(f"triad letter sign must be +-1, got {self.sign}")


TriadWord = tuple[TriadLetter, ...]


@dataclass(frozen=True)
class TriadViolation:
    """Failed H-bar membership: the residual boundary word and the index of
    the letter after which the running boundary never returns to identity."""

    index: int
    residual: Word

    def __str__(self) -> str:
        return (
            f"triad word leaves H-bar at letter {self.index}: "
            f"boundary residue '{self.residual}' != identity"
        )


def reduce_hword(letters: Iterable[HLetter]) -> HWord:
    """Freely reduce a word in the generators (conjugator, cell)."""
    out: list[HLetter] = []
    for f, cell, sign in letters:
        if sign not in (1, -1):
            raise ComplexError(f"H-word letter sign must be +-1, got {sign}")
        if out and out[-1][0] == f and out[-1][1] == cell and out[-1][2] == -sign:
            out.pop()
        else:
            out.append((f, cell, sign))
    return tuple(out)


def invert_hword(word: HWord) -> HWord:
    return tuple((f, cell, -sign) for f, cell, sign in reversed(word))


class CWComplex:
    """A reduced CW complex: alphabet of 1-cells, attached 2- and 3-cells."""

    def __init__(
        self,
        generators: Iterable[str],
        two_cells: Iterable[tuple[str, Word | str]],
        three_cells: Iterable[tuple[str, Sequence[TriadLetter]]] = (),
        name: str | None = None,
    ):
        self.alphabet = Alphabet(generators)
        self.name = name

        cells: list[tuple[str, Word]] = []
        seen: set[str] = set(self.alphabet.names)
        for cell_name, attach in two_cells:
            if cell_name in seen:
                raise ComplexError(f"duplicate cell name {cell_name!r}")
            seen.add(cell_name)
            word = attach if isinstance(attach, Word) else self.alphabet.word(attach)
            if word.alphabet != self.alphabet:
                raise AlphabetError("attaching word over a different alphabet")
            cells.append((cell_name, word))
        self.two_cells = tuple(cells)
        self._attach = dict(self.two_cells)

        triads: list[tuple[str, TriadWord]] = []
        for cell_name, letters in three_cells:
            if cell_name in seen:
                raise ComplexError(f"duplicate cell name {cell_name!r}")
            seen.add(cell_name)
            triads.append((cell_name, tuple(letters)))
        self.three_cells = tuple(triads)

        for cell_name, word in self.three_cells:
            verdict = validate_triad(self, word)
            if verdict is not None:
                raise ComplexError(f"3-cell {cell_name!r}: {verdict}")

    # -- structure ------------------------------------------------------------

    @property
    def dim(self) -> int:
        if self.three_cells:
            return 3
        if self.two_cells:
            return 2
        return 1 if len(self.alphabet) else 0

    def attaching_word(self, cell: str) -> Word:
        try:
            return self._attach[cell]
        except KeyError:
            raise ComplexError(f"unknown 2-cell {cell!r}") from None

    def two_cell_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.two_cells)

    def three_cell_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.three_cells)

    def cell_counts(self) -> tuple[int, int, int]:
        return (len(self.alphabet), len(self.two_cells), len(self.three_cells))

    def __repr__(self) -> str:
        label = self.name or "complex"
        n1, n2, n3 = self.cell_counts()
        return f"CWComplex({label}: {n1} one-cells, {n2} two-cells, {n3} three-cells)"

    # -- semidirect normal form ------------------------------------------------

    def hword_boundary(self, word: HWord) -> Word:
        """Image of an H-word under the free pre-crossed boundary
        (f, t) -> f sigma_2(t) f^-1, reduced in the free group on 1-cells."""
        out = Word.identity(self.alphabet)
        for f, cell, sign in word:
            piece = self.attaching_word(cell).conjugate_by(f)
            out = out * (piece if sign == 1 else piece.inverse())
        return out

    def triad_normal_form(self, word: TriadWord) -> tuple[Word, HWord]:
        """(F-component, H-component) of a triad word in F |x H.

        Each letter is an H-element conjugated inside the semidirect group,
        so the F-component of the product is always the identity; the
        H-component is the concatenation of the conjugated letters.
        """
        h: list[HLetter] = []
        for letter in word:
            if letter.cell not in self._attach:
                raise ComplexError(f"unknown 2-cell {letter.cell!r} in triad word")
            core: HWord = ((letter.conj_f, letter.cell, letter.sign),)
            conjugated = reduce_hword(
                tuple(letter.conj_h) + core + invert_hword(letter.conj_h)
            )
            h.extend(conjugated)
        return Word.identity(self.alphabet), reduce_hword(h)


def validate_triad(M: CWComplex, word: TriadWord) -> TriadViolation | None:
    """Check that a triad word lies in H-bar as well as H.

    Membership in H is automatic (the letters are conjugated H-elements);
    membership in H-bar holds iff the F-component equals the boundary of the
    inverse H-component, which here reduces to the H-component having trivial
    free pre-crossed boundary.  Returns None on success.
    """
    _, h = M.triad_normal_form(word)
    residual = M.hword_boundary(h)
    if residual.is_identity:
        return None
    # Locate the last prefix whose running boundary closes up; everything
    # after it fails to cancel.
    index = 0
    running = Word.identity(M.alphabet)
    for i, letter in enumerate(word):
        _, h_prefix = M.triad_normal_form(word[: i + 1])
        running = M.hword_boundary(h_prefix)
        if running.is_identity:
            index = i + 1
    return TriadViolation(index=min(index, len(word) - 1), residual=residual)


# -- catalog -------------------------------------------------------------------


def _t(alphabet: Alphabet, f: str, cell: str, sign: int) -> TriadLetter:
    return TriadLetter(alphabet.word(f), (), cell, sign)


def catalog(name: str, **params) -> CWComplex:
    """Model spaces with their standard reduced CW structures.

    Names: circle_wedge(n), sphere2, torus2, rp2, genus_surface(g >= 1),
    torus_knot(p >= 1, q >= 1), klein_bottle (= torus_knot(2, 2)),
    s1_wedge_s2, torus3, s1_x_s2.
    """
    if name == "circle_wedge":
        n = int(params.pop("n"))
        _no_extra(name, params)
        if n < 0:
            raise ComplexError("circle_wedge needs n >= 0")
        return CWComplex([f"a{i + 1}" for i in range(n)], [], name=f"circle_wedge({n})")

    if name == "sphere2":
        _no_extra(name, params)
        return CWComplex([], [("t", "")], name="sphere2")

    if name == "torus2":
        _no_extra(name, params)
        return CWComplex(["a", "b"], [("t", "a b a^-1 b^-1")], name="torus2")

    if name == "rp2":
        _no_extra(name, params)
        return CWComplex(["a"], [("t", "a^2")], name="rp2")

    if name == "genus_surface":
        g = int(params.pop("g"))
        _no_extra(name, params)
        if g < 1:
            raise ComplexError("genus_surface needs g >= 1")
        gens = []
        for i in range(1, g + 1):
            gens += [f"a{i}", f"b{i}"]
        relator = " ".join(
            f"a{i} b{i} a{i}^-1 b{i}^-1" for i in range(1, g + 1)
        )
        return CWComplex(gens, [("t", relator)], name=f"genus_surface({g})")

    if name == "torus_knot":
        p, q = int(params.pop("p")), int(params.pop("q"))
        _no_extra(name, params)
        if p < 1 or q < 1:
            raise ComplexError("torus_knot needs p, q >= 1")
        return CWComplex(
            ["a", "b"], [("t", f"a^{p} b^-{q}")], name=f"torus_knot({p},{q})"
        )

    if name == "klein_bottle":
        _no_extra(name, params)
        M = catalog("torus_knot", p=2, q=2)
        M.name = "klein_bottle"
        return M

    if name == "s1_wedge_s2":
        _no_extra(name, params)
        return CWComplex(["a"], [("t", "")], name="s1_wedge_s2")

    if name == "torus3":
        _no_extra(name, params)
        gens = ["a", "b", "c"]
        two = [
            ("t", "b c b^-1 c^-1"),
            ("u", "c a c^-1 a^-1"),
            ("v", "a b a^-1 b^-1"),
        ]
        alphabet = Alphabet(gens)
        sigma3 = [
            _t(alphabet, "", "t", 1),
            _t(alphabet, "c", "v", -1),
            _t(alphabet, "", "u", 1),
            _t(alphabet, "a", "t", -1),
            _t(alphabet, "", "v", 1),
            _t(alphabet, "b", "u", -1),
        ]
        return CWComplex(gens, two, [("x", sigma3)], name="torus3")

    if name == "s1_x_s2":
        _no_extra(name, params)
        alphabet = Alphabet(["a"])
        sigma3 = [_t(alphabet, "", "t", 1), _t(alphabet, "a", "t", -1)]
        return CWComplex(["a"], [("t", "")], [("x", sigma3)], name="s1_x_s2")

    raise ComplexError(f"unknown catalog space {name!r}")


def _no_extra(name: str, params: dict) -> None:
    if params:
        raise ComplexError(f"unexpected parameters for {name}: {sorted(params)}")


# -- file format ----------------------------------------------------------------

_TOP_KEYS = {"generators", "two_cells", "three_cells", "name"}
_TWO_KEYS = {"name", "attach"}
_TRIAD_KEYS = {"f", "h", "cell", "sign"}
_H_KEYS = {"f", "cell", "sign"}


def _triad_letter_from_json(alphabet: Alphabet, obj: dict) -> TriadLetter:
    _check_keys(obj, _TRIAD_KEYS, "triad letter")
    h_letters = []
    for h in obj.get("h", []):
        _check_keys(h, _H_KEYS, "h letter")
        h_letters.append(
            (alphabet.word(h.get("f", "")), str(h["cell"]), int(h["sign"]))
        )
    return TriadLetter(
        conj_f=alphabet.word(obj.get("f", "")),
        conj_h=tuple(h_letters),
        cell=str(obj["cell"]),
        sign=int(obj["sign"]),
    )


def _check_keys(obj: dict, allowed: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise ComplexError(f"expected an object for {where}")
    unknown = set(obj) - allowed
    if unknown:
        raise ComplexError(f"unknown keys in {where}: {sorted(unknown)}")


def loads(text: str) -> CWComplex:
    """Parse a complex from its JSON text form."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise ComplexError(f"parse error at line {err.lineno}, column {err.colno}: {err.msg}") from None
    _check_keys(obj, _TOP_KEYS, "complex")
    try:
        generators = [str(g) for g in obj.get("generators", [])]
        alphabet = Alphabet(generators)
        two = []
        for c in obj.get("two_cells", []):
            _check_keys(c, _TWO_KEYS, "two_cell")
            two.append((str(c["name"]), alphabet.word(str(c.get("attach", "")))))
        three = []
        for c in obj.get("three_cells", []):
            _check_keys(c, {"name", "attach"}, "three_cell")
            letters = [_triad_letter_from_json(alphabet, l) for l in c["attach"]]
            three.append((str(c["name"]), letters))
    except KeyError as err:
        raise ComplexError(f"missing key {err.args[0]!r}") from None
    return CWComplex(generators, two, three, name=obj.get("name"))


def load(path: str) -> CWComplex:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def saves(M: CWComplex) -> str:
    """Canonical JSON text for a complex; ``loads(saves(M))`` equals M."""
    obj: dict = {"generators": list(M.alphabet.names)}
    obj["two_cells"] = [{"name": n, "attach": str(w)} for n, w in M.two_cells]
    if M.three_cells:
        obj["three_cells"] = [
            {
                "name": n,
                "attach": [
                    {
                        "f": str(letter.conj_f),
                        "h": [
                            {"f": str(f), "cell": cell, "sign": sign}
                            for f, cell, sign in letter.conj_h
                        ],
                        "cell": letter.cell,
                        "sign": letter.sign,
                    }
                    for letter in word
                ],
            }
            for n, word in M.three_cells
        ]
    if M.name:
        obj["name"] = M.name
    return json.dumps(obj, indent=2)


def save(M: CWComplex, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(saves(M) + "\n")


def structurally_equal(a: CWComplex, b: CWComplex) -> bool:
    return (
        a.alphabet == b.alphabet
        and a.two_cells == b.two_cells
        and a.three_cells == b.three_cells
    )
