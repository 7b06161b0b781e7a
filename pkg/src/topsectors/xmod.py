"""Crossed modules: computable targets over abelian groups, finite crossed
modules by tables, free pre-crossed boundaries, Hoang data with the extension
3-cocycle, and the strict 2-group dictionary.

A crossed module is a homomorphism d: H -> G with a G-action on H such that
d(^g h) = g d(h) g^-1 and ^d(h) h' = h h' h^-1.  Dropping the second
condition gives a pre-crossed module.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .complexes import CWComplex, HWord
from .fingrp import FiniteGroup
from .words import Word
from .zlinalg import AbelianGroup, IntMatrix


class XModError(Exception):
    pass


# ---------------------------------------------------------------------------
# Computable targets: d : Z^r -> G with G finitely generated abelian
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModuleXMod:
    """A target crossed module d: Z^r -> G with G abelian.

    G is presented by ``free_rank`` free generators followed by torsion
    generators of the given orders; ``action`` holds one integer matrix per
    G-generator acting on Z^r, and ``boundary`` has one column per basis
    vector of Z^r giving its image in G-coordinates.
    """

    free_rank: int
    torsion: tuple[int, ...]
    rank: int
    action: tuple[IntMatrix, ...]
    boundary: IntMatrix
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        k = self.num_g_generators
        if len(self.action) != k:
            raise XModError("need one action matrix per G generator")
        for m in self.action:
            if m.shape != (self.rank, self.rank):
                raise XModError("action matrices must be rank x rank")
        if self.boundary.shape != (k, self.rank):
            raise XModError("boundary must have one G-coordinate column per H basis vector")
        if any(t < 2 for t in self.torsion):
            raise XModError("torsion orders must be >= 2")

    @property
    def num_g_generators(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def torsion_orders(self) -> tuple[int, ...]:
        return self.torsion

    def torsion_relation_columns(self) -> list[tuple[int, ...]]:
        k = self.num_g_generators
        cols = []
        for i, order in enumerate(self.torsion):
            col = [0] * k
            col[self.free_rank + i] = order
            cols.append(tuple(col))
        return cols

    def rho_of_coords(self, coords: Sequence[int]) -> IntMatrix:
        """Action matrix of the G-element with the given coordinates."""
        out = IntMatrix.identity(self.rank)
        for matrix, c in zip(self.action, coords):
            if c == 0:
                continue
            base = matrix if c > 0 else matrix.inverse_unimodular()
            for _ in range(abs(c)):
                out = out @ base
        return out

    def boundary_of(self, v: Sequence[int]) -> tuple[int, ...]:
        """G-coordinates of d(v) for v in Z^r."""
        return self.boundary.apply(v)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "G": {"free_rank": self.free_rank, "torsion": list(self.torsion)},
            "rank": self.rank,
            "action": [[list(row) for row in m.data] for m in self.action],
            "boundary": [list(self.boundary.column(j)) for j in range(self.rank)],
        }

    @staticmethod
    def from_json(obj: dict, name: str | None = None) -> "ModuleXMod":
        allowed = {"G", "rank", "action", "boundary"}
        unknown = set(obj) - allowed
        if unknown:
            raise XModError(f"unknown keys in target file: {sorted(unknown)}")
        try:
            g = obj["G"]
            free_rank = int(g.get("free_rank", 0))
            torsion = tuple(int(t) for t in g.get("torsion", []))
            rank = int(obj["rank"])
            action = tuple(IntMatrix(m) for m in obj["action"])
            boundary = IntMatrix.from_columns(
                [tuple(int(x) for x in col) for col in obj["boundary"]],
                height=free_rank + len(torsion),
            )
        except (KeyError, TypeError, ValueError) as err:
            raise XModError(f"malformed target file: {err}") from None
        return ModuleXMod(free_rank, torsion, rank, action, boundary, name=name)


def target_catalog(name: str, **params) -> ModuleXMod:
    """Built-in targets: rp2, sphere2, trivial(r, k)."""
    if name == "rp2":
        return ModuleXMod(
            free_rank=1,
            torsion=(),
            rank=2,
            action=(IntMatrix([[0, 1], [1, 0]]),),
            boundary=IntMatrix([[2, 2]]),
            name="rp2",
        )
    if name == "sphere2":
        return ModuleXMod(
            free_rank=0,
            torsion=(),
            rank=1,
            action=(),
            boundary=IntMatrix.zeros(0, 1),
            name="sphere2",
        )
    if name == "trivial":
        r = int(params.pop("r"))
        k = int(params.pop("k", 0))
        if params:
            raise XModError(f"unexpected parameters: {sorted(params)}")
        return ModuleXMod(
            free_rank=k,
            torsion=(),
            rank=r,
            action=tuple(IntMatrix.identity(r) for _ in range(k)),
            boundary=IntMatrix.zeros(k, r),
            name=f"trivial({r},{k})",
        )
    raise XModError(f"unknown target {name!r}")


def load_target(path: str) -> ModuleXMod:
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    return ModuleXMod.from_json(obj, name=path)


# ---------------------------------------------------------------------------
# Finite crossed modules by multiplication table
# ---------------------------------------------------------------------------


@dataclass
class FiniteCrossedModule:
    H: FiniteGroup
    G: FiniteGroup
    boundary: tuple[int, ...]  # H index -> G index
    action: tuple[tuple[int, ...], ...]  # [g][h] -> H index

    def __post_init__(self):
        self.boundary = tuple(self.boundary)
        self.action = tuple(tuple(row) for row in self.action)
        if len(self.boundary) != len(self.H):
            raise XModError("boundary must assign an image to every H element")
        if len(self.action) != len(self.G) or any(len(r) != len(self.H) for r in self.action):
            raise XModError("action must be a |G| x |H| table")

    def act(self, g: int, h: int) -> int:
        return self.action[g][h]

    def to_json(self) -> dict:
        return {
            "H_table": [list(r) for r in self.H.table],
            "G_table": [list(r) for r in self.G.table],
            "boundary": list(self.boundary),
            "action": [list(r) for r in self.action],
        }

    @staticmethod
    def from_json(obj: dict) -> "FiniteCrossedModule":
        allowed = {"H_table", "G_table", "boundary", "action"}
        unknown = set(obj) - allowed
        if unknown:
            raise XModError(f"unknown keys in crossed module file: {sorted(unknown)}")
        try:
            return FiniteCrossedModule(
                H=FiniteGroup(obj["H_table"]),
                G=FiniteGroup(obj["G_table"]),
                boundary=tuple(obj["boundary"]),
                action=tuple(tuple(r) for r in obj["action"]),
            )
        except KeyError as err:
            raise XModError(f"missing key {err.args[0]!r}") from None


def load_finite_crossed_module(path: str) -> FiniteCrossedModule:
    with open(path, encoding="utf-8") as fh:
        return FiniteCrossedModule.from_json(json.load(fh))


# ---------------------------------------------------------------------------
# Axiom validation
# ---------------------------------------------------------------------------


def validate(x: ModuleXMod | FiniteCrossedModule) -> list[str]:
    """Check the crossed-module axioms; returns a list of violations."""
    if isinstance(x, ModuleXMod):
        return _validate_module(x)
    return _validate_finite(x)


def _validate_module(x: ModuleXMod) -> list[str]:
    out = []
    identity = IntMatrix.identity(x.rank)
    for i, m in enumerate(x.action):
        if not m.is_unimodular:
            out.append(f"action matrix {i} is not invertible over Z")
    if out:
        return out
    for i, order in enumerate(x.torsion):
        m = x.action[x.free_rank + i]
        power = IntMatrix.identity(x.rank)
        for _ in range(order):
            power = power @ m
        if power != identity:
            out.append(
                f"action of torsion generator {i} does not respect its order {order}"
            )
    # Condition 1 (G abelian): d(^g h) = d(h), i.e. d . rho(g) = d, where the
    # comparison in torsion rows is modulo the generator order.
    for i, m in enumerate(x.action):
        moved = x.boundary @ m
        for row in range(x.num_g_generators):
            order = 0 if row < x.free_rank else x.torsion[row - x.free_rank]
            for col in range(x.rank):
                diff = moved.data[row][col] - x.boundary.data[row][col]
                if (diff % order if order else diff) != 0:
                    out.append(
                        f"equivariance fails: boundary not preserved by action of generator {i}"
                    )
                    break
            else:
                continue
            break
    # Condition 2: rho(d e_j) = identity for every basis vector of H.
    for j in range(x.rank):
        if x.rho_of_coords(x.boundary.column(j)) != identity:
            out.append(f"Peiffer condition fails: d(e_{j}) does not act trivially")
    return out


def _validate_finite(x: FiniteCrossedModule) -> list[str]:
    out = []
    H, G = x.H, x.G
    # boundary is a homomorphism
    for h1 in H.elements():
        for h2 in H.elements():
            if x.boundary[H.mul(h1, h2)] != G.mul(x.boundary[h1], x.boundary[h2]):
                out.append("boundary is not a homomorphism")
                break
        else:
            continue
        break
    # each action[g] is an automorphism and g -> action[g] a homomorphism
    for g in G.elements():
        row = x.action[g]
        if sorted(row) != list(H.elements()):
            out.append(f"action of {g} is not a bijection")
            continue
        for h1 in H.elements():
            for h2 in H.elements():
                if x.act(g, H.mul(h1, h2)) != H.mul(x.act(g, h1), x.act(g, h2)):
                    out.append(f"action of {g} is not an automorphism")
                    break
            else:
                continue
            break
    for g1 in G.elements():
        for g2 in G.elements():
            for h in H.elements():
                if x.act(G.mul(g1, g2), h) != x.act(g1, x.act(g2, h)):
                    out.append("action is not a group action")
                    break
            else:
                continue
            break
    if out:
        return out
    for g in G.elements():
        for h in H.elements():
            if x.boundary[x.act(g, h)] != G.conj(g, x.boundary[h]):
                out.append(
                    f"equivariance fails at g={g}, h={h}: d(^g h) != g d(h) g^-1"
                )
    for h1 in H.elements():
        for h2 in H.elements():
            if x.act(x.boundary[h1], h2) != H.conj(h1, h2):
                out.append(
                    f"Peiffer condition fails at h={h1}, h'={h2}: ^d(h) h' != h h' h^-1"
                )
    return out


# ---------------------------------------------------------------------------
# Free pre-crossed boundary and the derivation image
# ---------------------------------------------------------------------------


def free_pre_crossed_boundary(M: CWComplex, w: HWord) -> Word:
    """Boundary of a word in the free pre-crossed module on the 2-cells:
    each letter (f, t) maps to f sigma_2(t) f^-1."""
    return M.hword_boundary(w)


def derivation_image(
    M: CWComplex, w: HWord, proj: Callable[[Word], object]
) -> dict[str, dict]:
    """Abelianized image of an H-word in the free module Z[pi_1]^{2-cells}.

    A letter (f, t, s) contributes s * proj(f) * e_t; the result maps each
    2-cell name to a dict {label: coefficient}.  Conjugation by H-elements
    and all Peiffer commutators die here, which is exactly what makes the
    image a cellular chain.
    """
    out: dict[str, dict] = {name: {} for name in M.two_cell_names()}
    for f, cell, sign in w:
        if cell not in out:
            raise XModError(f"unknown 2-cell {cell!r}")
        label = proj(f)
        comp = out[cell]
        comp[label] = comp.get(label, 0) + sign
        if comp[label] == 0:
            del comp[label]
    return out


# ---------------------------------------------------------------------------
# Hoang data
# ---------------------------------------------------------------------------


@dataclass
class HoangData:
    """Classification data (pi1, pi2, alpha, beta) of a finite crossed module.

    ``pi1`` is coker(d) and ``pi2`` = ker(d) as finite groups; ``alpha``
    gives the induced action as a matrix per pi1 element over the chosen
    generators of pi2; ``beta`` is the twisted 3-cocycle table
    pi1^3 -> pi2 measuring the double extension.
    """

    pi1: FiniteGroup
    pi2: FiniteGroup
    pi2_invariants: AbelianGroup
    alpha: tuple[IntMatrix, ...]
    beta: dict[tuple[int, int, int], int]
    pi2_generators: tuple[int, ...]
    _act_on_pi2: tuple[tuple[int, ...], ...]

    def alpha_matrix(self, a: int) -> IntMatrix:
        return self.alpha[a]

    def act(self, a: int, k: int) -> int:
        """Action of pi1 element a on pi2 element k (indices in pi2)."""
        return self._act_on_pi2[a][k]

    def beta_at(self, a: int, b: int, c: int) -> int:
        return self.beta[(a, b, c)]

    def is_cocycle(self) -> bool:
        """Exhaustive twisted cocycle check: (delta beta) = 0 on pi1^4."""
        pi1, pi2 = self.pi1, self.pi2
        for a, b, c, d in itertools.product(pi1.elements(), repeat=4):
            lhs = self.act(a, self.beta_at(b, c, d))
            lhs = pi2.mul(lhs, self.beta_at(a, pi1.mul(b, c), d))
            lhs = pi2.mul(lhs, self.beta_at(a, b, c))
            rhs = pi2.mul(self.beta_at(pi1.mul(a, b), c, d), self.beta_at(a, b, pi1.mul(c, d)))
            if lhs != rhs:
                return False
        return True

    def is_trivial_cocycle(self) -> bool:
        return all(v == 0 for v in self.beta.values())

    def coboundary_witness(self) -> dict[tuple[int, int], int] | None:
        """Brute-force search for a normalized 2-cochain lam with
        beta = delta lam; None when the class is nontrivial.

        Exponential in |pi1|^2, so meant for groups of order <= 4.
        """
        pi1, pi2 = self.pi1, self.pi2
        nontrivial = [a for a in pi1.elements() if a != 0]
        cells = [(a, b) for a in nontrivial for b in nontrivial]
        for assignment in itertools.product(pi2.elements(), repeat=len(cells)):
            lam = {(a, b): 0 for a in pi1.elements() for b in pi1.elements()}
            lam.update(dict(zip(cells, assignment)))
            if self._delta2(lam) == self.beta:
                return lam
        return None

    def _delta2(self, lam: dict[tuple[int, int], int]) -> dict[tuple[int, int, int], int]:
        pi1, pi2 = self.pi1, self.pi2
        out = {}
        for a, b, c in itertools.product(pi1.elements(), repeat=3):
            val = self.act(a, lam[(b, c)])
            val = pi2.mul(val, lam[(a, pi1.mul(b, c))])
            val = pi2.mul(val, pi2.inv(lam[(pi1.mul(a, b), c)]))
            val = pi2.mul(val, pi2.inv(lam[(a, b)]))
            out[(a, b, c)] = val
        return out


def hoang_data(x: FiniteCrossedModule) -> HoangData:
    """Extract (pi1, pi2, alpha, beta) from a validated finite crossed module.

    The construction picks the minimal-index lift at every choice point, so
    the output is deterministic; different lifts would change beta only by a
    coboundary.
    """
    violations = validate(x)
    if violations:
        raise XModError("crossed module fails validation: " + "; ".join(violations))
    H, G = x.H, x.G

    image = frozenset({x.boundary[h] for h in H.elements()})
    pi1, proj = G.quotient(image)

    kernel = frozenset(h for h in H.elements() if x.boundary[h] == 0)
    pi2, members = x.H.subgroup_table(kernel)
    if not pi2.is_abelian:
        raise XModError("kernel of the boundary is not abelian")
    member_index = {m: i for i, m in enumerate(members)}

    # Minimal-index section s: pi1 -> G.
    section = [min(g for g in G.elements() if proj[g] == a) for a in pi1.elements()]

    # Induced action of pi1 on pi2 through the section.
    act_rows = []
    for a in pi1.elements():
        row = [member_index[x.act(section[a], members[k])] for k in pi2.elements()]
        act_rows.append(tuple(row))
    act_on_pi2 = tuple(act_rows)

    # Failure of the section to be a homomorphism, lifted into H.
    def lift_to_h(g: int) -> int:
        return min(h for h in H.elements() if x.boundary[h] == g)

    omega_tilde = {}
    for a in pi1.elements():
        for b in pi1.elements():
            w = G.mul(section[a], G.mul(section[b], G.inv(section[pi1.mul(a, b)])))
            omega_tilde[(a, b)] = lift_to_h(w)

    # beta = delta omega~, computed in H; it lands in the kernel.
    beta = {}
    for a, b, c in itertools.product(pi1.elements(), repeat=3):
        val = x.act(section[a], omega_tilde[(b, c)])
        val = H.mul(val, omega_tilde[(a, pi1.mul(b, c))])
        val = H.mul(val, H.inv(omega_tilde[(pi1.mul(a, b), c)]))
        val = H.mul(val, H.inv(omega_tilde[(a, b)]))
        if val not in kernel:
            raise XModError("extension cocycle escaped the kernel; invalid input")
        beta[(a, b, c)] = member_index[val]

    pi2_invariants = pi2.abelian_invariants()

    # pi2 generators realizing the invariant factors, and alpha as matrices.
    generators = _decompose_generators(pi2, pi2_invariants)
    alpha = tuple(
        _matrix_of_automorphism(pi2, generators, pi2_invariants, act_on_pi2[a])
        for a in pi1.elements()
    )

    data = HoangData(
        pi1=pi1,
        pi2=pi2,
        pi2_invariants=pi2_invariants,
        alpha=alpha,
        beta=beta,
        pi2_generators=tuple(generators),
        _act_on_pi2=act_on_pi2,
    )
    if not data.is_cocycle():
        raise XModError("extracted beta fails the cocycle condition")
    return data


def _decompose_generators(group: FiniteGroup, invariants: AbelianGroup) -> list[int]:
    """Elements of an abelian group whose coordinate span is the whole group,
    with orders equal to the invariant factors."""
    factors = invariants.invariant_factors
    if not factors:
        return []
    for combo in itertools.permutations(
        [g for g in group.elements() if g != 0], len(factors)
    ):
        if any(group.order_of(g) != f for g, f in zip(combo, factors)):
            continue
        # check the coordinate map is a bijection
        seen = set()
        for coords in itertools.product(*[range(f) for f in factors]):
            elem = 0
            for g, c in zip(combo, coords):
                elem = group.mul(elem, group.power(g, c))
            seen.add(elem)
        if len(seen) == len(group):
            return list(combo)
    raise XModError("could not decompose abelian group into cyclic generators")


def _matrix_of_automorphism(
    group: FiniteGroup,
    generators: list[int],
    invariants: AbelianGroup,
    perm: tuple[int, ...],
) -> IntMatrix:
    """Express an automorphism (given as a permutation of elements) as an
    integer matrix over the cyclic generator coordinates."""
    factors = invariants.invariant_factors
    if not generators:
        return IntMatrix.identity(0)
    coords_of = {}
    for coords in itertools.product(*[range(f) for f in factors]):
        elem = 0
        for g, c in zip(generators, coords):
            elem = group.mul(elem, group.power(g, c))
        coords_of.setdefault(elem, coords)
    cols = [coords_of[perm[g]] for g in generators]
    return IntMatrix.from_columns(cols, height=len(generators))


# ---------------------------------------------------------------------------
# Strict 2-groups
# ---------------------------------------------------------------------------


@dataclass
class Strict2Group:
    """A strict 2-group presented by tables.

    ``morphisms`` is G; ``two_morphisms`` is the semidirect product H |x G
    with elements (h, g), source g and target g d(h).
    """

    morphisms: FiniteGroup
    two_morphisms: FiniteGroup
    pairs: tuple[tuple[int, int], ...]  # 2-morphism index -> (h, g)
    source: tuple[int, ...]
    target: tuple[int, ...]
    identity_morphism: tuple[int, ...]  # g -> index of (1, g)


def to_strict_2group(x: FiniteCrossedModule) -> Strict2Group:
    """The strict 2-group of a crossed module (2-morphisms H |x G)."""
    violations = validate(x)
    if violations:
        raise XModError("crossed module fails validation: " + "; ".join(violations))
    H, G = x.H, x.G
    pairs = [(h, g) for h in H.elements() for g in G.elements()]
    index = {p: i for i, p in enumerate(pairs)}

    # (h1, g1) (h2, g2) = (^(g2^-1) h1 . h2, g1 g2) makes both source and
    # target homomorphisms for s(h, g) = g, t(h, g) = g d(h).
    def mul(p1, p2):
        (h1, g1), (h2, g2) = p1, p2
        return (H.mul(x.act(G.inv(g2), h1), h2), G.mul(g1, g2))

    table = [[index[mul(p1, p2)] for p2 in pairs] for p1 in pairs]
    # Reorder so the identity 2-morphism (1, 1) sits at index 0.
    assert index[(0, 0)] == 0
    two = FiniteGroup(table, names=[f"({H.names[h]};{G.names[g]})" for h, g in pairs])
    source = tuple(g for _, g in pairs)
    target = tuple(G.mul(g, x.boundary[h]) for h, g in pairs)
    identity_morphism = tuple(index[(0, g)] for g in G.elements())
    return Strict2Group(
        morphisms=G,
        two_morphisms=two,
        pairs=tuple(pairs),
        source=source,
        target=target,
        identity_morphism=identity_morphism,
    )


def from_strict_2group(two_group: Strict2Group) -> FiniteCrossedModule:
    """Extract the crossed module t: ker(s) -> G_1 with conjugation action."""
    G2, G = two_group.two_morphisms, two_group.morphisms
    kernel = [i for i in G2.elements() if two_group.source[i] == 0]
    sub, members = G2.subgroup_table(frozenset(kernel))
    member_index = {m: i for i, m in enumerate(members)}
    boundary = tuple(two_group.target[m] for m in members)
    action = []
    for g in G.elements():
        ig = two_group.identity_morphism[g]
        row = [
            member_index[G2.mul(G2.mul(ig, m), G2.inv(ig))]
            for m in members
        ]
        action.append(tuple(row))
    return FiniteCrossedModule(H=sub, G=G, boundary=boundary, action=tuple(action))


def crossed_modules_equal(a: FiniteCrossedModule, b: FiniteCrossedModule) -> bool:
    """Exact table equality (same element order)."""
    return (
        a.H.table == b.H.table
        and a.G.table == b.G.table
        and a.boundary == b.boundary
        and a.action == b.action
    )
