"""Finite groups as multiplication tables over element indices 0..n-1.

Index 0 is always the identity.  This is desk-scale machinery: everything
is checked exhaustively (associativity included), so construction of a bad
table fails immediately.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .zlinalg import AbelianGroup


class GroupTableError(Exception):
    pass


class FiniteGroup:
    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(self.table)
        if any(len(row) != n for row in self.table):
            raise GroupTableError("multiplication table must be square")
        if any(not (0 <= x < n) for row in self.table for x in row):
            raise GroupTableError("table entries out of range")
        if n == 0:
            raise GroupTableError("empty group")
        if any(self.table[0][j] != j or self.table[j][0] != j for j in range(n)):
            raise GroupTableError("element 0 must be the identity")
        self.inverse = [None] * n
        for i in range(n):
            for j in range(n):
                if self.table[i][j] == 0:
                    self.inverse[i] = j
            if self.inverse[i] is None:
                raise GroupTableError(f"element {i} has no inverse")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        raise GroupTableError("table is not associative")
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        if len(self.names) != n:
            raise GroupTableError("wrong number of element names")

    # -- basic operations ------------------------------------------------------

    def __len__(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, h: int) -> int:
        return self.mul(self.mul(g, h), self.inv(g))

    def power(self, a: int, n: int) -> int:
        if n < 0:
            return self.power(self.inv(a), -n)
        out = 0
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def order_of(self, a: int) -> int:
        out, n = a, 1
        while out != 0:
            out = self.mul(out, a)
            n += 1
        return n

    @property
    def is_abelian(self) -> bool:
        n = len(self)
        return all(self.mul(a, b) == self.mul(b, a) for a in range(n) for b in range(n))

    def elements(self) -> range:
        return range(len(self))

    # -- subgroups and quotients -------------------------------------------------

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        out = set(gens) | {0}
        changed = True
        while changed:
            changed = False
            for a in list(out):
                for c in [self.inv(a)] + [self.mul(a, b) for b in list(out)]:
                    if c not in out:
                        out.add(c)
                        changed = True
        return frozenset(out)

    def is_normal(self, subgroup: frozenset[int]) -> bool:
        return all(self.conj(g, h) in subgroup for g in self.elements() for h in subgroup)

    def quotient(self, subgroup: frozenset[int]) -> tuple["FiniteGroup", list[int]]:
        """Quotient by a normal subgroup.

        Returns the coset group (coset of the identity is element 0) and the
        projection list element -> coset index.
        """
        if not self.is_normal(subgroup):
            raise GroupTableError("subgroup is not normal")
        coset_of = [None] * len(self)
        reps: list[int] = []
        for a in self.elements():
            if coset_of[a] is not None:
                continue
            idx = len(reps)
            reps.append(a)
            for h in subgroup:
                coset_of[self.mul(a, h)] = idx
        # Force the identity coset to index 0.
        zero = coset_of[0]
        if zero != 0:
            reps[0], reps[zero] = reps[zero], reps[0]
            swap = {0: zero, zero: 0}
            coset_of = [swap.get(c, c) for c in coset_of]
        table = [
            [coset_of[self.mul(reps[i], reps[j])] for j in range(len(reps))]
            for i in range(len(reps))
        ]
        names = [self.names[r] for r in reps]
        return FiniteGroup(table, names), coset_of

    def subgroup_table(self, subgroup: frozenset[int]) -> tuple["FiniteGroup", list[int]]:
        """Restrict the table to a subgroup; returns it with the element list."""
        members = sorted(subgroup)
        if members[0] != 0:
            raise GroupTableError("subgroup must contain the identity")
        index = {g: i for i, g in enumerate(members)}
        table = [[index[self.mul(a, b)] for b in members] for a in members]
        names = [self.names[g] for g in members]
        return FiniteGroup(table, names), members

    def conjugacy_classes(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        out = []
        for a in self.elements():
            if a in seen:
                continue
            cls = frozenset(self.conj(g, a) for g in self.elements())
            seen |= cls
            out.append(cls)
        return out

    def abelian_invariants(self) -> AbelianGroup:
        """Invariant factors of an abelian group, by peeling off maximal
        cyclic factors."""
        if not self.is_abelian:
            raise GroupTableError("group is not abelian")
        factors: list[int] = []
        group = self
        while len(group) > 1:
            top = max(group.elements(), key=group.order_of)
            factors.append(group.order_of(top))
            group, _ = group.quotient(group.closure([top]))
        return AbelianGroup.from_factors(factors)


# -- constructions ----------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup(
        [[(i + j) % n for j in range(n)] for i in range(n)],
        names=[str(i) for i in range(n)],
    )


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    pairs = list(itertools.product(A.elements(), B.elements()))
    index = {p: i for i, p in enumerate(pairs)}
    table = [
        [index[(A.mul(a1, a2), B.mul(b1, b2))] for (a2, b2) in pairs]
        for (a1, b1) in pairs
    ]
    names = [f"({A.names[a]},{B.names[b]})" for a, b in pairs]
    return FiniteGroup(table, names)


def symmetric(n: int) -> FiniteGroup:
    """The symmetric group on n letters (identity permutation first)."""
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    compose = lambda p, q: tuple(p[q[i]] for i in range(n))
    table = [[index[compose(p, q)] for q in perms] for p in perms]
    names = ["".join(str(x) for x in p) for p in perms]
    return FiniteGroup(table, names)
