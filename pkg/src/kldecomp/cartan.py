"""Cartan data for the finite crystallographic (Weyl) types A-G.

A `CartanType` is either named directly ("B3", "F4", ...) or recovered
from an explicit Coxeter matrix, whose diagram is matched against the
classification of finite types; anything else (bond order 5 or >= 7,
cycles, overly branched diagrams, affine shapes) is rejected with a
diagnostic naming the offending entry.  Non-crystallographic finite
types (H3, H4, general I2(m)) are deliberately not supported: the whole
package realises group elements as integer matrices on the root lattice,
which only exists for Weyl groups.

Conventions: the Cartan matrix entry ``c[i][j]`` is the integer with
``s_i(alpha_j) = alpha_j - c[i][j] * alpha_i``; bond orders m(i,j) come
from ``c[i][j] * c[j][i]`` via 0,1,2,3 -> 2,3,4,6.  The B/C distinction
is invisible in a Coxeter matrix, so explicit-matrix input normalises to
B (the Weyl groups are isomorphic).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import factorial
from typing import Sequence

from .errors import CartanError

_EXCEPTIONAL_ORDERS = {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
                       ("F", 4): 1152, ("G", 2): 12}
_EXCEPTIONAL_ROOTS = {("E", 6): 36, ("E", 7): 63, ("E", 8): 120,
                      ("F", 4): 24, ("G", 2): 6}

_BOND_FROM_PRODUCT = {0: 2, 1: 3, 2: 4, 3: 6}


def _validate_family(family: str, rank: int) -> None:
    if family == "A":
        if rank < 1:
            raise CartanError(f"A{rank}: rank must be >= 1")
    elif family in ("B", "C"):
        if rank < 2:
            raise CartanError(f"{family}{rank}: rank must be >= 2 (use A1 for rank 1)")
    elif family == "D":
        if rank < 3:
            raise CartanError(f"D{rank}: rank must be >= 3")
    elif family == "E":
        if rank not in (6, 7, 8):
            raise CartanError(f"E{rank}: rank must be 6, 7 or 8")
    elif family == "F":
        if rank != 4:
            raise CartanError(f"F{rank}: rank must be 4")
    elif family == "G":
        if rank != 2:
            raise CartanError(f"G{rank}: rank must be 2")
    else:
        raise CartanError(
            f"family '{family}' is not a crystallographic finite type "
            "(expected one of A, B, C, D, E, F, G)"
        )


def _family_order(family: str, rank: int) -> int:
    if family == "A":
        return factorial(rank + 1)
    if family in ("B", "C"):
        return 2**rank * factorial(rank)
    if family == "D":
        return 2 ** (rank - 1) * factorial(rank)
    return _EXCEPTIONAL_ORDERS[(family, rank)]


def _family_roots(family: str, rank: int) -> int:
    if family == "A":
        return rank * (rank + 1) // 2
    if family in ("B", "C"):
        return rank * rank
    if family == "D":
        return rank * (rank - 1)
    return _EXCEPTIONAL_ROOTS[(family, rank)]


def _family_cartan(family: str, rank: int) -> list[list[int]]:
    """Cartan matrix of an irreducible type in its standard labelling."""
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def bond(i: int, j: int, cij: int = -1, cji: int = -1) -> None:
        c[i][j] = cij
        c[j][i] = cji

    if family == "A":
        for i in range(rank - 1):
            bond(i, i + 1)
    elif family == "B":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 2, rank - 1, -1, -2)
    elif family == "C":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 2, rank - 1, -2, -1)
    elif family == "D":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 3, rank - 1)
    elif family == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]:
            bond(i, j)
        if rank >= 7:
            bond(5, 6)
        if rank == 8:
            bond(6, 7)
    elif family == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    elif family == "G":
        bond(0, 1, -1, -3)
    return c


@dataclass(frozen=True)
class CartanType:
    """A validated finite crystallographic Cartan datum.

    `components` lists the irreducible factors as (family, rank) pairs;
    `cartan_rows` is the full Cartan matrix in the caller's labelling.
    """

    name: str
    rank: int
    components: tuple[tuple[str, int], ...]
    cartan_rows: tuple[tuple[int, ...], ...]

    @staticmethod
    def parse(text: str) -> "CartanType":
        """Parse names like "A3", "B2", "D4", "F4", "G2", "E6"."""
        match = re.fullmatch(r"\s*([A-Za-z])\s*(\d+)\s*", text or "")
        if not match:
            raise CartanError(f"cannot parse Cartan type {text!r} (expected e.g. 'A3' or 'B2')")
        family = match.group(1).upper()
        rank = int(match.group(2))
        _validate_family(family, rank)
        rows = tuple(tuple(row) for row in _family_cartan(family, rank))
        return CartanType(name=f"{family}{rank}", rank=rank,
                          components=((family, rank),), cartan_rows=rows)

    @staticmethod
    def from_coxeter_matrix(matrix: Sequence[Sequence[int]], name: str | None = None) -> "CartanType":
        """Recognise an explicit Coxeter matrix as a product of finite types."""
        comps = _recognise(matrix)
        n = len(matrix)
        rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for family, rank, order in comps:
            block = _family_cartan(family, rank)
            for p in range(rank):
                for r in range(rank):
                    if p != r:
                        rows[order[p]][order[r]] = block[p][r]
        comps_sorted = sorted(comps, key=lambda c: min(c[2]))
        label = name or "x".join(f"{fam}{rk}" for fam, rk, _ in comps_sorted)
        return CartanType(
            name=label,
            rank=n,
            components=tuple((fam, rk) for fam, rk, _ in comps_sorted),
            cartan_rows=tuple(tuple(row) for row in rows),
        )

    @property
    def group_order(self) -> int:
        total = 1
        for family, rank in self.components:
            total *= _family_order(family, rank)
        return total

    @property
    def positive_root_count(self) -> int:
        return sum(_family_roots(family, rank) for family, rank in self.components)

    @property
    def coxeter_rows(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        c = self.cartan_rows
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                if i == j:
                    row.append(1)
                else:
                    row.append(_BOND_FROM_PRODUCT[c[i][j] * c[j][i]])
            out.append(tuple(row))
        return tuple(out)

    def bond_order(self, i: int, j: int) -> int:
        """m(i, j) for 1-based generator indices."""
        return self.coxeter_rows[i - 1][j - 1]

    def __str__(self) -> str:
        return self.name


# -- Coxeter-diagram recognition --------------------------------------


def _recognise(matrix: Sequence[Sequence[int]]) -> list[tuple[str, int, list[int]]]:
    n = len(matrix)
    if n == 0:
        raise CartanError("empty Coxeter matrix")
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise CartanError(f"Coxeter matrix row {i + 1} has length {len(row)}, expected {n}")
    for i in range(n):
        if matrix[i][i] != 1:
            raise CartanError(f"m({i + 1},{i + 1}) = {matrix[i][i]}: diagonal entries must be 1")
        for j in range(i + 1, n):
            m = matrix[i][j]
            if m != matrix[j][i]:
                raise CartanError(f"m({i + 1},{j + 1}) != m({j + 1},{i + 1}): matrix must be symmetric")
            if not isinstance(m, int) or m < 2:
                raise CartanError(f"m({i + 1},{j + 1}) = {m!r}: off-diagonal entries must be integers >= 2")
            if m not in (2, 3, 4, 6):
                raise CartanError(
                    f"m({i + 1},{j + 1}) = {m}: bond is not crystallographic, so the group "
                    "is not a finite Weyl group (allowed bond orders: 2, 3, 4, 6)"
                )

    adjacency: dict[int, list[int]] = {v: [] for v in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if matrix[i][j] >= 3:
                adjacency[i].append(j)
                adjacency[j].append(i)

    seen: set[int] = set()
    components: list[tuple[str, int, list[int]]] = []
    for start in range(n):
        if start in seen:
            continue
        stack, verts = [start], []
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            verts.append(v)
            stack.extend(u for u in adjacency[v] if u not in seen)
        components.append(_classify_component(sorted(verts), adjacency, matrix))
    return components


def _classify_component(verts: list[int], adjacency, matrix) -> tuple[str, int, list[int]]:
    rank = len(verts)
    if rank == 1:
        return "A", 1, [verts[0]]

    def fail(reason: str):
        names = ",".join(str(v + 1) for v in verts)
        raise CartanError(f"component {{{names}}} is not of finite type: {reason}")

    for v in verts:
        if len(adjacency[v]) > 3:
            fail(f"vertex {v + 1} has {len(adjacency[v])} neighbours")

    edge_count = sum(len(adjacency[v]) for v in verts) // 2
    if edge_count != rank - 1:
        fail("the diagram contains a cycle")

    branch = [v for v in verts if len(adjacency[v]) == 3]
    marked = [(v, u) for v in verts for u in adjacency[v] if v < u and matrix[v][u] > 3]

    if not branch:
        ends = [v for v in verts if len(adjacency[v]) == 1]
        path = _walk_path(ends[0], adjacency)
        if path[0] > path[-1]:
            path.reverse()
        marks = [matrix[path[k]][path[k + 1]] for k in range(rank - 1)]
        heavy = [k for k, m in enumerate(marks) if m > 3]
        if not heavy:
            return "A", rank, path
        if len(heavy) > 1:
            fail("more than one multiple bond in a single component")
        k = heavy[0]
        if marks[k] == 6:
            if rank != 2:
                fail("a bond of order 6 only occurs in rank 2 (type G2)")
            return "G", 2, path
        # marks[k] == 4
        if k == rank - 2:
            return "B", rank, path
        if k == 0:
            return "B", rank, list(reversed(path))
        if rank == 4 and k == 1:
            return "F", 4, path
        fail("a bond of order 4 must be terminal (type B/C) or central in rank 4 (type F4)")

    if len(branch) > 1:
        fail(f"vertices {branch[0] + 1} and {branch[1] + 1} are both branch points")
    if marked:
        v, u = marked[0]
        fail(f"bond m({v + 1},{u + 1}) = {matrix[v][u]} cannot occur in a branched diagram")

    b = branch[0]
    arms = sorted((_walk_arm(b, first, adjacency) for first in adjacency[b]),
                  key=lambda arm: (len(arm), arm))
    lens = [len(arm) for arm in arms]
    if lens[0] == 1 and lens[1] == 1:
        order = list(reversed(arms[2])) + [b, arms[0][0], arms[1][0]]
        return "D", rank, order
    if lens == [1, 2, 2] or lens == [1, 2, 3] or lens == [1, 2, 4]:
        long_arm = arms[2]
        order = [arms[1][1], arms[0][0], arms[1][0], b] + long_arm
        return "E", rank, order
    fail(f"arm lengths {tuple(lens)} at branch vertex {b + 1} match no finite type")
    raise AssertionError("unreachable")


def _walk_path(start: int, adjacency) -> list[int]:
    path = [start]
    prev = None
    cur = start
    while True:
        nxt = [u for u in adjacency[cur] if u != prev]
        if not nxt:
            return path
        prev, cur = cur, nxt[0]
        path.append(cur)


def _walk_arm(branch: int, first: int, adjacency) -> list[int]:
    arm = [first]
    prev, cur = branch, first
    while True:
        nxt = [u for u in adjacency[cur] if u != prev]
        if not nxt:
            return arm
        prev, cur = cur, nxt[0]
        arm.append(cur)
