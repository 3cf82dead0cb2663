"""Cartan types of finite crystallographic root systems.

Types are pairs (series, rank) with the usual rank restrictions.  Low-rank
D types are normalized at parse time (D2 = A1 x A1, D3 = A3), so a
``CartanType`` instance is always one of the canonical irreducible types.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True, order=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in _RANK_OK:
            raise ValueError(f"unknown series {self.series!r}")
        if not _RANK_OK[self.series](self.rank):
            raise ValueError(f"invalid rank {self.rank} for series {self.series}")

    def __str__(self):
        return f"{self.series}{self.rank}"

    @property
    def num_roots(self) -> int:
        n, s = self.rank, self.series
        if s == "A":
            return n * (n + 1)
        if s in ("B", "C"):
            return 2 * n * n
        if s == "D":
            return 2 * n * (n - 1)
        if s == "E":
            return {6: 72, 7: 126, 8: 240}[n]
        return 48 if s == "F" else 12

    @property
    def weyl_order(self) -> int:
        n, s = self.rank, self.series
        if s == "A":
            return factorial(n + 1)
        if s in ("B", "C"):
            return 2**n * factorial(n)
        if s == "D":
            return 2 ** (n - 1) * factorial(n)
        if s == "E":
            return {6: 51840, 7: 2903040, 8: 696729600}[n]
        return 1152 if s == "F" else 12

    @property
    def fundamental_group_order(self) -> int:
        """Order of the quotient of weight lattice by root lattice."""
        n, s = self.rank, self.series
        if s == "A":
            return n + 1
        if s in ("B", "C"):
            return 2
        if s == "D":
            return 4
        if s == "E":
            return {6: 3, 7: 2, 8: 1}[n]
        return 1

    def cartan_matrix(self) -> list[list[int]]:
        """Cartan matrix C with C[i][j] = <alpha_j, alpha_i_check>.

        Bourbaki numbering throughout; for B the last simple root is short,
        for C the last is long, for G2 alpha_1 is short.
        """
        n = self.rank
        c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

        def bond(i, j, cij=-1, cji=-1):
            c[i][j] = cij
            c[j][i] = cji

        s = self.series
        if s in ("A", "B", "C", "D"):
            chain = n if s == "A" else n - 1
            for i in range(chain - 1):
                bond(i, i + 1)
            if s == "B":
                # alpha_{n-1} long, alpha_n short; the short row carries -2
                bond(n - 2, n - 1, -1, -2)
            elif s == "C":
                bond(n - 2, n - 1, -2, -1)
            elif s == "D":
                bond(n - 3, n - 1)
        elif s == "E":
            # node 2 attaches to node 4 (1-based); chain 1-3-4-5-6-...
            chain = [1, 3, 4, 5, 6, 7, 8][: n - 1]
            for a, b in zip(chain, chain[1:]):
                bond(a - 1, b - 1)
            bond(2 - 1, 4 - 1)
        elif s == "F":
            bond(0, 1)
            bond(1, 2, -1, -2)  # alpha_2 long, alpha_3 short
            bond(2, 3)
        elif s == "G":
            bond(0, 1, -3, -1)  # alpha_1 short, alpha_2 long
        return c

    def root_length_profile(self) -> list[Fraction]:
        """Squared lengths of the simple roots, normalized so long = 2."""
        n = self.rank
        if self.series == "B":
            return [Fraction(2)] * (n - 1) + [Fraction(1)]
        if self.series == "C":
            return [Fraction(1)] * (n - 1) + [Fraction(2)]
        if self.series == "F":
            return [Fraction(2), Fraction(2), Fraction(1), Fraction(1)]
        if self.series == "G":
            return [Fraction(2, 3), Fraction(2)]
        return [Fraction(2)] * n


def parse_type(token: str) -> CartanType:
    """Parse 'E8', 'b3', 'D 4' etc., normalizing D2/D3."""
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", token)
    if not m:
        raise ValueError(f"cannot parse Cartan type {token!r}")
    series, rank = m.group(1).upper(), int(m.group(2))
    if series == "D" and rank == 3:
        return CartanType("A", 3)
    if series == "D" and rank == 2:
        raise ValueError("D2 is reducible (A1 x A1); use normalize_components")
    return CartanType(series, rank)


def normalize_components(series: str, rank: int) -> list[CartanType]:
    """Type of a possibly low-rank member of a series, as irreducible parts."""
    if series == "D" and rank == 2:
        return [CartanType("A", 1), CartanType("A", 1)]
    if series == "D" and rank == 3:
        return [CartanType("A", 3)]
    if series == "B" and rank == 1:
        return [CartanType("A", 1)]
    if series == "C" and rank == 1:
        return [CartanType("A", 1)]
    if rank == 0:
        return []
    return [CartanType(series, rank)]
