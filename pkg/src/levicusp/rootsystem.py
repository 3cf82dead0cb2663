"""Root systems, their subsystems, and (extended) Dynkin diagrams.

Roots are integer vectors in the simple-root basis, generated by reflection
closure from the Cartan matrix and frozen in graded lexicographic order
(height, then coordinates), so indices are reproducible.  No floating point
is used anywhere; the invariant bilinear form is kept as exact Fractions
normalized so that long roots have squared length 2, and all pairings
<beta, alpha_check> are precomputed as one integer matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from .cartan import CartanType, parse_type


class RootSystem:
    """Irreducible root system of a Cartan type."""

    def __init__(self, cartan_type: CartanType):
        self.cartan_type = cartan_type
        self.rank = cartan_type.rank
        self.cartan = np.array(cartan_type.cartan_matrix(), dtype=np.int64)
        len2 = cartan_type.root_length_profile()

        # bilinear form B[i][j] = (alpha_i, alpha_j) = C[j][i] * len2[j] / 2
        n = self.rank
        self.form = [
            [Fraction(int(self.cartan[j][i])) * len2[j] / 2 for j in range(n)]
            for i in range(n)
        ]

        self.roots = self._reflection_closure()
        self.num_roots = len(self.roots)
        self.root_index = {tuple(int(x) for x in v): i for i, v in enumerate(self.roots)}
        self.heights = self.roots.sum(axis=1)
        self.neg_of = np.array(
            [self.root_index[tuple(int(-x) for x in v)] for v in self.roots],
            dtype=np.int32,
        )
        self.positive = np.where(self.heights > 0)[0].astype(np.int32)
        self.simple_indices = np.array(
            [self.root_index[tuple(int(i == j) for j in range(n))] for i in range(n)],
            dtype=np.int32,
        )

        self._len2 = [self._dot(v, v) for v in self.roots]
        self._long2 = max(self._len2)

        # pairing_matrix[i, j] = <root_i, root_j_check>, all integers
        funcs = np.empty((n, self.num_roots), dtype=np.int64)
        for j in range(self.num_roots):
            d = self._len2[j]
            col = [2 * self._dot_basis(i, j) / d for i in range(n)]
            assert all(c.denominator == 1 for c in col)
            funcs[:, j] = [int(c) for c in col]
        self.pairing_matrix = self.roots @ funcs

        # pair ids: one per +/- root pair, numbered by positive root order
        self.num_pairs = self.num_roots // 2
        self.pair_rep = self.positive.copy()
        self.pair_of_root = np.empty(self.num_roots, dtype=np.int32)
        for p, i in enumerate(self.pair_rep):
            self.pair_of_root[i] = p
            self.pair_of_root[self.neg_of[i]] = p

        self._reflections: dict[int, np.ndarray] = {}
        self.simple_reflections = np.vstack(
            [self.reflection_perm(int(i)) for i in self.simple_indices]
        )
        self.simple_pair_perms = np.vstack(
            [self.pair_perm(self.simple_reflections[i]) for i in range(n)]
        )

    # -- construction ------------------------------------------------------

    def _reflection_closure(self) -> np.ndarray:
        n = self.rank
        c = self.cartan
        seen = {tuple(int(i == j) for j in range(n)) for i in range(n)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(n):
                    pairing = sum(v[j] * c[i][j] for j in range(n))
                    w = list(v)
                    w[i] -= pairing
                    w = tuple(int(x) for x in w)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        full = set(seen) | {tuple(-x for x in v) for v in seen}
        ordered = sorted(full, key=lambda v: (sum(v), v))
        return np.array(ordered, dtype=np.int64)

    # -- exact form ----------------------------------------------------------

    def _dot(self, u, v) -> Fraction:
        n = self.rank
        return sum(
            Fraction(int(u[i])) * self.form[i][j] * int(v[j])
            for i in range(n)
            for j in range(n)
        )

    def _dot_basis(self, i: int, j: int) -> Fraction:
        """(e_i, root_j)."""
        return sum(self.form[i][k] * int(self.roots[j][k]) for k in range(self.rank))

    def pair_int(self, i: int, j: int) -> int:
        """<root_i, root_j_check> by index."""
        return int(self.pairing_matrix[i, j])

    def len2(self, i: int) -> Fraction:
        return self._len2[i]

    @property
    def long2(self) -> Fraction:
        return self._long2

    # -- permutations --------------------------------------------------------

    def reflection_perm(self, root_idx: int) -> np.ndarray:
        """Permutation of root indices induced by the reflection in a root."""
        cached = self._reflections.get(root_idx)
        if cached is not None:
            return cached
        r = self.roots[root_idx]
        coeffs = self.pairing_matrix[:, root_idx]
        vecs = self.roots - coeffs[:, None] * r
        imgs = np.array(
            [self.root_index[tuple(int(x) for x in v)] for v in vecs], dtype=np.int32
        )
        self._reflections[root_idx] = imgs
        return imgs

    def pair_perm(self, root_perm: np.ndarray) -> np.ndarray:
        return self.pair_of_root[root_perm[self.pair_rep]]

    def act_matrix(self, root_perm: np.ndarray) -> np.ndarray:
        """Matrix (in the root basis) of the linear map the permutation induces."""
        return self.roots[root_perm[self.simple_indices]].T.copy()

    # -- helpers --------------------------------------------------------------

    def indices_to_pairs(self, indices) -> tuple:
        return tuple(sorted({int(self.pair_of_root[i]) for i in indices}))

    def pairs_to_roots(self, pairs) -> list[int]:
        out = []
        for p in pairs:
            i = int(self.pair_rep[p])
            out.extend((i, int(self.neg_of[i])))
        return out

    def highest_root_index(self) -> int:
        return int(np.argmax(self.heights))

    def __repr__(self):
        return f"RootSystem({self.cartan_type})"


@lru_cache(maxsize=None)
def build_root_system(t: CartanType | str) -> RootSystem:
    """Construct (and cache) the root system of an irreducible type."""
    if isinstance(t, str):
        t = parse_type(t)
    rs = RootSystem(t)
    if rs.num_roots != t.num_roots:
        raise AssertionError(f"root count mismatch for {t}: {rs.num_roots}")
    return rs


# ---------------------------------------------------------------------------
# component labels


@dataclass(frozen=True, order=True)
class ComponentLabel:
    """Irreducible type plus relative squared length of its long roots.

    rel_len distinguishes e.g. the long and the short A1 inside G2; it is 1
    for components containing ambient-long roots.
    """

    series: str
    rank: int
    rel_len: Fraction = Fraction(1)

    def __str__(self):
        tilde = "~" if self.rel_len != 1 else ""
        return f"{tilde}{self.series}{self.rank}"

    @property
    def cartan_type(self) -> CartanType:
        return CartanType(self.series, self.rank)


def format_type(labels) -> str:
    """'A3xA1x~A2' style name for a multiset of component labels."""
    if not labels:
        return "0"
    return "x".join(str(l) for l in sorted(labels))


def parse_type_name(rs: RootSystem, name: str) -> list[ComponentLabel]:
    """Parse 'A2xA2' / '~A1xA1' into labels relative to an ambient system."""
    if name in ("0", ""):
        return []
    short_rel = min(
        (rs.len2(int(i)) for i in rs.simple_indices), default=rs.long2
    ) / rs.long2
    out = []
    for part in name.split("x"):
        rel = Fraction(1)
        if part.startswith("~"):
            part = part[1:]
            rel = short_rel
        t = parse_type(part)
        out.append(ComponentLabel(t.series, t.rank, rel))
    return sorted(out)


def identify_component(rs: RootSystem, nodes: list[int]) -> ComponentLabel:
    """Classify one connected set of simple roots of a subsystem."""
    k = len(nodes)
    lens = [rs.len2(i) for i in nodes]
    top = max(lens)
    rel = top / rs.long2
    if k == 1:
        return ComponentLabel("A", 1, rel)

    edges = []
    for a in range(k):
        for b in range(a + 1, k):
            m = rs.pair_int(nodes[a], nodes[b]) * rs.pair_int(nodes[b], nodes[a])
            if m:
                edges.append((a, b, int(m)))
    maxmult = max(m for _, _, m in edges)
    n_short = sum(1 for l in lens if l < top)

    if maxmult == 3:
        if k != 2:
            raise ValueError("triple bond outside G2")
        return ComponentLabel("G", 2, rel)
    if maxmult == 2:
        if k == 2:
            return ComponentLabel("B", 2, rel)
        if k == 4 and n_short == 2:
            return ComponentLabel("F", 4, rel)
        if n_short == 1:
            return ComponentLabel("B", k, rel)
        if n_short == k - 1:
            return ComponentLabel("C", k, rel)
        raise ValueError("unrecognized multiply-laced component")

    deg = [0] * k
    adj = {a: [] for a in range(k)}
    for a, b, _ in edges:
        deg[a] += 1
        deg[b] += 1
        adj[a].append(b)
        adj[b].append(a)
    branch = [a for a in range(k) if deg[a] == 3]
    if not branch:
        return ComponentLabel("A", k, rel)
    if len(branch) > 1 or max(deg) > 3:
        raise ValueError("not a finite Dynkin diagram")
    arms = []
    for start in adj[branch[0]]:
        ln, prev, cur = 1, branch[0], start
        while True:
            nxts = [x for x in adj[cur] if x != prev]
            if not nxts:
                break
            prev, cur = cur, nxts[0]
            ln += 1
        arms.append(ln)
    arms.sort()
    if arms[0] != 1:
        raise ValueError("not a finite Dynkin diagram")
    if arms[1] == 1:
        return ComponentLabel("D", k, rel)
    if arms[1] == 2 and k in (6, 7, 8):
        return ComponentLabel("E", k, rel)
    raise ValueError("not a finite Dynkin diagram")


class Subsystem:
    """Reflection-closed root subsystem of an ambient system."""

    def __init__(self, rs: RootSystem, root_indices):
        self.rs = rs
        closed = self._close({int(i) for i in root_indices})
        self.root_indices = frozenset(closed)
        self.pairs = rs.indices_to_pairs(closed)
        self.positive = sorted(i for i in closed if rs.heights[i] > 0)
        self.simples = self._simple_system()
        self.components = self._split_components()
        self.labels = sorted(lab for lab, _ in self.components)

    def _close(self, idxs: set[int]) -> set[int]:
        rs = self.rs
        cur = set(idxs) | {int(rs.neg_of[i]) for i in idxs}
        while True:
            new = set()
            for a in cur:
                pa = rs.reflection_perm(a)
                for b in cur:
                    c = int(pa[b])
                    if c not in cur:
                        new.add(c)
            if not new:
                return cur
            cur |= new

    def _simple_system(self) -> list[int]:
        rs = self.rs
        pos = self.positive
        vecs = {i: rs.roots[i] for i in pos}
        posset = {tuple(int(x) for x in v) for v in vecs.values()}
        simples = []
        for i in pos:
            decomposable = False
            for j in pos:
                if j == i:
                    continue
                diff = tuple(int(x) for x in (vecs[i] - vecs[j]))
                if diff in posset:
                    decomposable = True
                    break
            if not decomposable:
                simples.append(i)
        return simples

    def _split_components(self):
        rs = self.rs
        nodes = self.simples
        comp_of: dict[int, int] = {}
        comps = []
        for i in nodes:
            if i in comp_of:
                continue
            stack, comp = [i], []
            comp_of[i] = len(comps)
            while stack:
                a = stack.pop()
                comp.append(a)
                for b in nodes:
                    if b not in comp_of and rs.pair_int(a, b) != 0:
                        comp_of[b] = len(comps)
                        stack.append(b)
            comps.append(sorted(comp))
        return sorted((identify_component(rs, comp), comp) for comp in comps)

    @property
    def rank(self) -> int:
        return len(self.simples)

    @property
    def type_name(self) -> str:
        return format_type(self.labels)

    def component_highest_root(self, comp_nodes: list[int]) -> int:
        """Ambient index of the highest root of one irreducible component."""
        rs = self.rs
        sub = self if comp_nodes == self.simples else Subsystem(rs, comp_nodes)
        basis = [rs.roots[i] for i in comp_nodes]
        best, best_ht = None, None
        for i in sub.positive:
            ht = _coords_height(rs.roots[i], basis)
            if ht is None:
                continue
            if best_ht is None or ht > best_ht:
                best, best_ht = i, ht
        assert best is not None
        return best

    def __repr__(self):
        return f"Subsystem({self.type_name}, pairs={self.pairs})"


def _coords_height(v, basis) -> Fraction | None:
    """Sum of coordinates of v over an independent set, None if outside span."""
    k = len(basis)
    n = len(v)
    rows = [
        [Fraction(int(basis[j][i])) for j in range(k)] + [Fraction(int(v[i]))]
        for i in range(n)
    ]
    piv = 0
    for col in range(k):
        sel = next((r for r in range(piv, n) if rows[r][col] != 0), None)
        if sel is None:
            continue
        rows[piv], rows[sel] = rows[sel], rows[piv]
        pv = rows[piv][col]
        rows[piv] = [x / pv for x in rows[piv]]
        for r in range(n):
            if r != piv and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[piv])]
        piv += 1
    for r in range(piv, n):
        if rows[r][k] != 0:
            return None
    return sum(rows[r][k] for r in range(piv))


@dataclass
class Diagram:
    """A (possibly extended) Dynkin diagram realized on ambient root indices."""

    rs: RootSystem
    nodes: list[int]
    extended: bool = False
    affine_nodes: tuple[int, ...] = ()

    @property
    def bonds(self) -> list[tuple[int, int, int]]:
        out = []
        for a in range(len(self.nodes)):
            for b in range(a + 1, len(self.nodes)):
                m = self.rs.pair_int(self.nodes[a], self.nodes[b]) * self.rs.pair_int(
                    self.nodes[b], self.nodes[a]
                )
                if m:
                    out.append((a, b, int(m)))
        return out

    def subset_subsystem(self, subset) -> Subsystem:
        return Subsystem(self.rs, [self.nodes[i] for i in subset])


def plain_diagram(rs: RootSystem) -> Diagram:
    return Diagram(rs, [int(i) for i in rs.simple_indices])


def extended_diagram(rs: RootSystem) -> Diagram:
    """Dynkin diagram extended by the negative of the highest root."""
    sub = Subsystem(rs, list(rs.simple_indices))
    if len(sub.components) != 1:
        raise ValueError("extended diagram requires an irreducible system")
    theta = rs.highest_root_index()
    affine = int(rs.neg_of[theta])
    return Diagram(rs, [affine] + [int(i) for i in rs.simple_indices], True, (affine,))


def extended_diagram_of_subsystem(sub: Subsystem) -> Diagram:
    """Extended diagram of a subsystem, one affine node per component."""
    rs = sub.rs
    nodes = list(sub.simples)
    affine = []
    for _, comp in sub.components:
        theta = sub.component_highest_root(comp)
        affine.append(int(rs.neg_of[theta]))
    return Diagram(rs, affine + nodes, True, tuple(affine))


def enumerate_subsets_of_type(diagram: Diagram, target) -> list[tuple[int, ...]]:
    """All node subsets of a diagram inducing the given type decomposition.

    ``target`` is a multiset of ComponentLabels or a type string such as
    'A2xA2' (with '~' marking short components).  Subsets are returned as
    sorted tuples of positions into ``diagram.nodes`` in deterministic
    order.  For extended diagrams only proper independent subsets qualify.
    """
    rs = diagram.rs
    if isinstance(target, str):
        labels = parse_type_name(rs, target)
    else:
        labels = sorted(target)
    want = format_type(labels)
    size = sum(l.rank for l in labels)
    out = []
    npos = len(diagram.nodes)
    for subset in combinations(range(npos), size):
        if diagram.extended and len(subset) == npos:
            continue
        sub = diagram.subset_subsystem(subset)
        if len(sub.simples) != size:  # dependent subset (full affine component)
            continue
        if sub.type_name == want:
            out.append(tuple(subset))
    return out
