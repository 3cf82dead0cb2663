"""Weyl groups acting on roots: stabilizer chains, orbits, conjugacy.

Group elements are permutations of the root list (int32 index arrays).
The stabilizer chain is a deterministic Schreier-Sims construction whose
completeness is certified by comparing the chain order with the closed
formula for the type.  Subsystem conjugacy is decided through exact
canonical forms: the lexicographically least orbit element of the set of
root pairs under the simple reflections (see _kernels for the orbit
engine).  Full element enumeration is never used.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .rootsystem import RootSystem, Subsystem


def identity_perm(degree: int) -> np.ndarray:
    return np.arange(degree, dtype=np.int32)


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Permutation a after b: (a*b)(x) = a(b(x))."""
    return a[b]


def inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(len(a), dtype=a.dtype)
    return inv


def is_identity(a: np.ndarray) -> bool:
    return bool((a == np.arange(len(a), dtype=a.dtype)).all())


def perm_order(a: np.ndarray) -> int:
    order = 1
    cur = a
    while not is_identity(cur):
        cur = compose(cur, a)
        order += 1
    return order


class BSGS:
    """Base and strong generating set, textbook bottom-up Schreier-Sims.

    S[i] holds the strong generators fixing base[0..i-1]; level i is verified
    once every Schreier generator of the orbit of base[i] under S[i] sifts to
    the identity through the deeper levels.
    """

    def __init__(self, gens, degree: int, expected_order: int | None = None):
        self.degree = degree
        self.base: list[int] = []
        self.S: list[list[np.ndarray]] = []
        self.trans: list[dict[int, np.ndarray]] = []
        self._verified: list[bool] = []
        for g in gens:
            g = np.asarray(g, dtype=np.int32)
            if not is_identity(g):
                self._insert_gen(g)
        while True:
            i = max((k for k in range(len(self.base)) if not self._verified[k]), default=-1)
            if i < 0:
                break
            self._check_level(i)
        self.order = 1
        for t in self.trans:
            self.order *= len(t)
        if expected_order is not None and self.order != expected_order:
            raise AssertionError(
                f"stabilizer chain incomplete: order {self.order} != {expected_order}"
            )

    def _insert_gen(self, g: np.ndarray) -> int:
        j = 0
        while j < len(self.base) and int(g[self.base[j]]) == self.base[j]:
            j += 1
        if j == len(self.base):
            moved = np.nonzero(g != np.arange(self.degree, dtype=np.int32))[0]
            self.base.append(int(moved[0]))
            self.S.append([])
            self.trans.append({})
            self._verified.append(False)
        for lev in range(j + 1):
            self.S[lev].append(g)
            self._verified[lev] = False
        return j

    def _orbit_transversal(self, base: int, gens):
        trans = {base: identity_perm(self.degree)}
        queue = [base]
        for p in queue:
            up = trans[p]
            for s in gens:
                q = int(s[p])
                if q not in trans:
                    trans[q] = compose(s, up)
                    queue.append(q)
        return trans

    def _sift_from(self, g: np.ndarray, start: int):
        for i in range(start, len(self.base)):
            p = int(g[self.base[i]])
            if p not in self.trans[i]:
                return g, i
            g = compose(inverse(self.trans[i][p]), g)
        return g, len(self.base)

    def _check_level(self, i: int):
        self.trans[i] = self._orbit_transversal(self.base[i], self.S[i])
        for p in list(self.trans[i].keys()):
            up = self.trans[i][p]
            for s in self.S[i]:
                q = int(s[p])
                sg = compose(inverse(self.trans[i][q]), compose(s, up))
                if is_identity(sg):
                    continue
                h, j = self._sift_from(sg, i + 1)
                if not is_identity(h):
                    self._insert_gen(h)
                    return  # deeper levels now unverified; outer loop redescends
        self._verified[i] = True

    def contains(self, g) -> bool:
        g = np.asarray(g, dtype=np.int32)
        if len(g) != self.degree:
            return False
        h, _ = self._sift_from(g, 0)
        return is_identity(h)

    def random_element(self, rng) -> np.ndarray:
        g = identity_perm(self.degree)
        for t in self.trans:
            pts = sorted(t.keys())
            u = t[pts[rng.randrange(len(pts))]]
            g = compose(g, u)
        return g


class SetOrbit:
    """Orbit of a root-pair set under generator permutations, with tree."""

    def __init__(self, pair_perms: np.ndarray, root_perms, start_pairs):
        self.root_perms = [np.asarray(g, dtype=np.int32) for g in root_perms]
        states, parent, pgen, canon = _kernels.pairset_orbit(
            pair_perms, np.asarray(start_pairs, dtype=np.int32), build_tree=True
        )
        self.states = states
        self.parent = parent
        self.pgen = pgen
        self.canon_index = canon
        self.index = {states[i].tobytes(): i for i in range(states.shape[0])}

    def __len__(self):
        return self.states.shape[0]

    @property
    def canonical(self) -> tuple:
        return tuple(int(x) for x in self.states[self.canon_index])

    def transversal_word(self, i: int) -> list[int]:
        """Generator word (applied right to left) mapping the start state to i."""
        word = []
        while self.parent[i] >= 0:
            word.append(int(self.pgen[i]))
            i = int(self.parent[i])
        word.reverse()
        return word

    def transversal_perm(self, i: int) -> np.ndarray:
        degree = len(self.root_perms[0])
        g = identity_perm(degree)
        for gi in self.transversal_word(i):
            g = compose(self.root_perms[gi], g)
        return g

    def transversal_perms_all(self) -> np.ndarray:
        """All transversal permutations, built in BFS order (parents first)."""
        n = len(self)
        degree = len(self.root_perms[0])
        out = np.empty((n, degree), dtype=np.int32)
        out[0] = identity_perm(degree)
        for i in range(1, n):
            out[i] = self.root_perms[int(self.pgen[i])][out[int(self.parent[i])]]
        return out

    def schreier_generators(self, chunk: int = 65536):
        """Yield batches of setwise-stabilizer (Schreier) generators.

        Every yielded array holds generator permutations as rows; together
        they generate the full setwise stabilizer of the start state.
        """
        n = len(self)
        trans = self.transversal_perms_all()
        arange = np.arange(len(self.root_perms[0]), dtype=np.int32)
        for gi, root_g in enumerate(self.root_perms):
            pair_imgs = None
            for lo in range(0, n, chunk):
                hi = min(n, lo + chunk)
                block = trans[lo:hi]
                moved = root_g[block]  # g applied after u_s
                # target state index of each row
                tgt = np.empty(hi - lo, dtype=np.int64)
                imgs = np.sort(
                    _pair_apply(self._pair_perm_of(gi), self.states[lo:hi]), axis=1
                )
                for r in range(hi - lo):
                    tgt[r] = self.index[imgs[r].tobytes()]
                inv_t = np.empty_like(moved)
                tperm = trans[tgt]
                rows = np.arange(hi - lo)[:, None]
                inv_t[rows, tperm] = arange[None, :]
                sg = np.take_along_axis(inv_t, moved, axis=1)
                keep = ~(sg == arange[None, :]).all(axis=1)
                if keep.any():
                    yield sg[keep]

    def attach_pair_perms(self, pair_perms: np.ndarray):
        self._pair_perms = pair_perms

    def _pair_perm_of(self, gi: int) -> np.ndarray:
        return self._pair_perms[gi]


class ReflectionAction:
    """A reflection subgroup acting on the ambient roots, with canonical forms."""

    def __init__(self, rs: RootSystem, simple_root_indices):
        self.rs = rs
        self.simples = [int(i) for i in simple_root_indices]
        self.root_perms = [rs.reflection_perm(i) for i in self.simples]
        if self.root_perms:
            self.pair_perms = np.vstack([rs.pair_perm(g) for g in self.root_perms])
        else:
            self.pair_perms = np.zeros((0, rs.num_pairs), dtype=np.int32)
        self._canon: dict[bytes, tuple] = {}

    def canonical_pairs(self, pairs) -> tuple:
        pairs = tuple(sorted(int(p) for p in pairs))
        if not pairs or self.pair_perms.shape[0] == 0:
            return pairs
        key = np.asarray(pairs, dtype=np.int32).tobytes()
        hit = self._canon.get(key)
        if hit is not None:
            return hit
        states, _, _, canon = _kernels.pairset_orbit(self.pair_perms, pairs)
        result = tuple(int(x) for x in states[canon])
        if states.shape[0] <= 400000:
            for i in range(states.shape[0]):
                self._canon[states[i].tobytes()] = result
        else:  # pragma: no cover - defensive
            self._canon[key] = result
        return result

    def set_orbit(self, pairs) -> SetOrbit:
        orb = SetOrbit(self.pair_perms, self.root_perms, sorted(int(p) for p in pairs))
        orb.attach_pair_perms(self.pair_perms)
        return orb


def _pair_apply(pair_perm: np.ndarray, states: np.ndarray) -> np.ndarray:
    return pair_perm[states]


class WeylGroup:
    """Weyl group of a root system as a permutation group on the roots."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.degree = rs.num_roots
        self.gens = [rs.simple_reflections[i] for i in range(rs.rank)]
        self.bsgs = BSGS(self.gens, self.degree, rs.cartan_type.weyl_order)
        self.order = self.bsgs.order
        self._action = ReflectionAction(rs, [int(i) for i in rs.simple_indices])
        self._w0_cache: dict[frozenset, np.ndarray] = {}

    def contains(self, g) -> bool:
        return self.bsgs.contains(g)

    def random_element(self, rng) -> np.ndarray:
        return self.bsgs.random_element(rng)

    # -- subsystem conjugacy -------------------------------------------------

    def canonical_subsystem(self, root_indices) -> tuple:
        """Canonical pair-set of the subsystem generated by the given roots."""
        sub = Subsystem(self.rs, root_indices)
        return self._action.canonical_pairs(sub.pairs)

    def subsystems_conjugate(self, s1, s2) -> bool:
        """True iff some Weyl element maps one generated subsystem onto the other."""
        a = Subsystem(self.rs, s1)
        b = Subsystem(self.rs, s2)
        if a.labels != b.labels:  # invariant pruning: type and length data
            return False
        if len(a.root_indices) != len(b.root_indices):
            return False
        return self._action.canonical_pairs(a.pairs) == self._action.canonical_pairs(
            b.pairs
        )

    def partition_subsystems(self, subsets: list) -> list[list[int]]:
        """Partition positions of ``subsets`` into conjugacy classes."""
        keys = {}
        for pos, s in enumerate(subsets):
            keys.setdefault(self.canonical_subsystem(s), []).append(pos)
        return [keys[k] for k in sorted(keys)]

    def set_orbit(self, pairs) -> SetOrbit:
        return self._action.set_orbit(pairs)

    # -- longest elements and parabolic conjugacy ------------------------------

    def longest_element(self, positions) -> np.ndarray:
        """Longest element of the standard parabolic on the given simple positions."""
        key = frozenset(int(p) for p in positions)
        cached = self._w0_cache.get(key)
        if cached is not None:
            return cached
        rs = self.rs
        w = identity_perm(self.degree)
        while True:
            k = next(
                (
                    p
                    for p in sorted(key)
                    if rs.heights[w[int(rs.simple_indices[p])]] > 0
                ),
                None,
            )
            if k is None:
                break
            w = compose(w, self.gens[k])
        self._w0_cache[key] = w
        return w

    def _levi_move(self, subset: frozenset, s: int) -> frozenset:
        """Elementary conjugation move I -> -w0(I u s)(I) on simple subsets."""
        rs = self.rs
        k = subset | {s}
        w0 = self.longest_element(k)
        out = set()
        for p in subset:
            img = int(rs.neg_of[w0[int(rs.simple_indices[p])]])
            pos = np.nonzero(rs.simple_indices == img)[0]
            assert len(pos) == 1
            out.add(int(pos[0]))
        return frozenset(out)

    def levi_class_of(self, subset) -> frozenset:
        """All simple-root subsets W-conjugate to the given one."""
        start = frozenset(int(p) for p in subset)
        seen = {start}
        queue = [start]
        n = self.rs.rank
        while queue:
            cur = queue.pop()
            for s in range(n):
                if s in cur:
                    continue
                nxt = self._levi_move(cur, s)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return frozenset(seen)

    def levi_canonical(self, subset) -> tuple:
        cls = self.levi_class_of(subset)
        return min(tuple(sorted(c)) for c in cls)

    def levi_classes(self) -> list[list[tuple]]:
        """All subsets of simple positions, partitioned into W-classes."""
        from itertools import combinations

        n = self.rs.rank
        done: set[frozenset] = set()
        classes = []
        for size in range(n + 1):
            for subset in combinations(range(n), size):
                fs = frozenset(subset)
                if fs in done:
                    continue
                cls = self.levi_class_of(fs)
                done |= cls
                classes.append(sorted(tuple(sorted(c)) for c in cls))
        return classes

    def diagram_automorphisms(self) -> list[np.ndarray]:
        """Permutations of simple positions preserving the Cartan matrix."""
        from itertools import permutations

        n = self.rs.rank
        c = self.rs.cartan
        out = []
        for perm in permutations(range(n)):
            if all(
                c[perm[i]][perm[j]] == c[i][j] for i in range(n) for j in range(n)
            ):
                out.append(np.array(perm, dtype=np.int32))
        return out

    def levi_canonical_extended(self, subset) -> tuple:
        """Canonical form under W extended by diagram automorphisms."""
        best = None
        for auto in self.diagram_automorphisms():
            mapped = [int(auto[p]) for p in subset]
            cand = self.levi_canonical(mapped)
            if best is None or cand < best:
                best = cand
        return best


_weyl_cache: dict[str, WeylGroup] = {}


def weyl_group(rs: RootSystem) -> WeylGroup:
    key = str(rs.cartan_type)
    if key not in _weyl_cache:
        _weyl_cache[key] = WeylGroup(rs)
    return _weyl_cache[key]
