"""Integer lattice arithmetic for root data and center component groups.

The character lattice X of a root datum is stored as an integer basis matrix
in the weight basis (rows), squeezed between the root lattice Q and the
weight lattice P.  Centers of subsystem subgroups are modeled through the
quotient X / Z<psi>: its prime-to-p torsion is the component group, and
center elements are represented as characters of that torsion (tuples of
residues against the invariant factors).  Everything is exact; Smith normal
form is computed over Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .cartan import CartanType, parse_type
from .rootsystem import RootSystem, Subsystem, build_root_system
from .weyl import inverse


# ---------------------------------------------------------------------------
# Smith normal form over the integers


def smith_normal_form(m):
    """Return (U, D, V) with D = U @ m @ V, U and V unimodular, D in SNF."""
    a = [[int(x) for x in row] for row in np.asarray(m, dtype=object)] if len(m) else []
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(rows):
            a[r][i] -= q * a[r][j]
        for r in range(cols):
            v[r][i] -= q * v[r][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(rows):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    t = 0
    while t < min(rows, cols):
        # locate a minimal nonzero entry in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        dirty = False
        for i in range(t + 1, rows):
            if a[i][t] % a[t][t] != 0:
                row_op(i, t, a[i][t] // a[t][t])
                dirty = True
            elif a[i][t] != 0:
                row_op(i, t, a[i][t] // a[t][t])
        for j in range(t + 1, cols):
            if a[t][j] % a[t][t] != 0:
                col_op(j, t, a[t][j] // a[t][t])
                dirty = True
            elif a[t][j] != 0:
                col_op(j, t, a[t][j] // a[t][t])
        if dirty:
            continue
        # ensure divisibility of the remaining block by the pivot
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)
            continue
        t += 1

    U = np.array(u, dtype=object)
    V = np.array(v, dtype=object)
    D = np.array(a, dtype=object)
    return U, D, V


def _mat_fraction_inverse(m):
    n = len(m)
    aug = [[Fraction(int(m[i][j])) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [[aug[i][n + j] for j in range(n)] for i in range(n)]


def _solve_int_rows(basis_rows, v):
    """Integer x with x @ basis_rows = v, or None."""
    n = len(basis_rows)
    inv = _mat_fraction_inverse([[basis_rows[j][i] for j in range(n)] for i in range(n)])
    # x = v @ basis^-1; basis^-1 of the row matrix acts on the right
    x = [sum(Fraction(int(v[j])) * inv[i][j] for j in range(n)) for i in range(n)]
    if any(c.denominator != 1 for c in x):
        return None
    return [int(c) for c in x]


# ---------------------------------------------------------------------------
# finite abelian groups


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Invariant-factor presentation d1 | d2 | ... (all > 1)."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")
        if any(d <= 1 for d in self.invariant_factors):
            raise ValueError("invariant factors must exceed 1")

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def elements(self):
        from itertools import product

        return [tuple(t) for t in product(*(range(d) for d in self.invariant_factors))]

    def element_order(self, c) -> int:
        out = 1
        for ci, d in zip(c, self.invariant_factors):
            o = d // gcd(d, ci)
            out = out * o // gcd(out, o)
        return out


def _strip_p(d: int, p: int) -> int:
    if p in (0, None):
        return d
    while d % p == 0:
        d //= p
    return d


# ---------------------------------------------------------------------------
# root data


_D_ONLY = ("SO", "PSO", "HalfSpin")


@dataclass
class RootDatum:
    """Root system plus character lattice Q <= X <= P (rows, weight basis)."""

    rs: RootSystem
    isogeny_label: str
    X_rows: np.ndarray

    def __post_init__(self):
        n = self.rs.rank
        q_rows = self.q_rows()
        basis = [list(map(int, r)) for r in self.X_rows]
        for row in q_rows:  # Q <= X
            if _solve_int_rows(basis, row) is None:
                raise ValueError("root lattice not contained in X")
        det = _det_int(basis)
        if abs(det) < 1:
            raise ValueError("X basis is singular")
        expected = {"sc": 1}.get(self.isogeny_label)
        if expected is not None and abs(det) != expected:
            raise ValueError("sc datum must have X = P")

    def q_rows(self) -> list[list[int]]:
        c = self.rs.cartan
        n = self.rs.rank
        return [[int(c[i][j]) for i in range(n)] for j in range(n)]  # row j = alpha_j

    def root_weight_row(self, root_idx: int) -> list[int]:
        c = self.rs.cartan
        r = self.rs.roots[root_idx]
        n = self.rs.rank
        return [int(sum(c[i][j] * r[j] for j in range(n))) for i in range(n)]

    def fundamental_quotient(self, p: int = 0) -> FiniteAbelianGroup:
        """Torsion of X / Q (prime to p)."""
        rel = [
            _solve_int_rows([list(map(int, r)) for r in self.X_rows], row)
            for row in self.q_rows()
        ]
        _, d, _ = smith_normal_form(rel)
        facs = [
            _strip_p(int(d[i][i]), p)
            for i in range(min(len(rel), self.rs.rank))
            if int(d[i][i]) not in (0, 1)
        ]
        facs = [f for f in facs if f > 1]
        return FiniteAbelianGroup(tuple(facs))

    def __repr__(self):
        return f"RootDatum({self.rs.cartan_type}, {self.isogeny_label})"


def _det_int(m) -> int:
    n = len(m)
    a = [[Fraction(int(x)) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return int(det)


def _lattice_basis(rows: list[list[int]], n: int) -> np.ndarray:
    """Basis (rows) of the lattice generated by possibly redundant rows."""
    u, d, v = smith_normal_form(rows)
    # D = U R V => R's row lattice = row lattice of D V^{-1}; rows of D are
    # d_i e_i, so basis rows are d_i * (row i of V^{-1}).
    vinv = _mat_fraction_inverse(v)
    out = []
    for i in range(min(len(rows), n)):
        di = int(d[i][i])
        if di == 0:
            continue
        row = [di * vinv[i][j] for j in range(n)]
        assert all(x.denominator == 1 for x in row)
        out.append([int(x) for x in row])
    if len(out) != n:
        raise ValueError("rows do not span a finite-index sublattice")
    return np.array(out, dtype=np.int64)


def root_datum(type_or_rs, isogeny_label: str) -> RootDatum:
    """Construct a root datum: sc, ad, SO, PSO, HalfSpin or SLmod:d."""
    rs = type_or_rs if isinstance(type_or_rs, RootSystem) else build_root_system(type_or_rs)
    t = rs.cartan_type
    n = rs.rank
    label = isogeny_label
    if label in _D_ONLY and t.series != "D":
        if label == "SO" and t.series == "B":
            label = "ad"  # SO_{2n+1} is the adjoint form of B_n
        else:
            raise ValueError(f"{isogeny_label} only applies to D (or B for SO)")
    if label == "sc":
        x = np.eye(n, dtype=np.int64)
    elif label == "ad":
        c = rs.cartan
        x = np.array([[int(c[i][j]) for i in range(n)] for j in range(n)], dtype=np.int64)
    elif label == "SO":
        rows = [[int(rs.cartan[i][j]) for i in range(n)] for j in range(n)]
        mu = [1] + [0] * (n - 1)  # the vector weight, first fundamental weight
        x = _lattice_basis(rows + [mu], n)
    elif label == "PSO":
        c = rs.cartan
        x = np.array([[int(c[i][j]) for i in range(n)] for j in range(n)], dtype=np.int64)
    elif label == "HalfSpin":
        if t.series != "D" or n % 2 != 0:
            raise ValueError("HalfSpin requires type D of even rank")
        rows = [[int(rs.cartan[i][j]) for i in range(n)] for j in range(n)]
        lam = [0] * (n - 1) + [1]  # a half-spin fundamental weight
        x = _lattice_basis(rows + [lam], n)
    elif label.startswith("SLmod:"):
        if t.series != "A":
            raise ValueError("SLmod only applies to type A")
        d = int(label.split(":", 1)[1])
        if d <= 0 or (n + 1) % d != 0:
            raise ValueError(f"SLmod divisor must divide {n + 1}")
        rows = [[int(rs.cartan[i][j]) for i in range(n)] for j in range(n)]
        gen = [0] * (n - 1) + [d]
        x = _lattice_basis(rows + [gen], n)
    else:
        raise ValueError(f"unknown isogeny label {isogeny_label!r}")
    return RootDatum(rs, isogeny_label, x)


# ---------------------------------------------------------------------------
# center quotients


class CenterQuotient:
    """The quotient X / Z<psi> for a subsystem psi, with its W-action tools.

    Torsion characters (tuples c with c_i mod m_i) model elements of the
    center of the subsystem subgroup; c evaluates on a lattice vector x as
    sum(c_i * y_i / m_i) mod 1 where y are SNF-adapted coordinates.
    """

    def __init__(self, datum: RootDatum, psi_root_indices, p: int = 0):
        self.datum = datum
        self.p = p
        rs = datum.rs
        self.rs = rs
        self.psi = Subsystem(rs, psi_root_indices)
        n = rs.rank
        basis = [list(map(int, r)) for r in datum.X_rows]
        rel = []
        for i in self.psi.simples:
            row = _solve_int_rows(basis, datum.root_weight_row(i))
            assert row is not None, "psi root outside X"
            rel.append(row)
        self.rank_psi = len(rel)
        if rel:
            u, d, v = smith_normal_form(rel)
        else:
            u = np.zeros((0, 0), dtype=object)
            d = np.zeros((0, n), dtype=object)
            v = np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object)
        self.V = [[int(v[i][j]) for j in range(n)] for i in range(n)]
        self.Vinv = [[int(x) for x in row] for row in _unimodular_inverse(self.V)]
        diag = [int(d[i][i]) for i in range(min(self.rank_psi, n))]
        self.diag = diag
        r = sum(1 for x in diag if x != 0)
        self.tor_pos = [i for i in range(r) if _strip_p(diag[i], p) > 1]
        self.moduli = tuple(_strip_p(diag[i], p) for i in self.tor_pos)
        self.free_pos = list(range(r, n))
        self.group = FiniteAbelianGroup(tuple(m for m in self.moduli if m > 1))
        self._x_basis = basis
        self._root_y: dict[int, list[int]] = {}

    # -- coordinates ---------------------------------------------------------

    def x_coords(self, weight_row) -> list[int]:
        out = _solve_int_rows(self._x_basis, weight_row)
        assert out is not None
        return out

    def y_coords(self, x_row) -> list[int]:
        n = len(self.V)
        return [sum(int(x_row[k]) * self.V[k][j] for k in range(n)) for j in range(n)]

    def root_y(self, root_idx: int) -> list[int]:
        hit = self._root_y.get(root_idx)
        if hit is None:
            hit = self.y_coords(self.x_coords(self.datum.root_weight_row(root_idx)))
            self._root_y[root_idx] = hit
        return hit

    # -- characters ------------------------------------------------------------

    def char_value(self, c, y) -> Fraction:
        """Torsion-character value on quotient coordinates, as a fraction mod 1."""
        val = Fraction(0)
        for ci, pos, m in zip(c, self.tor_pos, self.moduli):
            val += Fraction(int(ci) * int(y[pos]), m)
        return val - int(val) if val >= 0 else val - int(val) + (1 if val % 1 else 0)

    def char_kills_root(self, c, root_idx: int) -> bool:
        y = self.root_y(root_idx)
        if any(y[j] != 0 for j in self.free_pos):
            # free directions are generic: the character never vanishes there
            return False
        return self.char_value(c, y) % 1 == 0

    def char_order(self, c) -> int:
        return self.group.element_order(tuple(c))

    def characters(self):
        return self.group.elements()

    def realizes(self, c) -> bool:
        """True iff a generic center element with this torsion部 has exactly psi."""
        in_psi = self.psi.root_indices
        for i in range(self.rs.num_roots):
            killed = self.char_kills_root(c, i)
            if killed != (i in in_psi):
                return False
        return True

    def subcenter_chars(self):
        """Characters killing every root class: the center of the full group."""
        return [c for c in self.characters() if self._kills_all_roots(c)]

    def _kills_all_roots(self, c) -> bool:
        for i in map(int, self.rs.positive):
            y = self.root_y(i)
            if any(y[j] != 0 for j in self.free_pos):
                continue  # never killed generically; irrelevant for torsion test
            if self.char_value(c, y) % 1 != 0:
                return False
        return True

    # -- Weyl action -------------------------------------------------------------

    def _setup_fast_action(self):
        """Integer pipeline mapping X-rows through a root permutation.

        X-row -> root-basis row (scaled by dc) -> permute -> X-row (scaled by
        dx); combined denominator dc*dx is divided out exactly.
        """
        if hasattr(self, "_fast"):
            return
        rs = self.rs
        n = rs.rank
        cm = [[Fraction(int(rs.cartan[i][j])) for j in range(n)] for i in range(n)]
        cinv = _mat_fraction_inverse(cm)
        xb = [[Fraction(int(self._x_basis[i][j])) for j in range(n)] for i in range(n)]
        xbinv = _mat_fraction_inverse(self._x_basis)
        # X-row -> root-coords row: x @ X_rows @ (C^{-1})^T  (weight -> root)
        a = _mat_mul(xb, [[cinv[j][i] for j in range(n)] for i in range(n)])
        # root-coords row -> X-row: r @ C^T @ X_rows^{-1}
        b = _mat_mul([[cm[j][i] for j in range(n)] for i in range(n)], xbinv)
        da = 1
        for row in a:
            for x in row:
                da = da * x.denominator // np.gcd(da, x.denominator)
        db = 1
        for row in b:
            for x in row:
                db = db * x.denominator // np.gcd(db, x.denominator)
        A = np.array([[int(x * da) for x in row] for row in a], dtype=np.int64)
        B = np.array([[int(x * db) for x in row] for row in b], dtype=np.int64)
        V = np.array(self.V, dtype=np.int64)
        # rows to push through: torsion generators then free generators
        gen_rows = [self.Vinv[p] for p in self.tor_pos] + [
            self.Vinv[p] for p in self.free_pos
        ]
        G = np.array(gen_rows, dtype=np.int64) if gen_rows else np.zeros((0, n), np.int64)
        self._fast = (A, B, V, G, da * db)

    def batched_actions(self, perms: np.ndarray):
        """Free-part triviality flags and character matrices for many perms.

        perms holds INVERSE permutations w^{-1} as rows (the character action
        uses chi(w^{-1} x)); returns (free_ok bool array, theta int arrays).
        """
        self._setup_fast_action()
        A, B, V, G, denom = self._fast
        rs = self.rs
        n = rs.rank
        k = len(self.tor_pos)
        nf = len(self.free_pos)
        m = perms.shape[0]
        if G.shape[0] == 0:
            return np.ones(m, dtype=bool), [tuple()] * m
        # root-basis images of simple roots per permutation: (m, n, n)
        imgs = rs.roots[np.asarray(perms, dtype=np.int64)[:, rs.simple_indices]]
        # row-convention root action: r -> r @ M^T where M columns are images
        rr = G @ A  # (g, n) scaled root rows
        moved = np.einsum("gi,min->gmn", rr, imgs)  # (g, m, n)
        out = np.einsum("gmn,nj->mgj", moved, B)  # (m, g, n) scaled X rows
        assert (out % denom == 0).all(), "X lattice not stable"
        y = (out // denom) @ V  # quotient coordinates
        free_ok = np.ones(m, dtype=bool)
        if nf:
            want = np.zeros((k + nf, nf), dtype=np.int64)
            for i in range(nf):
                want[k + i][i] = 1
            free_ok = (y[:, :, self.free_pos] == want[None, :, :]).all(axis=(1, 2))
        thetas = []
        for r in range(m):
            rows = []
            for i in range(k):
                assert all(
                    int(y[r, i, fp]) == 0 for fp in self.free_pos
                ), "torsion not stable"
                entries = []
                for j in range(k):
                    num = Fraction(
                        self.moduli[i] * int(y[r, i, self.tor_pos[j]]), self.moduli[j]
                    )
                    assert num.denominator == 1
                    entries.append(int(num) % self.moduli[i])
                rows.append(tuple(entries))
            thetas.append(tuple(rows))
        return free_ok, thetas

    def action_on_x(self, root_perm: np.ndarray) -> list[list[int]]:
        """Matrix A with (x-row of v) @ A = x-row of w(v)."""
        rs = self.rs
        n = rs.rank
        m_root = rs.act_matrix(root_perm)  # columns = images of simple roots
        c = rs.cartan
        cm = [[int(c[i][j]) for j in range(n)] for i in range(n)]
        cinv = _mat_fraction_inverse(cm)
        # weight-row action T = (C M C^{-1})^T
        cmc = _mat_mul(_mat_mul(cm, [[int(m_root[i][j]) for j in range(n)] for i in range(n)]), cinv)
        T = [[cmc[j][i] for j in range(n)] for i in range(n)]
        B = [[Fraction(int(x)) for x in row] for row in self._x_basis]
        Binv = _mat_fraction_inverse(self._x_basis)
        A = _mat_mul(_mat_mul(B, T), Binv)
        out = []
        for row in A:
            assert all(x.denominator == 1 for x in row), "X not stable under element"
            out.append([int(x) for x in row])
        return out

    def action_on_y(self, root_perm: np.ndarray) -> list[list[int]]:
        A = self.action_on_x(root_perm)
        n = len(A)
        return _mat_mul_int(_mat_mul_int(self.Vinv, A), self.V)

    def fixes_free_part(self, n_y: list[list[int]]) -> bool:
        for i in self.free_pos:
            for j in self.free_pos:
                if n_y[i][j] != (1 if i == j else 0):
                    return False
        return True

    def char_action_matrix(self, root_perm: np.ndarray) -> tuple[tuple[int, ...], ...]:
        """Matrix theta with (w.c)_i = sum_j theta[i][j] c_j, acting on characters."""
        inv_perm = inverse(root_perm)
        n_y_inv = self.action_on_y(inv_perm)
        # (w.chi)(g_i) = chi(w^{-1} g_i); g_i has y-coords e_{tor_pos[i]}
        k = len(self.tor_pos)
        theta = []
        for i in range(k):
            row_y = n_y_inv[self.tor_pos[i]]
            assert all(row_y[j] == 0 for j in self.free_pos), "torsion not stable"
            entries = []
            for j in range(k):
                num = Fraction(self.moduli[i] * row_y[self.tor_pos[j]], self.moduli[j])
                assert num.denominator == 1, "character order mismatch"
                entries.append(int(num) % self.moduli[i])
            theta.append(tuple(entries))
        return tuple(theta)

    def apply_char_matrix(self, theta, c) -> tuple[int, ...]:
        return tuple(
            sum(theta[i][j] * int(c[j]) for j in range(len(c))) % self.moduli[i]
            for i in range(len(self.moduli))
        )


def _mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum(Fraction(a[i][t]) * Fraction(b[t][j]) for t in range(k)) for j in range(m)]
        for i in range(n)
    ]


def _mat_mul_int(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum(int(a[i][t]) * int(b[t][j]) for t in range(k)) for j in range(m)]
        for i in range(n)
    ]


def _unimodular_inverse(v):
    inv = _mat_fraction_inverse(v)
    out = []
    for row in inv:
        assert all(x.denominator == 1 for x in row)
        out.append([int(x) for x in row])
    return out


# ---------------------------------------------------------------------------
# public center operations


def center_component_group(datum: RootDatum, levi_positions, p: int = 0) -> FiniteAbelianGroup:
    """Z(L)/Z°(L) for the standard Levi on the given simple-root positions."""
    rs = datum.rs
    idxs = [int(rs.simple_indices[i]) for i in levi_positions]
    return CenterQuotient(datum, idxs, p).group


def full_center(datum: RootDatum, psi_root_indices, p: int = 0) -> FiniteAbelianGroup:
    """Z(H) for the full-rank subsystem subgroup generated by psi."""
    cq = CenterQuotient(datum, psi_root_indices, p)
    if cq.rank_psi != datum.rs.rank:
        raise ValueError("psi is not of full rank")
    return cq.group


def center_elements_outside_subcenter(datum: RootDatum, psi_root_indices, p: int = 0):
    """Characters of Z(H) not lying in Z(G), with their orders."""
    cq = CenterQuotient(datum, psi_root_indices, p)
    if cq.rank_psi != datum.rs.rank:
        raise ValueError("psi is not of full rank")
    sub = set(cq.subcenter_chars())
    return [(c, cq.char_order(c)) for c in cq.characters() if c not in sub]


@dataclass
class CenterAction:
    """Finite group of automorphisms of a center, as character matrices."""

    group: FiniteAbelianGroup
    generators: list[tuple[tuple[int, ...], ...]]
    witnesses: list[np.ndarray]
    source: str

    def elements(self):
        mods = self.group.invariant_factors
        seen = {_theta_key(_theta_identity(mods))}
        out = [_theta_identity(mods)]
        frontier = list(out)
        while frontier:
            nxt = []
            for e in frontier:
                for g in self.generators:
                    prod = _theta_mul(g, e, mods)
                    key = _theta_key(prod)
                    if key not in seen:
                        seen.add(key)
                        out.append(prod)
                        nxt.append(prod)
            frontier = nxt
        return out


def _theta_identity(mods):
    k = len(mods)
    return tuple(tuple(int(i == j) for j in range(k)) for i in range(k))


def _theta_mul(a, b, mods):
    k = len(mods)
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) % mods[i] for j in range(k))
        for i in range(k)
    )


def _theta_key(t):
    return t


def normalizer_center_action(datum: RootDatum, psi_root_indices, weyl=None) -> CenterAction:
    """Action of the setwise stabilizer of psi on the center of its subgroup.

    Generators are images of Schreier generators of the stabilizer of the
    root set; each distinct action matrix keeps one explicit Weyl witness.
    """
    from .weyl import weyl_group

    cq = CenterQuotient(datum, psi_root_indices, 0)
    w = weyl if weyl is not None else weyl_group(datum.rs)
    orbit = w.set_orbit(cq.psi.pairs)
    seen: dict = {}
    gens, witnesses = [], []
    for batch in orbit.schreier_generators():
        for row in batch:
            theta = cq.char_action_matrix(row.astype(np.int32))
            if theta not in seen:
                seen[theta] = True
                gens.append(theta)
                witnesses.append(row.astype(np.int32))
    return CenterAction(
        cq.group,
        gens,
        witnesses,
        source=f"setwise stabilizer of {cq.psi.type_name} in W({datum.rs.cartan_type})",
    )
