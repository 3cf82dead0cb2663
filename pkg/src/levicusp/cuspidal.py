"""Cuspidal character-sheaf admissibility of Levi subgroups.

The decision procedure reduces a Levi to its quasi-simple factors: a
central character of the Levi's component group restricts to each factor as
a class in the factor's fundamental quotient P/Q, and per-factor
admissibility is tabulated against that class.  The classical-family data is
the arithmetic of triangular and square numbers; the exceptional data is
stored verbatim.  A block listed for one isogeny applies to every central
quotient through which its character family factors, so the adjoint rows
are inherited by the simply connected forms via trivial characters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .cartan import CartanType
from .lattice import CenterQuotient, RootDatum, root_datum
from .rootsystem import (
    ComponentLabel,
    RootSystem,
    Subsystem,
    build_root_system,
)
from .weyl import weyl_group


class CuspidalUndecided(Exception):
    """Raised for the characteristic-2 cases the cleanness results exclude."""


# ---------------------------------------------------------------------------
# arithmetic membership tests (exact integers only)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def is_triangular(n: int) -> bool:
    # n = t(t+1)/2 iff 8n+1 is a perfect square
    return n >= 0 and is_square(8 * n + 1)


def in_two_triangular(n: int) -> bool:
    return n % 2 == 0 and is_triangular(n // 2)


def in_four_square(n: int) -> bool:
    return n % 4 == 0 and is_square(n // 4)


def bd_square_pairs(k: int) -> list[tuple[int, int]]:
    """(r, s) with r+s = k and 2r+1, 2s both squares."""
    return [
        (r, k - r)
        for r in range(k + 1)
        if is_square(2 * r + 1) and is_square(2 * (k - r))
    ]


def bd_triangular_pairs(k: int) -> list[tuple[int, int]]:
    """(r, s) with r+s = k and 2r+1, 2s both triangular."""
    return [
        (r, k - r)
        for r in range(k + 1)
        if is_triangular(2 * r + 1) and is_triangular(2 * (k - r))
    ]


def c_triangular_pairs(k: int, parity: int) -> list[tuple[int, int]]:
    """(r, s) with r+s = k of given parity and r, s both triangular."""
    if k % 2 != parity:
        return []
    return [
        (r, k - r) for r in range(k + 1) if is_triangular(r) and is_triangular(k - r)
    ]


def d_square_pairs(k: int, residue: int) -> list[tuple[int, int]]:
    """(r, s) with r+s = k congruent to residue mod 4, 2r, 2s both squares."""
    if k % 4 != residue:
        return []
    return [
        (r, k - r) for r in range(k + 1) if is_square(2 * r) and is_square(2 * (k - r))
    ]


def d_triangular_pairs(k: int) -> list[tuple[int, int]]:
    return [
        (r, k - r)
        for r in range(k + 1)
        if is_triangular(2 * r) and is_triangular(2 * (k - r))
    ]


# ---------------------------------------------------------------------------
# fundamental-quotient classes of factor restrictions


@dataclass(frozen=True)
class FactorClass:
    """One quasi-simple factor with the restricted central-character class.

    kind classifies the class: '0', 'mu' (the vector class of even D),
    'lambda' (spin classes of D), or 'ord:<e>' where only the order matters.
    """

    cartan_type: CartanType
    order: int
    kind: str


_std_quotients: dict[CartanType, CenterQuotient] = {}


def _std_quotient(t: CartanType) -> CenterQuotient:
    cq = _std_quotients.get(t)
    if cq is None:
        datum = root_datum(t, "sc")
        cq = CenterQuotient(datum, [int(i) for i in datum.rs.simple_indices], 0)
        _std_quotients[t] = cq
    return cq


def _std_class_coords(cq: CenterQuotient, weight_row) -> tuple[int, ...]:
    y = cq.y_coords(cq.x_coords(list(weight_row)))
    return tuple(int(y[pos]) % m for pos, m in zip(cq.tor_pos, cq.moduli))


def _classify_coords(t: CartanType, coords: tuple[int, ...]) -> FactorClass:
    cq = _std_quotient(t)
    order = cq.group.element_order(coords) if coords else 1
    if order == 1:
        return FactorClass(t, 1, "0")
    if t.series == "D":
        if order == 4:
            return FactorClass(t, 4, "lambda")
        mu = _std_class_coords(cq, [1] + [0] * (t.rank - 1))
        return FactorClass(t, 2, "mu" if coords == mu else "lambda")
    return FactorClass(t, order, f"ord:{order}")


def _diagram_isomorphism(rs: RootSystem, comp_nodes: list[int], t: CartanType) -> list[int]:
    """comp position -> standard node position, matching Cartan data."""
    std = build_root_system(t)
    k = len(comp_nodes)
    std_nodes = [int(i) for i in std.simple_indices]
    comp_top = max(rs.len2(i) for i in comp_nodes)
    std_top = max(std.len2(i) for i in std_nodes)
    comp_rel = [rs.len2(i) / comp_top for i in comp_nodes]
    std_rel = [std.len2(i) / std_top for i in std_nodes]

    assign: list[int | None] = [None] * k
    used = [False] * k

    def compatible(ci: int, sj: int) -> bool:
        if comp_rel[ci] != std_rel[sj]:
            return False
        for cj in range(k):
            if assign[cj] is None or cj == ci:
                continue
            if rs.pair_int(comp_nodes[ci], comp_nodes[cj]) != std.pair_int(
                std_nodes[sj], std_nodes[assign[cj]]
            ):
                return False
            if rs.pair_int(comp_nodes[cj], comp_nodes[ci]) != std.pair_int(
                std_nodes[assign[cj]], std_nodes[sj]
            ):
                return False
        return True

    def search(ci: int) -> bool:
        if ci == k:
            return True
        for sj in range(k):
            if not used[sj] and compatible(ci, sj):
                assign[ci] = sj
                used[sj] = True
                if search(ci + 1):
                    return True
                assign[ci] = None
                used[sj] = False
        return False

    if not search(0):
        raise AssertionError(f"no diagram isomorphism onto {t}")
    return [int(x) for x in assign]


_coroot_cache: dict[tuple[str, int], list[Fraction]] = {}


def _coroot_coords(rs: RootSystem, root_idx: int) -> list[Fraction]:
    key = (str(rs.cartan_type), root_idx)
    hit = _coroot_cache.get(key)
    if hit is None:
        r = rs.roots[root_idx]
        a2 = rs.len2(root_idx)
        hit = [
            Fraction(int(r[i])) * rs.len2(int(rs.simple_indices[i])) / a2
            for i in range(rs.rank)
        ]
        _coroot_cache[key] = hit
    return hit


def _coroot_pairing(rs: RootSystem, weight_row, root_idx: int) -> int:
    cc = _coroot_coords(rs, root_idx)
    val = sum(Fraction(int(weight_row[i])) * cc[i] for i in range(rs.rank))
    assert val.denominator == 1
    return int(val)


def factor_class(
    rs: RootSystem, comp_label: ComponentLabel, comp_nodes: list[int], x_weight_row
) -> FactorClass:
    """Restriction of a central-character class to one quasi-simple factor."""
    t = comp_label.cartan_type
    pairings = [_coroot_pairing(rs, list(x_weight_row), i) for i in comp_nodes]
    nu = _diagram_isomorphism(rs, comp_nodes, t)
    std_row = [0] * t.rank
    for ci, sj in enumerate(nu):
        std_row[sj] = pairings[ci]
    coords = _std_class_coords(_std_quotient(t), std_row)
    return _classify_coords(t, coords)


# ---------------------------------------------------------------------------
# per-factor admissibility (the tabulated data)


def base_case_admits(fc: FactorClass, p: int) -> bool:
    """Whether a quasi-simple group of this type admits a cuspidal character
    sheaf on which the center acts by the given class."""
    t, e = fc.cartan_type, fc.order
    s, k = t.series, t.rank
    if s == "A":
        return e == k + 1
    if s == "B":
        if e == 1:
            if p == 2:
                return in_two_triangular(k)
            return bool(bd_square_pairs(k))
        return bool(bd_triangular_pairs(k))
    if s == "C":
        if e == 1:
            if p == 2:
                return in_two_triangular(k)
            return bool(c_triangular_pairs(k, 0))
        return bool(c_triangular_pairs(k, 1))
    if s == "D":
        if fc.kind == "0":
            if p == 2:
                return in_four_square(k)
            return bool(d_square_pairs(k, 0))
        if fc.kind == "mu":
            return bool(d_square_pairs(k, 2))
        return bool(d_triangular_pairs(k))
    if s == "G":
        return True
    if s == "F":
        if p == 2:
            raise CuspidalUndecided("cleanness is not known for F4 in characteristic 2")
        return True
    if s == "E":
        if k == 8 and p == 2:
            raise CuspidalUndecided("cleanness is not known for E8 in characteristic 2")
        return True
    raise ValueError(f"unhandled factor {t}")


# ---------------------------------------------------------------------------
# abstract group descriptions (product groups given by character data)


@dataclass
class GroupDescription:
    """Product of quasi-simple factors with its available central characters.

    allowed_chars generates the subgroup of central characters, each given
    per factor as coordinates in that factor's fundamental quotient.
    """

    factors: list[CartanType]
    allowed_chars: list[tuple[tuple[int, ...], ...]]
    torus_rank: int = 0

    def char_group(self):
        mods = [_std_quotient(t).moduli for t in self.factors]
        zero = tuple(tuple(0 for _ in m) for m in mods)
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for cur in frontier:
                for g in self.allowed_chars:
                    new = tuple(
                        tuple((a + b) % m for a, b, m in zip(cur[i], g[i], mods[i]))
                        for i in range(len(self.factors))
                    )
                    if new not in seen:
                        seen.add(new)
                        nxt.append(new)
            frontier = nxt
        return sorted(seen)


def admits_cuspidal(gd: GroupDescription, p: int = 0) -> bool:
    """Existence of a cuspidal character sheaf on an abstract product group."""
    if not gd.factors:
        return True  # tori always carry cuspidal local systems
    undecided = None
    for char in gd.char_group():
        classes = [_classify_coords(t, char[i]) for i, t in enumerate(gd.factors)]
        if p not in (0, None) and any(fc.order % p == 0 for fc in classes):
            continue
        try:
            if all(base_case_admits(fc, p) for fc in classes):
                return True
        except CuspidalUndecided as exc:
            undecided = exc
    if undecided is not None:
        raise undecided
    return False


# ---------------------------------------------------------------------------
# Levi subgroups of a root datum


def _char_lift_weight_row(datum: RootDatum, cq: CenterQuotient, c) -> list[int]:
    n = datum.rs.rank
    x = [0] * n
    for ci, pos in zip(c, cq.tor_pos):
        row = cq.Vinv[pos]
        x = [a + int(ci) * b for a, b in zip(x, row)]
    return [int(sum(x[k] * int(datum.X_rows[k][j]) for k in range(n))) for j in range(n)]


def _char_factor_classes(datum: RootDatum, cq: CenterQuotient, sub: Subsystem, c):
    row = _char_lift_weight_row(datum, cq, c)
    return [
        (label, factor_class(datum.rs, label, comp, row))
        for label, comp in sub.components
    ]


def _char_admits(datum, cq, sub, c, p):
    classes = _char_factor_classes(datum, cq, sub, c)
    for _, fc in classes:
        if not base_case_admits(fc, p):
            return None
    return classes


def admits_cuspidal_levi(datum: RootDatum, positions, p: int = 0) -> bool:
    """Whether the standard Levi on the given simple positions admits one."""
    if not positions:
        return True
    rs = datum.rs
    cq = CenterQuotient(datum, [int(rs.simple_indices[i]) for i in positions], p)
    sub = cq.psi
    undecided = None
    for c in cq.characters():
        try:
            if _char_admits(datum, cq, sub, c, p) is not None:
                return True
        except CuspidalUndecided as exc:
            undecided = exc
    if undecided is not None:
        raise undecided
    return False


def group_description_of_levi(datum: RootDatum, positions, p: int = 0) -> GroupDescription:
    """Abstract description (factors plus available characters) of a Levi."""
    rs = datum.rs
    cq = CenterQuotient(datum, [int(rs.simple_indices[i]) for i in positions], p)
    sub = cq.psi
    factors = [label.cartan_type for label, _ in sub.components]
    gens = []
    k = len(cq.moduli)
    for i in range(k):
        c = tuple(1 if j == i else 0 for j in range(k))
        row = _char_lift_weight_row(datum, cq, c)
        per_factor = []
        for label, comp in sub.components:
            t = label.cartan_type
            nu = _diagram_isomorphism(rs, comp, t)
            std_row = [0] * t.rank
            for ci, sj in enumerate(nu):
                std_row[sj] = _coroot_pairing(rs, row, comp[ci])
            per_factor.append(_std_class_coords(_std_quotient(t), std_row))
        gens.append(tuple(per_factor))
    return GroupDescription(factors, gens, torus_rank=rs.rank - sub.rank)


# ---------------------------------------------------------------------------
# table rows


@dataclass
class ChiFamily:
    """One table row on a fixed Levi class: a central-character family."""

    chi_kinds: tuple[str, ...]
    chi_order: int
    condition: str
    m_types: tuple[str, ...]
    params: dict = field(default_factory=dict)


@dataclass
class CuspidalLeviRecord:
    levi_positions: tuple[int, ...]
    levi_type: str
    families: list[ChiFamily]


@dataclass
class TableResult:
    datum: RootDatum
    p: int
    records: list[CuspidalLeviRecord]
    refusals: list[tuple[str, str]]


_EXC_M_TYPES = {
    ("G2", "G2", "0"): [("A1x~A1", None), ("A2", None), ("G2", None)],
    ("F4", "B2", "0"): [("A1xA1", "p!=2"), ("B2", "p=2")],
    ("F4", "F4", "0"): [
        ("A1xC3", None),
        ("A2x~A2", None),
        ("A3x~A1", None),
        ("B4", None),
        ("F4", None),
    ],
    ("E6", "A2xA2", "ord:3"): [("A2xA2", None)],
    ("E6", "E6", "ord:3"): [("A1xA5", "p!=2"), ("E6", None)],
    ("E6", "D4", "0"): [("A1xA1xA1xA1", "p!=2"), ("D4", "p=2")],
    ("E6", "E6", "0"): [("A2xA2xA2", "p!=3"), ("E6", "p=3")],
    ("E7", "A1xA1xA1", "ord:2"): [("A1xA1xA1", None)],
    # derived row: the D6 Levi of the simply connected form carries the
    # half-spin central class, and 6 = 3 + 3 with 6 triangular
    ("E7", "D6", "ord:2"): [("A3xA3", None)],
    ("E7", "E7", "ord:2"): [("A2xA5", "p!=3"), ("E7", "p=3")],
    ("E7", "D4", "0"): [("A1xA1xA1xA1", "p!=2"), ("D4", "p=2")],
    ("E7", "E6", "0"): [("A2xA2xA2", "p!=3"), ("E6", "p=3")],
    ("E7", "E7", "0"): [("A1xA3xA3", "p!=2"), ("E7", "p=2")],
    ("E8", "D4", "0"): [("A1xA1xA1xA1", "p!=2"), ("D4", "p=2")],
    ("E8", "E6", "0"): [("A2xA2xA2", "p!=3"), ("E6", "p=3")],
    ("E8", "E7", "0"): [("A1xA3xA3", "p!=2"), ("E7", "p=2")],
    ("E8", "E8", "0"): [
        ("A4xA4", None),
        ("A1xA2xA5", None),
        ("A3xD5", None),
        ("D8", None),
        ("A2xE6", None),
        ("A1xE7", None),
        ("E8", None),
    ],
}


def _p_pred(tag: str | None, p: int) -> bool:
    if tag is None:
        return True
    if tag.startswith("p!="):
        return p != int(tag[3:])
    if tag.startswith("p="):
        return p == int(tag[2:])
    raise ValueError(tag)


@dataclass
class _Shape:
    """Tail-and-padding decomposition of a classical Levi."""

    tail_rank: int
    tail_kind: str  # class kind restricted to the tail ('0','mu','lambda')
    padding: int


def _half_sum_in_weights(datum: RootDatum, i: int, j: int) -> bool:
    wi = datum.root_weight_row(i)
    wj = datum.root_weight_row(j)
    return any(
        all((a + s * b) % 2 == 0 for a, b in zip(wi, wj)) for s in (1, -1)
    )


def _classical_shape(datum: RootDatum, sub: Subsystem, classes) -> _Shape:
    series = datum.rs.cartan_type.series
    tail_rank = 0
    tail_kinds: list[str] = []
    padding = 0
    a1s: list[tuple[int, FactorClass]] = []  # (root index, class) of rank-1 comps
    for (label, comp), (_, fc) in zip(sub.components, classes):
        t = label.cartan_type
        if t.series in ("B", "C", "D"):
            tail_rank += t.rank
            tail_kinds.append(fc.kind)
        elif t.rank == 1:
            if series == "B" and label.rel_len != 1:
                tail_rank += 1  # the short A1 is a rank-one tail
                tail_kinds.append(fc.kind)
            elif series == "C" and label.rel_len == 1:
                tail_rank += 1  # the long A1 is a rank-one tail
                tail_kinds.append(fc.kind)
            else:
                a1s.append((comp[0], fc))
        elif series == "D" and t == CartanType("A", 3):
            closed = Subsystem(datum.rs, comp)
            horned = any(
                _half_sum_in_weights(datum, a, b)
                for ai, a in enumerate(closed.positive)
                for b in closed.positive[ai + 1 :]
            )
            if not horned:
                raise ValueError("chain A3 factor is not a classical tail")
            tail_rank += 3
            tail_kinds.append("lambda" if fc.order == 4 else ("mu" if fc.order == 2 else "0"))
        else:
            raise ValueError(f"factor {t} is not part of a classical row shape")
    if series == "D" and len(a1s) >= 2:
        # detect one D2 block among the A1 factors
        for x in range(len(a1s)):
            for y in range(x + 1, len(a1s)):
                if _half_sum_in_weights(datum, a1s[x][0], a1s[y][0]):
                    assert tail_rank == 0, "two tails in one Levi"
                    k1, k2 = a1s[x][1].kind, a1s[y][1].kind
                    both = k1 != "0" and k2 != "0"
                    tail_kinds.append("mu" if both else "lambda")
                    tail_rank = 2
                    a1s = [a1s[z] for z in range(len(a1s)) if z not in (x, y)]
                    break
            if tail_rank == 2:
                break
    padding = len(a1s)
    assert len(tail_kinds) <= 1, "two classical tails in one Levi"
    return _Shape(tail_rank, tail_kinds[0] if tail_kinds else "0", padding)


def _b_name(r: int) -> str:
    return {0: "", 1: "~A1"}.get(r, f"B{r}")


def _c_name(r: int) -> str:
    return {0: "", 1: "A1", 2: "B2"}.get(r, f"C{r}")


def _d_name(r: int) -> str:
    return {0: "", 1: "", 2: "A1xA1", 3: "A3"}.get(r, f"D{r}")


def _join_type(*parts: str) -> str:
    bits = [b for p in parts for b in p.split("x") if b]
    return "x".join(sorted(bits)) if bits else "0"


def _classical_row(datum, sub, classes, chi_order, p):
    """Condition text, M types and parameters of one classical table row."""
    series = datum.rs.cartan_type.series
    shape = _classical_shape(datum, sub, classes)
    k, j = shape.tail_rank, shape.padding
    pad_parts = ["A1"] * j

    if series == "B":
        if chi_order == 1:
            assert j == 0
            if p == 2:
                pairs = [(k, 0)] if in_two_triangular(k) else []
                return (
                    f"{k} twice a triangular number (p = 2)",
                    tuple(_join_type(_b_name(k)) for _ in pairs),
                    {"pairs": pairs},
                )
            pairs = bd_square_pairs(k)
            cond = f"2r+1, 2s squares, r+s = {k}"
        else:
            pairs = bd_triangular_pairs(k)
            cond = f"2r+1, 2s triangular, r+s = {k}" + (f", {j} A1 factors" if j else "")
        m = sorted({_join_type(_b_name(r), _d_name(s), *pad_parts) for r, s in pairs})
        return cond, tuple(m), {"pairs": pairs}
    if series == "C":
        assert j == 0, "type C rows carry no A1 padding"
        if chi_order == 1:
            if p == 2:
                pairs = [(k, 0)] if in_two_triangular(k) else []
                return (
                    f"{k} twice a triangular number (p = 2)",
                    tuple(_join_type(_c_name(k)) for _ in pairs),
                    {"pairs": pairs},
                )
            pairs = c_triangular_pairs(k, 0)
            cond = f"r, s triangular, r+s = {k} even"
        else:
            pairs = c_triangular_pairs(k, 1)
            cond = f"r, s triangular, r+s = {k} odd"
        m = sorted({_join_type(_c_name(r), _c_name(s)) for r, s in pairs})
        return cond, tuple(m), {"pairs": pairs}
    if series == "D":
        kind = shape.tail_kind
        if chi_order == 1:
            assert j == 0
            if p == 2:
                pairs = [(k, 0)] if in_four_square(k) else []
                return (
                    f"{k} four times a square (p = 2)",
                    tuple(_join_type(_d_name(k)) for _ in pairs),
                    {"pairs": pairs},
                )
            pairs = d_square_pairs(k, 0)
            cond = f"2r, 2s squares, r+s = {k} = 4m"
        elif kind == "mu":
            assert j == 0
            pairs = d_square_pairs(k, 2)
            cond = f"2r, 2s squares, r+s = {k} = 4m+2"
        else:
            pairs = d_triangular_pairs(k)
            cond = f"2r, 2s triangular, r+s = {k}" + (f", {j} A1 factors" if j else "")
        m = sorted({_join_type(_d_name(r), _d_name(s), *pad_parts) for r, s in pairs})
        return cond, tuple(m), {"pairs": pairs}
    raise AssertionError(series)


def generate_table1(datum: RootDatum, p: int = 0) -> TableResult:
    """All nonempty Levi classes admitting cuspidal data, with row data."""
    rs = datum.rs
    w = weyl_group(rs)
    records: list[CuspidalLeviRecord] = []
    refusals: list[tuple[str, str]] = []
    series = rs.cartan_type.series
    for cls in w.levi_classes():
        positions = cls[0]
        if not positions:
            continue
        cq = CenterQuotient(datum, [int(rs.simple_indices[i]) for i in positions], p)
        sub = cq.psi
        families: dict[tuple, ChiFamily] = {}
        refused = None
        for c in cq.characters():
            try:
                classes = _char_admits(datum, cq, sub, c, p)
            except CuspidalUndecided as exc:
                refused = str(exc)
                continue
            if classes is None:
                continue
            key = tuple(fc.kind for _, fc in classes)
            if key in families:
                continue
            order = cq.char_order(c)
            if series in ("E", "F", "G"):
                gname = str(rs.cartan_type)
                kind = "0" if order == 1 else f"ord:{order}"
                entry = _EXC_M_TYPES.get((gname, sub.type_name, kind))
                assert entry is not None, f"missing stored row {(gname, sub.type_name, kind)}"
                m_types = tuple(m for m, tag in entry if _p_pred(tag, p))
                fam = ChiFamily(key, order, "stored exceptional row", m_types)
            elif series == "A":
                cond = f"central character of order {order} on each factor"
                fam = ChiFamily(key, order, cond, (sub.type_name,))
            else:
                cond, m_types, params = _classical_row(datum, sub, classes, order, p)
                if not m_types:
                    continue
                fam = ChiFamily(key, order, cond, m_types, params)
            families[key] = fam
        if refused is not None:
            refusals.append((sub.type_name, refused))
        if families:
            records.append(
                CuspidalLeviRecord(
                    tuple(positions),
                    sub.type_name,
                    [families[k] for k in sorted(families)],
                )
            )
    records.sort(key=lambda r: (len(r.levi_positions), r.levi_type, r.levi_positions))
    return TableResult(datum, p, records, refusals)
