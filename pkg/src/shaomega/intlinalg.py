"""Exact integer linear algebra: Smith forms, kernels, lattices, quotients.

Everything here works with arbitrary-precision Python integers.  Dense
matrices are lists of row lists; large sparse matrices are represented as
dicts mapping column index to value, one dict per row.  The sparse
elimination pass strikes rows and columns at unit pivots before any dense
work happens, which removes the bulk of bar-resolution differentials.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Row = Dict[int, int]


# ---------------------------------------------------------------------------
# abelian group structures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbelianStructure:
    """Finitely generated abelian group: invariant factors d1 | d2 | ... plus free rank."""

    torsion: Tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"invariant factors must divide in turn: {self.torsion}")
        if any(d < 2 for d in self.torsion):
            raise ValueError(f"invariant factors must exceed 1: {self.torsion}")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int:
        if not self.is_finite:
            raise ValueError("infinite group has no order")
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "0"


TRIVIAL_STRUCTURE = AbelianStructure()


def structure_from_diagonal(diag: Iterable[int], free_rank: int) -> AbelianStructure:
    """Build a structure from SNF diagonal entries, dropping units."""
    torsion = tuple(abs(d) for d in diag if abs(d) > 1)
    return AbelianStructure(torsion, free_rank)


def cyclic_structure(n: int) -> AbelianStructure:
    if n < 0:
        raise ValueError("negative order")
    if n == 0:
        return AbelianStructure((), 1)
    if n == 1:
        return TRIVIAL_STRUCTURE
    return AbelianStructure((n,))


def merge_structures(structs: Iterable[AbelianStructure]) -> AbelianStructure:
    """Direct sum, renormalized to invariant-factor form."""
    primary: Dict[int, List[int]] = {}
    free = 0
    for s in structs:
        free += s.free_rank
        for d in s.torsion:
            for p, e in _prime_powers(d):
                primary.setdefault(p, []).append(e)
    slots: List[int] = []
    width = max((len(v) for v in primary.values()), default=0)
    for i in range(width):
        f = 1
        for p, exps in primary.items():
            exps_sorted = sorted(exps, reverse=True)
            if i < len(exps_sorted):
                f *= p ** exps_sorted[i]
        slots.append(f)
    return AbelianStructure(tuple(sorted(d for d in slots if d > 1)), free)


def _prime_powers(n: int) -> List[Tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


# ---------------------------------------------------------------------------
# dense helpers
# ---------------------------------------------------------------------------


def identity_matrix(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> List[List[int]]:
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: Sequence[Sequence[int]]) -> List[List[int]]:
    return [list(col) for col in zip(*a)] if a else []


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------
# dense Smith normal form
# ---------------------------------------------------------------------------


@dataclass
class SmithForm:
    """U * A * V = D with U, V unimodular and D diagonal with d1 | d2 | ..."""

    diagonal: List[int]
    rows: int
    cols: int
    u: List[List[int]]
    v: List[List[int]]
    u_inv: List[List[int]]
    v_inv: List[List[int]]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithForm:
    """Full SNF with all four transformation matrices."""
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(row) for row in a]
    u, v = identity_matrix(m), identity_matrix(n)
    ui, vi = identity_matrix(m), identity_matrix(n)

    def row_add(dst, src, mult):
        dr, sr = d[dst], d[src]
        for j in range(n):
            if sr[j]:
                dr[j] += mult * sr[j]
        ur, us = u[dst], u[src]
        for j in range(m):
            if us[j]:
                ur[j] += mult * us[j]
        for i in range(m):
            ui[i][src] -= mult * ui[i][dst]

    def col_add(dst, src, mult):
        for i in range(m):
            if d[i][src]:
                d[i][dst] += mult * d[i][src]
        for i in range(n):
            if v[i][src]:
                v[i][dst] += mult * v[i][src]
        vr, vs = vi[dst], vi[src]
        for j in range(n):
            if vr[j]:
                vs[j] -= mult * vr[j]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        for r in ui:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vi[i], vi[j] = vi[j], vi[i]

    def row_negate(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]
        for r in ui:
            r[i] = -r[i]

    t = 0
    limit = min(m, n)
    while t < limit:
        # find the nonzero entry of least magnitude in the trailing block
        best = None
        for i in range(t, m):
            row = d[i]
            for j in range(t, n):
                x = row[j]
                if x:
                    if best is None or abs(x) < best[0]:
                        best = (abs(x), i, j)
                        if abs(x) == 1:
                            break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        if d[t][t] < 0:
            row_negate(t)
        dirty = False
        for i in range(t + 1, m):
            if d[i][t]:
                q = d[i][t] // d[t][t]
                if q:
                    row_add(i, t, -q)
                if d[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if d[t][j]:
                q = d[t][j] // d[t][t]
                if q:
                    col_add(j, t, -q)
                if d[t][j]:
                    dirty = True
        if dirty:
            continue
        # pivot divides the rest of its row and column; enforce divisibility
        # of the remaining block so the diagonal comes out in chain order
        pivot = d[t][t]
        offender = None
        for i in range(t + 1, m):
            row = d[i]
            for j in range(t + 1, n):
                if row[j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue
        t += 1

    diag = [d[i][i] for i in range(limit)]
    return SmithForm(diag, m, n, u, v, ui, vi)


def snf_diagonal(a: Sequence[Sequence[int]]) -> List[int]:
    """Diagonal of the Smith form, without transformation matrices."""
    return smith_normal_form(a).diagonal


def abelian_invariants(a: Sequence[Sequence[int]]) -> AbelianStructure:
    """Structure of the abelian group presented by relation matrix `a`.

    Rows are relations among the column generators; an empty or zero
    matrix presents a free group on its columns.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if n == 0:
        return TRIVIAL_STRUCTURE
    if m == 0:
        return AbelianStructure((), n)
    form = smith_normal_form(a)
    return structure_from_diagonal(form.diagonal, n - form.rank)


def dense_kernel_basis(a: Sequence[Sequence[int]]) -> List[List[int]]:
    """Basis of the lattice {x : a x = 0}, as column vectors.

    Column elimination against one row at a time; the transform columns
    carried underneath supply the kernel basis directly, so no Smith-form
    transform bookkeeping is needed.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if n == 0:
        return []
    # columns of [A; I] as (a_part, id_part)
    cols = [([a[i][j] for i in range(m)], [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    active = list(range(n))
    for r in range(m):
        live = [j for j in active if cols[j][0][r]]
        if not live:
            continue
        # fold all live columns into one pivot carrying the row gcd
        piv = live[0]
        for j in live[1:]:
            ap, ip = cols[piv]
            aj, ij = cols[j]
            x, y = ap[r], aj[r]
            if y % x == 0:
                q = y // x
                cols[j] = (
                    [aj[i] - q * ap[i] for i in range(m)],
                    [ij[i] - q * ip[i] for i in range(n)],
                )
            else:
                g, s, t = xgcd(x, y)
                xg, yg = x // g, y // g
                new_piv = (
                    [s * ap[i] + t * aj[i] for i in range(m)],
                    [s * ip[i] + t * ij[i] for i in range(n)],
                )
                new_j = (
                    [xg * aj[i] - yg * ap[i] for i in range(m)],
                    [xg * ij[i] - yg * ip[i] for i in range(n)],
                )
                cols[piv], cols[j] = new_piv, new_j
        active.remove(piv)
    return [cols[j][1] for j in sorted(active) if not any(cols[j][0])]


# ---------------------------------------------------------------------------
# sparse unit-pivot elimination
# ---------------------------------------------------------------------------


@dataclass
class Elimination:
    """Outcome of the unit-pivot strike pass."""

    pivots: int
    subs: List[Tuple[int, Row]]
    rows: Dict[int, Row]
    eliminated_cols: set
    u_rows: Optional[Dict[int, Row]] = None
    ginv_cols: Optional[Dict[int, Row]] = None


def unit_eliminate(
    rows: Dict[int, Row],
    *,
    record_subs: bool = False,
    track: bool = False,
    keep_zero_rows: bool = False,
    scale_rows: bool = False,
) -> Elimination:
    """Strike rows and columns at +-1 pivots, smallest rows first.

    `rows` is consumed.  With `record_subs`, each strike is logged as
    (col, expansion) meaning x_col = sum expansion[j] * x_j, enabling
    kernel back-substitution.  With `track`, row operations are mirrored
    on U (rows) and on the columns of U^-1, for quotient bookkeeping.
    With `scale_rows` (kernel computations only, where scaling a
    constraint row is harmless) rows are divided by their content, which
    re-exposes unit pivots in torsion-heavy systems.
    """
    col_rows: Dict[int, set] = {}
    for r, row in rows.items():
        for c in row:
            col_rows.setdefault(c, set()).add(r)
    u_rows = {r: {r: 1} for r in rows} if track else None
    ginv_cols = {r: {r: 1} for r in rows} if track else None

    heap = [(len(row), r) for r, row in rows.items() if row]
    heapq.heapify(heap)
    subs: List[Tuple[int, Row]] = []
    eliminated: set = set()
    pivots = 0
    zero_rows = []

    while heap:
        ln, r = heapq.heappop(heap)
        row = rows.get(r)
        if row is None or len(row) != ln:
            continue  # stale entry
        if not row:
            continue
        unit_cols = [c for c, val in row.items() if val in (1, -1)]
        if not unit_cols and scale_rows:
            g = 0
            for val in row.values():
                g = gcd(g, val)
                if g == 1:
                    break
            if g > 1:
                for c in row:
                    row[c] //= g
                unit_cols = [c for c, val in row.items() if val in (1, -1)]
        if not unit_cols:
            continue  # parked; re-enters the heap if a later update touches it
        c = min(unit_cols, key=lambda cc: (len(col_rows[cc]), cc))
        s = row[c]
        pivots += 1
        eliminated.add(c)
        del rows[r]
        if record_subs:
            subs.append((c, {j: -s * val for j, val in row.items() if j != c}))
        for j in row:
            if j != c:
                col_rows[j].discard(r)
        touched = col_rows.pop(c)
        touched.discard(r)
        for r2 in touched:
            row2 = rows[r2]
            b = row2.pop(c)
            mult = b * s
            if track:
                ur2, ur = u_rows[r2], u_rows[r]
                for j, val in ur.items():
                    nv = ur2.get(j, 0) - mult * val
                    if nv:
                        ur2[j] = nv
                    else:
                        ur2.pop(j, None)
                gr = ginv_cols[r]
                gr2 = ginv_cols[r2]
                for j, val in gr2.items():
                    nv = gr.get(j, 0) + mult * val
                    if nv:
                        gr[j] = nv
                    else:
                        gr.pop(j, None)
            for j, val in row.items():
                if j == c:
                    continue
                nv = row2.get(j, 0) - mult * val
                if nv:
                    if j not in row2:
                        col_rows.setdefault(j, set()).add(r2)
                    row2[j] = nv
                else:
                    row2.pop(j, None)
                    col_rows[j].discard(r2)
            if row2:
                heapq.heappush(heap, (len(row2), r2))
            elif not keep_zero_rows:
                del rows[r2]
            else:
                zero_rows.append(r2)
    return Elimination(pivots, subs, rows, eliminated, u_rows, ginv_cols)


def sparse_kernel_basis(rows: Iterable[Row], ncols: int) -> List[Row]:
    """Basis vectors (sparse) of {x in Z^ncols : M x = 0} for sparse row list M."""
    live = {i: dict(row) for i, row in enumerate(rows) if row}
    elim = unit_eliminate(live, record_subs=True, scale_rows=True)
    core_rows = [row for row in elim.rows.values() if row]
    core_cols = sorted({c for row in core_rows for c in row})
    col_pos = {c: i for i, c in enumerate(core_cols)}
    constrained = set(core_cols)

    vectors: List[Row] = []
    if core_rows:
        dense = [[0] * len(core_cols) for _ in core_rows]
        for i, row in enumerate(core_rows):
            for c, val in row.items():
                dense[i][col_pos[c]] = val
        for col in dense_kernel_basis(dense):
            vectors.append({core_cols[i]: val for i, val in enumerate(col) if val})
    # columns never constrained nor eliminated are free kernel directions
    for c in range(ncols):
        if c not in constrained and c not in elim.eliminated_cols:
            vectors.append({c: 1})
    # resolve struck coordinates for all vectors in one backward sweep:
    # val[col] is the sparse row of the kernel-basis matrix at that column,
    # indexed by vector number
    val: Dict[int, Dict[int, int]] = {}
    for s, vec in enumerate(vectors):
        for c, x in vec.items():
            val.setdefault(c, {})[s] = x
    for c, expansion in reversed(elim.subs):
        acc: Dict[int, int] = {}
        for j, coef in expansion.items():
            vj = val.get(j)
            if not vj:
                continue
            for s, v in vj.items():
                nv = acc.get(s, 0) + coef * v
                if nv:
                    acc[s] = nv
                else:
                    del acc[s]
        if acc:
            val[c] = acc
    out: List[Row] = [dict(vec) for vec in vectors]
    for c, _ in elim.subs:
        row = val.get(c)
        if row:
            for s, v in row.items():
                out[s][c] = v
    return out


# ---------------------------------------------------------------------------
# echelon lattices (integer HNF accumulator)
# ---------------------------------------------------------------------------


class EchelonLattice:
    """Sublattice of Z^n kept in row-echelon form with positive pivots.

    Columns whose pivot row is a singleton act as moduli: every other
    entry in that column is kept reduced against them, which is what stops
    coefficient explosion on the torsion-heavy lattices the cochain
    computations produce.
    """

    def __init__(self, ambient: int):
        self.ambient = ambient
        self.pivot_rows: Dict[int, Row] = {}  # pivot column -> row
        self._diag: Dict[int, int] = {}  # singleton pivots: column -> value

    def _reduce_mod_diag(self, v: Row) -> Row:
        out: Row = {}
        diag = self._diag
        for c, x in v.items():
            d = diag.get(c)
            if d is not None:
                x %= d
            if x:
                out[c] = x
        return out

    def _install(self, j: int, v: Row) -> None:
        row = {c: x for c, x in v.items() if x}
        if row[j] < 0:
            row = {c: -x for c, x in row.items()}
        self.pivot_rows[j] = row
        if len(row) == 1:
            self._diag[j] = row[j]
        else:
            self._diag.pop(j, None)

    def add(self, vec: Row) -> None:
        v = self._reduce_mod_diag(vec)
        if not v:
            return
        pending = list(v)
        heapq.heapify(pending)
        while pending:
            j = heapq.heappop(pending)
            b = v.get(j, 0)
            if not b:
                continue
            pivot = self.pivot_rows.get(j)
            if pivot is None:
                # j is minimal in the remaining support: install as new pivot
                self._install(j, v)
                return
            a = pivot[j]
            if b % a == 0:
                q = b // a
                diag = self._diag
                for c, val in pivot.items():
                    nv = v.get(c, 0) - q * val
                    if nv:
                        d = diag.get(c)
                        if d is not None and c != j:
                            nv %= d
                    if nv:
                        if not v.get(c):
                            heapq.heappush(pending, c)
                        v[c] = nv
                    else:
                        v.pop(c, None)
            else:
                g, x, y = xgcd(a, b)
                new_pivot = self._reduce_keep(j, _row_comb(pivot, x, v, y))
                v = _row_comb(v, a // g, pivot, -(b // g))
                self._install(j, new_pivot)
                v = self._reduce_mod_diag(v)
                pending = [c for c in v if c > j]
                heapq.heapify(pending)

    def _reduce_keep(self, keep: int, v: Row) -> Row:
        out: Row = {}
        diag = self._diag
        for c, x in v.items():
            if c != keep:
                d = diag.get(c)
                if d is not None:
                    x %= d
            if x:
                out[c] = x
        return out

    def rank(self) -> int:
        return len(self.pivot_rows)

    def basis_rows(self) -> List[Tuple[int, Row]]:
        return sorted(self.pivot_rows.items())

    def solve(self, vec: Row) -> Optional[Row]:
        """Coordinates of vec in the echelon basis (keyed by pivot column), or None."""
        v = {c: x for c, x in vec.items() if x}
        coords: Row = {}
        pending = list(v)
        heapq.heapify(pending)
        while pending:
            j = heapq.heappop(pending)
            b = v.get(j, 0)
            if not b:
                continue
            pivot = self.pivot_rows.get(j)
            if pivot is None:
                return None
            q, r = divmod(b, pivot[j])
            if r:
                return None
            coords[j] = q
            for c, val in pivot.items():
                nv = v.get(c, 0) - q * val
                if nv:
                    if c not in v or not v[c]:
                        heapq.heappush(pending, c)
                    v[c] = nv
                else:
                    v.pop(c, None)
        return coords

    def __contains__(self, vec: Row) -> bool:
        return self.solve(vec) is not None

    def combine(self, coords: Row) -> Row:
        """Inverse of solve: integer combination of basis rows."""
        out: Row = {}
        for j, coef in coords.items():
            if not coef:
                continue
            for c, val in self.pivot_rows[j].items():
                nv = out.get(c, 0) + coef * val
                if nv:
                    out[c] = nv
                else:
                    del out[c]
        return out


def _row_sub_inplace(v: Row, w: Row, q: int) -> None:
    if not q:
        return
    for c, val in w.items():
        nv = v.get(c, 0) - q * val
        if nv:
            v[c] = nv
        else:
            v.pop(c, None)


def _row_comb(v: Row, a: int, w: Row, b: int) -> Row:
    out: Row = {}
    for c, val in v.items():
        out[c] = a * val
    for c, val in w.items():
        nv = out.get(c, 0) + b * val
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return {c: x for c, x in out.items() if x}


def lattice_from_vectors(vectors: Iterable[Row], ambient: int) -> EchelonLattice:
    lat = EchelonLattice(ambient)
    for v in vectors:
        lat.add(v)
    return lat


# ---------------------------------------------------------------------------
# quotients of a lattice by a sublattice, with generators
# ---------------------------------------------------------------------------


@dataclass
class QuotientData:
    """Structure of basis-lattice / column-span, with generator bookkeeping.

    `components` lists (d, generator-coords) pairs where d == 0 marks a
    free factor and d > 1 a torsion factor; generator coordinates are in
    the ambient basis the quotient was presented in.  `coords_of` maps a
    vector in that basis to reduced coordinates along the components.
    """

    structure: AbelianStructure
    components: List[Tuple[int, Row]]
    _u_rows: Dict[int, Row] = field(repr=False, default_factory=dict)
    _order: List[Tuple[int, int]] = field(repr=False, default_factory=list)  # (d, row id)

    def coords_of(self, y: Row) -> Tuple[int, ...]:
        w: Dict[int, int] = {}
        for r, urow in self._u_rows.items():
            val = sum(coef * y.get(j, 0) for j, coef in urow.items())
            if val:
                w[r] = val
        out = []
        for d, r in self._order:
            val = w.get(r, 0)
            out.append(val % d if d else val)
        return tuple(out)

    def is_zero(self, y: Row) -> bool:
        return all(c == 0 for c in self.coords_of(y))


def quotient_structure(nrows: int, x_cols: List[Row]) -> QuotientData:
    """Structure of Z^nrows / (integer span of the given sparse columns)."""
    rows: Dict[int, Row] = {r: {} for r in range(nrows)}
    for j, col in enumerate(x_cols):
        for r, val in col.items():
            if val:
                rows[r][j] = val
    elim = unit_eliminate(rows, track=True, keep_zero_rows=True)
    u_rows = elim.u_rows
    ginv_cols = elim.ginv_cols

    # rows consumed as unit pivots split off trivial factors; the rest is core
    core_ids = sorted(r for r in range(nrows) if r in elim.rows)
    core_cols = sorted({c for r in core_ids for c in elim.rows.get(r, {})})
    col_pos = {c: i for i, c in enumerate(core_cols)}
    dense = [[0] * len(core_cols) for _ in core_ids]
    for i, r in enumerate(core_ids):
        for c, val in elim.rows.get(r, {}).items():
            dense[i][col_pos[c]] = val

    components: List[Tuple[int, Row]] = []
    order: List[Tuple[int, int]] = []
    if core_ids:
        if core_cols:
            form = smith_normal_form(dense)
            diag = form.diagonal + [0] * (len(core_ids) - len(form.diagonal))
        else:
            form = None
            diag = [0] * len(core_ids)
        for i, d in enumerate(diag):
            d = abs(d)
            if d == 1:
                continue
            # generator: (sparse Ginv) composed with dense Uinv restricted to core
            gen: Row = {}
            if form is not None:
                for j in range(len(core_ids)):
                    coef = form.u_inv[j][i]
                    if coef:
                        for c, val in ginv_cols[core_ids[j]].items():
                            nv = gen.get(c, 0) + coef * val
                            if nv:
                                gen[c] = nv
                            else:
                                del gen[c]
            else:
                gen = dict(ginv_cols[core_ids[i]])
            components.append((d, gen))
        # rewrite U rows for the reported components: dense u composed with sparse u
        new_u: Dict[int, Row] = {}
        for i, d in enumerate(diag):
            d = abs(d)
            if d == 1:
                continue
            urow: Row = {}
            if form is not None:
                for j in range(len(core_ids)):
                    coef = form.u[i][j]
                    if coef:
                        for cc, val in u_rows[core_ids[j]].items():
                            nv = urow.get(cc, 0) + coef * val
                            if nv:
                                urow[cc] = nv
                            else:
                                del urow[cc]
            else:
                urow = dict(u_rows[core_ids[i]])
            rid = ("core", i)
            new_u[rid] = urow
            order.append((d, rid))
    else:
        new_u = {}

    torsion = sorted(d for d, _ in components if d)
    free = sum(1 for d, _ in components if d == 0)
    # reorder: torsion ascending, then free components, matching structure order
    comp_sorted = sorted(
        zip(components, order),
        key=lambda t: (t[0][0] == 0, t[0][0]),
    )
    components = [c for c, _ in comp_sorted]
    order = [o for _, o in comp_sorted]
    return QuotientData(
        AbelianStructure(tuple(d for d in torsion if d > 1), free),
        components,
        new_u,
        order,
    )
