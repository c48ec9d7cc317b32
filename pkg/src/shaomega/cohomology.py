"""Group cohomology H^i(G, M) for i <= 3 via the inhomogeneous bar resolution.

Cochains in degree i are functions G^i -> M, stored as integer vectors of
length |G|^i * num_gens(M).  Torsion coefficients are handled by lifting to
the free cover: cocycle and coboundary conditions are imposed modulo the
relation lattice by augmenting the differential matrices with relation
columns, so every kernel and quotient stays an exact integer-matrix
problem.  Cyclic groups get the Tate fast path with an explicit
chain-level comparison map from bar cocycles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    ComplexityLimitExceeded,
    ContextMismatch,
    InternalInconsistency,
    NotCyclic,
    UnsupportedShape,
)
from .groups import FiniteGroup, Subgroup, generator_of_cyclic, subgroup_as_group
from .intlinalg import (
    AbelianStructure,
    EchelonLattice,
    QuotientData,
    Row,
    TRIVIAL_STRUCTURE,
    cyclic_structure,
    lattice_from_vectors,
    mat_mul,
    merge_structures,
    quotient_structure,
    sparse_kernel_basis,
)
from .modules import GModule, ModuleMap, PData, pdata, restrict_action, tensor_with_factor_module

DEFAULT_BUDGET = 10 ** 6


# ---------------------------------------------------------------------------
# tuple bookkeeping
# ---------------------------------------------------------------------------


def flatten(tup: Sequence[int], n: int) -> int:
    x = 0
    for v in tup:
        x = x * n + v
    return x


def unflatten(x: int, n: int, length: int) -> Tuple[int, ...]:
    out = []
    for _ in range(length):
        x, r = divmod(x, n)
        out.append(r)
    return tuple(reversed(out))


def cochain_dim(group: FiniteGroup, module: GModule, degree: int) -> int:
    return group.order ** degree * module.num_gens


def bar_differential(group: FiniteGroup, module: GModule, degree: int) -> List[Row]:
    """Sparse rows of d_degree : C^degree -> C^(degree+1)."""
    n = group.order
    k = module.num_gens
    i = degree
    rows: List[Row] = []
    last_sign = -1 if (i + 1) % 2 else 1
    for tidx in range(n ** (i + 1)):
        tup = unflatten(tidx, n, i + 1)
        act = module.actions[tup[0]]
        rest_base = flatten(tup[1:], n) * k
        merged = []
        for j in range(1, i + 1):
            m = tup[: j - 1] + (group.table[tup[j - 1]][tup[j]],) + tup[j + 1 :]
            merged.append((flatten(m, n) * k, -1 if j % 2 else 1))
        last_base = flatten(tup[:-1], n) * k
        for a in range(k):
            row: Row = {}
            arow = act[a]
            for b in range(k):
                if arow[b]:
                    row[rest_base + b] = arow[b]
            for base, sign in merged:
                c = base + a
                nv = row.get(c, 0) + sign
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            c = last_base + a
            nv = row.get(c, 0) + last_sign
            if nv:
                row[c] = nv
            else:
                row.pop(c, None)
            rows.append(row)
    return rows


def _augment_with_relations(rows: List[Row], module: GModule, tuples: int, ncols_main: int) -> int:
    """Add relation-lattice columns for the target cochain group; return column count."""
    rels = module.relations
    if not rels:
        return ncols_main
    k = module.num_gens
    r = len(rels)
    for tidx in range(tuples):
        for ridx, rel in enumerate(rels):
            col = ncols_main + tidx * r + ridx
            for a, val in enumerate(rel):
                if val:
                    rows[tidx * k + a][col] = val
    return ncols_main + tuples * r


def _relation_columns(module: GModule, tuples: int) -> List[Row]:
    cols: List[Row] = []
    k = module.num_gens
    for tidx in range(tuples):
        for rel in module.relations:
            cols.append({tidx * k + a: val for a, val in enumerate(rel) if val})
    return cols


# ---------------------------------------------------------------------------
# cohomology groups
# ---------------------------------------------------------------------------


@dataclass
class CohomologyGroup:
    """H^degree(group, module) with representative cocycles and coordinates."""

    group: FiniteGroup
    module: GModule
    degree: int
    structure: AbelianStructure
    reps: List[List[int]]
    _lattice: EchelonLattice = field(repr=False, default=None)
    _pivot_index: Dict[int, int] = field(repr=False, default_factory=dict)
    _quotient: QuotientData = field(repr=False, default=None)

    def class_coords(self, cocycle: Sequence[int]) -> Tuple[int, ...]:
        """Coordinates of a cocycle's class along the reported components."""
        vec = {i: x for i, x in enumerate(cocycle) if x}
        y = self._lattice.solve(vec)
        if y is None:
            raise ContextMismatch("vector is not a cocycle for this context")
        return self._quotient.coords_of({self._pivot_index[c]: v for c, v in y.items()})

    def is_coboundary(self, cocycle: Sequence[int]) -> bool:
        return all(x == 0 for x in self.class_coords(cocycle))

    @property
    def invariants(self) -> Tuple[int, ...]:
        return self.structure.torsion

    def combination(self, coeffs: Sequence[int]) -> List[int]:
        """Integer combination of the representative cocycles."""
        n = cochain_dim(self.group, self.module, self.degree)
        out = [0] * n
        for coef, rep in zip(coeffs, self.reps):
            if coef:
                for i, x in enumerate(rep):
                    if x:
                        out[i] += coef * x
        return out


def _quotient_from_lattices(lat: EchelonLattice, b_cols: List[Row]):
    basis = lat.basis_rows()
    pivot_index = {pc: i for i, (pc, _) in enumerate(basis)}
    pivot_cols = [pc for pc, _ in basis]
    x_cols = []
    for col in b_cols:
        y = lat.solve(col)
        if y is None:
            raise InternalInconsistency("boundary escapes the cocycle lattice")
        x_cols.append({pivot_index[c]: v for c, v in y.items()})
    quot = quotient_structure(len(basis), x_cols)
    return quot, pivot_index, pivot_cols


def _dense_generator(lat: EchelonLattice, pivot_cols: List[int], gen: Row, dim: int) -> List[int]:
    dense = [0] * dim
    for c, v in lat.combine({pivot_cols[i]: x for i, x in gen.items()}).items():
        dense[c] = v
    return dense


def cohomology(
    group: FiniteGroup,
    module: GModule,
    degree: int,
    budget: int = DEFAULT_BUDGET,
) -> CohomologyGroup:
    """Bar-resolution H^degree(group, module) for degree <= 3."""
    if module.group is not group:
        raise ContextMismatch("module lives over a different group")
    if not 0 <= degree <= 3:
        raise UnsupportedShape("degrees 0..3 only")
    n = group.order
    k = module.num_gens
    required = n ** (degree + 1) * k
    if required > budget:
        raise ComplexityLimitExceeded(
            f"H^{degree}({group.label}, {module.label}) needs {required} cochain "
            f"entries, budget is {budget}",
            required=required,
            limit=budget,
        )
    if k == 0:
        return CohomologyGroup(group, module, degree, TRIVIAL_STRUCTURE, [],
                               EchelonLattice(0), {}, quotient_structure(0, []))

    dim_i = n ** degree * k
    rows = bar_differential(group, module, degree)
    ncols = _augment_with_relations(rows, module, n ** (degree + 1), dim_i)
    kernel = sparse_kernel_basis(rows, ncols)
    # relation vectors of C^degree are cocycles; seeding them first keeps the
    # echelon reduction of the remaining (denser) kernel vectors cheap
    lat = EchelonLattice(dim_i)
    relation_cols = _relation_columns(module, n ** degree)
    for col in relation_cols:
        lat.add(col)
    for vec in kernel:
        main = {c: v for c, v in vec.items() if c < dim_i}
        if main:
            lat.add(main)

    b_cols: List[Row] = []
    if degree >= 1:
        prev_rows = bar_differential(group, module, degree - 1)
        cols: Dict[int, Row] = {}
        for r, row in enumerate(prev_rows):
            for c, v in row.items():
                cols.setdefault(c, {})[r] = v
        dim_prev = n ** (degree - 1) * k
        b_cols.extend(cols.get(c, {}) for c in range(dim_prev))
    b_cols.extend(relation_cols)

    quot, pivot_index, pivot_cols = _quotient_from_lattices(lat, b_cols)
    if degree >= 1 and quot.structure.free_rank:
        raise InternalInconsistency(
            f"H^{degree} came out infinite; the complex is corrupt")

    reps = [_dense_generator(lat, pivot_cols, gen, dim_i) for _, gen in quot.components]
    return CohomologyGroup(group, module, degree, quot.structure, reps, lat, pivot_index, quot)


# ---------------------------------------------------------------------------
# cyclic groups: Tate presentation and the bar comparison
# ---------------------------------------------------------------------------


@dataclass
class TateGroup:
    """H^degree of a cyclic group in the periodic presentation.

    Classes are represented by module elements: fixed vectors modulo norms
    in even positive degree, norm-kernel vectors modulo (sigma - 1)-images
    in odd degree.
    """

    order: int
    sigma: int
    module: GModule
    degree: int
    structure: AbelianStructure
    reps: List[List[int]]
    _lattice: EchelonLattice = field(repr=False, default=None)
    _pivot_index: Dict[int, int] = field(repr=False, default_factory=dict)
    _quotient: QuotientData = field(repr=False, default=None)

    def class_coords(self, element: Sequence[int]) -> Tuple[int, ...]:
        vec = {i: x for i, x in enumerate(element) if x}
        y = self._lattice.solve(vec)
        if y is None:
            raise ContextMismatch("element does not satisfy the cocycle condition")
        return self._quotient.coords_of({self._pivot_index[c]: v for c, v in y.items()})

    @property
    def invariants(self) -> Tuple[int, ...]:
        return self.structure.torsion


def _tate_from_action(action, order: int, module: GModule, degree: int, sigma: int) -> TateGroup:
    k = module.num_gens
    ident = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    power = ident
    norm = [[0] * k for _ in range(k)]
    for _ in range(order):
        for i in range(k):
            for j in range(k):
                norm[i][j] += power[i][j]
        power = mat_mul(action, power)
    a_minus = [[action[i][j] - ident[i][j] for j in range(k)] for i in range(k)]

    if degree in (0, 2):
        cond, image = a_minus, norm
    elif degree == 1:
        cond, image = norm, a_minus
    else:
        raise UnsupportedShape("tate degrees 0..2 only")

    rows = [{j: v for j, v in enumerate(r) if v} for r in cond]
    rels = module.relations
    ncols = k
    if rels:
        for ridx, rel in enumerate(rels):
            col = k + ridx
            for a, val in enumerate(rel):
                if val:
                    rows[a][col] = val
        ncols += len(rels)
    kernel = sparse_kernel_basis(rows, ncols)
    lat = lattice_from_vectors(
        ({c: v for c, v in vec.items() if c < k} for vec in kernel), k
    )
    b_cols: List[Row] = []
    if degree != 0:
        for j in range(k):
            col = {i: image[i][j] for i in range(k) if image[i][j]}
            b_cols.append(col)
    for rel in rels:
        b_cols.append({a: v for a, v in enumerate(rel) if v})
    quot, pivot_index, pivot_cols = _quotient_from_lattices(lat, b_cols)
    reps = [_dense_generator(lat, pivot_cols, gen, k) for _, gen in quot.components]
    return TateGroup(order, sigma, module, degree, quot.structure, reps, lat, pivot_index, quot)


def cyclic_tate(group: FiniteGroup, module: GModule, degree: int) -> TateGroup:
    """Periodic-resolution H^degree for a cyclic group, degree 0..2."""
    if module.group is not group:
        raise ContextMismatch("module lives over a different group")
    n = group.order
    sigma = None
    for g in group.elements():
        if group.element_order(g) == n:
            sigma = g
            break
    if sigma is None:
        raise NotCyclic(f"group {group.label} of order {n} is not cyclic")
    return _tate_from_action(module.actions[sigma], n, module, degree, sigma)


def tate_for_subgroup(group: FiniteGroup, sub: Subgroup, module: GModule, degree: int) -> TateGroup:
    """Tate presentation for a cyclic subgroup of `group`, without reindexing."""
    sigma = generator_of_cyclic(group, sub)
    return _tate_from_action(module.actions[sigma], sub.order, module, degree, sigma)


def restrict_cocycle_to_cyclic(
    group: FiniteGroup,
    module: GModule,
    degree: int,
    cocycle: Sequence[int],
    sigma: int,
    order: int,
) -> List[int]:
    """Chain-level comparison: bar cocycle -> periodic-resolution representative.

    Degree 1 reads off f(sigma); degree 2 takes sum over j of
    f(sigma^j, sigma), landing in the fixed-modulo-norm presentation.
    """
    n = group.order
    k = module.num_gens
    if degree == 1:
        base = flatten((sigma,), n) * k
        return [cocycle[base + a] for a in range(k)]
    if degree == 2:
        out = [0] * k
        x = group.identity
        for _ in range(order):
            base = flatten((x, sigma), n) * k
            for a in range(k):
                out[a] += cocycle[base + a]
            x = group.table[x][sigma]
        return out
    raise UnsupportedShape("comparison maps exist in degrees 1 and 2")


# ---------------------------------------------------------------------------
# restriction and induced maps
# ---------------------------------------------------------------------------


@dataclass
class MappedClasses:
    """Images of cohomology classes under a map, with their target group."""

    target: object  # CohomologyGroup or TateGroup
    coords: List[Tuple[int, ...]]

    def all_zero(self) -> bool:
        return all(all(c == 0 for c in tup) for tup in self.coords)


def restriction(
    group: FiniteGroup,
    sub: Subgroup,
    module: GModule,
    degree: int,
    classes: CohomologyGroup,
    budget: int = DEFAULT_BUDGET,
    force_bar: bool = False,
) -> MappedClasses:
    """Restrict classes of H^degree(group, module) to a subgroup."""
    if classes.group is not group or classes.module is not module:
        raise ContextMismatch("classes computed in a different context")
    if sub.parent is not group:
        raise ContextMismatch("subgroup of a different group")
    n = group.order
    k = module.num_gens
    sigma = None
    if not force_bar and degree in (1, 2) and sub.order > 1:
        try:
            sigma = generator_of_cyclic(group, sub)
        except NotCyclic:
            sigma = None
    if sigma is not None:
        target = _tate_from_action(module.actions[sigma], sub.order, module, degree, sigma)
        coords = [
            target.class_coords(
                restrict_cocycle_to_cyclic(group, module, degree, rep, sigma, sub.order)
            )
            for rep in classes.reps
        ]
        return MappedClasses(target, coords)

    rmod, elems = restrict_action(module, sub)
    target = cohomology(rmod.group, rmod, degree, budget=budget)
    m = sub.order
    coords = []
    for rep in classes.reps:
        vec = [0] * (m ** degree * k)
        for tidx in range(m ** degree):
            tup = unflatten(tidx, m, degree)
            parent = flatten(tuple(elems[t] for t in tup), n)
            for a in range(k):
                vec[tidx * k + a] = rep[parent * k + a]
        coords.append(target.class_coords(vec))
    return MappedClasses(target, coords)


def induced_map(
    f: ModuleMap,
    degree: int,
    classes: CohomologyGroup,
    budget: int = DEFAULT_BUDGET,
    target: Optional[CohomologyGroup] = None,
) -> MappedClasses:
    """Push classes through an equivariant module map."""
    if classes.module is not f.source:
        raise ContextMismatch("classes are not over the map's source module")
    group = f.source.group
    if target is None:
        target = cohomology(group, f.target, degree, budget=budget)
    k1, k2 = f.source.num_gens, f.target.num_gens
    n = group.order
    coords = []
    for rep in classes.reps:
        vec = [0] * (n ** degree * k2)
        for tidx in range(n ** degree):
            block = rep[tidx * k1 : (tidx + 1) * k1]
            if any(block):
                img = f.apply(block)
                for a, v in enumerate(img):
                    if v:
                        vec[tidx * k2 + a] = v
        coords.append(target.class_coords(vec))
    return MappedClasses(target, coords)


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------


def shapiro_check(
    group: FiniteGroup,
    sub: Subgroup,
    module: GModule,
    degree: int,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """H^i(G, M (x) Z[G/H]) vs H^i(H, M): equal abstract structures."""
    if degree > 2:
        raise UnsupportedShape("shapiro check supports degrees 0..2")
    induced = tensor_with_factor_module(module, pdata([(sub, 1)]))
    lhs = cohomology(group, induced, degree, budget=budget)
    rmod, _ = restrict_action(module, sub)
    rhs = cohomology(rmod.group, rmod, degree, budget=budget)
    return lhs.structure == rhs.structure


def kunneth_oracle(n1: int, n2: int, degree: int, coeff: int = 0) -> AbelianStructure:
    """Closed-form H^degree(Z/n1 x Z/n2, coeff) for degree 2 or 3.

    `coeff` 0 means integer coefficients; a prime p means Z/p with trivial
    action.  Integer case: H^2 is the character group, H^3 is cyclic of
    order gcd(n1, n2).  Prime-field case: dimensions add up along the
    graded tensor product, one dimension per degree for each factor whose
    order the prime divides.
    """
    if n1 < 1 or n2 < 1:
        raise UnsupportedShape("factor orders must be positive")
    if degree not in (2, 3):
        raise UnsupportedShape("oracle covers degrees 2 and 3")
    if coeff == 0:
        if degree == 2:
            return merge_structures([cyclic_structure(n1), cyclic_structure(n2)])
        return cyclic_structure(gcd(n1, n2))
    p = coeff
    if p < 2 or any(p % q == 0 for q in range(2, p) if q * q <= p):
        raise UnsupportedShape("coefficient must be 0 (integers) or a prime")

    def dims(order):
        return lambda i: 1 if i == 0 else (1 if order % p == 0 else 0)

    d1, d2 = dims(n1), dims(n2)
    total = sum(d1(i) * d2(degree - i) for i in range(degree + 1))
    return merge_structures([cyclic_structure(p)] * total) if total else TRIVIAL_STRUCTURE
