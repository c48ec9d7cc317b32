"""Finitely generated abelian groups with a finite group action.

A module is a presentation: k generators, integer relation rows, and one
k x k integer action matrix per group element acting on column vectors.
Lattices (no relations) and finite coefficient modules share this one
representation, so the permutation modules, the norm-one character
lattice, its multinorm variant, and Z/d coefficients all go down the same
code path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ValidationError
from .groups import (
    CosetAction,
    FiniteGroup,
    Subgroup,
    coset_action,
    subgroup_as_group,
)
from .intlinalg import (
    EchelonLattice,
    lattice_from_vectors,
    mat_mul,
    mat_vec,
    smith_normal_form,
)

Matrix = List[List[int]]


@dataclass
class GModule:
    """Module presentation with one action matrix per group element."""

    group: FiniteGroup
    num_gens: int
    relations: List[List[int]]
    actions: List[Matrix]
    label: str = "M"

    def __post_init__(self):
        if len(self.actions) != self.group.order:
            raise ValidationError("need one action matrix per group element")
        k = self.num_gens
        for a in self.actions:
            if len(a) != k or any(len(row) != k for row in a):
                raise ValidationError("action matrix has wrong shape")
        for row in self.relations:
            if len(row) != k:
                raise ValidationError("relation row has wrong length")
        ident = self.actions[self.group.identity]
        if ident != [[1 if i == j else 0 for j in range(k)] for i in range(k)]:
            raise ValidationError("identity must act as the identity matrix")
        self._relation_lattice: Optional[EchelonLattice] = None

    @property
    def is_lattice(self) -> bool:
        return not self.relations

    def relation_lattice(self) -> EchelonLattice:
        if self._relation_lattice is None:
            self._relation_lattice = lattice_from_vectors(
                ({j: x for j, x in enumerate(row) if x} for row in self.relations),
                self.num_gens,
            )
        return self._relation_lattice

    def act(self, g: int, vec: Sequence[int]) -> List[int]:
        return mat_vec(self.actions[g], vec)

    def action_is_homomorphism(self, pairs=None) -> bool:
        """Check action(gh) == action(g)action(h), modulo relations if any."""
        group = self.group
        if pairs is None:
            pairs = [(g, h) for g in group.elements() for h in group.elements()]
        lat = self.relation_lattice()
        for g, h in pairs:
            lhs = self.actions[group.mul(g, h)]
            rhs = mat_mul(self.actions[g], self.actions[h])
            if lhs == rhs:
                continue
            if self.is_lattice:
                return False
            for col in range(self.num_gens):
                diff = {
                    i: lhs[i][col] - rhs[i][col]
                    for i in range(self.num_gens)
                    if lhs[i][col] != rhs[i][col]
                }
                if diff and diff not in lat:
                    return False
        return True

    def preserves_relations(self) -> bool:
        lat = self.relation_lattice()
        for g in self.group.elements():
            for row in self.relations:
                image = mat_vec(self.actions[g], row)
                if {i: x for i, x in enumerate(image) if x} not in lat:
                    return False
        return True

    def __repr__(self):
        return f"GModule({self.label}, gens={self.num_gens}, rels={len(self.relations)})"


@dataclass
class ModuleMap:
    """Equivariant map between modules over the same group, given on generators."""

    source: GModule
    target: GModule
    matrix: Matrix  # target.num_gens x source.num_gens

    def __post_init__(self):
        if self.source.group is not self.target.group:
            raise ValidationError("module map across different groups")
        if len(self.matrix) != self.target.num_gens or any(
            len(row) != self.source.num_gens for row in self.matrix
        ):
            raise ValidationError("map matrix has wrong shape")

    def apply(self, vec: Sequence[int]) -> List[int]:
        return mat_vec(self.matrix, vec)

    def is_equivariant(self) -> bool:
        for g in self.source.group.elements():
            lhs = mat_mul(self.matrix, self.source.actions[g])
            rhs = mat_mul(self.target.actions[g], self.matrix)
            if lhs != rhs:
                # allow slack modulo the target relation lattice
                if self.target.is_lattice:
                    return False
                lat = self.target.relation_lattice()
                k = self.target.num_gens
                for col in range(self.source.num_gens):
                    diff = {i: lhs[i][col] - rhs[i][col] for i in range(k) if lhs[i][col] != rhs[i][col]}
                    if diff and diff not in lat:
                        return False
        return True

    def maps_relations(self) -> bool:
        lat = self.target.relation_lattice()
        for row in self.source.relations:
            image = self.apply(row)
            if {i: x for i, x in enumerate(image) if x} not in lat:
                return False
        return True


@dataclass(frozen=True)
class PData:
    """Factorization shape of the right-hand polynomial: subgroups with multiplicities."""

    factors: Tuple[Tuple[Subgroup, int], ...]

    def __post_init__(self):
        if not self.factors:
            raise ValidationError("factor list must be nonempty")
        parents = {sub.parent for sub, _ in self.factors}
        if len(parents) != 1:
            raise ValidationError("factors must share one parent group")
        if any(e < 1 for _, e in self.factors):
            raise ValidationError("multiplicities must be >= 1")

    @property
    def group(self) -> FiniteGroup:
        return self.factors[0][0].parent


def pdata(factors) -> PData:
    return PData(tuple((sub, int(e)) for sub, e in factors))


# ---------------------------------------------------------------------------
# basic constructions
# ---------------------------------------------------------------------------


def _identity(k: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def permutation_module(group: FiniteGroup, sub: Subgroup) -> GModule:
    """Free module on the left cosets of `sub` with the translation action."""
    act = coset_action(group, sub)
    k = act.degree
    actions = []
    for g in group.elements():
        m = [[0] * k for _ in range(k)]
        for c in range(k):
            m[act.act(g, c)][c] = 1
        actions.append(m)
    return GModule(group, k, [], actions, label=f"Z[{group.label}/H{sub.order}]")


def norm_element(group: FiniteGroup, sub: Subgroup) -> List[int]:
    """Sum of all cosets inside permutation_module(group, sub)."""
    return [1] * (group.order // sub.order)


def trivial_module(group: FiniteGroup, order: int = 0) -> GModule:
    """Z (order 0) or Z/order with trivial action."""
    if order < 0:
        raise ValidationError("order must be >= 0")
    rels = [[order]] if order > 0 else []
    label = "Z" if order == 0 else f"Z/{order}"
    return GModule(group, 1, rels, [_identity(1) for _ in group.elements()], label=label)


def norm_one_lattice(group: FiniteGroup, h_k: Subgroup) -> GModule:
    """Character lattice of the norm-one torus: Z[G/H_K] modulo the norm vector.

    Realized as a lattice of rank [G:H_K] - 1 by dropping the identity-coset
    coordinate; the norm vector is fixed by the action, which keeps the
    quotient action matrices exact.
    """
    act = coset_action(group, h_k)
    d = act.degree
    drop = act.coset_of[group.identity]
    keep = [c for c in range(d) if c != drop]
    pos = {c: i for i, c in enumerate(keep)}
    k = d - 1
    actions = []
    for g in group.elements():
        m = [[0] * k for _ in range(k)]
        for i, c in enumerate(keep):
            image = act.act(g, c)
            if image == drop:
                for r in range(k):
                    m[r][i] = -1
            else:
                m[pos[image]][i] = 1
        actions.append(m)
    return GModule(group, k, [], actions, label=f"T^({group.label}/H{h_k.order})")


def multinorm_lattice(group: FiniteGroup, h_k: Subgroup, p: PData) -> GModule:
    """Character lattice of the multinorm-one torus attached to (h_k, factors).

    Quotient of (sum of factor permutation modules) + Z[G/H_K] by the single
    weighted norm vector; the K-block identity-coset coordinate (weight 1)
    is dropped.
    """
    factor_acts = [coset_action(group, sub) for sub, _ in p.factors]
    k_act = coset_action(group, h_k)
    sizes = [a.degree for a in factor_acts] + [k_act.degree]
    offsets = []
    total = 0
    for s in sizes:
        offsets.append(total)
        total += s
    k_offset = offsets[-1]
    drop = k_offset + k_act.coset_of[group.identity]
    weights = [0] * total
    for (sub, e), a, off in zip(p.factors, factor_acts, offsets):
        for c in range(a.degree):
            weights[off + c] = e
    for c in range(k_act.degree):
        weights[k_offset + c] = 1

    keep = [c for c in range(total) if c != drop]
    pos = {c: i for i, c in enumerate(keep)}
    k = total - 1

    def big_image(g, coord):
        for a, off in zip(factor_acts, offsets):
            if off <= coord < off + a.degree:
                return off + a.act(g, coord - off)
        return k_offset + k_act.act(g, coord - k_offset)

    actions = []
    for g in group.elements():
        m = [[0] * k for _ in range(k)]
        for i, c in enumerate(keep):
            image = big_image(g, c)
            if image == drop:
                # subtract the weighted norm vector from the unit there
                for r, cc in enumerate(keep):
                    m[r][i] = -weights[cc]
            else:
                m[pos[image]][i] = 1
        actions.append(m)
    return GModule(group, k, [], actions, label="T'^")


def tensor_with_factor_module(m: GModule, p: PData) -> GModule:
    """m tensored with the direct sum of the factor permutation modules."""
    if p.group is not m.group:
        raise ValidationError("factor data over a different group")
    group = m.group
    k = m.num_gens
    facts = [coset_action(group, sub) for sub, _ in p.factors]
    sizes = [a.degree for a in facts]
    offsets = []
    total = 0
    for s in sizes:
        offsets.append(total)
        total += s
    big_k = k * total

    relations = []
    for row in m.relations:
        for off, a in zip(offsets, facts):
            for c in range(a.degree):
                new = [0] * big_k
                base = (off + c) * k
                for j, x in enumerate(row):
                    new[base + j] = x
                relations.append(new)

    actions = []
    for g in group.elements():
        am = m.actions[g]
        big = [[0] * big_k for _ in range(big_k)]
        for off, a in zip(offsets, facts):
            for c in range(a.degree):
                c2 = a.act(g, c)
                rbase, cbase = (off + c2) * k, (off + c) * k
                for i in range(k):
                    row = big[rbase + i]
                    arow = am[i]
                    for j in range(k):
                        if arow[j]:
                            row[cbase + j] = arow[j]
        actions.append(big)
    return GModule(group, big_k, relations, actions, label=f"{m.label} (x) Z_P")


def factor_norm_map(m: GModule, p: PData) -> ModuleMap:
    """The map x -> x tensor -(sum of e_i * factor norms), into the tensor module."""
    target = tensor_with_factor_module(m, p)
    k = m.num_gens
    facts = [coset_action(p.group, sub) for sub, _ in p.factors]
    matrix = [[0] * k for _ in range(target.num_gens)]
    pos = 0
    for (sub, e), a in zip(p.factors, facts):
        for c in range(a.degree):
            for j in range(k):
                matrix[pos * k + j][j] = -e
            pos += 1
    return ModuleMap(m, target, matrix)


def restrict_action(m: GModule, sub: Subgroup) -> Tuple[GModule, List[int]]:
    """Same presentation over the subgroup reindexed as a standalone group.

    Returns the restricted module and the element map (standalone index ->
    parent element index).
    """
    if sub.parent is not m.group:
        raise ValidationError("subgroup of a different group")
    sg, elems = subgroup_as_group(m.group, sub)
    actions = [m.actions[x] for x in elems]
    return (
        GModule(sg, m.num_gens, [list(r) for r in m.relations], actions,
                label=f"{m.label}|H{sub.order}"),
        elems,
    )


def quotient_by_element(m: GModule, vec: Sequence[int]) -> GModule:
    """Quotient of m by one element, presentation renormalized to minimal size."""
    rels = [list(r) for r in m.relations] + [list(vec)]
    return normalize_presentation(
        GModule(m.group, m.num_gens, rels, m.actions, label=f"{m.label}/v")
    )


def normalize_presentation(m: GModule) -> GModule:
    """Re-coordinate so relations become diagonal; drop unit-factor generators."""
    if not m.relations:
        return m
    k = m.num_gens
    rel_t = [[m.relations[j][i] for j in range(len(m.relations))] for i in range(k)]
    form = smith_normal_form(rel_t)
    # coordinates y = U x; relation lattice becomes diag(d_i)
    u, u_inv = form.u, form.u_inv
    diag = form.diagonal + [0] * (k - len(form.diagonal))
    keep = [i for i in range(k) if abs(diag[i]) != 1]
    if not keep:
        return GModule(m.group, 0, [], [[] for _ in m.group.elements()],
                       label=f"{m.label} (zero)")
    actions = []
    for g in m.group.elements():
        conj = mat_mul(mat_mul(u, m.actions[g]), u_inv)
        actions.append([[conj[i][j] for j in keep] for i in keep])
    relations = []
    for idx, i in enumerate(keep):
        if diag[i]:
            row = [0] * len(keep)
            row[idx] = abs(diag[i])
            relations.append(row)
    return GModule(m.group, len(keep), relations, actions, label=m.label)
