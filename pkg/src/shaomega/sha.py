"""Common restriction kernels over cyclic subgroups and the two ends of (bs).

sha_omega picks out the classes of H^i(G, M) that die on every cyclic
subgroup, computed on conjugacy-class representatives (conjugation
invariance of the kernels is a tested property, not an assumption).
sha_omega_p intersects further with the kernel of the map induced by the
weighted factor-norm embedding, and h1_defect is the cokernel of that
map one degree down.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .cohomology import (
    CohomologyGroup,
    DEFAULT_BUDGET,
    cohomology,
    induced_map,
    restrict_cocycle_to_cyclic,
    restriction,
    tate_for_subgroup,
)
from .errors import InternalInconsistency, ValidationError
from .groups import FiniteGroup, Subgroup, cyclic_subgroup_reps, generator_of_cyclic
from .intlinalg import (
    AbelianStructure,
    TRIVIAL_STRUCTURE,
    abelian_invariants,
    dense_kernel_basis,
    lattice_from_vectors,
    quotient_structure,
)
from .modules import GModule, PData, factor_norm_map, norm_one_lattice


@dataclass
class ShaGroup:
    """A subgroup of H^degree(G, M) cut out by vanishing conditions."""

    group: FiniteGroup
    module: GModule
    degree: int
    structure: AbelianStructure
    reps: List[List[int]]
    ambient: Optional[CohomologyGroup]
    coords_in_ambient: List[Tuple[int, ...]]
    note: str = ""

    @property
    def is_trivial(self) -> bool:
        return self.structure.is_trivial

    def order(self) -> int:
        return self.structure.order()


def hom_kernel(
    source_invariants: Sequence[int],
    phi_columns: List[Tuple[int, ...]],
    target_invariants: Sequence[int],
) -> Tuple[AbelianStructure, List[List[int]]]:
    """Kernel of a map of finite abelian groups given on generators.

    `phi_columns[j]` is the image of the j-th source generator in target
    coordinates.  Returns the kernel's structure and its generators as
    integer coefficient vectors over the source generators.
    """
    s = len(source_invariants)
    t = len(target_invariants)
    if any(d < 2 for d in source_invariants) or any(e < 2 for e in target_invariants):
        raise ValidationError("invariants must all exceed 1")
    if len(phi_columns) != s or any(len(col) != t for col in phi_columns):
        raise ValidationError("column shape mismatch")
    if s == 0:
        return TRIVIAL_STRUCTURE, []
    if t == 0:
        kernel_vectors = [{j: 1} for j in range(s)]
    else:
        rows = [
            [phi_columns[j][i] for j in range(s)]
            + [target_invariants[i] if i == ii else 0 for ii in range(t)]
            for i in range(t)
        ]
        kernel_vectors = [
            {j: x for j, x in enumerate(col[:s]) if x}
            for col in dense_kernel_basis(rows)
        ]
        kernel_vectors = [v for v in kernel_vectors if v]
    lat = lattice_from_vectors(kernel_vectors, s)
    for j, d in enumerate(source_invariants):
        if lat.solve({j: d}) is None:
            raise InternalInconsistency("kernel lattice misses a source relation")
    basis = lat.basis_rows()
    pivot_index = {pc: i for i, (pc, _) in enumerate(basis)}
    pivot_cols = [pc for pc, _ in basis]
    x_cols = []
    for j, d in enumerate(source_invariants):
        y = lat.solve({j: d})
        x_cols.append({pivot_index[c]: v for c, v in y.items()})
    quot = quotient_structure(len(basis), x_cols)
    if quot.structure.free_rank:
        raise InternalInconsistency("kernel of a finite-group map came out infinite")
    gens = []
    for d, gen in quot.components:
        vec = [0] * s
        for c, v in lat.combine({pivot_cols[i]: x for i, x in gen.items()}).items():
            vec[c] = v
        gens.append(vec)
    return quot.structure, gens


def _subgroup_from_kernel(
    ambient: CohomologyGroup,
    structure: AbelianStructure,
    gen_coeffs: List[List[int]],
    note: str = "",
) -> ShaGroup:
    reps = [ambient.combination(coeffs) for coeffs in gen_coeffs]
    coords = [tuple(c) for c in gen_coeffs]
    return ShaGroup(
        ambient.group,
        ambient.module,
        ambient.degree,
        structure,
        reps,
        ambient,
        coords,
        note,
    )


FINITE_LEVEL_NOTE = (
    "computed at the finite splitting level; for torsion-free lattices this "
    "agrees with the absolute-level group"
)


def sha_omega(
    group: FiniteGroup,
    module: GModule,
    degree: int,
    budget: int = DEFAULT_BUDGET,
    method: str = "tate",
) -> ShaGroup:
    """Classes of H^degree(G, M) restricting to zero on every cyclic subgroup.

    `method` "tate" routes restrictions through the periodic-resolution
    comparison map; "bar" recomputes each cyclic subgroup's cohomology on
    its own bar complex.  Both must agree; the acceptance suite checks it.
    """
    if degree not in (1, 2):
        raise ValidationError("sha is computed in degrees 1 and 2")
    ambient = cohomology(group, module, degree, budget=budget)
    if ambient.structure.is_trivial:
        return ShaGroup(group, module, degree, TRIVIAL_STRUCTURE, [], ambient, [],
                        FINITE_LEVEL_NOTE)
    phi_cols: List[List[int]] = [[] for _ in ambient.reps]
    target_invs: List[int] = []
    for sub in cyclic_subgroup_reps(group):
        if sub.order == 1:
            continue
        mapped = restriction(group, sub, module, degree, ambient, budget=budget,
                             force_bar=(method == "bar"))
        invs = mapped.target.invariants
        target_invs.extend(invs)
        for j, tup in enumerate(mapped.coords):
            phi_cols[j].extend(tup)
    structure, gens = hom_kernel(
        list(ambient.invariants), [tuple(c) for c in phi_cols], target_invs
    )
    return _subgroup_from_kernel(ambient, structure, gens, FINITE_LEVEL_NOTE)


def sha_omega_p(
    group: FiniteGroup,
    h_k: Subgroup,
    p: PData,
    budget: int = DEFAULT_BUDGET,
    module: Optional[GModule] = None,
    sha: Optional[ShaGroup] = None,
) -> ShaGroup:
    """The polynomial-decorated kernel inside sha_omega of the norm-one lattice.

    Kernel of the map induced by the weighted factor-norm embedding, taken
    on the common-restriction-kernel subgroup of H^2.  The image of that
    subgroup automatically restricts to zero on cyclic subgroups, so the
    kernel into the full H^2 of the tensor module is the same group.
    """
    if module is None:
        module = norm_one_lattice(group, h_k)
    if sha is None:
        sha = sha_omega(group, module, 2, budget=budget)
    if sha.is_trivial:
        return ShaGroup(group, module, 2, TRIVIAL_STRUCTURE, [], sha.ambient, [],
                        sha.note)
    f = factor_norm_map(module, p)
    target = cohomology(group, f.target, 2, budget=budget)
    mapped = induced_map(f, 2, _as_cohomology_classes(sha), target=target, budget=budget)
    structure, gens = hom_kernel(
        list(sha.structure.torsion),
        [tuple(c) for c in mapped.coords],
        list(target.invariants),
    )
    reps = []
    coords = []
    for coeffs in gens:
        total = [0] * len(sha.reps[0])
        amb = [0] * len(sha.coords_in_ambient[0])
        for coef, rep, acoord in zip(coeffs, sha.reps, sha.coords_in_ambient):
            for i, x in enumerate(rep):
                total[i] += coef * x
            for i, x in enumerate(acoord):
                amb[i] += coef * x
        reps.append(total)
        coords.append(tuple(amb))
    return ShaGroup(group, module, 2, structure, reps, sha.ambient, coords, sha.note)


def _as_cohomology_classes(sha: ShaGroup) -> CohomologyGroup:
    """View a sha subgroup as a list of classes for induced_map plumbing."""
    amb = sha.ambient
    return CohomologyGroup(
        sha.group,
        sha.module,
        sha.degree,
        sha.structure,
        sha.reps,
        amb._lattice,
        amb._pivot_index,
        amb._quotient,
    )


def h1_defect(
    group: FiniteGroup,
    h_k: Subgroup,
    p: PData,
    budget: int = DEFAULT_BUDGET,
) -> AbelianStructure:
    """Cokernel of the factor-norm map on H^1 of the norm-one lattice.

    The left end of the basic exact sequence, as an abstract group; no
    distinguished generators are ever needed for it.
    """
    module = norm_one_lattice(group, h_k)
    f = factor_norm_map(module, p)
    target = cohomology(group, f.target, 1, budget=budget)
    if target.structure.is_trivial:
        return TRIVIAL_STRUCTURE
    source = cohomology(group, module, 1, budget=budget)
    mapped = induced_map(f, 1, source, target=target, budget=budget)
    t = len(target.invariants)
    relation_rows = [list(tup) for tup in mapped.coords]
    relation_rows.extend(
        [target.invariants[i] if i == j else 0 for j in range(t)] for i in range(t)
    )
    return abelian_invariants(relation_rows)
