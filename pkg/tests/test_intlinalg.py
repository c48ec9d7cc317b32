"""Exact linear algebra: Smith forms, kernels, lattices, quotient structures."""

import random

from shaomega.intlinalg import (
    AbelianStructure,
    EchelonLattice,
    abelian_invariants,
    dense_kernel_basis,
    lattice_from_vectors,
    mat_mul,
    mat_vec,
    merge_structures,
    quotient_structure,
    smith_normal_form,
    snf_diagonal,
    sparse_kernel_basis,
    structure_from_diagonal,
)


def check_snf(a):
    form = smith_normal_form(a)
    m, n = len(a), len(a[0]) if a else 0
    # transforms are inverse pairs
    assert mat_mul(form.u, form.u_inv) == [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    assert mat_mul(form.v_inv, form.v) == [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    # U A V is diagonal with the reported diagonal, in divisibility order
    d = mat_mul(mat_mul(form.u, a), form.v)
    for i in range(m):
        for j in range(n):
            expected = form.diagonal[i] if i == j and i < len(form.diagonal) else 0
            assert d[i][j] == expected
    diag = [x for x in form.diagonal if x]
    for x, y in zip(diag, diag[1:]):
        assert y % x == 0
    return form


def test_snf_hand_cases():
    assert snf_diagonal([[1, 0, 0], [0, 2, 0], [0, 0, 6]]) == [1, 2, 6]
    # determinant 8, gcd of entries 2: invariant factors 2 and 4
    assert snf_diagonal([[2, 4], [0, 4]]) == [2, 4]
    assert snf_diagonal([[0, 0], [0, 0]]) == [0, 0]
    check_snf([[2, 4], [0, 4]])
    check_snf([[6, 4], [4, 8]])


def test_snf_random_matrices():
    rng = random.Random(7)
    for _ in range(60):
        m = rng.randrange(1, 5)
        n = rng.randrange(1, 5)
        a = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(m)]
        form = check_snf(a)
        # product of nonzero diagonal = gcd of all rank-sized minors, checked
        # indirectly for square nonsingular a: |det| = product of diagonal
        if m == n:
            det = _det(a)
            if det:
                prod = 1
                for x in form.diagonal:
                    prod *= x
                assert prod == abs(det)


def _det(a):
    n = len(a)
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in a[1:]]
        total += (-1) ** j * a[0][j] * _det(minor)
    return total


def test_abelian_invariants_cases():
    assert abelian_invariants([[1, 0, 0], [0, 2, 0], [0, 0, 6]]) == AbelianStructure((2, 6))
    # zero 0x3 matrix: free of rank 3
    assert abelian_invariants([]) == AbelianStructure(())
    free3 = abelian_invariants([[0, 0, 0]])
    assert free3 == AbelianStructure((), 3)
    assert abelian_invariants([[2, 4], [0, 4]]) == AbelianStructure((2, 4))
    assert str(AbelianStructure((2, 8), 1)) == "Z/2 x Z/8 x Z"
    assert str(AbelianStructure()) == "0"
    assert AbelianStructure((2, 6)).order() == 12


def test_structure_helpers():
    assert structure_from_diagonal([1, 1, 2, 0], 2) == AbelianStructure((2,), 2)
    assert merge_structures([AbelianStructure((2,)), AbelianStructure((4,))]) == AbelianStructure((2, 4))
    assert merge_structures([AbelianStructure((2,)), AbelianStructure((3,))]) == AbelianStructure((6,))
    assert merge_structures([AbelianStructure((6,)), AbelianStructure((4,), 1)]) == AbelianStructure((2, 12), 1)


def test_dense_kernel():
    assert dense_kernel_basis([[1, 0], [0, 1]]) == []
    k = dense_kernel_basis([[1, 2], [2, 4]])
    assert len(k) == 1
    assert mat_vec([[1, 2], [2, 4]], k[0]) == [0, 0]
    k = dense_kernel_basis([[2, 2, 2], [3, 3, 3]])
    assert len(k) == 2
    for v in k:
        assert mat_vec([[2, 2, 2]], v) == [0]


def test_sparse_kernel_matches_dense():
    rng = random.Random(13)
    for _ in range(80):
        m = rng.randrange(1, 6)
        n = rng.randrange(1, 6)
        a = [[rng.choice([0, 0, 0, 1, -1, 2, -3]) for _ in range(n)] for _ in range(m)]
        rows = [{j: x for j, x in enumerate(row) if x} for row in a]
        sparse = sparse_kernel_basis(rows, n)
        # every reported vector is in the kernel
        for vec in sparse:
            dense_vec = [vec.get(j, 0) for j in range(n)]
            assert mat_vec(a, dense_vec) == [0] * m
        # lattices agree: same rank and mutual membership
        dense = dense_kernel_basis(a)
        lat_sparse = lattice_from_vectors(sparse, n)
        lat_dense = lattice_from_vectors(
            [{j: x for j, x in enumerate(col) if x} for col in dense], n
        )
        assert lat_sparse.rank() == lat_dense.rank()
        for _, row in lat_dense.basis_rows():
            assert row in lat_sparse
        for _, row in lat_sparse.basis_rows():
            assert row in lat_dense


def test_echelon_lattice_solve_roundtrip():
    lat = EchelonLattice(3)
    lat.add({0: 2, 1: 1})
    lat.add({1: 3})
    coords = lat.solve({0: 4, 1: 5})
    assert coords is not None
    assert lat.combine(coords) == {0: 4, 1: 5}
    assert lat.solve({0: 1}) is None
    assert {0: 2, 1: 1} in lat
    assert {2: 1} not in lat


def test_quotient_structure_basic():
    # Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6
    q = quotient_structure(2, [{0: 2}, {1: 3}])
    assert merge_structures([q.structure]) == AbelianStructure((6,))
    # Z^2 / <(1,0)> = Z
    q = quotient_structure(2, [{0: 1}])
    assert q.structure == AbelianStructure((), 1)
    # Z^3 / <(1,1,0),(0,2,2)> = Z + Z/2 after reduction? check orders via membership
    q = quotient_structure(3, [{0: 1, 1: 1}, {1: 2, 2: 2}])
    assert q.structure.free_rank == 1
    assert q.structure.torsion == (2,)


def test_quotient_generators_and_coords():
    rng = random.Random(41)
    for _ in range(50):
        n = rng.randrange(1, 5)
        ncols = rng.randrange(0, 5)
        cols = []
        for _ in range(ncols):
            col = {i: rng.randrange(-4, 5) for i in range(n)}
            cols.append({i: x for i, x in col.items() if x})
        q = quotient_structure(n, cols)
        # generators are valid: coords_of(generator_i) is the i-th unit, reduced
        for idx, (d, gen) in enumerate(q.components):
            coords = q.coords_of(gen)
            expected = tuple(1 if j == idx else 0 for j in range(len(q.components)))
            assert coords == expected, (cols, q.components, coords)
        # the span itself maps to zero
        for col in cols:
            assert q.is_zero(col)
        # structure order matches brute-force index when finite
        if q.structure.is_finite and n <= 3:
            span = _enumerate_span(cols, n, bound=6)
            # count cosets of the span inside a large box modulo comparisons is
            # expensive; instead verify d * generator lands in the span lattice
            lat = lattice_from_vectors(cols, n)
            for d, gen in q.components:
                scaled = {c: d * v for c, v in gen.items()}
                assert lat.solve(scaled) is not None


def _enumerate_span(cols, n, bound):
    return None


def test_quotient_is_zero_detects_membership():
    q = quotient_structure(2, [{0: 2, 1: 1}])
    # (2,1) in span, (1,0) not
    assert q.is_zero({0: 2, 1: 1})
    assert not q.is_zero({0: 1})
    assert q.is_zero({0: 4, 1: 2})
