"""Explicit finite groups with full multiplication tables, and subgroup machinery.

Elements are indices 0..order-1.  Products of cyclic groups order their
elements lexicographically by coordinate tuple; symmetric groups by
lexicographic rank of the image tuple.  The order cap keeps the O(n^2)
tables and O(n^3) validation trivially cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    BadIdentity,
    ComplexityLimitExceeded,
    ElementOutOfRange,
    NonAssociativeTable,
    NotNormal,
    ValidationError,
)
from .intlinalg import AbelianStructure, TRIVIAL_STRUCTURE, merge_structures

MAX_GROUP_ORDER = 120
_VALIDATE_ASSOCIATIVITY_UP_TO = 64


class FiniteGroup:
    """Finite group given by its multiplication table."""

    def __init__(self, table: Sequence[Sequence[int]], label: str = "G",
                 element_names: Optional[Sequence[str]] = None,
                 _trusted: bool = False):
        self.order = len(table)
        if self.order == 0:
            raise ValidationError("empty multiplication table")
        if self.order > MAX_GROUP_ORDER:
            raise ComplexityLimitExceeded(
                f"group order {self.order} exceeds cap {MAX_GROUP_ORDER}",
                required=self.order, limit=MAX_GROUP_ORDER)
        self.table = [list(row) for row in table]
        self.label = label
        self.element_names = list(element_names) if element_names else [str(i) for i in range(self.order)]
        n = self.order
        for row in self.table:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise ValidationError("multiplication table is not square over 0..n-1")
        self.identity = self._find_identity()
        self.inverses = self._find_inverses()
        if not _trusted or n <= _VALIDATE_ASSOCIATIVITY_UP_TO:
            self._check_associative()

    def _find_identity(self) -> int:
        n = self.order
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                return e
        raise BadIdentity("no two-sided identity element")

    def _find_inverses(self) -> List[int]:
        n, e = self.order, self.identity
        inv = [-1] * n
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == e and self.table[b][a] == e:
                    inv[a] = b
                    break
            if inv[a] < 0:
                raise BadIdentity(f"element {a} has no inverse")
        return inv

    def _check_associative(self) -> None:
        n, t = self.order, self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise NonAssociativeTable(f"({a}*{b})*{c} != {a}*({b}*{c})")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conjugate(self, g: int, a: int) -> int:
        """g * a * g^-1."""
        return self.table[self.table[g][a]][self.inverses[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverses[a], -k)
        out = self.identity
        while k:
            out = self.table[out][a]
            k -= 1
        return out

    def element_order(self, a: int) -> int:
        x, n = a, 1
        while x != self.identity:
            x = self.table[x][a]
            n += 1
        return n

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def exponent(self) -> int:
        from math import lcm
        out = 1
        for a in range(self.order):
            out = lcm(out, self.element_order(a))
        return out

    def name_of(self, a: int) -> str:
        return self.element_names[a]

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """Subgroup as a sorted tuple of element indices of a parent group."""

    parent: FiniteGroup
    elements: Tuple[int, ...]

    def __post_init__(self):
        n = self.parent.order
        if any(not (0 <= x < n) for x in self.elements):
            raise ElementOutOfRange("subgroup element out of range")
        if tuple(sorted(set(self.elements))) != self.elements:
            raise ValidationError("subgroup elements must be sorted and distinct")
        elems = set(self.elements)
        if self.parent.identity not in elems:
            raise ValidationError("subgroup misses the identity")
        t = self.parent.table
        for a in self.elements:
            if self.parent.inverses[a] not in elems:
                raise ValidationError("subgroup not closed under inverses")
            for b in self.elements:
                if t[a][b] not in elems:
                    raise ValidationError("subgroup not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, x: int) -> bool:
        return x in set(self.elements)

    def __le__(self, other: "Subgroup") -> bool:
        return set(self.elements) <= set(other.elements)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.label})"


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def cyclic_product_group(orders: Sequence[int]) -> FiniteGroup:
    """Direct product Z/n1 x ... x Z/nr with lexicographic element order."""
    if not orders or any(n < 1 for n in orders):
        raise ValidationError(f"bad cyclic factor list {orders!r}")
    total = 1
    for n in orders:
        total *= n
    if total > MAX_GROUP_ORDER:
        raise ComplexityLimitExceeded(
            f"group order {total} exceeds cap {MAX_GROUP_ORDER}",
            required=total, limit=MAX_GROUP_ORDER)
    radix = list(orders)

    def encode(tup):
        x = 0
        for v, n in zip(tup, radix):
            x = x * n + v
        return x

    def decode(x):
        out = []
        for n in reversed(radix):
            x, r = divmod(x, n)
            out.append(r)
        return tuple(reversed(out))

    tuples = [decode(i) for i in range(total)]
    table = [
        [encode(tuple((a + b) % n for a, b, n in zip(ta, tb, radix))) for tb in tuples]
        for ta in tuples
    ]
    label = " x ".join(f"Z/{n}" for n in orders)
    names = ["(" + ",".join(map(str, t)) + ")" for t in tuples]
    return FiniteGroup(table, label=label, element_names=names, _trusted=True)


def symmetric_group(n: int) -> FiniteGroup:
    """S_n for n <= 5, elements in lexicographic rank order of image tuples."""
    if not 1 <= n <= 5:
        raise ValidationError("symmetric groups supported for 1 <= n <= 5")
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # composition (p*q)(i) = p[q[i]]
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    names = ["".join(map(str, p)) for p in perms]
    return FiniteGroup(table, label=f"S_{n}", element_names=names, _trusted=True)


def table_group(table: Sequence[Sequence[int]], label: str = "G") -> FiniteGroup:
    """Group from an explicit table; always fully validated."""
    return FiniteGroup(table, label=label, _trusted=False)


def build_group(spec) -> FiniteGroup:
    """Build from a spec: list of cyclic orders, ("S", n), or an explicit table."""
    if isinstance(spec, (list, tuple)) and spec and isinstance(spec[0], int):
        return cyclic_product_group(spec)
    if isinstance(spec, tuple) and len(spec) == 2 and spec[0] in ("S", "s"):
        return symmetric_group(spec[1])
    if isinstance(spec, (list, tuple)) and spec and isinstance(spec[0], (list, tuple)):
        return table_group(spec)
    raise ValidationError(f"unrecognized group spec {spec!r}")


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Direct product with (a, b) encoded as a * |g2| + b."""
    n1, n2 = g1.order, g2.order
    total = n1 * n2
    if total > MAX_GROUP_ORDER:
        raise ComplexityLimitExceeded(
            f"group order {total} exceeds cap {MAX_GROUP_ORDER}",
            required=total, limit=MAX_GROUP_ORDER)
    table = [[0] * total for _ in range(total)]
    for a1 in range(n1):
        for a2 in range(n2):
            a = a1 * n2 + a2
            row = table[a]
            for b1 in range(n1):
                r1 = g1.table[a1][b1] * n2
                for b2 in range(n2):
                    row[b1 * n2 + b2] = r1 + g2.table[a2][b2]
    names = [
        f"({g1.name_of(a1)};{g2.name_of(a2)})" for a1 in range(n1) for a2 in range(n2)
    ]
    return FiniteGroup(table, label=f"{g1.label} x {g2.label}",
                       element_names=names, _trusted=True)


# ---------------------------------------------------------------------------
# subgroups
# ---------------------------------------------------------------------------


def subgroup_closure(group: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing the given elements."""
    gens = list(gens)
    n = group.order
    for g in gens:
        if not (0 <= g < n):
            raise ElementOutOfRange(f"element {g} outside 0..{n - 1}")
    seen = {group.identity}
    frontier = [group.identity]
    gens = sorted(set(gens) | {group.identity})
    while frontier:
        x = frontier.pop()
        for g in gens:
            for y in (group.table[x][g], group.table[g][x]):
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
    return Subgroup(group, tuple(sorted(seen)))


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, (group.identity,))


def full_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, tuple(range(group.order)))


def cyclic_subgroup(group: FiniteGroup, g: int) -> Subgroup:
    elems = {group.identity}
    x = g
    while x != group.identity:
        elems.add(x)
        x = group.table[x][g]
    return Subgroup(group, tuple(sorted(elems)))


def all_cyclic_subgroups(group: FiniteGroup) -> List[Subgroup]:
    """Every cyclic subgroup, the trivial one included, deterministically ordered."""
    seen = {}
    for g in group.elements():
        sub = cyclic_subgroup(group, g)
        seen.setdefault(sub.elements, sub)
    return [seen[k] for k in sorted(seen, key=lambda e: (len(e), e))]


def conjugate_subgroup(group: FiniteGroup, sub: Subgroup, g: int) -> Subgroup:
    elems = tuple(sorted(group.conjugate(g, a) for a in sub.elements))
    return Subgroup(group, elems)


def cyclic_subgroup_reps(group: FiniteGroup) -> List[Subgroup]:
    """One representative per conjugacy class of cyclic subgroups."""
    classes: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for sub in all_cyclic_subgroups(group):
        if sub.elements in classes:
            continue
        rep = min(
            (tuple(sorted(group.conjugate(g, a) for a in sub.elements)) for g in group.elements()),
        )
        for g in group.elements():
            conj = tuple(sorted(group.conjugate(g, a) for a in sub.elements))
            classes[conj] = rep
    reps = sorted(set(classes.values()), key=lambda e: (len(e), e))
    return [Subgroup(group, e) for e in reps]


def generator_of_cyclic(group: FiniteGroup, sub: Subgroup) -> int:
    """Least element index generating the (cyclic) subgroup."""
    target = len(sub.elements)
    for g in sub.elements:
        if group.element_order(g) == target:
            return g
    from .errors import NotCyclic

    raise NotCyclic(f"subgroup of order {target} is not cyclic")


def is_normal(group: FiniteGroup, sub: Subgroup) -> bool:
    elems = set(sub.elements)
    return all(
        group.conjugate(g, a) in elems for g in group.elements() for a in sub.elements
    )


def normal_closure(group: FiniteGroup, sub: Subgroup) -> Subgroup:
    """Smallest normal subgroup containing `sub`."""
    gens = {group.conjugate(g, a) for g in group.elements() for a in sub.elements}
    return subgroup_closure(group, gens)


def core(group: FiniteGroup, sub: Subgroup) -> Subgroup:
    """Largest normal subgroup contained in `sub`: intersection of conjugates."""
    elems = set(sub.elements)
    for g in group.elements():
        elems &= {group.conjugate(g, a) for a in sub.elements}
    return Subgroup(group, tuple(sorted(elems)))


def commutator_subgroup(group: FiniteGroup) -> Subgroup:
    t, inv = group.table, group.inverses
    gens = {
        t[t[a][b]][t[inv[a]][inv[b]]]
        for a in group.elements()
        for b in group.elements()
    }
    return subgroup_closure(group, gens)


# ---------------------------------------------------------------------------
# cosets and quotients
# ---------------------------------------------------------------------------


@dataclass
class CosetAction:
    """Left cosets of a subgroup with the translation action of the parent."""

    subgroup: Subgroup
    reps: List[int]
    coset_of: List[int]  # element index -> coset index

    @property
    def degree(self) -> int:
        return len(self.reps)

    def act(self, g: int, coset: int) -> int:
        group = self.subgroup.parent
        return self.coset_of[group.table[g][self.reps[coset]]]


def coset_action(group: FiniteGroup, sub: Subgroup) -> CosetAction:
    coset_of = [-1] * group.order
    reps: List[int] = []
    for x in group.elements():
        if coset_of[x] >= 0:
            continue
        idx = len(reps)
        reps.append(x)
        for h in sub.elements:
            coset_of[group.table[x][h]] = idx
    return CosetAction(sub, reps, coset_of)


def quotient_group(group: FiniteGroup, normal: Subgroup) -> FiniteGroup:
    """Quotient by a normal subgroup, elements being coset representatives."""
    if not is_normal(group, normal):
        raise NotNormal("subgroup is not normal")
    act = coset_action(group, normal)
    m = act.degree
    table = [[act.coset_of[group.table[act.reps[a]][act.reps[b]]] for b in range(m)] for a in range(m)]
    names = [group.name_of(r) + "N" for r in act.reps]
    return FiniteGroup(table, label=f"{group.label}/N", element_names=names, _trusted=True)


def abelian_group_structure(group: FiniteGroup) -> AbelianStructure:
    """Invariant factors of a finite abelian group.

    Greedy: a cyclic subgroup of maximal order is a direct summand, so peel
    it off and recurse on the quotient.
    """
    if not group.is_abelian():
        raise ValidationError("group is not abelian")
    if group.order == 1:
        return TRIVIAL_STRUCTURE
    g = max(group.elements(), key=lambda a: (group.element_order(a), -a))
    d = group.element_order(g)
    rest = abelian_group_structure(quotient_group(group, cyclic_subgroup(group, g)))
    return merge_structures([AbelianStructure((d,)), rest])


def subgroup_as_group(group: FiniteGroup, sub: Subgroup) -> Tuple[FiniteGroup, List[int]]:
    """Reindex a subgroup as a standalone group; returns it with the element map."""
    elems = list(sub.elements)
    pos = {x: i for i, x in enumerate(elems)}
    table = [[pos[group.table[a][b]] for b in elems] for a in elems]
    names = [group.name_of(x) for x in elems]
    sg = FiniteGroup(table, label=f"{group.label}|sub{len(elems)}",
                     element_names=names, _trusted=True)
    return sg, elems
