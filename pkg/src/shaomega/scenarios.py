"""Field-diagram scenarios: the group-theoretic encoding of (K/k, P(t)).

Fields never appear; K, the factor fields, their intersections and
closures exist only as subgroups of the ambient group and operations on
them.  Any concrete arithmetic instance enters through this encoding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import ValidationError
from .groups import (
    FiniteGroup,
    Subgroup,
    build_group,
    direct_product,
    subgroup_closure,
    symmetric_group,
    trivial_subgroup,
)
from .modules import PData, pdata


@dataclass
class Scenario:
    """Ambient Galois group, the subgroup fixing K, and the factor data."""

    group: FiniteGroup
    h_k: Subgroup
    factors: PData
    annotations: Dict[str, str] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if self.h_k.parent is not self.group:
            raise ValidationError("subgroup for K belongs to a different group")
        if self.factors.group is not self.group:
            raise ValidationError("factor subgroups belong to a different group")

    @property
    def single_factor(self) -> bool:
        return len(self.factors.factors) == 1


def scenario(group, hk_gens, factor_specs, name="", annotations=None) -> Scenario:
    """Convenience builder: generator lists for the K-subgroup and factors."""
    h_k = subgroup_closure(group, hk_gens)
    facts = [(subgroup_closure(group, gens), mult) for mult, gens in factor_specs]
    return Scenario(group, h_k, pdata(facts), annotations or {}, name)


def _bicyclic_subfield(n: int) -> Scenario:
    g = build_group([n, n])
    return scenario(
        g,
        [],
        [(1, [1])],  # the subgroup generated by (0,1): cyclic of order n
        name=f"bicyclic-n{n}",
        annotations={"note": f"bicyclic (Z/{n})^2 field with a cyclic degree-{n} subfield"},
    )


def _remark_z2cubed() -> Scenario:
    g = build_group([2, 2, 2])
    return scenario(
        g,
        [],
        [(1, [1])],  # order-2 subgroup: the factor field has degree 4
        name="remark-z2cubed",
        annotations={"note": "triquadratic field, factor field of degree 4"},
    )


def _br1_product() -> Scenario:
    g = build_group([2, 3])  # Z/6 as Z/2 x Z/3
    return scenario(
        g,
        [3],  # subgroup {0,3} = the order-2 part: K of degree 3
        [(1, [2])],  # subgroup {0,2,4} = order-3 part: L of degree 2
        name="br1-product",
        annotations={"note": "K cubic, L quadratic, linearly disjoint"},
    )


def _br1_s3xz2() -> Scenario:
    s3 = symmetric_group(3)
    g = direct_product(s3, build_group([2]))
    # elements are s * 2 + z; order-3 element of S_3 paired with 0
    three = next(a for a in s3.elements() if s3.element_order(a) == 3)
    two = next(a for a in s3.elements() if s3.element_order(a) == 2)
    return scenario(
        g,
        [three * 2],  # A_3 x {0}: K of degree 4, normal
        [(1, [two * 2, 1])],  # <transposition> x Z/2: L of degree 3
        name="br1-s3xz2",
        annotations={"note": "nonabelian ambient group, disjoint closure condition"},
    )


def _equal_x_z4() -> Scenario:
    g = build_group([4])
    return scenario(
        g,
        [],
        [(1, [2])],
        name="equal-x-z4",
        annotations={"note": "cyclic quartic K; the 2-part of Gal(K/k) is cyclic"},
    )


def _equal_x_z2sq() -> Scenario:
    g = build_group([2, 2, 2, 2])
    # K of degree 4 (quotient (Z/2)^2), L with even degree over the intersection
    return scenario(
        g,
        [1, 2],  # H_K = <e3, e4>
        [(1, [4])],  # H_L = <e2>: J = <H_L, H_K> has index 2, [J:H_L] = 4
        name="equal-x-even-step",
        annotations={"note": "even degree of L over its intersection with K"},
    )


def _equal_x_z6sq() -> Scenario:
    g = build_group([6, 6])
    return scenario(
        g,
        [],
        [(1, [18, 1])],  # <(3,0),(0,1)>: index 3, so [L:k] = 3 is odd
        name="equal-x-odd-intersection",
        annotations={"note": "odd-degree intersection of L with K"},
    )


def _sha_t_cyclic(i: int) -> Scenario:
    specs = [([4], [], [2]), ([6], [], [3]), ([2, 2], [1], [2]),
             ([12], [6], [4]), ([3, 3], [1], [3])]
    spec, hk, hl = specs[i]
    g = build_group(spec)
    return scenario(g, hk, [(1, hl)], name=f"sha-t-cyclic-{i}")


def _sha_t_disjoint(i: int) -> Scenario:
    if i == 0:
        return _br1_product()
    if i == 1:
        return _br1_s3xz2()
    if i == 2:
        g = build_group([2, 5])
        return scenario(g, [5], [(1, [2])], name="sha-t-disjoint-2")
    if i == 3:
        g = build_group([3, 4])
        return scenario(g, [4], [(1, [3])], name="sha-t-disjoint-3")
    g = build_group([2, 2, 3])
    return scenario(g, [6, 3], [(1, [4])], name="sha-t-disjoint-4")


def builtin_scenario(name: str) -> Scenario:
    """Scenario library: one named instance per worked example."""
    builders = {
        "prop-q1-n2": lambda: _bicyclic_subfield(2),
        "prop-q1-n3": lambda: _bicyclic_subfield(3),
        "prop-q1-n4": lambda: _bicyclic_subfield(4),
        "remark-z2cubed": _remark_z2cubed,
        "br1-product": _br1_product,
        "br1-s3xz2": _br1_s3xz2,
        "equal-x-z4": _equal_x_z4,
        "equal-x-even-step": _equal_x_z2sq,
        "equal-x-odd-intersection": _equal_x_z6sq,
    }
    for i in range(5):
        builders[f"sha-t-cyclic-{i}"] = (lambda j=i: _sha_t_cyclic(j))
        builders[f"sha-t-disjoint-{i}"] = (lambda j=i: _sha_t_disjoint(j))
    if name not in builders:
        raise ValidationError(f"unknown scenario {name!r}; known: {sorted(builders)}")
    s = builders[name]()
    if not s.name:
        s.name = name
    return s


def builtin_scenario_names() -> List[str]:
    names = [
        "prop-q1-n2", "prop-q1-n3", "prop-q1-n4", "remark-z2cubed",
        "br1-product", "br1-s3xz2", "equal-x-z4", "equal-x-even-step",
        "equal-x-odd-intersection",
    ]
    names += [f"sha-t-cyclic-{i}" for i in range(5)]
    names += [f"sha-t-disjoint-{i}" for i in range(5)]
    return names
