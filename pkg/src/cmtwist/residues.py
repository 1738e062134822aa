"""Finite abelian group arithmetic inside unit groups (Z/m)^x.

Everything at desk scale: subgroups are explicit element sets, quotients
are explicit coset lists, and invariant factors come from peeling
maximal-order elements.  No matrix Smith-form machinery; every result is
cheap to re-derive by brute force, which is exactly how the test suite
checks it.

Group elements are plain residues (ints coprime to the modulus); a coset
of a subgroup is a ``frozenset`` of residues.  The modulus m = 1 denotes
the trivial group and is represented by an empty element set of order 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable


@lru_cache(maxsize=None)
def unit_group(m: int) -> tuple[int, ...]:
    """All residues in [1, m) coprime to m, sorted.

    >>> unit_group(7)
    (1, 2, 3, 4, 5, 6)
    >>> unit_group(1)
    ()
    >>> len(unit_group(51))
    32
    """
    if m < 1:
        raise ValueError(f"modulus must be a positive integer, got {m}")
    return tuple(x for x in range(1, m) if gcd(x, m) == 1)


def group_order(m: int) -> int:
    """Order of (Z/m)^x; the m = 1 convention still has order 1."""
    return len(unit_group(m)) if m > 1 else 1


def _check_unit(m: int, x: int) -> int:
    if not (1 <= x < m) or gcd(x, m) != 1:
        raise ValueError(f"{x} is not a unit residue mod {m}")
    return x


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of (Z/m)^x stored as an explicit residue set.

    Use :func:`subgroup` or :func:`subgroup_generated` to build one;
    the constructor itself does not validate closure.
    """

    modulus: int
    elements: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.elements) if self.elements else 1

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    def sorted_elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))


def subgroup(m: int, elements: Iterable[int]) -> Subgroup:
    """Validated subgroup from an element list (must already be closed).

    >>> subgroup(7, [1, 2, 4]).order
    3
    """
    if m < 1:
        raise ValueError(f"modulus must be a positive integer, got {m}")
    elems = frozenset(elements)
    if m == 1:
        if elems:
            raise ValueError("modulus 1 carries the trivial group; no residues allowed")
        return Subgroup(1, frozenset())
    for x in elems:
        _check_unit(m, x)
    if 1 not in elems:
        raise ValueError("subgroup must contain 1")
    for a in elems:
        for b in elems:
            if (a * b) % m not in elems:
                raise ValueError(f"set not closed under multiplication mod {m}: {a}*{b}")
    return Subgroup(m, elems)


def trivial_subgroup(m: int) -> Subgroup:
    return Subgroup(m, frozenset() if m == 1 else frozenset({1}))


def subgroup_generated(m: int, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup of (Z/m)^x containing ``gens``.

    >>> subgroup_generated(7, [2]).sorted_elements()
    (1, 2, 4)
    >>> subgroup_generated(51, [16]).sorted_elements()
    (1, 16)
    >>> subgroup_generated(7, []).sorted_elements()
    (1,)
    """
    if m < 1:
        raise ValueError(f"modulus must be a positive integer, got {m}")
    if m == 1:
        if any(g != 0 for g in gens):
            raise ValueError("modulus 1 carries the trivial group")
        return Subgroup(1, frozenset())
    gen_list = [_check_unit(m, g) for g in gens]
    elems = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for g in gen_list:
            y = (x * g) % m
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return Subgroup(m, frozenset(elems))


def element_order(m: int, x: int) -> int:
    _check_unit(m, x)
    order, y = 1, x
    while y != 1:
        y = (y * x) % m
        order += 1
    return order


# ---------------------------------------------------------------------------
# Cosets of a subgroup.  A coset is a frozenset of residues; the product of
# two cosets is the literal element-wise product set, which equals the coset
# of any representative product, so nothing here depends on representatives.

def coset_of(m: int, H: Subgroup, x: int) -> frozenset[int]:
    if m == 1:
        return frozenset()
    _check_unit(m, x)
    return frozenset((x * h) % m for h in H.elements)


def coset_mul(m: int, c1: frozenset[int], c2: frozenset[int]) -> frozenset[int]:
    if m == 1:
        return frozenset()
    return frozenset((a * b) % m for a in c1 for b in c2)


def coset_inv(m: int, c: frozenset[int]) -> frozenset[int]:
    if m == 1:
        return frozenset()
    return frozenset(pow(a, -1, m) for a in c)


def quotient_cosets(m: int, H: Subgroup) -> tuple[frozenset[int], ...]:
    """Cosets of H in (Z/m)^x, sorted by least representative.

    >>> quotient_cosets(7, subgroup(7, [1, 2, 4]))
    (frozenset({1, 2, 4}), frozenset({3, 5, 6}))
    """
    if m == 1:
        return (frozenset(),)
    seen: set[int] = set()
    cosets = []
    for x in unit_group(m):
        if x not in seen:
            c = coset_of(m, H, x)
            seen.update(c)
            cosets.append(c)
    return tuple(cosets)


def coset_order(m: int, H: Subgroup, x: int) -> int:
    """Order of the coset xH in (Z/m)^x / H."""
    if m == 1:
        return 1
    _check_unit(m, x)
    order, y = 1, x
    while y not in H.elements:
        y = (y * x) % m
        order += 1
    return order


# ---------------------------------------------------------------------------
# Invariant factors of (Z/m)^x / H by peeling: an element of maximal order
# in a finite abelian group generates a direct summand, so peel it off and
# recurse on the quotient, lifting the recursive basis back with the usual
# order-preserving adjustment.

def _max_order_residue(m: int, H_elems: frozenset[int]) -> tuple[int, int]:
    best_x, best_e = 1, 1
    for x in unit_group(m):
        e, y = 1, x
        while y not in H_elems:
            y = (y * x) % m
            e += 1
        if e > best_e:
            best_x, best_e = x, e
    return best_x, best_e


def _quotient_basis(m: int, H_elems: frozenset[int]) -> list[tuple[int, int]]:
    """Basis [(residue, order), ...] of (Z/m)^x / H, orders non-increasing."""
    units = unit_group(m)
    if len(units) == len(H_elems):
        return []
    x, e = _max_order_residue(m, H_elems)
    bigger = subgroup_generated(m, set(H_elems) | {x}).elements
    rest = _quotient_basis(m, bigger)
    x_inv = pow(x, -1, m)
    adjusted = []
    for y, ey in rest:
        # y^ey lands in <x, H>; write it as x^c mod H, then cancel x^(c/ey)
        # so the lift keeps order exactly ey.
        t, c = pow(y, ey, m), 0
        while t not in H_elems:
            t = (t * x_inv) % m
            c += 1
        if c % ey != 0:
            raise AssertionError("basis adjustment failed: order obstruction")
        adjusted.append(((y * pow(x_inv, c // ey, m)) % m, ey))
    return [(x, e)] + adjusted


def is_quotient_basis(m: int, H: Subgroup, basis) -> bool:
    """Do the residues hit every coset of H exactly once as a product box?"""
    if m == 1:
        return len(tuple(basis)) == 0
    combos = [(g, d) for g, d in basis]
    seen: set[frozenset[int]] = set()
    ok = True

    def _expand(prefix: int, idx: int) -> None:
        nonlocal ok
        if not ok:
            return
        if idx == len(combos):
            c = coset_of(m, H, prefix)
            if c in seen:
                ok = False
            seen.add(c)
            return
        g, d = combos[idx]
        y = prefix
        for _ in range(d):
            _expand(y, idx + 1)
            y = (y * g) % m

    _expand(1, 0)
    return ok and len(seen) == group_order(m) // H.order


def invariant_factor_basis(m: int, H: Subgroup) -> tuple[tuple[int, int], ...]:
    """Residues generating (Z/m)^x / H as a direct sum of cyclic groups.

    Returns ((g_1, d_1), ..., (g_r, d_r)) with d_1 | d_2 | ... | d_r and the
    map (a_1, ..., a_r) -> prod g_i^{a_i} * H a bijection onto the quotient.
    The bijection is verified before returning.

    >>> invariant_factor_basis(8, trivial_subgroup(8))
    ((5, 2), (3, 2))
    """
    if m == 1:
        return ()
    basis = tuple(reversed(_quotient_basis(m, H.elements)))
    if not is_quotient_basis(m, H, basis):
        raise AssertionError("basis is not a direct-sum decomposition")
    return basis


def invariant_factors(m: int, H: Subgroup) -> tuple[int, ...]:
    """Canonical divisibility chain d_1 | d_2 | ... for (Z/m)^x / H.

    >>> invariant_factors(51, subgroup_generated(51, [16]))
    (2, 8)
    >>> invariant_factors(7, trivial_subgroup(7))
    (6,)
    >>> invariant_factors(8, trivial_subgroup(8))
    (2, 2)
    """
    if H.modulus != m:
        raise ValueError("subgroup modulus mismatch")
    return tuple(d for _, d in invariant_factor_basis(m, H))


# ---------------------------------------------------------------------------
# Subgroup enumeration, used for Galois lattices and brute-force oracles.

def cyclic_subgroups(m: int) -> set[frozenset[int]]:
    subs = {trivial_subgroup(m).elements}
    for x in unit_group(m):
        subs.add(subgroup_generated(m, [x]).elements)
    return subs


def all_subgroups(m: int) -> tuple[Subgroup, ...]:
    """Every subgroup of (Z/m)^x, by saturating joins of cyclic subgroups."""
    cyclics = cyclic_subgroups(m)
    subs = set(cyclics)
    frontier = set(cyclics)
    while frontier:
        new = set()
        for S in frontier:
            for C in cyclics:
                if C <= S:
                    continue
                T = subgroup_generated(m, S | C).elements
                if T not in subs:
                    subs.add(T)
                    new.add(T)
        frontier = new
    return tuple(
        Subgroup(m, s) for s in sorted(subs, key=lambda s: (len(s), sorted(s)))
    )
