"""Abelian number fields as subfields of cyclotomic fields.

A field is a pair (conductor m, fixed group H <= (Z/m)^x): the field is
the fixed field of H acting on the m-th cyclotomic field, and m is always
normalized to be minimal.  The whole Galois lattice (compositum,
intersection, subfield tests, real subfields, conjugation) then reduces
to subgroup arithmetic from :mod:`cmtwist.residues`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm

from sympy import factorint

from .residues import (
    Subgroup,
    coset_of,
    group_order,
    quotient_cosets,
    subgroup,
    subgroup_generated,
    trivial_subgroup,
    unit_group,
)


@dataclass(frozen=True)
class AbelianField:
    """Fixed field of ``fixed_group`` inside the ``conductor``-th cyclotomic field.

    Instances are always conductor-normalized, so equality is structural.
    Build them with :func:`cyclotomic`, :func:`quadratic`, :func:`field_from`,
    or the lattice operations below.
    """

    conductor: int
    fixed_group: Subgroup

    @property
    def degree(self) -> int:
        return group_order(self.conductor) // self.fixed_group.order

    def __repr__(self) -> str:
        h = ",".join(str(x) for x in self.fixed_group.sorted_elements())
        return f"AbelianField(conductor={self.conductor}, fixed={{{h}}})"


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _reduction_kernel(m: int, m2: int) -> frozenset[int]:
    """Kernel of (Z/m)^x -> (Z/m2)^x for m2 | m."""
    target = 1 % m2
    return frozenset(x for x in unit_group(m) if x % m2 == target)


def field_from(m: int, elements) -> AbelianField:
    """Conductor-normalized field for a fixed group given as a residue set."""
    H = elements if isinstance(elements, Subgroup) else subgroup(m, elements)
    if H.modulus != m:
        raise ValueError("fixed group modulus mismatch")
    for m2 in _divisors(m):
        if _reduction_kernel(m, m2) <= H.elements:
            if m2 == m:
                return AbelianField(m, H)
            if m2 == 1:
                return AbelianField(1, Subgroup(1, frozenset()))
            image = frozenset(x % m2 for x in H.elements)
            return AbelianField(m2, subgroup(m2, image))
    raise AssertionError("unreachable: m divides m")


RATIONALS = AbelianField(1, Subgroup(1, frozenset()))


def cyclotomic(m: int) -> AbelianField:
    """The m-th cyclotomic field, conductor-normalized.

    >>> cyclotomic(14).conductor
    7
    >>> cyclotomic(1).degree
    1
    """
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    return field_from(m, trivial_subgroup(m))


def is_squarefree(d: int) -> bool:
    return all(e == 1 for e in factorint(abs(d)).values())


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers, n != 0."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    # strip the even part of n; (a/2) is 0 for even a, +-1 via a mod 8
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    # Jacobi symbol for odd positive n, by binary reciprocity
    a %= n
    result = sign
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def quadratic(d: int) -> AbelianField:
    """The quadratic field adjoining a square root of squarefree d.

    Conductor is |disc| and the fixed group is the kernel of the
    discriminant's Kronecker character.

    >>> quadratic(-7).fixed_group.sorted_elements()
    (1, 2, 4)
    >>> quadratic(-3).conductor
    3
    """
    if d in (0, 1):
        raise ValueError("d must be a squarefree integer other than 0 and 1")
    if not is_squarefree(d):
        raise ValueError(f"{d} is not squarefree")
    disc = d if d % 4 == 1 else 4 * d
    m = abs(disc)
    H = frozenset(a for a in unit_group(m) if kronecker_symbol(disc, a) == 1)
    field = field_from(m, H)
    if field.degree != 2 or field.conductor != m:
        raise AssertionError(f"quadratic field construction failed for d={d}")
    return field


def _lift(field: AbelianField, M: int) -> frozenset[int]:
    """Fixed group of the field viewed inside (Z/M)^x, conductor | M."""
    m = field.conductor
    if M % m != 0:
        raise ValueError("can only lift along a divisor")
    if m == 1:
        return frozenset(unit_group(M))
    H = field.fixed_group.elements
    return frozenset(x for x in unit_group(M) if x % m in H)


def compositum(K1: AbelianField, K2: AbelianField) -> AbelianField:
    """Smallest abelian field containing both arguments.

    >>> compositum(quadratic(-3), cyclotomic(7)).degree
    12
    """
    M = lcm(K1.conductor, K2.conductor)
    return field_from(M, _lift(K1, M) & _lift(K2, M))


def intersect(K1: AbelianField, K2: AbelianField) -> AbelianField:
    M = lcm(K1.conductor, K2.conductor)
    return field_from(M, subgroup_generated(M, _lift(K1, M) | _lift(K2, M)))


def is_subfield(K1: AbelianField, K2: AbelianField) -> bool:
    """True when K1 is contained in K2.

    >>> is_subfield(quadratic(-7), cyclotomic(7))
    True
    """
    M = lcm(K1.conductor, K2.conductor)
    return _lift(K1, M) >= _lift(K2, M)


def is_totally_real(K: AbelianField) -> bool:
    if K.degree == 1:
        return True
    return (K.conductor - 1) in K.fixed_group.elements


def is_cm(K: AbelianField) -> bool:
    """CM = imaginary; abelian fields of degree > 1 are real or CM, never mixed."""
    return K.degree > 1 and not is_totally_real(K)


def complex_conjugation(K: AbelianField) -> frozenset[int]:
    """The coset of -1 in Gal(K/Q) = (Z/m)^x / H (identity coset if real)."""
    if K.conductor == 1:
        return frozenset()
    return coset_of(K.conductor, K.fixed_group, K.conductor - 1)


def maximal_real_subfield(K: AbelianField) -> AbelianField:
    """Fixed field of complex conjugation.

    >>> maximal_real_subfield(cyclotomic(7)).degree
    3
    """
    m = K.conductor
    if m == 1:
        return K
    H = subgroup_generated(m, set(K.fixed_group.elements) | {m - 1})
    return field_from(m, H)


@lru_cache(maxsize=None)
def galois_group(K: AbelianField) -> tuple[frozenset[int], ...]:
    """Gal(K/Q) as the coset list of the fixed group."""
    return quotient_cosets(K.conductor, K.fixed_group)


def identity_coset(K: AbelianField) -> frozenset[int]:
    if K.conductor == 1:
        return frozenset()
    return frozenset(K.fixed_group.elements)


def restrict_coset(
    K_big: AbelianField, K_small: AbelianField, c: frozenset[int]
) -> frozenset[int]:
    """Restriction map Gal(K_big/Q) -> Gal(K_small/Q) for K_small <= K_big."""
    if not is_subfield(K_small, K_big):
        raise ValueError("restriction target is not a subfield")
    if K_small.conductor == 1:
        return frozenset()
    rep = min(c)
    return coset_of(K_small.conductor, K_small.fixed_group, rep % K_small.conductor)


@lru_cache(maxsize=None)
def roots_of_unity_order(K: AbelianField) -> int:
    """The number w(K) of roots of unity in K (always even).

    Brute force: the cyclotomic field of any root of unity in K has
    conductor dividing the conductor of K, so only N | 2m can occur.

    >>> roots_of_unity_order(quadratic(-3))
    6
    >>> roots_of_unity_order(cyclotomic(7))
    14
    >>> roots_of_unity_order(quadratic(-7))
    2
    """
    m = K.conductor
    best = 1
    for N in _divisors(2 * m):
        if N > best and is_subfield(cyclotomic(N), K):
            best = N
    if best % 2 != 0:
        raise AssertionError("root-of-unity count must be even (-1 is everywhere)")
    return best


def subfields(K: AbelianField) -> tuple[AbelianField, ...]:
    """All subfields of K, via subgroups of (Z/m)^x containing the fixed group."""
    from .residues import all_subgroups

    m = K.conductor
    H = K.fixed_group.elements
    fields = []
    for S in all_subgroups(m):
        if S.elements >= (H if m > 1 else frozenset()):
            fields.append(field_from(m, S))
    return tuple(sorted(set(fields), key=lambda F: (F.degree, F.conductor,
                                                    F.fixed_group.sorted_elements())))
