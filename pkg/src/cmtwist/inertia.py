"""Inertia-order certificates for the degree-six cyclotomic field at inert primes.

For a prime p = 3 (mod 7) the connectedness-base argument needs a handful
of exact facts: the inertia subgroup at p inside the p-division field has
order (p^6 - 1)/(p^2 + p + 1); the Frobenius powers p^3, p^4, p^5 realize
the Galois elements of exponents 6, 4, 5; neither p^2 + p + 1 nor p^2 - 1
is divisible by 7; and a cyclotomic unit surjects onto the residue field
units at the ramified prime.  Everything here is verified by direct
integer and polynomial arithmetic and packaged into certificates whose
conclusion is only emitted when every check passes.

Finite-field arithmetic happens in F_p[x] modulo x^6 + x^5 + ... + x + 1,
using x^7 = 1: multiply with exponents mod 7, then cancel the degree-6
coefficient against the modulus.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Optional

from sympy import isprime

from .residues import element_order

# Seed for the sampled half of the ring-map comparison; the basis vectors
# are always tested, so sampling never decides correctness alone.
SAMPLE_SEED = 0x2457


def _require_prime(p: int) -> None:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")


def residue_order_mod7(p: int) -> int:
    """Multiplicative order of p modulo 7.

    >>> residue_order_mod7(3)
    6
    >>> residue_order_mod7(2)
    3
    """
    _require_prime(p)
    if p % 7 == 0:
        raise ValueError("p must differ from 7")
    return element_order(7, p % 7)


def requires_p_3_mod_7(p: int) -> bool:
    """The certificate hypothesis: p prime and p = 3 (mod 7) exactly.

    Residue 5 primes are also inert but have a different exponent table,
    so they are deliberately not accepted.
    """
    _require_prime(p)
    return p % 7 == 3


def _check_congruence(p: int) -> None:
    if not requires_p_3_mod_7(p):
        raise ValueError(f"p = 3 (mod 7) required, got {p} = {p % 7} (mod 7)")


def inertia_order(p: int) -> int:
    """(p^6 - 1)/(p^2 + p + 1), with the gcd identity behind it re-verified.

    >>> inertia_order(3)
    56
    >>> inertia_order(17)
    78624
    """
    _check_congruence(p)
    big = p**6 - 1
    q = p**2 + p + 1
    if gcd(big, p**3 * q) != q:
        raise AssertionError(f"gcd(p^6-1, p^3(p^2+p+1)) != p^2+p+1 at p={p}")
    if (p**3 - 1) % q != 0:
        raise AssertionError(f"p^2+p+1 does not divide p^3-1 at p={p}")
    order, rem = divmod(big, q)
    if rem != 0:
        raise AssertionError(f"p^2+p+1 does not divide p^6-1 at p={p}")
    return order


def frobenius_exponents(p: int) -> tuple[int, int, int]:
    """(p^3, p^4, p^5) mod 7, always (6, 4, 5) under the congruence hypothesis.

    >>> frobenius_exponents(3)
    (6, 4, 5)
    """
    _check_congruence(p)
    triple = (pow(p, 3, 7), pow(p, 4, 7), pow(p, 5, 7))
    if triple != (6, 4, 5):
        raise AssertionError(f"unexpected Frobenius exponents {triple} at p={p}")
    return triple


def seven_divisibility(p: int) -> tuple[bool, bool]:
    """(7 | p^2+p+1, 7 | p^2-1); both false exactly when p = 3 or 5 (mod 7).

    >>> seven_divisibility(3)
    (False, False)
    >>> seven_divisibility(2)
    (True, False)
    >>> seven_divisibility(13)
    (False, True)
    """
    _require_prime(p)
    if p == 7:
        raise ValueError("p must differ from 7")
    return ((p * p + p + 1) % 7 == 0, (p * p - 1) % 7 == 0)


# ---------------------------------------------------------------------------
# F_p[x] / (x^6 + x^5 + ... + x + 1): coefficients as 6-tuples, x^7 = 1.

def _reduce7(p: int, c7: list[int]) -> tuple[int, ...]:
    top = c7[6]
    return tuple((c7[i] - top) % p for i in range(6))


def _mul(p: int, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    c7 = [0] * 7
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    k = (i + j) % 7
                    c7[k] = (c7[k] + ai * bj) % p
    return _reduce7(p, c7)


def _pow(p: int, a: tuple[int, ...], e: int) -> tuple[int, ...]:
    result = (1, 0, 0, 0, 0, 0)
    base = a
    while e:
        if e & 1:
            result = _mul(p, result, base)
        base = _mul(p, base, base)
        e >>= 1
    return result


def _apply_sigma(p: int, i: int, a: tuple[int, ...]) -> tuple[int, ...]:
    """Ring map induced by x -> x^i (a field automorphism for i in 1..6)."""
    c7 = [0] * 7
    for j, aj in enumerate(a):
        k = (i * j) % 7
        c7[k] = (c7[k] + aj) % p
    return _reduce7(p, c7)


@dataclass(frozen=True)
class FiniteFieldElt:
    """Element of F_p[x]/(x^6 + ... + 1), the residue field at an inert prime."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != 6:
            raise ValueError("need exactly 6 coefficients")
        if residue_order_mod7(self.p) != 6:
            raise ValueError(
                f"the degree-six cyclotomic modulus is reducible mod {self.p}"
            )
        object.__setattr__(self, "coeffs", tuple(c % self.p for c in self.coeffs))

    def __mul__(self, other: "FiniteFieldElt") -> "FiniteFieldElt":
        if self.p != other.p:
            raise ValueError("mixed characteristics")
        return FiniteFieldElt(self.p, _mul(self.p, self.coeffs, other.coeffs))

    def __pow__(self, e: int) -> "FiniteFieldElt":
        return FiniteFieldElt(self.p, _pow(self.p, self.coeffs, e))

    def apply_sigma(self, i: int) -> "FiniteFieldElt":
        if i % 7 == 0:
            raise ValueError("exponent must be invertible mod 7")
        return FiniteFieldElt(self.p, _apply_sigma(self.p, i % 7, self.coeffs))


def galois_vs_frobenius(p: int, i: int, trials: int = 12) -> bool:
    """Does x -> x^i agree with u -> u^(p^d), d the discrete log of i base p?

    Both maps are checked on the full power basis 1, x, ..., x^5 (which
    already decides agreement, both being ring maps) and on ``trials``
    seeded pseudo-random elements on top.
    """
    if residue_order_mod7(p) != 6:
        raise ValueError(
            f"the degree-six cyclotomic modulus is reducible mod {p}"
        )
    _check_congruence(p)
    if not 1 <= i <= 6:
        raise ValueError(f"i must lie in 1..6, got {i}")
    d = next(d for d in range(6) if pow(p, d, 7) == i)
    exponent = p**d
    rng = random.Random(f"{SAMPLE_SEED}:{p}:{i}")
    elements = [tuple(1 if k == j else 0 for k in range(6)) for j in range(6)]
    elements += [
        tuple(rng.randrange(p) for _ in range(6)) for _ in range(trials)
    ]
    return all(
        _apply_sigma(p, i, a) == _pow(p, a, exponent) for a in elements
    )


@dataclass(frozen=True)
class UnitGeneratorReport:
    """Reduction of the cyclotomic unit -1 - zeta at the ramified prime."""

    reduction_value: int
    reduction_order: int
    polynomial_identity: bool

    @property
    def passed(self) -> bool:
        return (
            self.reduction_value == 5
            and self.reduction_order == 6
            and self.polynomial_identity
        )

    def to_dict(self) -> dict:
        return {
            "reduction_value_mod_7": self.reduction_value,
            "reduction_order": self.reduction_order,
            "unit_identity_holds": self.polynomial_identity,
            "passed": self.passed,
        }


def unit_generator_check() -> UnitGeneratorReport:
    """-1 - zeta reduces to -2 = 5 (mod 7), a generator of (Z/7)^x.

    Also re-derives the unit identity 1 - x^2 = (x - 1)(-1 - x) by exact
    polynomial multiplication, so the element really is a unit upstairs.
    """
    value = (-1 - 1) % 7
    order = element_order(7, value)
    # (x - 1) * (-1 - x) expanded in Z[x]
    left = [-1, 1]          # x - 1
    right = [-1, -1]        # -1 - x
    prod = [0, 0, 0]
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            prod[i + j] += a * b
    identity = prod == [1, 0, -1]  # 1 - x^2
    return UnitGeneratorReport(value, order, identity)


# ---------------------------------------------------------------------------
# Certificates.

@dataclass(frozen=True)
class CheckResult:
    name: str
    statement: str
    passed: bool
    witness: str

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "statement": self.statement,
            "pass": self.passed,
            "witness": self.witness,
        }


CLASS_NUMBER_ASSUMPTION = "class number 1"
GOOD_REDUCTION_ASSUMPTION = "good reduction outside 7"


@dataclass(frozen=True)
class InertiaCertificate:
    """Per-prime certificate that no intermediate unramified field can exist."""

    p: int
    congruence_check: bool
    inertia_order: Optional[int]
    gcd_check: Optional[bool]
    frobenius_exponents: Optional[tuple[int, int, int]]
    seven_nondivisibility: bool
    elliptic_order: int
    elliptic_seven_free: bool
    unit_generator: UnitGeneratorReport
    checks: tuple[CheckResult, ...]
    assumptions: tuple[str, ...]
    conclusion: Optional[str]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "congruence_check": self.congruence_check,
            "inertia_order": self.inertia_order,
            "gcd_check": self.gcd_check,
            "frobenius_exponents": (
                list(self.frobenius_exponents) if self.frobenius_exponents else None
            ),
            "seven_nondivisibility": self.seven_nondivisibility,
            "elliptic_order": self.elliptic_order,
            "elliptic_seven_free": self.elliptic_seven_free,
            "unit_generator": self.unit_generator.to_dict(),
            "checks": [c.to_dict() for c in self.checks],
            "assumptions": list(self.assumptions),
            "conclusion": self.conclusion,
        }


def kitself_certificate(p: int) -> InertiaCertificate:
    """Run every inertia check at p; conclude K' = K only if all pass.

    >>> kitself_certificate(3).conclusion
    "K' = K"
    >>> kitself_certificate(2).passed
    False
    """
    _require_prime(p)
    if p == 7:
        raise ValueError("p must differ from 7")
    checks: list[CheckResult] = []

    congruent = p % 7 == 3
    checks.append(CheckResult(
        "congruence_check",
        "p = 3 (mod 7)",
        congruent,
        f"{p} = {p % 7} (mod 7)",
    ))

    order_val: Optional[int] = None
    gcd_ok: Optional[bool] = None
    frob: Optional[tuple[int, int, int]] = None
    if congruent:
        q = p * p + p + 1
        order_val = inertia_order(p)
        gcd_ok = gcd(p**6 - 1, p**3 * q) == q
        checks.append(CheckResult(
            "inertia_order",
            "#(I_p) = (p^6 - 1)/(p^2 + p + 1)",
            order_val * q == p**6 - 1,
            f"({p}^6 - 1)/{q} = {order_val}",
        ))
        checks.append(CheckResult(
            "gcd_check",
            "gcd(p^6 - 1, p^3 (p^2 + p + 1)) = p^2 + p + 1",
            bool(gcd_ok),
            f"gcd({p**6 - 1}, {p**3 * q}) = {gcd(p**6 - 1, p**3 * q)}",
        ))
        frob = frobenius_exponents(p)
        checks.append(CheckResult(
            "frobenius_exponents",
            "p^3 = 6, p^4 = 4, p^5 = 5 (mod 7)",
            frob == (6, 4, 5),
            f"(p^3, p^4, p^5) = {frob} (mod 7)",
        ))

    no_div_q, _ = seven_divisibility(p)
    checks.append(CheckResult(
        "seven_nondivisibility",
        "7 does not divide p^2 + p + 1",
        not no_div_q,
        f"p^2 + p + 1 = {p * p + p + 1}",
    ))

    elliptic = p * p - 1
    elliptic_free = elliptic % 7 != 0
    checks.append(CheckResult(
        "elliptic_order",
        "7 does not divide p^2 - 1",
        elliptic_free,
        f"p^2 - 1 = {elliptic}",
    ))

    unit = unit_generator_check()
    checks.append(CheckResult(
        "unit_generator",
        "-1 - zeta reduces to a generator of (Z/7)^x",
        unit.passed,
        f"value {unit.reduction_value}, order {unit.reduction_order}",
    ))

    all_pass = all(c.passed for c in checks)
    return InertiaCertificate(
        p=p,
        congruence_check=congruent,
        inertia_order=order_val,
        gcd_check=gcd_ok,
        frobenius_exponents=frob,
        seven_nondivisibility=not no_div_q,
        elliptic_order=elliptic,
        elliptic_seven_free=elliptic_free,
        unit_generator=unit,
        checks=tuple(checks),
        assumptions=(CLASS_NUMBER_ASSUMPTION,),
        conclusion="K' = K" if all_pass else None,
    )


@dataclass(frozen=True)
class BaseCertificate:
    """Two-prime certificate pinning the connectedness base field to K."""

    p: int
    q: int
    certificate_p: InertiaCertificate
    certificate_q: InertiaCertificate
    odd_check: bool
    assumptions: tuple[str, ...]
    statements: tuple[str, ...]
    conclusion: Optional[str]

    @property
    def passed(self) -> bool:
        return self.odd_check and self.certificate_p.passed and self.certificate_q.passed

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "odd_check": self.odd_check,
            "certificate_p": self.certificate_p.to_dict(),
            "certificate_q": self.certificate_q.to_dict(),
            "assumptions": list(self.assumptions),
            "statements": list(self.statements),
            "conclusion": self.conclusion,
        }


def base_certificate(p: int, q: int) -> BaseCertificate:
    """Certify K_Phi(A) = K from inertia certificates at two distinct primes.

    >>> base_certificate(3, 17).conclusion
    'K_Phi(A) = K = Q_Phi(A)'
    >>> base_certificate(3, 2).passed
    False
    """
    if p == q:
        raise ValueError("the two primes must be distinct")
    cert_p = kitself_certificate(p)
    cert_q = kitself_certificate(q)
    odd = p % 2 == 1 and q % 2 == 1
    statements = (
        "K_Phi(A) lies in K(A_n) for every n >= 3",
        "K(A_p) intersect K(A_q) is unramified over K away from 7",
        "no intermediate field survives the inertia bound at either prime",
    )
    ok = odd and cert_p.passed and cert_q.passed
    return BaseCertificate(
        p=p,
        q=q,
        certificate_p=cert_p,
        certificate_q=cert_q,
        odd_check=odd,
        assumptions=(CLASS_NUMBER_ASSUMPTION, GOOD_REDUCTION_ASSUMPTION),
        statements=statements,
        conclusion="K_Phi(A) = K = Q_Phi(A)" if ok else None,
    )
