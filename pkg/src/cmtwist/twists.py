"""Degree calculus for connectedness extensions of character twists.

Given a Weil-type datum and a finite-order character with values in the
acting CM field, the reports below record exactly what the group theory
forces about the twisted variety's connectedness extension: a divisor
bound gcd(n, 2r) refined through the roots of unity of the value field,
exact degrees when that bound collapses to 1 or 2, and nothing else.

Unverifiable inputs (endomorphism fields, connectedness of the untwisted
group, integrality of the character's automorphisms) are explicit assumed
flags echoed into every report, so each report is an honest conditional.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .cmtypes import WeilDatum, is_weil_type, weil_r
from .fields import AbelianField, is_subfield, roots_of_unity_order


class HypothesisError(ValueError):
    """A named theorem hypothesis fails; carries the hypothesis verbatim."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        super().__init__(f"hypothesis violated: {hypothesis}"
                         + (f" ({detail})" if detail else ""))


HYP_R_EVEN = "r is even"
HYP_N_NOT_DIVIDING_R = "n does not divide r"
HYP_WEIL_TYPE = "(A, k, iota) is of Weil type"
HYP_VALUES_IN_K = "c takes values in k^x"
HYP_CENTRAL = "k embeds in the center of End0(A)"
HYP_END_A = "F = F(End(A))"
HYP_PHI_BASE = "F_Phi(A) = F"
HYP_AUT_VALUED = "iota(c) takes values in Aut(A)"
HYP_HOM_ZERO = "Hom(X, Y) = 0"
HYP_END_XY = "F = F(End(X)) = F(End(Y))"
HYP_DEG_K = "[k:Q] = 2 dim(Y)"
HYP_T_ODD = "dim(X) = t dim(Y) for some odd positive integer t"
HYP_QUADRATIC = "c is the non-trivial character of the quadratic extension M/F"


@dataclass(frozen=True)
class CharacterSpec:
    """Finite-order character valued in the roots of unity of a number field.

    ``extension_label`` names the cyclic degree-n extension M of the ground
    field cut out by the character; M itself is never constructed.
    """

    value_field: AbelianField
    order: int
    extension_label: str

    @property
    def extension_degree(self) -> int:
        return self.order


def make_character(k: AbelianField, n: int, label: str = "M") -> CharacterSpec:
    """Character of exact order n with values mu_n(k); needs n | w(k).

    >>> from .fields import quadratic
    >>> make_character(quadratic(-3), 3).extension_degree
    3
    """
    if n < 2:
        raise ValueError(f"character order must be at least 2, got {n}")
    w = roots_of_unity_order(k)
    if gcd(n, w) != n:
        raise HypothesisError(
            f"character with image mu_{n}(k) impossible in this field",
            f"w(k) = {w} is not divisible by {n}",
        )
    return CharacterSpec(k, n, label)


def central_twist_transfer(values_central: bool, end_a_over_f: bool) -> Optional[bool]:
    """Does End_F carry over to the twist?  True for central cocycles.

    Central values transfer the F-rational endomorphism ring to the twist;
    when additionally both endomorphism fields equal F, the cocycle is
    forced to be a character valued in the units of the center.  With
    non-central values nothing is concluded (None).
    """
    if values_central:
        return True
    return None


@dataclass(frozen=True)
class DiscondResult:
    """Galois groups of M / F_Phi(B) / F cut out by an order-n character.

    ``d`` is the order of the intersection of the character image with the
    rational points of the untwisted envelope, supplied as a hypothesis.
    """

    n: int
    d: int
    gal_phiB_over_F_order: int
    gal_M_over_phiB_order: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "gal_phiB_over_F": f"Z/{self.gal_phiB_over_F_order}",
            "gal_M_over_phiB": f"Z/{self.gal_M_over_phiB_order}",
        }


def discond_groups(n: int, d: int) -> DiscondResult:
    """Split Gal(M/F) of order n into the two cyclic layers.

    >>> discond_groups(3, 1).gal_phiB_over_F_order
    3
    >>> discond_groups(6, 2).to_dict()['gal_phiB_over_F']
    'Z/3'
    """
    if n < 1 or d < 1 or n % d != 0:
        raise ValueError(f"d = {d} must divide n = {n}")
    return DiscondResult(n, d, n // d, d)


def hodge_exponent_constraint(n: int, r: int) -> tuple[int, ...]:
    """Admissible orders in the image-envelope intersection: divisors of gcd(n, 2r).

    Elements satisfy both alpha^n = 1 and (via the polarization character)
    alpha^(2r) = 1.

    >>> hodge_exponent_constraint(3, 8)
    (1,)
    >>> hodge_exponent_constraint(6, 2)
    (1, 2)
    """
    if n < 1:
        raise ValueError(f"character order must be positive, got {n}")
    if r % 2 != 0:
        raise HypothesisError(HYP_R_EVEN, f"r = {r}")
    t = gcd(n, 2 * r)
    return tuple(e for e in range(1, t + 1) if t % e == 0)


@dataclass(frozen=True)
class TwistXReport:
    """Conclusions for twisting a single Weil-type variety by an order-n character."""

    n: int
    r: int
    t: int
    w_k: int
    mu_bound: int
    extension_label: str
    hypotheses: dict[str, bool]
    end_b_over_f: bool
    disconnection: bool
    m_over_phiB_divisor: Optional[int]
    exact_m_over_phiB: Optional[int]
    phiB_over_F_exact: Optional[int]
    phiB_equals_M: bool
    statements: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "t": self.t,
            "w_k": self.w_k,
            "mu_bound": self.mu_bound,
            "extension_label": self.extension_label,
            "hypotheses": dict(sorted(self.hypotheses.items())),
            "conclusions": {
                "end_b_over_f": self.end_b_over_f,
                "disconnection": self.disconnection,
                "m_over_phiB_divisor": self.m_over_phiB_divisor,
                "exact_m_over_phiB": self.exact_m_over_phiB,
                "phiB_over_F_exact": self.phiB_over_F_exact,
                "phiB_equals_M": self.phiB_equals_M,
            },
            "statements": list(self.statements),
        }


def twist_x(
    D: WeilDatum,
    c: CharacterSpec,
    *,
    end_field_equal: bool = True,
    phi_base_equal: bool = True,
    aut_valued: bool = True,
    base_central: bool = True,
) -> TwistXReport:
    """Run the single-variety twist theorem on a Weil datum and character.

    Checked hypotheses raise :class:`HypothesisError` naming the violated
    condition; assumed flags are echoed into the report unchanged.
    """
    k = c.value_field
    if k != D.base or not all(is_subfield(k, T.field) for T in D.components):
        raise HypothesisError(HYP_VALUES_IN_K,
                              "character value field must be the datum's base field")
    if not base_central:
        raise HypothesisError(HYP_CENTRAL)
    r = weil_r(D)
    if r % 2 != 0:
        raise HypothesisError(HYP_R_EVEN, f"r = {r}")
    n = c.order
    if r % n == 0:
        raise HypothesisError(HYP_N_NOT_DIVIDING_R, f"n = {n} divides r = {r}")
    if not is_weil_type(D):
        raise HypothesisError(HYP_WEIL_TYPE)

    t = gcd(n, 2 * r)
    w_k = roots_of_unity_order(k)
    mu_bound = gcd(t, w_k)
    label = c.extension_label

    hypotheses = {
        HYP_R_EVEN: True,
        HYP_N_NOT_DIVIDING_R: True,
        HYP_WEIL_TYPE: True,
        HYP_VALUES_IN_K: True,
        HYP_CENTRAL + " (assumed)": base_central,
        HYP_END_A + " (assumed)": end_field_equal,
        HYP_PHI_BASE + " (assumed)": phi_base_equal,
        HYP_AUT_VALUED + " (assumed)": aut_valued,
    }
    statements = [
        "F = F(End(B))",
        "F != F_Phi(A) or F != F_Phi(B)",
    ]

    divisor: Optional[int] = None
    exact: Optional[int] = None
    phi_exact: Optional[int] = None
    equals_m = False
    if phi_base_equal:
        divisor = mu_bound
        statements.append(
            f"F_Phi(B) lies in {label} and "
            f"[{label}:F_Phi(B)] divides gcd(gcd(n, 2r), w(k)) = {mu_bound}"
        )
        if mu_bound == 1:
            exact, phi_exact, equals_m = 1, n, True
            statements.append(f"F_Phi(B) = {label} and [F_Phi(B):F] = {n}")
        elif t == 2:
            # -1 is a homothety of the envelope and lies in the image (n even),
            # so the two-element bound is attained exactly.
            exact, phi_exact = 2, n // 2
            statements.append(
                f"[{label}:F_Phi(B)] = 2 and [F_Phi(B):F] = {n // 2}"
            )

    return TwistXReport(
        n=n,
        r=r,
        t=t,
        w_k=w_k,
        mu_bound=mu_bound,
        extension_label=label,
        hypotheses=hypotheses,
        end_b_over_f=True,
        disconnection=True,
        m_over_phiB_divisor=divisor,
        exact_m_over_phiB=exact,
        phiB_over_F_exact=phi_exact,
        phiB_equals_M=equals_m,
        statements=tuple(statements),
    )


@dataclass(frozen=True)
class TwistEReport:
    """Conclusions for twisting the small factor of a product X x Y."""

    dim_x: int
    dim_y: int
    t: int
    deg_k: int
    extension_label: str
    hypotheses: dict[str, bool]
    end_b_over_f: bool
    disconnection: bool
    phiB_equals_M: bool
    statements: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "dim_x": self.dim_x,
            "dim_y": self.dim_y,
            "t": self.t,
            "deg_k": self.deg_k,
            "extension_label": self.extension_label,
            "hypotheses": dict(sorted(self.hypotheses.items())),
            "conclusions": {
                "end_b_over_f": self.end_b_over_f,
                "disconnection": self.disconnection,
                "phiB_equals_M": self.phiB_equals_M,
            },
            "statements": list(self.statements),
        }


def twist_e(
    dim_x: int,
    dim_y: int,
    k: AbelianField,
    D: WeilDatum,
    *,
    extension_label: str = "M",
    hom_xy_zero: bool = True,
    end_fields_equal: bool = True,
    phi_base_equal: bool = True,
) -> TwistEReport:
    """Quadratic twist of the elliptic-type factor of a Weil-type product."""
    if not hom_xy_zero:
        raise HypothesisError(HYP_HOM_ZERO)
    if not end_fields_equal:
        raise HypothesisError(HYP_END_XY)
    if k.degree != 2 * dim_y:
        raise HypothesisError(HYP_DEG_K,
                              f"[k:Q] = {k.degree}, dim(Y) = {dim_y}")
    t, rem = divmod(dim_x, dim_y)
    if rem != 0 or t <= 0 or t % 2 == 0:
        raise HypothesisError(HYP_T_ODD, f"dim(X)/dim(Y) = {dim_x}/{dim_y}")
    if D.base != k:
        raise HypothesisError(HYP_VALUES_IN_K,
                              "datum base must be the twisting CM field")
    if D.dim != dim_x + dim_y:
        raise ValueError(
            f"datum dimension {D.dim} does not match dim(X) + dim(Y) = {dim_x + dim_y}"
        )
    if not is_weil_type(D):
        raise HypothesisError(HYP_WEIL_TYPE)

    label = extension_label
    hypotheses = {
        HYP_DEG_K: True,
        HYP_T_ODD: True,
        HYP_WEIL_TYPE: True,
        HYP_QUADRATIC: True,
        HYP_HOM_ZERO + " (assumed)": hom_xy_zero,
        HYP_END_XY + " (assumed)": end_fields_equal,
        HYP_PHI_BASE + " (assumed)": phi_base_equal,
    }
    statements = [
        "F = F(End(B))",
        "F(End(A)) != F_Phi(A) or F(End(B)) != F_Phi(B)",
    ]
    equals_m = False
    if phi_base_equal:
        equals_m = True
        statements.append(f"F_Phi(B) = {label}")

    return TwistEReport(
        dim_x=dim_x,
        dim_y=dim_y,
        t=t,
        deg_k=k.degree,
        extension_label=label,
        hypotheses=hypotheses,
        end_b_over_f=True,
        disconnection=True,
        phiB_equals_M=equals_m,
        statements=tuple(statements),
    )
