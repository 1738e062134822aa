"""Command-line front end and JSON report emitter.

One job per invocation.  Reports are deterministic: identical jobs emit
byte-identical JSON (sorted keys, no timestamps).  Exit codes separate
the three ways a run can end: 0 when every conclusion was reached, 2 when
a theorem hypothesis or certificate check failed (an honest conditional
left unmet), 1 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Callable, Optional

from . import __version__
from .cmtypes import (
    CMType,
    balance_product,
    is_primitive,
    is_weil_type,
    reflex_field,
    reflex_type,
    restriction_multiplicities,
    stabilizer,
    validate_cm_type,
    weil_datum,
    weil_r,
)
from .fields import (
    AbelianField,
    compositum,
    cyclotomic,
    is_cm,
    is_totally_real,
    maximal_real_subfield,
    quadratic,
    roots_of_unity_order,
)
from .inertia import base_certificate, kitself_certificate
from .residues import invariant_factor_basis, invariant_factors, is_quotient_basis
from .twists import (
    HypothesisError,
    discond_groups,
    make_character,
    twist_e,
    twist_x,
)

COMMANDS = (
    "field",
    "cmtype",
    "twist-x",
    "twist-e",
    "discond",
    "inertia",
    "base-cert",
    "example-41",
    "example-42",
)


class InputError(ValueError):
    """Malformed job document; message carries the offending field path."""


@dataclass(frozen=True)
class JobSpec:
    command: str
    payload: dict
    output_path: Optional[str] = None


@dataclass(frozen=True)
class Report:
    command: str
    payload: dict
    results: dict
    statements: tuple[str, ...]
    hypotheses_assumed: tuple[str, ...]
    concluded: bool
    version: str = __version__

    def to_document(self) -> dict:
        return {
            "command": self.command,
            "payload": self.payload,
            "results": self.results,
            "statements": list(self.statements),
            "hypotheses_assumed": list(self.hypotheses_assumed),
            "concluded": self.concluded,
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Input validation.  Strict: unknown keys are rejected with their path.

def _require_mapping(obj: Any, where: str) -> dict:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object, got {type(obj).__name__}")
    return obj


def _check_keys(obj: dict, required: set[str], optional: set[str], where: str) -> None:
    keys = set(obj)
    missing = required - keys
    unknown = keys - required - optional
    if missing:
        raise InputError(f"{where}: missing key(s) {sorted(missing)}")
    if unknown:
        raise InputError(f"{where}: unknown key(s) {sorted(unknown)}")


def _require_int(obj: Any, where: str) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise InputError(f"{where}: expected an integer")
    return obj


def parse_field_literal(obj: Any, where: str = "field") -> AbelianField:
    """Field literal: {"cyclotomic": m} | {"quadratic": d} |
    {"real_subfield_of": m} | {"compositum": [literal, ...]}."""
    obj = _require_mapping(obj, where)
    if len(obj) != 1:
        raise InputError(f"{where}: field literal must have exactly one key")
    key, value = next(iter(obj.items()))
    try:
        if key == "cyclotomic":
            return cyclotomic(_require_int(value, f"{where}.cyclotomic"))
        if key == "quadratic":
            return quadratic(_require_int(value, f"{where}.quadratic"))
        if key == "real_subfield_of":
            m = _require_int(value, f"{where}.real_subfield_of")
            return maximal_real_subfield(cyclotomic(m))
        if key == "compositum":
            if not isinstance(value, list) or not value:
                raise InputError(f"{where}.compositum: expected a non-empty list")
            parts = [
                parse_field_literal(v, f"{where}.compositum[{i}]")
                for i, v in enumerate(value)
            ]
            out = parts[0]
            for part in parts[1:]:
                out = compositum(out, part)
            return out
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{where}: {exc}") from exc
    raise InputError(f"{where}: unknown field literal key {key!r}")


def _coordinate_residue(m: int, basis, coords, where: str) -> int:
    if len(coords) != len(basis):
        raise InputError(
            f"{where}: coordinate tuple length {len(coords)} does not match "
            f"basis rank {len(basis)}"
        )
    x = 1
    for a, (g, d) in zip(coords, basis):
        x = (x * pow(g, _require_int(a, where) % d, m)) % m
    return x


def declared_basis(K: AbelianField) -> tuple[tuple[int, int], ...]:
    """Invariant-factor basis of Gal(K/Q) used for coordinate input.

    For CM fields the order-2 generator is swapped to complex conjugation
    whenever that still gives a direct-sum basis, so half-systems written
    coordinate-wise keep conjugation as a plain coordinate flip.
    """
    basis = list(invariant_factor_basis(K.conductor, K.fixed_group))
    c_rep = K.conductor - 1
    if is_cm(K) and all(g != c_rep for g, _ in basis):
        for i, (_, d) in enumerate(basis):
            if d == 2:
                candidate = list(basis)
                candidate[i] = (c_rep, 2)
                if is_quotient_basis(K.conductor, K.fixed_group, candidate):
                    basis = candidate
                    break
    return tuple(basis)


def parse_cm_type(K: AbelianField, labels: Any, where: str = "type") -> tuple[CMType, Optional[tuple]]:
    """CM-type from residue labels or coordinate tuples.

    Coordinates refer to the declared basis of Gal(K/Q), which is returned
    alongside so callers can echo it into the report.
    """
    if not isinstance(labels, list) or not labels:
        raise InputError(f"{where}: expected a non-empty list of labels")
    uses_coords = any(isinstance(e, list) for e in labels)
    basis = None
    residues = []
    if uses_coords:
        basis = declared_basis(K)
        for i, e in enumerate(labels):
            if not isinstance(e, list):
                raise InputError(f"{where}[{i}]: mixing residues and coordinates")
            residues.append(_coordinate_residue(K.conductor, basis, e, f"{where}[{i}]"))
    else:
        residues = [_require_int(e, f"{where}[{i}]") for i, e in enumerate(labels)]
    try:
        return validate_cm_type(K, residues), basis
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc


def _parse_components(K_base: AbelianField, obj: Any, where: str):
    if not isinstance(obj, list) or not obj:
        raise InputError(f"{where}: expected a non-empty list of components")
    comps = []
    for i, comp in enumerate(obj):
        comp = _require_mapping(comp, f"{where}[{i}]")
        _check_keys(comp, {"field", "type"}, set(), f"{where}[{i}]")
        K = parse_field_literal(comp["field"], f"{where}[{i}].field")
        T, _ = parse_cm_type(K, comp["type"], f"{where}[{i}].type")
        comps.append(T)
    try:
        return weil_datum(K_base, comps)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc


def _parse_assume(obj: Any, allowed: set[str], where: str) -> dict[str, bool]:
    if obj is None:
        return {}
    obj = _require_mapping(obj, where)
    _check_keys(obj, set(), allowed, where)
    for key, value in obj.items():
        if not isinstance(value, bool):
            raise InputError(f"{where}.{key}: expected a boolean")
    return dict(obj)


_PAYLOAD_SCHEMAS: dict[str, tuple[set[str], set[str]]] = {
    "field": ({"field"}, set()),
    "cmtype": ({"field", "type"}, set()),
    "twist-x": ({"base", "components", "character"}, {"assume"}),
    "twist-e": ({"base", "components", "dim_x", "dim_y"}, {"label", "assume"}),
    "discond": ({"n", "d"}, set()),
    "inertia": ({"p"}, set()),
    "base-cert": ({"p", "q"}, set()),
    "example-41": (set(), set()),
    "example-42": (set(), {"p", "q"}),
}


def validate_input(document: Any) -> JobSpec:
    """Strict validation of a job document {"command": ..., "payload": {...}}."""
    document = _require_mapping(document, "job")
    _check_keys(document, {"command"}, {"payload", "output"}, "job")
    command = document["command"]
    if command not in COMMANDS:
        raise InputError(f"job.command: unknown command {command!r}")
    payload = _require_mapping(document.get("payload", {}), "payload")
    required, optional = _PAYLOAD_SCHEMAS[command]
    _check_keys(payload, required, optional, "payload")
    output = document.get("output")
    if output is not None and not isinstance(output, str):
        raise InputError("job.output: expected a string path")
    return JobSpec(command, payload, output)


# ---------------------------------------------------------------------------
# Serialization helpers.

def _coset(c: frozenset[int]) -> list[int]:
    return sorted(c)


def field_dict(K: AbelianField) -> dict:
    return {
        "conductor": K.conductor,
        "fixed_group": sorted(K.fixed_group.elements),
        "degree": K.degree,
        "is_cm": is_cm(K),
        "is_totally_real": is_totally_real(K),
        "roots_of_unity": roots_of_unity_order(K),
    }


def _cmtype_list(T: CMType) -> list[list[int]]:
    return [list(t) for t in T.sorted_psi()]


def _mults_list(counts: dict[frozenset[int], int]) -> list[dict]:
    return [
        {"coset": _coset(sigma), "n": counts[sigma]}
        for sigma in sorted(counts, key=min)
    ]


def _basis_list(basis) -> list[dict]:
    return [{"generator": g, "order": d} for g, d in basis]


# ---------------------------------------------------------------------------
# Command handlers.

def _run_field(payload: dict) -> Report:
    K = parse_field_literal(payload["field"])
    factors = invariant_factors(K.conductor, K.fixed_group)
    results = {
        "field": field_dict(K),
        "invariant_factors": list(factors),
    }
    kind = "CM" if is_cm(K) else "totally real"
    statements = (
        f"conductor {K.conductor}, degree {K.degree}, {kind}",
        "Gal = " + (" x ".join(f"Z/{d}" for d in factors) or "trivial"),
    )
    return Report("field", payload, results, statements, (), True)


def _run_cmtype(payload: dict) -> Report:
    K = parse_field_literal(payload["field"])
    T, basis = parse_cm_type(K, payload["type"])
    refl = reflex_field(T)
    inv = reflex_type(T, "inverse")
    conj = reflex_type(T, "conjugate")
    results = {
        "field": field_dict(K),
        "type": _cmtype_list(T),
        "valid": True,
        "stabilizer": sorted(stabilizer(T).elements),
        "primitive": is_primitive(T),
        "reflex_field": field_dict(refl),
        "reflex_type_inverse": _cmtype_list(inv.cm_type),
        "reflex_type_conjugate": _cmtype_list(conj.cm_type),
    }
    statements = [
        f"valid CM-type, {'primitive' if results['primitive'] else 'induced'}",
        f"reflex field has conductor {refl.conductor} and degree {refl.degree}",
    ]
    if basis is not None:
        results["coordinate_basis"] = _basis_list(basis)
        basis_text = ", ".join(f"generator {g} of order {d}" for g, d in basis)
        statements.insert(0, f"coordinate basis: {basis_text}")
    return Report("cmtype", payload, results, tuple(statements), (), True)


_TWIST_X_ASSUME = {"end_field_equal", "phi_base_equal", "aut_valued", "base_central"}
_TWIST_E_ASSUME = {"hom_xy_zero", "end_fields_equal", "phi_base_equal"}

_ASSUMED_SUFFIX = " (assumed)"


def _assumed_names(hypotheses: dict[str, bool]) -> tuple[str, ...]:
    return tuple(
        name[: -len(_ASSUMED_SUFFIX)]
        for name, value in sorted(hypotheses.items())
        if name.endswith(_ASSUMED_SUFFIX) and value
    )


def _run_twist_x(payload: dict) -> Report:
    base = parse_field_literal(payload["base"], "base")
    datum = _parse_components(base, payload["components"], "components")
    char_obj = _require_mapping(payload["character"], "character")
    _check_keys(char_obj, {"order"}, {"label"}, "character")
    label = char_obj.get("label", "M")
    if not isinstance(label, str):
        raise InputError("character.label: expected a string")
    char = make_character(base, _require_int(char_obj["order"], "character.order"), label)
    assume = _parse_assume(payload.get("assume"), _TWIST_X_ASSUME, "assume")
    report = twist_x(datum, char, **assume)
    results = {
        "base": field_dict(base),
        "multiplicities": _mults_list(restriction_multiplicities(datum)),
        "weil_r": report.r,
        "twist": report.to_dict(),
    }
    return Report("twist-x", payload, results, report.statements,
                  _assumed_names(report.hypotheses), True)


def _run_twist_e(payload: dict) -> Report:
    base = parse_field_literal(payload["base"], "base")
    datum = _parse_components(base, payload["components"], "components")
    dim_x = _require_int(payload["dim_x"], "dim_x")
    dim_y = _require_int(payload["dim_y"], "dim_y")
    label = payload.get("label", "M")
    if not isinstance(label, str):
        raise InputError("label: expected a string")
    assume = _parse_assume(payload.get("assume"), _TWIST_E_ASSUME, "assume")
    report = twist_e(dim_x, dim_y, base, datum, extension_label=label, **assume)
    results = {
        "base": field_dict(base),
        "multiplicities": _mults_list(restriction_multiplicities(datum)),
        "weil_r": weil_r(datum),
        "twist": report.to_dict(),
    }
    return Report("twist-e", payload, results, report.statements,
                  _assumed_names(report.hypotheses), True)


def _run_discond(payload: dict) -> Report:
    n = _require_int(payload["n"], "n")
    d = _require_int(payload["d"], "d")
    try:
        result = discond_groups(n, d)
    except ValueError as exc:
        raise InputError(f"payload: {exc}") from exc
    return Report("discond", payload, {"discond": result.to_dict()}, (), (), True)


def _run_inertia(payload: dict) -> Report:
    p = _require_int(payload["p"], "p")
    try:
        cert = kitself_certificate(p)
    except ValueError as exc:
        raise InputError(f"p: {exc}") from exc
    return Report(
        "inertia",
        payload,
        {"certificate": cert.to_dict()},
        tuple(c.statement for c in cert.checks if c.passed),
        cert.assumptions,
        cert.passed,
    )


def _run_base_cert(payload: dict) -> Report:
    p = _require_int(payload["p"], "p")
    q = _require_int(payload["q"], "q")
    try:
        cert = base_certificate(p, q)
    except ValueError as exc:
        raise InputError(f"payload: {exc}") from exc
    return Report(
        "base-cert",
        payload,
        {"certificate": cert.to_dict()},
        cert.statements,
        cert.assumptions,
        cert.passed,
    )


# ---------------------------------------------------------------------------
# Worked-example replays.

EXAMPLE_41_TUPLES = ((0, 0), (0, 1), (0, 4), (0, 7), (1, 2), (1, 3), (1, 5), (1, 6))

EXAMPLE_41_ASSUMED = (
    "End(A) is the full ring of integers of K",
    "F = F(End(A))",
    "F_Phi(A) = F",
    "iota(c) takes values in Aut(A)",
)

EXAMPLE_42_ASSUMED = (
    "class number 1",
    "good reduction outside 7",
    "Hom(J,E^(d)) = 0",
    "endomorphism-field identities",
)


def _example_41_basis(K: AbelianField) -> tuple[tuple[int, int], ...]:
    """Coordinate basis splitting Gal(K/Q) along the two cyclotomic strands.

    The order-2 generator is complex conjugation (acts only on the
    quadratic strand); the order-8 generator acts only on the real strand
    through the residue 3 mod 17.
    """
    m = K.conductor
    def crt(r3: int, r17: int) -> int:
        return next(x for x in range(1, m) if x % 3 == r3 and x % 17 == r17)
    return ((crt(2, 1), 2), (crt(1, 3), 8))


def _run_example_41(payload: dict) -> Report:
    k = quadratic(-3)
    L = maximal_real_subfield(cyclotomic(17))
    K = compositum(k, L)
    factors = invariant_factors(K.conductor, K.fixed_group)
    basis = _example_41_basis(K)
    residues = [
        _coordinate_residue(K.conductor, basis, list(coords), "type")
        for coords in EXAMPLE_41_TUPLES
    ]
    T = validate_cm_type(K, residues)
    datum = weil_datum(k, [T])
    counts = restriction_multiplicities(datum)
    char = make_character(k, 3, "M")
    report = twist_x(datum, char)
    results = {
        "field_K": field_dict(K),
        "field_k": field_dict(k),
        "field_L": field_dict(L),
        "invariant_factors": list(factors),
        "coordinate_basis": _basis_list(basis),
        "psi_coordinates": [list(t) for t in EXAMPLE_41_TUPLES],
        "psi_residues": sorted(residues),
        "cm_type_valid": True,
        "primitive": is_primitive(T),
        "reflex_field_is_K": reflex_field(T) == K,
        "n_sigma": _mults_list(counts),
        "weil_type": is_weil_type(datum),
        "weil_r": report.r,
        "character": {"order": 3, "label": "M"},
        "twist": report.to_dict(),
        "conclusion": f"F_Phi(B) = M, [F_Phi(B):F] = {report.phiB_over_F_exact}",
    }
    statements = (
        "Gal(K/Q) = Z/2 x Z/8",
        "n_sigma = 4 for both embeddings of k",
    ) + report.statements
    concluded = (
        factors == (2, 8)
        and is_primitive(T)
        and reflex_field(T) == K
        and set(counts.values()) == {4}
        and report.phiB_equals_M
    )
    return Report("example-41", payload, results, statements,
                  EXAMPLE_41_ASSUMED, concluded)


def _run_example_42(payload: dict) -> Report:
    p = _require_int(payload.get("p", 3), "p")
    q = _require_int(payload.get("q", 17), "q")
    K = cyclotomic(7)
    T = validate_cm_type(K, [1, 2, 3])
    refl_inv = reflex_type(T, "inverse")
    refl_conj = reflex_type(T, "conjugate")
    k = quadratic(-7)
    datum_j = weil_datum(k, [T])
    counts_j = restriction_multiplicities(datum_j)
    balancing = balance_product(datum_j)
    if balancing is None:
        raise AssertionError("the single-factor datum must balance")
    datum = weil_datum(k, [T, balancing])
    counts = restriction_multiplicities(datum)
    try:
        cert = base_certificate(p, q)
    except ValueError as exc:
        raise InputError(f"payload: {exc}") from exc
    report = twist_e(3, 1, k, datum, extension_label="L_d")
    concluded = cert.passed and report.phiB_equals_M
    results = {
        "field_K": field_dict(K),
        "field_k": field_dict(k),
        "jacobian_model": "y^7 = x(1-x)",
        "elliptic_model": "y^2 + x*y = x^3 - x^2 - 2*x - 1",
        "cm_type_J": _cmtype_list(T),
        "reflex_field_is_K": reflex_field(T) == K,
        "reflex_type_inverse": _cmtype_list(refl_inv.cm_type),
        "reflex_type_conjugate": _cmtype_list(refl_conj.cm_type),
        "n_sigma_J": _mults_list(counts_j),
        "weil_type_J_alone": is_weil_type(datum_j),
        "balancing_type": _cmtype_list(balancing),
        "n_sigma_product": _mults_list(counts),
        "weil_type_product": is_weil_type(datum),
        "weil_r": weil_r(datum),
        "base_certificate": cert.to_dict(),
        "twist": report.to_dict(),
        "conclusions": (
            ["K_Phi(A) = K", "Q_Phi(A^(d)) = L_d"] if concluded else []
        ),
    }
    statements = (
        "the reflex CM-field of the CM-type of J is K",
        "restriction multiplicities of J alone are (2, 1)",
        "appending the conjugate elliptic type balances them to (2, 2)",
    ) + cert.statements + report.statements
    return Report("example-42", payload, results, statements,
                  EXAMPLE_42_ASSUMED, concluded)


_HANDLERS: dict[str, Callable[[dict], Report]] = {
    "field": _run_field,
    "cmtype": _run_cmtype,
    "twist-x": _run_twist_x,
    "twist-e": _run_twist_e,
    "discond": _run_discond,
    "inertia": _run_inertia,
    "base-cert": _run_base_cert,
    "example-41": _run_example_41,
    "example-42": _run_example_42,
}


def run(job: JobSpec) -> Report:
    """Dispatch a validated job to its owning module and collect the report."""
    return _HANDLERS[job.command](job.payload)


# ---------------------------------------------------------------------------
# argparse front end.

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmtwist",
        description="CM-type, character-twist, and inertia-certificate calculator",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, **flags):
        p = sub.add_parser(name)
        p.add_argument("--input", help="JSON job payload file")
        p.add_argument("--output", help="write the JSON report to this path")
        p.add_argument("--json", action="store_true",
                       help="print the full JSON report instead of a summary")
        for flag, ftype in flags.items():
            p.add_argument(f"--{flag}", type=ftype)
        return p

    add("field")
    add("cmtype")
    add("twist-x")
    add("twist-e")
    add("discond", n=int, d=int)
    add("inertia", p=int)
    add("base-cert", p=int, q=int)
    add("example-41")
    add("example-42", p=int, q=int)
    return parser


def _payload_from_args(args: argparse.Namespace) -> dict:
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            try:
                document = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputError(f"{args.input}: invalid JSON ({exc})") from exc
        return _require_mapping(document, args.input)
    payload = {}
    for flag in ("n", "d", "p", "q"):
        value = getattr(args, flag, None)
        if value is not None:
            payload[flag] = value
    return payload


def _summary_lines(report: Report) -> list[str]:
    lines = [f"command: {report.command}"]
    lines.extend(f"  {s}" for s in report.statements)
    if report.hypotheses_assumed:
        lines.append("assumed: " + "; ".join(report.hypotheses_assumed))
    lines.append("concluded" if report.concluded else "NOT CONCLUDED")
    return lines


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        payload = _payload_from_args(args)
        job = validate_input(
            {"command": args.command, "payload": payload,
             **({"output": args.output} if args.output else {})}
        )
        report = run(job)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except HypothesisError as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1

    text = report.to_json()
    if job.output_path:
        with open(job.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.json:
        sys.stdout.write(text)
    else:
        print("\n".join(_summary_lines(report)))
    return 0 if report.concluded else 2


if __name__ == "__main__":
    sys.exit(main())
