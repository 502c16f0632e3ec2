"""Command-line front end: classification, verification suites, reports.

Every command emits one document, either as JSON (schema "thoma-lab/1",
rationals rendered as "p/q" strings in exact mode) or as an aligned text
table.  Exit codes: 0 all executed verifications passed, 1 a verification
failed, 2 usage or input error, 3 a size cap was exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from . import entropy, groupalg, perm, tensorrep, thoma
from .errors import CapExceededError, ParameterError, ParseError
from .thoma import ThomaParameter, as_fraction

SCHEMA = "thoma-lab/1"

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3


@dataclass(frozen=True)
class RunConfig:
    mode: str = "exact"
    tolerance: float = 1e-9
    enumeration_cap: int = perm.DEFAULT_ENUMERATION_CAP
    dimension_cap: int = tensorrep.DEFAULT_DIMENSION_CAP
    weight_cap: int = groupalg.DEFAULT_WEIGHT_CAP
    output_format: str = "structured"
    seed: int = 0

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if min(self.enumeration_cap, self.dimension_cap, self.weight_cap) <= 0:
            raise ValueError("caps must be positive")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def parse_parameter(text: str) -> ThomaParameter:
    """Parse "a=1/2,1/2;b=;g=0"; any field may be omitted."""
    fields: dict[str, Any] = {}
    pos = 0
    for chunk in text.split(";"):
        offset = pos + (len(chunk) - len(chunk.lstrip()))
        pos += len(chunk) + 1
        stripped = chunk.strip()
        if not stripped:
            continue
        key, eq, value = stripped.partition("=")
        key = key.strip().lower()
        if not eq:
            raise ParseError(f"expected key=value, got {stripped!r}", offset)
        if key not in ("a", "b", "g", "alpha", "beta", "gamma"):
            raise ParseError(f"unknown field {key!r}", offset)
        key = key[0]
        if key in fields:
            raise ParseError(f"duplicate field {key!r}", offset)
        if key == "g":
            fields["g"] = _parse_rational(value, offset) if value.strip() else None
        else:
            fields[key] = [
                _parse_rational(v, offset) for v in value.split(",") if v.strip()
            ]
    return thoma.validate(
        alpha=fields.get("a", ()),
        beta=fields.get("b", ()),
        gamma=fields.get("g"),
    )


def _parse_rational(text: str, offset: int) -> Fraction:
    try:
        return as_fraction(text.strip())
    except ParameterError as exc:
        raise ParseError(str(exc), offset)


def parse_parameter_file(path: str) -> ThomaParameter:
    """Structured alternative: a JSON file with alpha/beta lists and gamma."""
    with open(path) as handle:
        data = json.load(handle)
    return thoma.validate(
        alpha=data.get("alpha", ()),
        beta=data.get("beta", ()),
        gamma=data.get("gamma"),
    )


def format_parameter(kappa: ThomaParameter) -> str:
    a = ",".join(str(v) for v in kappa.alpha)
    b = ",".join(str(v) for v in kappa.beta)
    return f"a={a};b={b};g={kappa.gamma}"


def _load_parameter(text: str) -> ThomaParameter:
    if text.startswith("@"):
        return parse_parameter_file(text[1:])
    return parse_parameter(text)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def _rat(value, config: RunConfig):
    if isinstance(value, Fraction):
        return str(value) if config.mode == "exact" else float(value)
    return value


def _diagram_key(diagram) -> str:
    return ",".join(str(r) for r in diagram)


# ---------------------------------------------------------------------------
# command sections


def section_classify(kappa: ThomaParameter, config: RunConfig) -> tuple[dict, list[Check]]:
    cls = thoma.classify_irreducible(kappa)
    bound = tensorrep.pimsner_popa_bound(kappa)
    result = {
        "kind": cls.kind,
        "n": cls.n,
        "irreducible": cls.irreducible,
        "moment_identity_holds": cls.moment_identity_holds,
        "degenerate": cls.degenerate,
        "faithful": thoma.is_faithful(kappa),
        "infinite_index": thoma.has_infinite_index(kappa),
        "pimsner_popa": {
            "finite": bound.finite,
            "constant": _rat(bound.constant, config) if bound.finite else None,
            "index_bound": _rat(bound.index_bound, config) if bound.finite else None,
        },
    }
    checks = [
        Check(
            "moment-identity-iff-listed-form",
            cls.moment_identity_holds == cls.irreducible,
            f"identity={cls.moment_identity_holds} kind={cls.kind}",
        )
    ]
    return result, checks


def section_char(kappa: ThomaParameter, text: str, config: RunConfig) -> tuple[dict, list[Check]]:
    p = perm.parse_permutation(text)
    value = thoma.character(kappa, p.cycle_type())
    return {
        "permutation": perm.format_permutation(p),
        "cycle_type": list(p.cycle_type()),
        "value": _rat(value, config),
    }, []


def section_weights(kappa: ThomaParameter, n: int, config: RunConfig) -> tuple[dict, list[Check]]:
    vector = groupalg.block_weights(kappa, n, cap=config.weight_cap)
    total = sum(vector.weights.values())
    checks = [
        Check("weights-sum-to-one", total == 1, f"sum={total}"),
        Check("weights-nonnegative", all(w >= 0 for w in vector.weights.values())),
    ]
    return {
        "degree": n,
        "weights": {_diagram_key(d): _rat(w, config) for d, w in vector.sorted_items()},
    }, checks


def section_commuting_square(
    kappa: ThomaParameter, n: int, config: RunConfig
) -> tuple[dict, list[Check]]:
    report = groupalg.commuting_square_check(kappa, n, cap=config.enumeration_cap)
    lhs, rhs = report.quick_pair
    checks = []
    if report.full_commuting is not None and report.full_commuting:
        checks.append(
            Check(
                "quick-pair-necessary-condition",
                report.quick_equal,
                f"pair=({lhs}, {rhs})",
            )
        )
    return {
        "degree": n,
        "quick_pair": [_rat(lhs, config), _rat(rhs, config)],
        "quick_equal": report.quick_equal,
        "full_commuting": report.full_commuting,
    }, checks


def section_small_proj(
    kappa: ThomaParameter, eps: Fraction, k_max: int, config: RunConfig
) -> tuple[dict, list[Check]]:
    found = groupalg.find_small_projection(kappa, eps, k_max=k_max)
    if found is None:
        return {"found": False, "epsilon": _rat(eps, config), "k_max": k_max}, []
    checks = [
        Check(
            "trace-below-epsilon-power",
            0 < found.trace < eps ** found.degree,
            f"trace={found.trace} < {eps}^{found.degree}",
        )
    ]
    return {
        "found": True,
        "epsilon": _rat(eps, config),
        "degree": found.degree,
        "diagram": _diagram_key(found.diagram),
        "trace": _rat(found.trace, config),
    }, checks


def section_entropy(
    kappa: ThomaParameter, n_max: int, config: RunConfig
) -> tuple[dict, list[Check]]:
    report = entropy.entropy_report(kappa, n_max, cap=config.weight_cap)
    checks = [
        Check(
            "upper-bound-is-twice-shift-entropy",
            report.upper_bound == 2 * report.shift_entropy,
        )
    ]
    if report.equality_applicable:
        block_value = entropy.pimsner_popa_block_formula(kappa)
        checks.append(
            Check(
                "block-formula-matches-equality-value",
                abs(block_value - report.equality_value) <= config.tolerance,
                f"block={block_value} equality={report.equality_value}",
            )
        )
    return {
        "shift_entropy": report.shift_entropy,
        "upper_bound": report.upper_bound,
        "equality_applicable": report.equality_applicable,
        "equality_value": report.equality_value,
        "growth_table": [
            {
                "n": row.degree,
                "total": row.total,
                "center": row.center,
                "total_over_n": row.total_over_n,
            }
            for row in report.growth_table
        ],
    }, checks


def section_jones(alpha1, length: int, config: RunConfig) -> tuple[dict, list[Check]]:
    _, report = tensorrep.jones_projections(alpha1, length, cap=config.dimension_cap)
    tol = config.tolerance
    checks = [
        Check("projections-idempotent", report.idempotent_dev <= tol, f"dev={report.idempotent_dev:.3e}"),
        Check("projections-selfadjoint", report.selfadjoint_dev <= tol, f"dev={report.selfadjoint_dev:.3e}"),
        Check("braid-relation-delta", report.braid_dev <= tol, f"dev={report.braid_dev:.3e}"),
        Check("distant-projections-commute", report.far_commutation_dev <= tol, f"dev={report.far_commutation_dev:.3e}"),
    ]
    return {
        "alpha1": _rat(Fraction(str(alpha1)) if isinstance(alpha1, float) else Fraction(alpha1), config),
        "chain_length": length,
        "delta": _rat(report.delta, config),
        "deviations": {
            "idempotent": report.idempotent_dev,
            "selfadjoint": report.selfadjoint_dev,
            "braid": report.braid_dev,
            "far_commutation": report.far_commutation_dev,
        },
    }, checks


def section_rep_verify(
    kappa: ThomaParameter, n: int, config: RunConfig
) -> tuple[dict, list[Check]]:
    """The invariant suite of the tensor model at degree n."""
    if kappa.gamma != 0:
        raise ParameterError("rep-verify needs a gamma = 0 parameter")
    checks: list[Check] = []
    rng = random.Random(config.seed)
    space = tensorrep.index_set(kappa)

    def rep(s, m):
        return tensorrep.represent(kappa, s, m, cap=config.dimension_cap)

    # Multiplicativity and unitarity; exhaustive through degree 4.
    hom_degree = min(n, 4)
    ok = True
    elements = list(perm.enumerate_group(hom_degree, cap=config.enumeration_cap))
    pairs = [(s, t) for s in elements for t in elements]
    if n > 4:
        big = list(perm.enumerate_group(min(n, 6), cap=config.enumeration_cap))
        pairs += [(rng.choice(big), rng.choice(big)) for _ in range(20)]
    for s, t in pairs:
        m = max(hom_degree, s.degree, t.degree)
        if not (rep(perm.compose(s, t), m) == rep(s, m) @ rep(t, m)):
            ok = False
    identity_op = tensorrep.TensorOperator.identity(space.points, hom_degree)
    unitary = all(
        rep(s, hom_degree).adjoint() @ rep(s, hom_degree) == identity_op
        for s in elements
    )
    checks.append(Check("representation-multiplicative", ok, f"{len(pairs)} pairs"))
    checks.append(Check("representation-unitary", unitary, f"degree {hom_degree}"))

    # Exact trace pullback at degree n.
    pullback = all(
        tensorrep.state_value(kappa, rep(s, n)) == thoma.character(kappa, s.cycle_type())
        for s in perm.enumerate_group(n, cap=config.enumeration_cap)
    )
    checks.append(Check("state-pullback-equals-character", pullback, f"all of degree {n}"))

    # Deviation of the stage averages from the limit operator.
    m3 = sum(a ** 3 for a in kappa.alpha) + sum(b ** 3 for b in kappa.beta)
    rate_ok = True
    for k in range(3, min(n, 7) + 1):
        _, dev = tensorrep.relcomm_expectation_matrix(kappa, k, k, cap=config.dimension_cap)
        if dev != (1 - m3) / (k - 1):
            rate_ok = False
    checks.append(Check("stage-average-deviation-rate", rate_ok, "k up to " + str(min(n, 7))))

    # Commuting-square behaviour of the slice.  The factorization through
    # double cosets is exact for every parameter; full span membership only
    # holds at finite degree in the uniform cases, where it is also checked.
    factorization = all(
        tensorrep.slice_factorization_holds(kappa, m, cap=config.dimension_cap)
        for m in range(2, min(n, 4) + 1)
    )
    checks.append(Check("slice-factors-through-double-cosets", factorization))
    if thoma.classify_irreducible(kappa).irreducible:
        worst = max(
            tensorrep.slice_membership_residual(kappa, m, cap=config.dimension_cap)
            for m in range(2, min(n, 4) + 1)
        )
        checks.append(
            Check(
                "sliced-elements-lie-in-stabilizer-span",
                worst <= max(config.tolerance, 1e-10),
                f"max residual {worst:.3e}",
            )
        )

    # Block projections and compressed scalars.
    suite = tensorrep.minimal_projection_suite(kappa, min(n, 5), cap=config.dimension_cap)
    checks.append(Check("block-projections-partition-identity", suite.partition_ok))
    checks.append(Check("block-projections-commute-with-stabilizer", suite.commutation_ok))
    checks.append(
        Check(
            "compressed-scalar-matches-orbit-formula",
            suite.psi_max_deviation <= config.tolerance and suite.psi_all_exact,
            f"max deviation {suite.psi_max_deviation:.3e}",
        )
    )
    result = {
        "degree": n,
        "index_points": list(space.points),
        "blocks": [
            {"label": b.label, "points": list(b.points), "value": _rat(b.value, config)}
            for b in suite.blocks
        ],
    }
    return result, checks


def section_report(kappa: ThomaParameter, config: RunConfig) -> tuple[dict, list[Check]]:
    sections: dict[str, Any] = {}
    checks: list[Check] = []

    def run(name, fn, *args):
        result, section_checks = fn(*args)
        sections[name] = result
        checks.extend(
            Check(f"{name}:{c.name}", c.passed, c.detail) for c in section_checks
        )

    run("classify", section_classify, kappa, config)
    run("weights", section_weights, kappa, min(4, config.weight_cap), config)
    run("commuting_square", section_commuting_square, kappa, 2, config)
    run("small_projection", section_small_proj, kappa, Fraction(1, 2), 4, config)
    run("entropy", section_entropy, kappa, 4, config)
    if kappa.gamma == 0:
        run("representation", section_rep_verify, kappa, 4, config)
    if (
        not kappa.beta
        and kappa.m_alpha == 2
        and Fraction(1, 2) < kappa.alpha[0] < 1
    ):
        run("jones", section_jones, kappa.alpha[0], 4, config)
    return sections, checks


# ---------------------------------------------------------------------------
# document assembly and rendering


def _document(command: str, kappa: ThomaParameter | None, result: dict, checks: list[Check]) -> dict:
    doc: dict[str, Any] = {"schema": SCHEMA, "command": command}
    if kappa is not None:
        doc["parameter"] = format_parameter(kappa)
    doc["results"] = result
    doc["verifications"] = [
        {"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks
    ]
    doc["passed"] = all(c.passed for c in checks)
    return doc


def _render_table(doc: dict, lines: list[str], prefix: str = ""):
    for key, value in doc.items():
        if isinstance(value, dict):
            lines.append(f"{prefix}{key}:")
            _render_table(value, lines, prefix + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{prefix}{key}:")
            for item in value:
                rendered = "  ".join(f"{k}={v}" for k, v in item.items())
                lines.append(f"{prefix}  {rendered}")
        else:
            lines.append(f"{prefix}{key}: {value}")


def emit(doc: dict, config: RunConfig, output: str | None) -> None:
    if config.output_format == "structured":
        text = json.dumps(doc, indent=2, default=str)
    else:
        lines: list[str] = []
        _render_table(doc, lines)
        text = "\n".join(lines)
    if output:
        with open(output, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # The same flags are accepted before and after the subcommand; the
    # after-subcommand copies suppress their defaults so they only override.
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument(
        "--format", choices=("structured", "table"), default=default("structured")
    )
    parser.add_argument("--mode", choices=("exact", "float"), default=default("exact"))
    parser.add_argument("--tolerance", type=float, default=default(1e-9))
    parser.add_argument("--seed", type=int, default=default(0))
    parser.add_argument(
        "--output", help="write the document to this path", default=default(None)
    )
    parser.add_argument(
        "--enum-cap",
        type=int,
        default=default(_env_int("THOMA_LAB_ENUM_CAP", perm.DEFAULT_ENUMERATION_CAP)),
    )
    parser.add_argument(
        "--dim-cap",
        type=int,
        default=default(_env_int("THOMA_LAB_DIM_CAP", tensorrep.DEFAULT_DIMENSION_CAP)),
    )
    parser.add_argument(
        "--weight-cap",
        type=int,
        default=default(_env_int("THOMA_LAB_WEIGHT_CAP", groupalg.DEFAULT_WEIGHT_CAP)),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thoma-lab",
        description="Exact finite-stage computations for Thoma characters "
        "and the invariants of the stabilizer inclusion.",
    )
    _add_global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def with_parameter(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("parameter", help='e.g. "a=1/2,1/2;b=;g=0" or @file.json')
        _add_global_flags(p, suppress=True)
        return p

    with_parameter("classify", "irreducibility, faithfulness, index verdicts")
    with_parameter("char", "character value on a permutation").add_argument(
        "permutation", help='cycles, e.g. "(0 1 2)", identity "e"'
    )
    with_parameter("weights", "block weights of the trace at one degree").add_argument(
        "degree", type=int
    )
    with_parameter("rep-verify", "tensor-model invariant suite").add_argument(
        "degree", type=int
    )
    with_parameter("commuting-square", "stage test of the inclusion ladder").add_argument(
        "degree", type=int
    )
    with_parameter("small-proj", "search staircase blocks for a tiny trace").add_argument(
        "epsilon"
    )
    sub.choices["small-proj"].add_argument("--k-max", type=int, default=4)
    with_parameter("entropy", "shift entropy, bounds, growth table").add_argument(
        "n_max", type=int
    )
    jones = sub.add_parser("jones", help="projection chain and its relations")
    jones.add_argument("alpha1", help="rational in (1/2, 1)")
    jones.add_argument("length", type=int)
    _add_global_flags(jones, suppress=True)
    with_parameter("report", "run every applicable section")
    return parser


def run_command(args: argparse.Namespace, config: RunConfig) -> dict:
    command = args.command
    if command == "jones":
        result, checks = section_jones(as_fraction(args.alpha1), args.length, config)
        return _document(command, None, result, checks)
    kappa = _load_parameter(args.parameter)
    if command == "classify":
        result, checks = section_classify(kappa, config)
    elif command == "char":
        result, checks = section_char(kappa, args.permutation, config)
    elif command == "weights":
        result, checks = section_weights(kappa, args.degree, config)
    elif command == "rep-verify":
        result, checks = section_rep_verify(kappa, args.degree, config)
    elif command == "commuting-square":
        result, checks = section_commuting_square(kappa, args.degree, config)
    elif command == "small-proj":
        result, checks = section_small_proj(
            kappa, as_fraction(args.epsilon), args.k_max, config
        )
    elif command == "entropy":
        result, checks = section_entropy(kappa, args.n_max, config)
    elif command == "report":
        result, checks = section_report(kappa, config)
    else:  # pragma: no cover
        raise AssertionError(command)
    return _document(command, kappa, result, checks)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        config = RunConfig(
            mode=args.mode,
            tolerance=args.tolerance,
            enumeration_cap=args.enum_cap,
            dimension_cap=args.dim_cap,
            weight_cap=args.weight_cap,
            output_format=args.format,
            seed=args.seed,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        doc = run_command(args, config)
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, ParameterError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(doc, config, args.output)
    return EXIT_OK if doc["passed"] else EXIT_VERIFICATION_FAILED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
