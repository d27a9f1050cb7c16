import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from cevians.altitude.cubic import build_cubic, classify, equal_cevian_heights, root_check
from cevians.config import LOCUS_L_MAX, LOCUS_SAMPLES, LOG_LEVEL, RANDOM_SEED, TETRA_STARTS
from cevians.conic.carnot import carnot_product, conic_kind, conic_svg, fit_conic, power_products, six_feet
from cevians.core.errors import GeometryError, NoConvergence
from cevians.core.frames import TriangleAngles
from cevians.engine.trisas import (
    TrisaParams,
    find_equal_trisa_witness,
    parallel_trisa_k,
    trisa_cevian_length,
    trisa_oracle_length,
)
from cevians.locus.curve import altitude_bounds
from cevians.locus.emitter import emit_curve, significant
from cevians.tetra.solver import solve_equal_bisectors
from cevians.verify.suite import format_table, run_suite

logging.basicConfig(
    level=getattr(logging, LOG_LEVEL),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    subcommand: Literal["locus", "altitude", "trisa", "conic", "tetra", "verify"]
    alpha_deg: Optional[float] = Field(default=None, description="Angle at A in degrees")
    beta_deg: Optional[float] = Field(default=None, description="Angle at B in degrees")
    tol: Optional[float] = Field(default=None, description="Replaces every default tolerance when set")
    samples: int = Field(default=LOCUS_SAMPLES, description="Number of cevian lengths sampled")
    seed: int = Field(default=RANDOM_SEED, description="Seed for randomized suites and multistarts")
    output_format: Literal["human", "json", "csv", "svg"] = "human"
    out: Optional[Path] = None
    l: Optional[float] = None
    lmin: Optional[float] = None
    lmax: float = LOCUS_L_MAX
    k: float = 2.0
    witness: bool = False
    base_angles_deg: Optional[Tuple[float, float, float]] = None
    diameter: float = 1.0
    starts: int = TETRA_STARTS
    suite: str = "all"

    def angles(self) -> TriangleAngles:
        if self.alpha_deg is None or self.beta_deg is None:
            raise ValueError(f"{self.subcommand} needs --alpha-deg and --beta-deg")
        return TriangleAngles.from_degrees(self.alpha_deg, self.beta_deg)

    def limit(self, default: float) -> float:
        return default if self.tol is None else self.tol


def rounded(value: Any) -> Any:
    """Round every float in a json-ready structure to the configured significant digits."""
    if isinstance(value, float):
        return significant(value)
    if isinstance(value, dict):
        return {k: rounded(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [rounded(v) for v in value]
    return value


def emit(config: RunConfig, payload: Dict[str, Any], human: str) -> None:
    if config.output_format == "json":
        sys.stdout.write(json.dumps(rounded(payload), indent=2) + "\n")
    else:
        sys.stdout.write(human + "\n")


def run_locus(config: RunConfig) -> int:
    angles = config.angles()
    lmin = config.lmin if config.lmin is not None else max(altitude_bounds(angles)) * (1 + 1e-6)
    fmt = "svg" if config.output_format == "human" else config.output_format
    document = emit_curve(angles, (lmin, config.lmax), config.samples, fmt, config.out)
    if config.out is None:
        sys.stdout.write(document)
    return EXIT_OK


def run_altitude(config: RunConfig) -> int:
    angles = config.angles()
    cubic = build_cubic(angles)
    result = classify(cubic)
    heights = equal_cevian_heights(cubic, result)
    checks = [root_check(angles, y) for y in heights]

    payload = {
        "alpha_deg": config.alpha_deg,
        "beta_deg": config.beta_deg,
        "u": cubic.u,
        "v": cubic.v,
        "discriminant": result.discriminant,
        "kind": result.kind.value,
        "roots": heights,
        "checks": [{"y": c.y, "aa1": c.aa1, "bb1": c.bb1, "gap": c.gap} for c in checks],
    }
    lines = [f"y^3 + ({cubic.p:.12g}) y + ({cubic.q:.12g}) = 0", f"D = {result.discriminant:.12g} ({result.kind.value})"]
    lines += [f"  y = {c.y:.12g}: AA1 = {c.aa1:.12g}, BB1 = {c.bb1:.12g}, gap = {c.gap:.2e}" for c in checks]
    emit(config, payload, "\n".join(lines))

    tol = config.limit(1e-8)
    return EXIT_OK if all(c.gap <= tol for c in checks) else EXIT_FAILED


def run_trisa(config: RunConfig) -> int:
    if config.witness or config.alpha_deg is None:
        angles, length = find_equal_trisa_witness(config.k)
        alpha, beta, gamma = angles.degrees()
        payload = {"k": config.k, "alpha_deg": alpha, "beta_deg": beta, "gamma_deg": gamma, "length": length}
        emit(config, payload, f"k={config.k}: equal trisas {length:.12g} at angles {alpha:.9g}, {beta:.9g}, {gamma:.9g}")
        return EXIT_OK

    angles = config.angles()
    params = TrisaParams(k=config.k)
    payload: Dict[str, Any] = {
        "k": params.k,
        "gamma_param": params.gamma_param,
        "alpha_deg": config.alpha_deg,
        "beta_deg": config.beta_deg,
    }
    lines = []
    for vertex in ("A", "B"):
        length = trisa_cevian_length(angles, config.k, vertex)
        oracle = trisa_oracle_length(angles, config.k, vertex)
        payload[vertex.lower()] = {"length": length, "oracle": oracle, "parallel_k": parallel_trisa_k(angles, vertex)}
        lines.append(f"{vertex}: length {length:.12g} (intersection {oracle:.12g})")
    emit(config, payload, "\n".join(lines))
    return EXIT_OK


def run_conic(config: RunConfig) -> int:
    if config.l is None:
        raise ValueError("conic needs --l")
    feet = six_feet(config.angles(), config.l)
    product = carnot_product(feet)
    conic, residual = fit_conic(feet)

    if config.out is not None:
        config.out.write_text(conic_svg(feet, conic), encoding="utf-8")
        logger.info(f"Wrote conic figure to {config.out}")

    payload = {
        "l": config.l,
        "feet": {name: [p.x, p.y] for name, p in feet.feet.items()},
        "double_contact": list(feet.double_contact),
        "power_products": {name: list(pair) for name, pair in power_products(feet).items()},
        "carnot_product": product,
        "conic": conic.model_dump(),
        "kind": conic_kind(conic),
        "residual": residual,
    }
    lines = [f"{name}: ({p.x:.12g}, {p.y:.12g})" for name, p in feet.feet.items()]
    lines += [f"Carnot product: {product:.15g}", f"Conic: {conic.as_array()} ({conic_kind(conic)})", f"Residual: {residual:.3e}"]
    emit(config, payload, "\n".join(lines))

    ok = abs(product - 1.0) <= config.limit(1e-10) and residual <= config.limit(1e-8)
    return EXIT_OK if ok else EXIT_FAILED


def run_tetra(config: RunConfig) -> int:
    if config.base_angles_deg is None:
        raise ValueError("tetra needs --base-angles-deg A,B,C")
    base = tuple(math.radians(a) for a in config.base_angles_deg)
    try:
        report = solve_equal_bisectors(base, config.diameter, starts=config.starts, seed=config.seed)
    except NoConvergence as e:
        logger.error(f"Tetrahedron solve failed: {str(e)}")
        sys.stderr.write(f"{e}\n")
        return EXIT_FAILED

    lines = [f"{len(report.solutions)} solution(s), {report.converged}/{report.feasible_starts} starts converged"]
    for s in report.solutions:
        lines.append(
            f"  AD={s.edges.x:.9g} BD={s.edges.y:.9g} CD={s.edges.z:.9g} "
            f"areas={[round(a, 9) for a in s.areas.values()]} equifacial={s.equifacial.equal_areas}"
        )
    emit(config, report.model_dump(mode="json"), "\n".join(lines))
    return EXIT_OK


def run_verify(config: RunConfig) -> int:
    results = run_suite(config.suite, seed=config.seed, tol=config.tol)
    payload = {"seed": config.seed, "checks": [r.model_dump(exclude={"elapsed"}) for r in results]}
    emit(config, payload, format_table(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


HANDLERS = {
    "locus": run_locus,
    "altitude": run_altitude,
    "trisa": run_trisa,
    "conic": run_conic,
    "tetra": run_tetra,
    "verify": run_verify,
}


def _triple(text: str) -> Tuple[float, float, float]:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated angles, got {text!r}")
    return parts[0], parts[1], parts[2]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cevians", description="Numerical checks of equal-cevian theorems")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one json document")
    common.add_argument(
        "--tol", type=float, default=None, help="tolerance replacing every check threshold and result tolerance"
    )
    common.add_argument("--seed", type=int, default=RANDOM_SEED)

    angles = argparse.ArgumentParser(add_help=False)
    angles.add_argument("--alpha-deg", type=float)
    angles.add_argument("--beta-deg", type=float)

    sub = parser.add_subparsers(dest="subcommand", required=True)

    locus = sub.add_parser("locus", parents=[common, angles], help="sample the equal-cevian cubic")
    locus.add_argument("--format", choices=["svg", "csv", "json"], default="svg")
    locus.add_argument("--out", type=Path)
    locus.add_argument("--lmin", type=float)
    locus.add_argument("--lmax", type=float, default=LOCUS_L_MAX)
    locus.add_argument("--samples", type=int, default=LOCUS_SAMPLES)

    sub.add_parser("altitude", parents=[common, angles], help="equal cevians through the altitude")

    trisa = sub.add_parser("trisa", parents=[common, angles], help="k-trisa lengths or a witness")
    trisa.add_argument("--k", type=float, default=2.0)
    trisa.add_argument("--witness", action="store_true")

    conic = sub.add_parser("conic", parents=[common, angles], help="six equal cevians and their conic")
    conic.add_argument("--l", type=float, required=True)
    conic.add_argument("--svg", type=Path, dest="out")

    tetra = sub.add_parser("tetra", parents=[common], help="equal trihedral bisectors")
    tetra.add_argument("--base-angles-deg", type=_triple, required=True)
    tetra.add_argument("--diameter", type=float, default=1.0)
    tetra.add_argument("--starts", type=int, default=TETRA_STARTS)

    verify = sub.add_parser("verify", parents=[common], help="run the verification suite")
    verify.add_argument("--suite", default="all")
    return parser


def parse_config(argv: List[str]) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    output_format = args.pop("format", None)
    if args.pop("json"):
        output_format = "json"
    args["output_format"] = output_format or "human"
    return RunConfig(**{k: v for k, v in args.items() if v is not None})


def run(argv: List[str]) -> int:
    try:
        config = parse_config(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE

    logger.debug(f"Run configuration: {config.model_dump()}")
    try:
        return HANDLERS[config.subcommand](config)
    except (ValueError, GeometryError) as e:
        logger.error(f"{config.subcommand} failed: {str(e)}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"Unexpected failure in {config.subcommand}: {str(e)}", exc_info=True)
        return EXIT_FAILED


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
