"""Command-line front end: detection, bound computation, parameter sweeps,
threshold bisection, and a self-test oracle suite.

Sweeps emit violation-positive differences so that "curve above zero" means
"detected": nonlinear_D = max_ab nonlinear_max - 1, and bell_D =
max_ab (bell_max / c) - 2.  The Bell difference uses the weight-normalized
value because the raw subspace mean is suppressed by c and would never reach
the two-qubit bound on its own (see witness module notes).

Exit codes: 0 success, 2 bad arguments, 3 state validation failure,
4 selftest failure.  ENTWIT_THREADS caps sweep parallelism.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .cren import cren_lower_bound, pure_sum_identity, report_to_json
from .generators import GeneratorPair, PAULI, rotation_zyz, triad_from_rotation
from .qstate import Dims, StateValidationError, negativity
from .states import StateSpec, max_entangled, pure_from_schmidt, random_density
from .witness import (
    OptimizerConfig,
    TAU_C,
    TAU_DETECT,
    WitnessSettings,
    bell_max,
    best_report,
    detect_entanglement,
    estimate_mean_shots,
    nonlinear_max,
    nonlinear_normalized,
    optimize_settings,
    project_state,
    reports_to_csv,
)

SCAN_HEADER = "param,nonlinear_D,bell_D,bound,negativity"

_CLI_FAMILIES = (
    "isotropic",
    "max_entangled",
    "bennett_mix",
    "rho_a_mix",
    "random_pure",
    "random_density",
)


@dataclass(frozen=True)
class SweepConfig:
    """One free parameter swept over a grid, everything else held fixed."""

    family: str
    fixed: dict
    param_name: str
    lo: float
    hi: float
    points: int
    bisect: bool = False
    bisect_tol: float = 1e-5

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError("range must satisfy lo < hi")
        if self.points < 2:
            raise ValueError("points must be >= 2")
        if self.bisect_tol <= 0:
            raise ValueError("bisect tolerance must be > 0")
        if self.param_name in self.fixed:
            raise ValueError(f"swept parameter {self.param_name!r} also given as a fixed value")


@dataclass(frozen=True)
class ScanPoint:
    param: float
    nonlinear_d: float
    bell_d: float
    bound: float
    negativity: float


@dataclass(frozen=True)
class Threshold:
    """Bisected detection onset; value is None when the grid shows no
    non-violating -> violating crossing."""

    value: float | None
    status: str  # "ok" or "no threshold in range"


@dataclass(frozen=True)
class ScanResult:
    points: list[ScanPoint]
    nonlinear: Threshold | None
    bell: Threshold | None


def _eval_state(rho) -> tuple[float, float, float, float]:
    rep = cren_lower_bound(rho)
    d_nl = max(r.nonlinear_max for r in rep.reports) - 1.0
    d_bell = max(r.bell_max / r.c for r in rep.reports if r.c > TAU_C) - 2.0
    return d_nl, d_bell, rep.bound, rep.negativity


def _point_spec(cfg: SweepConfig, value: float, base_seed: int, index: int) -> StateSpec:
    params = dict(cfg.fixed)
    params[cfg.param_name] = value
    if cfg.family in ("random_pure", "random_density"):
        params["seed"] = base_seed + index
    return StateSpec(cfg.family, params)


def _thread_cap(points: int) -> int:
    raw = os.environ.get("ENTWIT_THREADS", "").strip()
    if raw:
        try:
            cap = int(raw)
            if cap < 1:
                raise ValueError
        except ValueError:
            print(f"error: ENTWIT_THREADS must be a positive integer, got {raw!r}", file=sys.stderr)
            raise SystemExit(2) from None
    else:
        cap = os.cpu_count() or 1
    return min(cap, points)


def run_scan(cfg: SweepConfig, base_seed: int = 0, threads: int | None = None) -> ScanResult:
    """Evaluate the sweep grid (concurrently) and optionally bisect both
    detection thresholds.  Deterministic for fixed cfg and base_seed."""
    grid = np.linspace(cfg.lo, cfg.hi, cfg.points)

    def work(item):
        i, v = item
        rho = _point_spec(cfg, float(v), base_seed, i).build()
        return ScanPoint(float(v), *_eval_state(rho))

    with ThreadPoolExecutor(max_workers=threads or _thread_cap(cfg.points)) as pool:
        points = list(pool.map(work, enumerate(grid)))

    nl = bell = None
    if cfg.bisect:
        nl = _bisect_threshold(cfg, base_seed, points, "nonlinear")
        bell = _bisect_threshold(cfg, base_seed, points, "bell")
    return ScanResult(points, nl, bell)


def _bisect_threshold(cfg: SweepConfig, base_seed: int, points: list[ScanPoint], kind: str) -> Threshold:
    def dval(pt: ScanPoint) -> float:
        return pt.nonlinear_d if kind == "nonlinear" else pt.bell_d

    flags = [dval(pt) > TAU_DETECT for pt in points]
    first = next((i for i, f in enumerate(flags) if f), None)
    if first is None or first == 0:
        # nothing violates, or everything does: no crossing inside the range
        return Threshold(None, "no threshold in range")

    # probe seeds continue past the grid indices so bisection stays
    # deterministic for random families too
    counter = [cfg.points]

    def probe(v: float) -> float:
        rho = _point_spec(cfg, v, base_seed, counter[0]).build()
        counter[0] += 1
        d_nl, d_bell, _, _ = _eval_state(rho)
        return d_nl if kind == "nonlinear" else d_bell

    lo, hi = points[first - 1].param, points[first].param
    while hi - lo > cfg.bisect_tol:
        mid = 0.5 * (lo + hi)
        if probe(mid) > TAU_DETECT:
            hi = mid
        else:
            lo = mid
    return Threshold(0.5 * (lo + hi), "ok")


def scan_csv(result: ScanResult) -> str:
    lines = [SCAN_HEADER]
    for pt in result.points:
        lines.append(
            ",".join(
                f"{v:.12g}"
                for v in (pt.param, pt.nonlinear_d, pt.bell_d, pt.bound, pt.negativity)
            )
        )
    return "\n".join(lines) + "\n"


def _threshold_doc(t: Threshold | None):
    return None if t is None else {"threshold": t.value, "status": t.status}


# ---------------------------------------------------------------------------
# argument plumbing

def _add_state_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", metavar="PATH", help="JSON state document to load")
    p.add_argument("--family", choices=_CLI_FAMILIES, help="built-in state family")
    p.add_argument("--d", type=int, help="local dimension")
    p.add_argument("--x", type=float, help="isotropic mixing parameter")
    p.add_argument("--p", type=float, help="mixture weight")
    p.add_argument("--a", type=float, help="weakly inseparable family parameter")
    p.add_argument("--seed", type=int, default=0, help="seed for random families and checks")


def _require(parser, args, names) -> dict:
    params = {}
    for name in names:
        val = getattr(args, name, None)
        if val is None:
            parser.error(f"--family {args.family} requires --{name}")
        params[name] = val
    return params


def _spec_from_args(parser, args) -> StateSpec:
    if args.state and args.family:
        parser.error("give either --state or --family, not both")
    if args.state:
        return StateSpec("json_file", {"path": args.state})
    if not args.family:
        parser.error("one of --state or --family is required")
    fam = args.family
    if fam == "isotropic":
        return StateSpec(fam, _require(parser, args, ("d", "x")))
    if fam == "max_entangled":
        return StateSpec(fam, _require(parser, args, ("d",)))
    if fam == "bennett_mix":
        return StateSpec(fam, _require(parser, args, ("p",)))
    if fam == "rho_a_mix":
        return StateSpec(fam, _require(parser, args, ("a", "p")))
    if fam == "random_pure":
        return StateSpec(fam, {**_require(parser, args, ("d",)), "seed": args.seed})
    params = _require(parser, args, ("d",))
    return StateSpec(fam, {**params, "rank": params["d"] ** 2, "seed": args.seed})


def _build_state(spec: StateSpec):
    try:
        return spec.build()
    except (StateValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(3) from None


def _emit(doc: dict, json_path: str | None) -> None:
    text = json.dumps(doc, indent=2)
    print(text)
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


# ---------------------------------------------------------------------------
# subcommands

def cmd_detect(parser, args) -> int:
    rho = _build_state(_spec_from_args(parser, args))
    flag, reports = detect_entanglement(rho)
    top = best_report(reports)
    doc = {
        "entangled": flag,
        "best_subspace": {"alpha": [top.alpha.j, top.alpha.k], "beta": [top.beta.j, top.beta.k]},
        "nonlinear_max": top.nonlinear_max,
        "bell_max": top.bell_max,
        "negativity": negativity(rho),
    }
    _emit(doc, args.json)
    return 0


def cmd_bound(parser, args) -> int:
    rho = _build_state(_spec_from_args(parser, args))
    rep = cren_lower_bound(rho, literal_min=args.literal_min)
    text = report_to_json(rep)
    doc = json.loads(text)
    _emit(doc, args.json)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(reports_to_csv(rep.reports))
    return 0


def cmd_scan(parser, args) -> int:
    if not args.family:
        parser.error("scan requires --family")
    try:
        lo_s, hi_s = args.range.split(":")
        lo, hi = float(lo_s), float(hi_s)
    except ValueError:
        parser.error(f"--range must look like lo:hi, got {args.range!r}")
    fixed = {}
    for name in ("d", "x", "p", "a"):
        val = getattr(args, name)
        if val is not None and name != args.scan_param:
            fixed[name] = val
    try:
        cfg = SweepConfig(
            family=args.family,
            fixed=fixed,
            param_name=args.scan_param,
            lo=lo,
            hi=hi,
            points=args.points,
            bisect=args.bisect,
            bisect_tol=args.tol,
        )
        result = run_scan(cfg, base_seed=args.seed)
    except ValueError as exc:
        parser.error(str(exc))
    except (StateValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    text = scan_csv(result)
    sys.stdout.write(text)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    if args.bisect:
        print(json.dumps({"nonlinear": _threshold_doc(result.nonlinear), "bell": _threshold_doc(result.bell)}))
    return 0


def _two_qubit_witness_oracle(rho_ab_mat, triad_a, triad_b) -> float:
    def dot(vec):
        return vec[0] * PAULI[0] + vec[1] * PAULI[1] + vec[2] * PAULI[2]

    eye = np.eye(2, dtype=complex)
    a = [dot(triad_a.vector(i)) for i in range(3)]
    b = [dot(triad_b.vector(i)) for i in range(3)]
    corr = np.trace(rho_ab_mat @ (np.kron(a[0], b[0]) + np.kron(a[1], b[1]))).real
    summ = np.trace(rho_ab_mat @ (np.kron(a[2], eye) + np.kron(eye, b[2]))).real
    last = np.trace(rho_ab_mat @ np.kron(a[2], b[2])).real
    return math.hypot(corr, summ) - last


def cmd_selftest(parser, args) -> int:
    rng = np.random.default_rng(args.seed)
    lines = []
    failures = 0

    def check(name: str, ok: bool, detail: str, informational: bool = False) -> None:
        nonlocal failures
        tag = "INFO" if informational else ("PASS" if ok else "FAIL")
        if not ok and not informational:
            failures += 1
        lines.append(f"{tag} {name}: {detail}")

    # reduction identity: embedded witness over c vs plain two-qubit witness
    worst = 0.0
    pair_pool = [GeneratorPair(0, 1, 3), GeneratorPair(0, 2, 3), GeneratorPair(1, 2, 3)]
    for _ in range(20):
        rho = random_density(Dims(3, 3), 9, seed=int(rng.integers(1 << 31)))
        alpha = pair_pool[rng.integers(3)]
        beta = pair_pool[rng.integers(3)]
        s = WitnessSettings(
            alpha,
            beta,
            triad_from_rotation(rotation_zyz(*rng.uniform(0, 2 * np.pi, 3))),
            triad_from_rotation(rotation_zyz(*rng.uniform(0, 2 * np.pi, 3))),
        )
        two_qubit = _two_qubit_witness_oracle(project_state(rho, alpha, beta).rho_ab.mat, s.triad_a, s.triad_b)
        worst = max(worst, abs(two_qubit - nonlinear_normalized(rho, s)))
    check("reduction-identity", worst < 1e-9, f"max |two-qubit - embedded/c| = {worst:.3g} over 20 states")

    # pure-state trace-norm identity
    worst = 0.0
    for _ in range(10):
        mu = rng.dirichlet(np.ones(3))
        lhs, rhs = pure_sum_identity(pure_from_schmidt(mu, 3))
        worst = max(worst, abs(lhs - rhs))
    check("pure-sum-identity", worst < 1e-9, f"max |lhs - rhs| = {worst:.3g} over 10 spectra")

    # closed forms vs numeric settings search
    rho = random_density(Dims(3, 3), 9, seed=args.seed + 1)
    alpha = beta = GeneratorPair(0, 1, 3)
    cfg = OptimizerConfig(restarts=args.restarts, seed=args.seed, step_tol=1e-6)
    _, v_nl = optimize_settings(rho, alpha, beta, "nonlinear", cfg)
    _, v_bl = optimize_settings(rho, alpha, beta, "bell", cfg)
    gap_nl = abs(v_nl - nonlinear_max(rho, alpha, beta))
    gap_bl = abs(v_bl - bell_max(rho, alpha, beta))
    check(
        "closed-form-vs-optimizer",
        gap_nl < 1e-4 and gap_bl < 1e-4,
        f"nonlinear gap = {gap_nl:.3g}, bell gap = {gap_bl:.3g}",
    )

    # maximally entangled qutrit bound
    pplus = max_entangled(3).projector()
    shipped = cren_lower_bound(pplus).bound
    check("max-entangled-bound", abs(shipped - 1.0) < 1e-8, f"bound = {shipped:.10g} (exact CREN is 1)")
    if args.literal_min:
        lit = cren_lower_bound(pplus, literal_min=True).bound
        check(
            "max-entangled-bound-literal-min",
            True,
            f"clip-below variant gives {lit:.6g} vs shipped {shipped:.6g}; divergence expected",
            informational=True,
        )

    # finite-shot estimator sanity (statistical, never gates the exit code)
    op = np.kron(PAULI[2], (PAULI[2] + PAULI[0]) / math.sqrt(2.0))
    exact = 1.0 / math.sqrt(2.0)
    mean, err = estimate_mean_shots(max_entangled(2).projector(), op, args.shots, seed=args.seed + 2)
    check(
        "shot-estimate",
        True,
        f"mean = {mean:.6g}, exact = {exact:.6g}, stderr = {err:.3g} ({args.shots} shots)",
        informational=True,
    )

    for line in lines:
        print(line)
    gated = sum(1 for ln in lines if not ln.startswith("INFO"))
    print(f"{gated} checks gated, {gated - failures} passed, {failures} failed")
    return 4 if failures else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entwit",
        description="Entanglement detection via two-qubit subspace witnesses and a lower bound on the convex-roof extended negativity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="run the nonlinear witness over all subspaces")
    _add_state_flags(p)
    p.add_argument("--json", metavar="PATH", help="also write the report to a file")
    p.set_defaults(handler=cmd_detect)

    p = sub.add_parser("bound", help="compute the CREN lower bound")
    _add_state_flags(p)
    p.add_argument("--json", metavar="PATH", help="also write the report to a file")
    p.add_argument("--csv", metavar="PATH", help="write the per-subspace CSV")
    p.add_argument("--literal-min", action="store_true", help="use the clip-below variant X = min(0, d)")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("scan", help="sweep one parameter, emit CSV, optionally bisect thresholds")
    _add_state_flags(p)
    p.add_argument("--scan-param", required=True, choices=("d", "x", "p", "a"))
    p.add_argument("--range", required=True, metavar="LO:HI")
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--bisect", action="store_true", help="bisect the detection onset of both witnesses")
    p.add_argument("--tol", type=float, default=1e-5, help="bisection tolerance")
    p.add_argument("--csv", metavar="PATH", help="also write the CSV to a file")
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("selftest", help="run the built-in oracle checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=8, help="optimizer restarts for the agreement check")
    p.add_argument("--shots", type=int, default=10000, help="shots for the estimator check")
    p.add_argument("--literal-min", action="store_true", help="also report the clip-below bound variant")
    p.set_defaults(handler=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(parser, args)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2


if __name__ == "__main__":
    sys.exit(main())
