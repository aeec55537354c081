"""Command-line front end.

Subcommands::

    qconcur measure --state FILE|-
    qconcur sweep --mode alpha|xp [--p P] [--range LO:HI:N] [--p-range LO:HI:N] --out FILE
    qconcur compare --count N --seed S --rank 2|3 [--nonorthogonal] --out FILE
    qconcur selftest

Exit codes: 0 ok, 1 selftest failure, 2 input error, 3 invariant failure,
4 IO error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import measures, qlinalg, rank3
from .convex_roof import RoofConfig, convex_roof_concurrence, random_density
from .errors import EntanglementError, InvariantViolation, NegativeSpectrum, ConvergenceFailure
from .measures import (
    amplitude_concurrence,
    complex_concurrence_pure,
    concurrence_pure,
    entanglement_of_formation,
    wootters_concurrence,
)
from .rank3 import (
    TripleMixture,
    case_d_concurrence,
    concurrence_squared_rank3,
    reduced_symmetric_concurrence,
    squared_from_x,
    symmetric_x,
)
from .states import (
    CoherentPairSpec,
    ParsedState,
    PureTwoQubit,
    SchemaError,
    _frozen,
    entangled_coherent_pure,
    make_pure,
    pure_density,
    random_pure,
    state_from_json,
)

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_INPUT = 2
EXIT_INVARIANT = 3
EXIT_IO = 4

FLAG_TOL = 1e-10
AGREE_TOL = 1e-6
SWEEP_HEADER = ("alpha", "alpha_p", "x", "c_squared")
XP_HEADER = ("p", "x", "c_squared")
COMPARE_HEADER = (
    "index", "p1", "p2", "p3", "rank3_c2", "wootters_c2", "roof_c2", "lower", "upper",
    "case", "orthogonal", "negative", "lower_violation", "upper_violation",
)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def fmt(x) -> str:
    """Locale-free, 9 significant digits."""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return "0"
    return format(x, ".9g")


def _cplx(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


# measure -------------------------------------------------------------------

def _roof_c(rho, cfg: RoofConfig) -> float:
    return convex_roof_concurrence(rho, cfg).c_estimate


def _pure_block(psi: PureTwoQubit) -> dict:
    c = concurrence_pure(psi)
    return {
        "amps": [_cplx(z) for z in psi.amps],
        "concurrence": c,
        "complex_concurrence": _cplx(complex_concurrence_pure(psi)),
        "eof": entanglement_of_formation(c),
    }


def _rank3_block(mix: TripleMixture, roof_cfg: Optional[RoofConfig]) -> dict:
    res = concurrence_squared_rank3(mix)
    rho = mix.density()
    w, spectrum = wootters_concurrence(rho)
    block = {
        "p": mix.p.tolist(),
        "components": [_pure_block(c) for c in mix.components],
        "rank3_c2": res.c_squared,
        "wootters_c": w,
        "wootters_c2": w * w,
        "wootters_lambdas": spectrum.lambdas.tolist(),
        "lower": res.lower_bound,
        "upper": res.upper_bound,
        "case": res.case_label.value,
        "term_breakdown": list(map(float, res.term_breakdown)),
        "orthogonal": res.orthogonal,
        "flags": {
            "negative": res.negative,
            "lower_violation": res.lower_violation,
            "upper_violation": res.upper_violation,
        },
    }
    if roof_cfg is not None:
        rc = _roof_c(rho, roof_cfg)
        block["roof_c"] = rc
        block["roof_c2"] = rc * rc
    try:
        block["case_d_c2"] = case_d_concurrence(mix)
    except EntanglementError:
        pass
    if mix.coherent_specs is not None:
        block["coherent"] = [_coherent_block(s) for s in mix.coherent_specs]
    return block


def _coherent_block(spec: CoherentPairSpec) -> dict:
    return {
        "alpha": _cplx(spec.alpha),
        "beta": _cplx(spec.beta),
        "alpha_p": _cplx(spec.alpha_p),
        "beta_p": _cplx(spec.beta_p),
        "theta": spec.theta,
        "phi": spec.phi,
        "lambda": _cplx(spec.lambda_coef),
        "gamma": _cplx(spec.gamma_coef),
        "n_norm": spec.n_norm,
        "amplitude_concurrence": amplitude_concurrence(spec),
    }


def check_report_flags(block: dict) -> None:
    """Raise :class:`InvariantViolation` if recorded flags disagree with recorded values."""
    c2, lo, up = block["rank3_c2"], block["lower"], block["upper"]
    expected = {
        "negative": c2 < -FLAG_TOL,
        "lower_violation": c2 < lo - FLAG_TOL,
        "upper_violation": c2 > up + FLAG_TOL,
    }
    if expected != block["flags"]:
        raise InvariantViolation(f"inconsistent flags {block['flags']} (expected {expected})")


def measure_report(parsed: ParsedState, roof_cfg: Optional[RoofConfig] = RoofConfig()) -> dict:
    report: dict = {"kind": parsed.kind}
    if parsed.kind in ("pure", "coherent"):
        if parsed.kind == "coherent":
            psi = entangled_coherent_pure(parsed.coherent)
            report["coherent"] = _coherent_block(parsed.coherent)
        else:
            psi = parsed.pure
        report.update(_pure_block(psi))
        report["wootters_c"] = wootters_concurrence(pure_density(psi))[0]
    elif parsed.kind == "mixture":
        block = _rank3_block(parsed.mixture, roof_cfg)
        check_report_flags(block)
        report.update(block)
    else:
        rho = parsed.density
        w, spectrum = wootters_concurrence(rho)
        report["wootters_c"] = w
        report["wootters_lambdas"] = spectrum.lambdas.tolist()
        report["eof"] = entanglement_of_formation(w)
        if roof_cfg is not None:
            report["roof_c"] = _roof_c(rho, roof_cfg)
    return report


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read state file: {exc}") from None


def cmd_measure(args) -> int:
    text = _read_text(args.state)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_INPUT, f"malformed JSON: {exc}") from None
    try:
        parsed = state_from_json(obj)
    except (SchemaError, EntanglementError, ValueError) as exc:
        raise CliError(EXIT_INPUT, f"invalid state: {exc}") from None
    if args.no_roof:
        roof_cfg = None
    else:
        roof_cfg = RoofConfig.thorough(args.seed) if args.thorough_roof else RoofConfig(seed=args.seed)
    report = measure_report(parsed, roof_cfg)
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return EXIT_OK


# sweep ---------------------------------------------------------------------

def parse_range(text: str) -> tuple[float, float, int]:
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise CliError(EXIT_INPUT, f"bad range {text!r}; expected LO:HI:N") from None
    if not (n >= 2 and lo < hi and math.isfinite(lo) and math.isfinite(hi)):
        raise CliError(EXIT_INPUT, f"bad range {text!r}; need N >= 2 and LO < HI")
    return lo, hi, n


@dataclass(frozen=True)
class SweepSpec:
    mode: str  # "alpha" or "xp"
    p: float = 1.0 / 3.0
    var_range: tuple = (-5.0, 5.0, 101)
    p_range: tuple = (0.0, 1.0, 101)

    def __post_init__(self):
        for lo, hi, n in (self.var_range, self.p_range):
            if n < 2 or not lo < hi:
                raise ValueError("ranges need n >= 2 and lo < hi")
        if self.mode not in ("alpha", "xp"):
            raise ValueError(f"unknown sweep mode {self.mode!r}")


def sweep_rows(spec: SweepSpec) -> tuple[tuple, list]:
    """Grid rows for the symmetric single-entangled-component family."""
    if spec.mode == "alpha":
        grid = np.linspace(*spec.var_range)
        rows = []
        for a in grid:
            for ap in grid:
                a_, ap_ = float(a), float(ap)
                x = symmetric_x(a_, ap_)
                rows.append((a_, ap_, x, reduced_symmetric_concurrence(spec.p, a_, ap_)))
        return SWEEP_HEADER, rows
    ps = np.linspace(*spec.p_range)
    xs = np.linspace(*spec.var_range)
    rows = [(float(p), float(x), squared_from_x(float(p), float(x))) for p in ps for x in xs]
    return XP_HEADER, rows


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc}") from None


def cmd_sweep(args) -> int:
    if args.mode == "alpha":
        var_range = parse_range(args.range or "-5:5:101")
    else:
        var_range = parse_range(args.range or "0:10:101")
    p_range = parse_range(args.p_range)
    if not 0.0 <= args.p <= 1.0:
        raise CliError(EXIT_INPUT, f"--p {args.p} outside [0, 1]")
    spec = SweepSpec(args.mode, args.p, var_range, p_range)
    header, rows = sweep_rows(spec)
    write_text(args.out, csv_text(header, rows))
    c2 = np.array([r[-1] for r in rows])
    best = rows[int(np.argmax(c2))]
    summary = {
        "mode": spec.mode,
        "rows": len(rows),
        "max_c_squared": float(c2.max()),
        "argmax": dict(zip(header[:-1], map(float, best[:-1]))),
        "out": args.out,
    }
    json.dump(summary, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return EXIT_OK


# compare -------------------------------------------------------------------

def random_mixture(rng: np.random.Generator, rank: int, orthogonal: bool = True) -> TripleMixture:
    """Three seeded random components; orthonormalized unless ``orthogonal`` is false."""
    vecs = np.array([random_pure(rng).amps for _ in range(3)])
    if orthogonal:
        q, r = np.linalg.qr(vecs.T)
        vecs = (q * (np.diag(r) / np.abs(np.diag(r)))).T
    if rank == 3:
        p = rng.dirichlet(np.ones(3))
    elif rank == 2:
        p = np.append(rng.dirichlet(np.ones(2)), 0.0)
    else:
        raise ValueError(f"rank must be 2 or 3, got {rank}")
    p = p / p.sum()
    return TripleMixture(p, tuple(make_pure(v) for v in vecs))


def compare_row(index: int, mix: TripleMixture, roof_cfg: Optional[RoofConfig]) -> dict:
    res = concurrence_squared_rank3(mix)
    rho = mix.density()
    w, _ = wootters_concurrence(rho)
    roof = convex_roof_concurrence(rho, roof_cfg).c_estimate if roof_cfg is not None else math.nan
    return {
        "index": index,
        "p1": mix.p[0], "p2": mix.p[1], "p3": mix.p[2],
        "rank3_c2": res.c_squared,
        "wootters_c2": w * w,
        "roof_c2": roof * roof,
        "lower": res.lower_bound,
        "upper": res.upper_bound,
        "case": res.case_label.value,
        "orthogonal": res.orthogonal,
        "negative": res.negative,
        "lower_violation": res.lower_violation,
        "upper_violation": res.upper_violation,
        "roof_c": roof,
        "wootters_c": w,
    }


def compare_summary(rows: list, rank: int, orthogonal: bool) -> dict:
    diff = np.array([r["rank3_c2"] - r["wootters_c2"] for r in rows])
    flags_ok = all(
        r["negative"] == (r["rank3_c2"] < -FLAG_TOL)
        and r["lower_violation"] == (r["rank3_c2"] < r["lower"] - FLAG_TOL)
        and r["upper_violation"] == (r["rank3_c2"] > r["upper"] + FLAG_TOL)
        for r in rows
    )
    roof = np.array([r["roof_c"] for r in rows])
    w = np.array([r["wootters_c"] for r in rows])
    has_roof = not np.all(np.isnan(roof))
    cases: dict = {}
    for r in rows:
        cases[r["case"]] = cases.get(r["case"], 0) + 1
    qs = [0.0, 0.05, 0.25, 0.5, 0.75, 0.95, 1.0]
    return {
        "count": len(rows),
        "rank": rank,
        "orthogonal_components": orthogonal,
        "max_abs_rank3_minus_wootters": float(np.max(np.abs(diff))),
        "fraction_agree_1e-6": float(np.mean(np.abs(diff) <= AGREE_TOL)),
        "diff_mean": float(diff.mean()),
        "diff_quantiles": {str(q): float(np.quantile(diff, q)) for q in qs},
        "lower_bound_violations": int(sum(r["lower_violation"] for r in rows)),
        "upper_bound_violations": int(sum(r["upper_violation"] for r in rows)),
        "negative_c2": int(sum(r["negative"] for r in rows)),
        "case_counts": dict(sorted(cases.items())),
        "roof_max_abs_minus_wootters": float(np.max(np.abs(roof - w))) if has_roof else None,
        "roof_below_wootters": int(np.sum(roof < w - 1e-6)) if has_roof else None,
        "flags_consistent": flags_ok,
    }


def run_compare(count: int, seed: int, rank: int, orthogonal: bool = True,
                roof_cfg: Optional[RoofConfig] = None,
                inject: Sequence[TripleMixture] = ()) -> tuple[list, dict]:
    """Rows for ``inject`` followed by ``count`` seeded random mixtures, plus a summary."""
    rng = np.random.default_rng(seed)
    mixes = list(inject) + [random_mixture(rng, rank, orthogonal) for _ in range(count)]
    rows = []
    for i, mix in enumerate(mixes):
        cfg = None
        if roof_cfg is not None:
            cfg = replace(roof_cfg, seed=seed * 100003 + i)
        rows.append(compare_row(i, mix, cfg))
    return rows, compare_summary(rows, rank, orthogonal)


def cmd_compare(args) -> int:
    if args.count < 1:
        raise CliError(EXIT_INPUT, "--count must be >= 1")
    roof_cfg = None if args.no_roof else RoofConfig(restarts=args.roof_restarts,
                                                    iterations=args.roof_iterations)
    rows, summary = run_compare(args.count, args.seed, args.rank, not args.nonorthogonal, roof_cfg)
    text = csv_text(COMPARE_HEADER, ([r[k] for k in COMPARE_HEADER] for r in rows))
    write_text(args.out, text)
    if args.summary:
        write_text(args.summary, json.dumps(summary, indent=2, sort_keys=True) + "\n")
    if not summary["flags_consistent"]:
        raise CliError(EXIT_INVARIANT, "report flags disagree with recorded values")
    json.dump(summary, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return EXIT_OK


# selftest ------------------------------------------------------------------

def _group_eigensolver() -> list:
    rng = np.random.default_rng(11)
    checks = []
    eig = qlinalg.herm_eigensystem(np.diag([1.0, 4.0, 2.0, 3.0]))
    checks.append(("diag(4,3,2,1)", np.allclose(eig.eigenvalues, [4, 3, 2, 1], atol=1e-14)))
    worst = 0.0
    for _ in range(50):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        m = a + a.conj().T
        e = qlinalg.herm_eigensystem(m)
        worst = max(worst, np.max(np.abs(e.reconstruct() - m)), abs(e.eigenvalues.sum() - np.trace(m).real))
    checks.append(("reconstruction <= 1e-10", worst <= 1e-10))
    s = qlinalg.matrix_sqrt_psd(np.diag([4.0, 1.0, 0.0, 0.0]))
    checks.append(("sqrt diag(4,1,0,0)", np.allclose(s, np.diag([2.0, 1.0, 0.0, 0.0]), atol=1e-12)))
    return checks


def _group_spin_flip() -> list:
    rng = np.random.default_rng(12)
    checks = []
    psi = make_pure(1, 0, 0, 0)
    checks.append(("|00> -> -|11>", np.allclose(qlinalg.spin_flip_pure(psi).amps, [0, 0, 0, -1])))
    ok = True
    for _ in range(100):
        v = random_pure(rng)
        twice = qlinalg.spin_flip_pure(qlinalg.spin_flip_pure(v))
        ok &= bool(np.array_equal(twice.amps, v.amps))
        ok &= abs(abs(np.vdot(v.amps, qlinalg.spin_flip_pure(v).amps)) - concurrence_pure(v)) <= 1e-12
    checks.append(("involution and <psi|psi~> = 2|ad-bc|", ok))
    return checks


def _group_pure_measures() -> list:
    bell = make_pure(1, 0, 0, 1)
    return [
        ("C(Bell) = 1", abs(concurrence_pure(bell) - 1) <= 1e-12),
        ("EoF(Bell) = 1", abs(entanglement_of_formation(concurrence_pure(bell)) - 1) <= 1e-12),
        ("C(0.6,0,0,0.8) = 0.96", abs(concurrence_pure(make_pure(0.6, 0, 0, 0.8)) - 0.96) <= 1e-12),
        ("h(0.9)", abs(measures.binary_entropy(0.9) - 0.4689955935892812) <= 1e-12),
    ]


def _group_amplitude_form() -> list:
    rng = np.random.default_rng(13)
    worst = 0.0
    for _ in range(200):
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        spec = CoherentPairSpec.from_params(*z, rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        worst = max(worst, abs(amplitude_concurrence(spec) - concurrence_pure(entangled_coherent_pure(spec))))
    bell_spec = CoherentPairSpec.from_params(1, 1, -1, -1, math.pi / 4, 0)
    return [
        ("amplitude form = 2|ad-bc|", worst <= 1e-12),
        ("Bell coherent state C = 1", abs(amplitude_concurrence(bell_spec) - 1) <= 1e-12),
        ("alpha = alpha' -> C = 0",
         amplitude_concurrence(CoherentPairSpec.from_params(0.7, 2, 0.7, -1, 0.4, 1)) == 0.0),
    ]


def _group_vertex_reduction() -> list:
    rng = np.random.default_rng(14)
    worst = 0.0
    for _ in range(100):
        comps = tuple(random_pure(rng) for _ in range(3))
        for k in range(3):
            p = np.zeros(3)
            p[k] = 1.0
            c2 = concurrence_squared_rank3(TripleMixture(p, comps)).c_squared
            worst = max(worst, abs(c2 - concurrence_pure(comps[k]) ** 2))
    return [("vertex p = e_k gives C_k^2", worst <= 1e-12)]


def _group_upper_bound() -> list:
    rng = np.random.default_rng(15)
    violations = 0
    for _ in range(1000):
        mix = TripleMixture(rng.dirichlet(np.ones(3)), tuple(random_pure(rng) for _ in range(3)))
        res = concurrence_squared_rank3(mix)
        violations += res.c_squared > res.upper_bound + 1e-10
    return [("C^2 <= (sum p_i C_i)^2", violations == 0)]


def _group_pairwise() -> list:
    bell = make_pure(1, 0, 0, 1)
    mix = TripleMixture([0.5, 0.3, 0.2], (bell, bell, bell))
    pc = rank3.pairwise_complex_concurrences(mix)
    q = pc.quartet
    return [
        ("identical Bell c_plus = 10/3", abs(pc.c_plus - 10 / 3) <= 1e-12),
        ("identical Bell c_minus = 2/3", abs(pc.c_minus - 2 / 3) <= 1e-12),
        ("c_plus = C^1 + C^2", abs(pc.c_plus - (q[0] + q[1])) <= 1e-12),
        ("identical Bell C^2 = 1", abs(concurrence_squared_rank3(mix).c_squared - 1) <= 1e-12),
    ]


def _group_oracles() -> list:
    phi = make_pure(1, 0, 0, 1).projector()
    checks = [
        ("Wootters(Bell) = 1", abs(wootters_concurrence(pure_density(make_pure(1, 0, 0, 1)))[0] - 1) <= 1e-9),
        ("Wootters(I/4) = 0", wootters_concurrence(np.eye(4) / 4)[0] <= 1e-12),
    ]
    for p in (0.2, 0.5, 0.9):
        w = wootters_concurrence(p * phi + (1 - p) * np.eye(4) / 4)[0]
        checks.append((f"Werner p={p}", abs(w - max(0.0, (3 * p - 1) / 2)) <= 1e-9))
    rho = random_density(2, 5)
    roof = convex_roof_concurrence(rho, RoofConfig(restarts=16, seed=1)).c_estimate
    w = wootters_concurrence(rho)[0]
    checks.append(("roof within 1e-2 above Wootters", w - 1e-6 <= roof <= w + 1e-2))
    return checks


def _group_case_d() -> list:
    rng = np.random.default_rng(16)
    worst = 0.0
    for _ in range(50):
        a, ap = rng.uniform(-5, 5, size=2)
        p = rng.dirichlet(np.ones(3))
        sep = [CoherentPairSpec.from_params(b, rng.normal(), b, rng.normal(), rng.uniform(0, 3))
               for b in rng.normal(size=2)]
        mix = TripleMixture.from_coherent(p, [rank3.symmetric_coherent_spec(a, ap)] + sep)
        worst = max(worst, abs(concurrence_squared_rank3(mix).c_squared - reduced_symmetric_concurrence(p[0], a, ap)))
    return [
        ("(p/(1+2X))^2 matches full formula", worst <= 1e-10),
        ("X = 0 gives p^2", reduced_symmetric_concurrence(1 / 3, 1.0, -1.0) == (1 / 3) ** 2),
    ]


SELFTEST_GROUPS: list[tuple[str, Callable[[], list]]] = [
    ("eigensolver", _group_eigensolver),
    ("spin_flip", _group_spin_flip),
    ("pure_measures", _group_pure_measures),
    ("amplitude_form", _group_amplitude_form),
    ("vertex_reduction", _group_vertex_reduction),
    ("upper_bound", _group_upper_bound),
    ("pairwise_identities", _group_pairwise),
    ("oracle_sanity", _group_oracles),
    ("case_d_reduction", _group_case_d),
]


def run_selftest(out=None) -> bool:
    out = out or sys.stdout
    all_ok = True
    for name, group in SELFTEST_GROUPS:
        try:
            checks = group()
        except Exception as exc:  # a crash in a group is a failure of that group
            checks = [(f"raised {type(exc).__name__}: {exc}", False)]
        failed = [label for label, ok in checks if not ok]
        all_ok &= not failed
        status = "PASS" if not failed else "FAIL"
        detail = f" ({len(checks)} checks)" if not failed else ": " + "; ".join(failed)
        print(f"{status} {name}{detail}", file=out)
    return all_ok


def cmd_selftest(args) -> int:
    return EXIT_OK if run_selftest() else EXIT_SELFTEST


# entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qconcur", description="Two-qubit concurrence toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", help="evaluate every applicable measure for a JSON state")
    m.add_argument("--state", required=True, help="JSON file, or - for stdin")
    m.add_argument("--seed", type=int, default=0, help="convex-roof oracle seed")
    m.add_argument("--no-roof", action="store_true", help="skip the convex-roof oracle")
    m.add_argument("--thorough-roof", action="store_true",
                   help="slower oracle settings, advisable for full-rank density input")
    m.set_defaults(func=cmd_measure)

    s = sub.add_parser("sweep", help="grid of the symmetric-case squared concurrence")
    s.add_argument("--mode", choices=("alpha", "xp"), required=True)
    s.add_argument("--p", type=float, default=1.0 / 3.0, help="probability of the entangled component (alpha mode)")
    s.add_argument("--range", default=None,
                   help="LO:HI:N for alpha and alpha' (alpha mode, default -5:5:101) or X (xp mode, default 0:10:101)")
    s.add_argument("--p-range", default="0:1:101", help="LO:HI:N for p (xp mode)")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("compare", help="rank-3 formula vs Wootters vs convex roof on random mixtures")
    c.add_argument("--count", type=int, required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--rank", type=int, choices=(2, 3), default=3)
    c.add_argument("--nonorthogonal", action="store_true", help="skip orthonormalizing the components")
    c.add_argument("--out", required=True)
    c.add_argument("--summary", default=None, help="also write the summary JSON here")
    c.add_argument("--roof-restarts", type=int, default=8)
    c.add_argument("--roof-iterations", type=int, default=300)
    c.add_argument("--no-roof", action="store_true")
    c.set_defaults(func=cmd_compare)

    t = sub.add_parser("selftest", help="run the embedded invariant corpus")
    t.set_defaults(func=cmd_selftest)
    return parser


def _glue_negative_values(argv: Sequence[str]) -> list:
    """Turn ``--range -5:5:101`` into ``--range=-5:5:101`` so argparse keeps the value."""
    out: list = []
    it = iter(argv)
    for tok in it:
        if tok in ("--range", "--p-range"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"qconcur: {exc}", file=sys.stderr)
        return exc.code
    except (InvariantViolation, NegativeSpectrum, ConvergenceFailure) as exc:
        print(f"qconcur: invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
