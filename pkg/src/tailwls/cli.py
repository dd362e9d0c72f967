"""Command line interface.

Subcommands:

    estimate    tail-index paths for a numeric dataset file
    simulate    Monte Carlo study over a k range, written as summary.csv
    diagnose    weight-moment sums, their limits, and the AMSE proxy per k
    optimal-k   smallest-MSE k for one estimator in a written summary
    fetch-note  where to obtain the practical datasets, and expected sizes

Exit codes: 0 success, 2 dataset parse failure, 3 estimation failure,
4 invalid configuration (including bad flags), 5 lookup failure (estimator
missing from a summary file). Floating point values are written with 17
significant digits, so files round-trip exactly. Output files are written
atomically (temp file, then rename) with a ``<out>.meta`` sidecar of
key=value lines; timestamps appear only in sidecars.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import io
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .errors import TailwlsError
from .estimators import ESTIMATOR_IDS, evi_path, optimal_k
from .asymptotics import amse, s_moments
from .distributions import burr, frechet, loggamma, pareto
from .montecarlo import SimulationConfig, run_simulation
from .second_order import RhoMethod, resolve_rho
from .spacings import validate_and_sort

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_ESTIMATION = 3
EXIT_CONFIG = 4
EXIT_LOOKUP = 5

DATA_URL = "https://lstat.kuleuven.be/Wiley/"


class _ParseFailure(Exception):
    """Dataset or summary file could not be parsed (exit code 2)."""


class _Parser(argparse.ArgumentParser):
    # bad flags are a configuration problem; keep 2 for dataset parse errors
    def error(self, message):
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _utc_now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def _write_atomic(path: str, text: str) -> None:
    """Write text to path via a temp file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _write_sidecar(out_path: str, entries: dict) -> None:
    lines = [f"{key}={value}" for key, value in entries.items()]
    _write_atomic(out_path + ".meta", "\n".join(lines) + "\n")


def read_numeric_column(path: str, column: int | None = None,
                        delimiter: str | None = None) -> np.ndarray:
    """Read one numeric column from a text file.

    Blank lines and lines starting with '#' are skipped; one non-numeric
    line is tolerated as a header. Without ``column`` the first field that
    parses as a float on the first data line picks the column (0-based).
    Without ``delimiter`` commas and whitespace both split.

    Raises:
        _ParseFailure: unreadable file, malformed line, non-finite or
            non-positive value (the message names the line), or fewer than
            two values overall.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _ParseFailure(f"cannot read {path}: {exc}") from exc
    values: list[float] = []
    detected = column
    header_used = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if delimiter is None:
            fields = stripped.replace(",", " ").split()
        else:
            fields = [f.strip() for f in stripped.split(delimiter)]
        if detected is None:
            for idx, f in enumerate(fields):
                try:
                    float(f)
                except ValueError:
                    continue
                detected = idx
                break
            if detected is None:
                if header_used:
                    raise _ParseFailure(f"{path}:{lineno}: no numeric field")
                header_used = True
                continue
        if detected >= len(fields):
            raise _ParseFailure(
                f"{path}:{lineno}: expected at least {detected + 1} fields, "
                f"got {len(fields)}"
            )
        raw = fields[detected]
        try:
            v = float(raw)
        except ValueError:
            if not header_used and not values:
                header_used = True
                continue
            raise _ParseFailure(
                f"{path}:{lineno}: cannot parse {raw!r} as a number"
            ) from None
        if not np.isfinite(v):
            raise _ParseFailure(f"{path}:{lineno}: non-finite value {raw}")
        if v <= 0.0:
            raise _ParseFailure(f"{path}:{lineno}: non-positive value {raw}")
        values.append(v)
    if len(values) < 2:
        raise _ParseFailure(
            f"{path}: need at least two positive values, found {len(values)}"
        )
    return np.asarray(values)


def _parse_rho_method(text: str) -> RhoMethod:
    """Parse a --rho flag: fixed:<value>, moment, or minvar."""
    if text == "moment":
        return RhoMethod.moment()
    if text == "minvar":
        return RhoMethod.min_variance()
    if text.startswith("fixed:"):
        try:
            value = float(text[len("fixed:"):])
        except ValueError as exc:
            raise ValueError(f"bad fixed rho in {text!r}") from exc
        return RhoMethod.fixed(value)
    raise ValueError(
        f"bad --rho value {text!r}; expected fixed:<value>, moment, or minvar"
    )


def _parse_estimators(text: str) -> tuple[str, ...]:
    wanted = [t.strip().upper() for t in text.split(",") if t.strip()]
    if not wanted:
        raise ValueError("empty --estimators list")
    for name in wanted:
        if name not in ESTIMATOR_IDS:
            raise ValueError(
                f"unknown estimator {name!r}; expected some of {ESTIMATOR_IDS}"
            )
    # canonical reporting order, duplicates collapsed
    return tuple(e for e in ESTIMATOR_IDS if e in wanted)


def cmd_estimate(args) -> int:
    try:
        data = read_numeric_column(args.dataset, args.column, args.delimiter)
        tail = validate_and_sort(data)
    except _ParseFailure as exc:
        print(f"tailwls estimate: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TailwlsError as exc:
        print(f"tailwls estimate: {args.dataset}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    n = tail.n
    try:
        estimators = _parse_estimators(args.estimators)
        rho_method = _parse_rho_method(args.rho)
        if args.k is not None and (args.k_min is not None or args.k_max is not None):
            raise ValueError("give either --k or --k-min/--k-max, not both")
        if args.k is not None:
            k_min = k_max = int(args.k)
        else:
            k_min = int(args.k_min) if args.k_min is not None else 2
            k_max = int(args.k_max) if args.k_max is not None else n - 1
        if not 2 <= k_min <= k_max <= n - 1:
            raise ValueError(
                f"need 2 <= k_min <= k_max <= n-1 = {n - 1}, "
                f"got [{k_min}, {k_max}]"
            )
    except (ValueError, TailwlsError) as exc:
        print(f"tailwls estimate: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    needs_rho = any(e != "HILL" for e in estimators)
    try:
        resolved = None
        per_path_method = rho_method
        if needs_rho:
            # every method is k-independent: resolve once, reuse everywhere
            resolved = resolve_rho(tail, rho_method, k_max)
            per_path_method = RhoMethod.fixed(resolved)
        paths = {
            est: evi_path(tail, est, per_path_method, k_min, k_max)
            for est in estimators
        }
    except TailwlsError as exc:
        print(f"tailwls estimate: estimation failed: {exc}", file=sys.stderr)
        return EXIT_ESTIMATION

    if k_min < 10 and needs_rho:
        print(
            f"tailwls estimate: warning: regression estimates at k < 10 "
            f"are unstable (k_min={k_min})",
            file=sys.stderr,
        )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "estimator", "rho_used", "gamma_hat"])
    for i, k in enumerate(range(k_min, k_max + 1)):
        for est in estimators:
            path = paths[est]
            writer.writerow(
                [k, est, _fmt(path.rho_values[i]), _fmt(path.estimates[i])]
            )
    _write_atomic(args.out, buf.getvalue())
    for est in estimators:
        negative = paths[est].estimates < 0.0
        if negative.any():
            first_k = int(paths[est].k_values[np.argmax(negative)])
            print(
                f"tailwls estimate: warning: {est} gives "
                f"{int(negative.sum())} negative estimates "
                f"(first at k={first_k})",
                file=sys.stderr,
            )
    sidecar = {
        "command": "estimate",
        "command_line": " ".join(sys.argv) if sys.argv else "tailwls",
        "package_version": __version__,
        "dataset": args.dataset,
        "n": n,
        "k_min": k_min,
        "k_max": k_max,
        "estimators": ",".join(estimators),
        "rho_method": rho_method.method_id,
        "timestamp_utc": _utc_now(),
    }
    if resolved is not None:
        sidecar["resolved_rho"] = _fmt(resolved)
    _write_sidecar(args.out, sidecar)
    print(f"wrote {args.out} ({len(estimators)} estimators, "
          f"k in [{k_min}, {k_max}], n={n})")
    return EXIT_OK


def _build_spec(args):
    family = args.dist
    if family == "pareto":
        if args.gamma is None:
            raise ValueError("--dist pareto needs --gamma")
        return pareto(args.gamma)
    if family == "burr":
        if args.tau is None or args.lam is None:
            raise ValueError("--dist burr needs --tau and --lambda")
        return burr(args.eta, args.tau, args.lam)
    if family == "frechet":
        if args.alpha is None:
            raise ValueError("--dist frechet needs --alpha")
        return frechet(args.alpha)
    if args.lam is None or args.alpha is None:
        raise ValueError("--dist loggamma needs --lambda and --alpha")
    return loggamma(args.lam, args.alpha)


def cmd_simulate(args) -> int:
    try:
        spec = _build_spec(args)
        estimators = _parse_estimators(args.estimators)
        rho_method = _parse_rho_method(args.rho)
        k_min = int(args.k_min) if args.k_min is not None else 5
        k_max = int(args.k_max) if args.k_max is not None else args.n - 1
        config = SimulationConfig(
            spec=spec,
            n=args.n,
            reps=args.reps,
            k_min=k_min,
            k_max=k_max,
            estimators=estimators,
            rho_method=rho_method,
            master_seed=args.seed,
        )
    except (ValueError, TailwlsError) as exc:
        print(f"tailwls simulate: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        summary = run_simulation(config)
    except TailwlsError as exc:
        print(f"tailwls simulate: simulation failed: {exc}", file=sys.stderr)
        return EXIT_ESTIMATION
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["estimator", "k", "mean", "bias", "mse", "variance", "missing"])
    for row in summary.rows():
        writer.writerow(
            [
                row["estimator"],
                row["k"],
                _fmt(row["mean"]),
                _fmt(row["bias"]),
                _fmt(row["mse"]),
                _fmt(row["variance"]),
                row["missing"],
            ]
        )
    _write_atomic(args.out, buf.getvalue())
    sidecar = {
        "command": "simulate",
        "command_line": " ".join(sys.argv) if sys.argv else "tailwls",
        "timestamp_utc": _utc_now(),
    }
    for key, value in summary.metadata.items():
        if key == "params":
            for pname, pval in value.items():
                sidecar[f"param_{pname}"] = _fmt(pval)
        else:
            sidecar[key] = value
    _write_sidecar(args.out, sidecar)
    print(f"wrote {args.out} ({len(estimators)} estimators, "
          f"k in [{config.k_min}, {config.k_max}], reps={config.reps})")
    return EXIT_OK


def cmd_diagnose(args) -> int:
    try:
        rho = float(args.rho)
        if not np.isfinite(rho) or rho >= 0.0:
            raise ValueError(f"--rho {rho} must be finite and < 0")
        gamma = float(args.gamma)
        k_min, k_max = int(args.k_min), int(args.k_max)
        if not 2 <= k_min <= k_max:
            raise ValueError(f"need 2 <= k_min <= k_max, got [{k_min}, {k_max}]")
        coeff = float(args.amse_coeff)
    except ValueError as exc:
        print(f"tailwls diagnose: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["k", "s1", "s2", "s_dot", "s_ddot", "s1_limit", "s2_limit", "amse"]
    )
    for k in range(k_min, k_max + 1):
        m = s_moments(k, rho)
        writer.writerow(
            [
                k,
                _fmt(m.s1),
                _fmt(m.s2),
                _fmt(m.s_dot),
                _fmt(m.s_ddot),
                _fmt(m.s1_limit),
                _fmt(m.s2_limit),
                _fmt(amse(gamma, k, rho, cross_coeff=coeff)),
            ]
        )
    if args.out is None:
        sys.stdout.write(buf.getvalue())
    else:
        _write_atomic(args.out, buf.getvalue())
        _write_sidecar(
            args.out,
            {
                "command": "diagnose",
                "command_line": " ".join(sys.argv) if sys.argv else "tailwls",
                "package_version": __version__,
                "rho": _fmt(rho),
                "gamma": _fmt(gamma),
                "amse_coeff": _fmt(coeff),
                "timestamp_utc": _utc_now(),
            },
        )
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_optimal_k(args) -> int:
    try:
        with open(args.summary, "r", encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                raise _ParseFailure(f"{args.summary}: empty file")
            for col in ("estimator", "k", "mse"):
                if col not in reader.fieldnames:
                    raise _ParseFailure(
                        f"{args.summary}: missing column {col!r}"
                    )
            pairs = []
            seen = set()
            for row in reader:
                seen.add(row["estimator"])
                if row["estimator"] != args.estimator:
                    continue
                try:
                    pairs.append((int(row["k"]), float(row["mse"])))
                except (TypeError, ValueError) as exc:
                    raise _ParseFailure(
                        f"{args.summary}: bad row for k={row.get('k')!r}: {exc}"
                    ) from None
    except OSError as exc:
        print(f"tailwls optimal-k: cannot read {args.summary}: {exc}",
              file=sys.stderr)
        return EXIT_PARSE
    except _ParseFailure as exc:
        print(f"tailwls optimal-k: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if not pairs:
        known = ",".join(sorted(seen)) or "none"
        print(
            f"tailwls optimal-k: estimator {args.estimator!r} not in "
            f"{args.summary} (present: {known})",
            file=sys.stderr,
        )
        return EXIT_LOOKUP
    k0, mse = optimal_k(pairs)
    print(f"k0={k0} mse={_fmt(mse)}")
    return EXIT_OK


def cmd_fetch_note(args) -> int:
    print("Practical datasets are not bundled with this package.")
    print(f"Download them from: {DATA_URL}")
    print("Expected row counts after extraction:")
    print("  secura  (reinsurance claim sizes): 371")
    print("  condroz (soil calcium content):    1505")
    print("Put the numeric files under data/ (e.g. data/condroz.csv), or set")
    print("TAILWLS_CONDROZ to the file path, to enable the plateau check in")
    print("the acceptance tests.")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="tailwls", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="tail-index paths for a dataset file")
    est.add_argument("dataset", help="text file with one numeric column")
    est.add_argument("--column", type=int, default=None,
                     help="0-based column index (default: first numeric)")
    est.add_argument("--delimiter", default=None,
                     help="field delimiter (default: comma or whitespace)")
    est.add_argument("--k", type=int, default=None, help="single tail fraction")
    est.add_argument("--k-min", type=int, default=None)
    est.add_argument("--k-max", type=int, default=None)
    est.add_argument("--estimators", default=",".join(ESTIMATOR_IDS),
                     help="comma-separated subset of " + ",".join(ESTIMATOR_IDS))
    est.add_argument("--rho", default="minvar",
                     help="fixed:<value>, moment, or minvar")
    est.add_argument("--out", default="path.csv", help="output CSV path")
    est.set_defaults(func=cmd_estimate)

    sim = sub.add_parser("simulate", help="Monte Carlo study to summary.csv")
    sim.add_argument("--dist", required=True,
                     choices=["pareto", "burr", "frechet", "loggamma"])
    sim.add_argument("--gamma", type=float, default=None, help="pareto index")
    sim.add_argument("--eta", type=float, default=1.0, help="burr scale")
    sim.add_argument("--tau", type=float, default=None, help="burr shape")
    sim.add_argument("--lambda", dest="lam", type=float, default=None,
                     help="burr / loggamma parameter")
    sim.add_argument("--alpha", type=float, default=None,
                     help="frechet / loggamma shape")
    sim.add_argument("--n", type=int, required=True, help="sample size")
    sim.add_argument("--reps", type=int, required=True)
    sim.add_argument("--seed", type=int, default=0, help="master seed")
    sim.add_argument("--k-min", type=int, default=None, help="default 5")
    sim.add_argument("--k-max", type=int, default=None, help="default n-1")
    sim.add_argument("--estimators", default=",".join(ESTIMATOR_IDS))
    sim.add_argument("--rho", default="minvar",
                     help="fixed:<value>, moment, or minvar")
    sim.add_argument("--out", default="summary.csv", help="output CSV path")
    sim.set_defaults(func=cmd_simulate)

    diag = sub.add_parser("diagnose",
                          help="weight-moment sums, limits, AMSE per k")
    diag.add_argument("--rho", type=float, required=True)
    diag.add_argument("--gamma", type=float, default=1.0)
    diag.add_argument("--k-min", type=int, default=2)
    diag.add_argument("--k-max", type=int, default=100)
    diag.add_argument("--amse-coeff", type=float, default=2.0,
                      help="cross-term coefficient (2 or 4)")
    diag.add_argument("--out", default=None,
                      help="output CSV path (default: stdout)")
    diag.set_defaults(func=cmd_diagnose)

    opt = sub.add_parser("optimal-k",
                         help="smallest-MSE k in a summary.csv")
    opt.add_argument("summary", help="summary.csv written by simulate")
    opt.add_argument("--estimator", required=True)
    opt.set_defaults(func=cmd_optimal_k)

    note = sub.add_parser("fetch-note",
                          help="where to get the practical datasets")
    note.set_defaults(func=cmd_fetch_note)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
