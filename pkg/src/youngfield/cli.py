"""Command-line front end: ``sample``, ``predict``, ``fluctuations`` and ``verify``.

Exit codes: 0 success, 2 configuration error, 3 verification failure,
4 I/O failure.  Every file written embeds the library version and the full
run configuration.  ``YOUNGFIELD_SEED`` and ``YOUNGFIELD_THREADS`` may stand
in for ``--seed`` and ``--threads``; any other option can also come from a
``key = value`` file given with ``--config``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from scipy import stats

from . import __version__
from .characters import (
    DEFAULT_DISTRIBUTION_CAP,
    ThomaParams,
    gelfand,
    plancherel,
    schur_weyl,
    thoma_induced,
)
from .export import dumps_csv, dumps_json, rational, svg_heatmap
from .fluctuations import covariance_report, fluctuation_field, height_array
from .partitions import Partition
from .samplers import (
    GrowthPath,
    gelfand_growth,
    hook_walk_syt,
    plancherel_growth,
    rsk_growth,
    schur_weyl_growth,
    thoma_growth,
)
from .series import (
    LimitData,
    TruncationError,
    bernoulli_limit,
    clt_covariance,
    diagram_statistics,
    lln_moments,
    multilevel_covariance,
    multilevel_moments,
    plancherel_limit,
    predicted_pcov,
    schur_weyl_limit,
    square_level_moments,
    thoma_limit,
)
from .suites import CHECKS, SUITES, resolve_suite, run_check

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VERIFY = 3
EXIT_IO = 4

SAMPLE_MODELS = ("plancherel", "rsk", "gelfand", "schur-weyl", "thoma", "fixed-shape")
PREDICT_MODELS = ("plancherel", "gelfand", "schur-weyl", "thoma", "square", "custom")


class ConfigError(ValueError):
    """Invalid or incomplete run configuration (exit code 2)."""


@dataclass
class RunConfig:
    command: str
    model: str | None = None
    n: int | None = None
    paths: int | None = None
    seed: int | None = None
    alphas: list[str] = field(default_factory=list)
    kmax: int | None = None
    shape: list[int] | None = None
    alpha_params: list[str] = field(default_factory=list)
    beta_params: list[str] = field(default_factory=list)
    D: int | None = None
    c: str | None = None
    coeffs: str | None = None
    order: int | None = None
    out: str | None = None
    format: str = "csv"
    threads: int = 1
    summary_only: bool = False
    suite: str | None = None

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


# ---------------------------------------------------------------------------
# Parsing helpers
# ---------------------------------------------------------------------------

def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational number: {text!r}") from exc


def _split(text: str | None) -> list[str]:
    if not text:
        return []
    return [p.strip() for p in str(text).split(",") if p.strip()]


def _atoms(values: Sequence[str]) -> list[tuple[Fraction, Fraction]]:
    """``x`` or ``x:w`` entries as ``(location, weight)`` atoms (weight defaults to 1)."""
    out = []
    for item in values:
        loc, _, weight = item.partition(":")
        out.append((_fraction(loc), _fraction(weight) if weight else Fraction(1)))
    return out


def read_config_file(path: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment; keys use dashes or underscores."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read config file {path}: {exc}") from exc
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="youngfield", allow_abbrev=False,
                                     description="Random partitions, growth processes and their moment asymptotics.")
    parser.add_argument("--version", action="version", version=f"youngfield {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="key = value file supplying defaults for any option")
        p.add_argument("--threads", type=int, help="worker processes (default: $YOUNGFIELD_THREADS or 1)")
        p.add_argument("--out", help="output directory (or file for JSON reports)")

    s = sub.add_parser("sample", help="sample growth paths or tableaux", allow_abbrev=False)
    common(s)
    s.add_argument("--model", choices=SAMPLE_MODELS)
    s.add_argument("--n", type=int)
    s.add_argument("--paths", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--shape", help="comma-separated parts for the fixed-shape model")
    s.add_argument("--alpha-params", "--alpha", dest="alpha_params", help="comma-separated Thoma row rates")
    s.add_argument("--beta-params", "--beta", dest="beta_params", help="comma-separated Thoma column rates")
    s.add_argument("--D", type=int, dest="D", help="alphabet size for the Schur-Weyl model")
    s.add_argument("--format", choices=("csv", "json", "svg"))
    s.add_argument("--summary-only", action="store_true", default=None, help="write only the marginal summary")

    p = sub.add_parser("predict", help="exact limit moments and covariances", allow_abbrev=False)
    common(p)
    p.add_argument("--model", choices=PREDICT_MODELS)
    p.add_argument("--kmax", type=int)
    p.add_argument("--alphas", help="comma-separated levels in (0, 1]")
    p.add_argument("--c", help="Schur-Weyl limit parameter c = lim sqrt(n)/D")
    p.add_argument("--alpha-params", "--alpha", dest="alpha_params", help="row atoms x or x:w")
    p.add_argument("--beta-params", "--beta", dest="beta_params", help="column atoms x or x:w")
    p.add_argument("--coeffs", help="JSON file {\"c\": [...], \"d\": [[i, j, v], ...], \"exact\": bool}")
    p.add_argument("--order", type=int, help="series truncation order for non-polynomial models")

    f = sub.add_parser("fluctuations", help="Monte Carlo height-function covariance report", allow_abbrev=False)
    common(f)
    f.add_argument("--model", choices=("plancherel",))
    f.add_argument("--n", type=int)
    f.add_argument("--paths", type=int)
    f.add_argument("--seed", type=int)
    f.add_argument("--alphas", help="comma-separated levels in (0, 1]")
    f.add_argument("--kmax", type=int)
    f.add_argument("--format", choices=("csv", "json", "svg"))

    v = sub.add_parser("verify", help="run a verification suite", allow_abbrev=False)
    common(v)
    v.add_argument("suite", help=f"one of {', '.join(SUITES)} or a check code A1..A{len(CHECKS)}")
    v.add_argument("--n", type=int)
    v.add_argument("--paths", type=int)
    v.add_argument("--seed", type=int)
    return parser


def make_config(argv: Sequence[str] | None = None) -> RunConfig:
    parser = build_parser()
    args = parser.parse_args(argv)
    values = {k: v for k, v in vars(args).items() if v is not None}
    if args.config:
        for key, value in read_config_file(args.config).items():
            values.setdefault(key, value)
    values.pop("config", None)
    if "seed" not in values and os.environ.get("YOUNGFIELD_SEED"):
        values["seed"] = os.environ["YOUNGFIELD_SEED"]
    if "threads" not in values and os.environ.get("YOUNGFIELD_THREADS"):
        values["threads"] = os.environ["YOUNGFIELD_THREADS"]

    def as_int(key):
        if key in values and values[key] is not None:
            try:
                values[key] = int(values[key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"--{key} must be an integer") from exc

    for key in ("n", "paths", "seed", "kmax", "D", "order", "threads"):
        as_int(key)
    for key in ("alphas", "alpha_params", "beta_params"):
        if key in values:
            values[key] = _split(values[key]) if isinstance(values[key], str) else list(values[key])
    if "shape" in values and isinstance(values["shape"], str):
        try:
            values["shape"] = [int(p) for p in _split(values["shape"])]
        except ValueError as exc:
            raise ConfigError("--shape must be comma-separated integers") from exc
    if isinstance(values.get("summary_only"), str):
        values["summary_only"] = values["summary_only"].lower() in ("1", "true", "yes")
    known = set(RunConfig.__dataclass_fields__)
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
    config = RunConfig(**values)
    if config.threads < 1:
        raise ConfigError("--threads must be at least 1")
    return config


# ---------------------------------------------------------------------------
# sample
# ---------------------------------------------------------------------------

def _require(config: RunConfig, *keys: str) -> None:
    missing = [k for k in keys if getattr(config, k) in (None, [])]
    if missing:
        raise ConfigError("missing required option(s): " + ", ".join("--" + k.replace("_", "-") for k in missing))


def _thoma_params(config: RunConfig) -> ThomaParams:
    try:
        return ThomaParams(tuple(_fraction(a) for a in config.alpha_params),
                           tuple(_fraction(b) for b in config.beta_params))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _sample_one(job: tuple) -> GrowthPath:
    model, n, seed, index, extra = job
    if model == "plancherel":
        return plancherel_growth(n, seed, index)
    if model == "rsk":
        return rsk_growth(n, seed, index)
    if model == "gelfand":
        return gelfand_growth(n, seed, index)
    if model == "schur-weyl":
        return schur_weyl_growth(n, extra, seed, index)
    if model == "thoma":
        return thoma_growth(n, extra, seed, index)
    if model == "fixed-shape":
        return hook_walk_syt(extra, seed, index)
    raise ConfigError(f"unknown model {model!r}")


def sample_paths(config: RunConfig) -> list[GrowthPath]:
    _require(config, "model", "paths", "seed")
    if config.paths < 1:
        raise ConfigError("--paths must be positive")
    if config.seed < 0:
        raise ConfigError("--seed must be non-negative")
    extra = None
    if config.model == "fixed-shape":
        _require(config, "shape")
        try:
            extra = Partition(config.shape)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if config.n is not None and config.n != extra.size():
            raise ConfigError("--n must equal the size of --shape")
        config.n = extra.size()
    else:
        _require(config, "n")
        if config.n < 1:
            raise ConfigError("--n must be positive")
    if config.model == "schur-weyl":
        _require(config, "D")
        if config.D < 1:
            raise ConfigError("--D must be positive")
        extra = config.D
    if config.model == "thoma":
        extra = _thoma_params(config)
    jobs = [(config.model, config.n, config.seed, i, extra) for i in range(config.paths)]
    if config.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            return list(pool.map(_sample_one, jobs, chunksize=max(1, len(jobs) // (4 * config.threads))))
    return [_sample_one(job) for job in jobs]


def reference_law(config: RunConfig):
    """Exact law of the final shape when it is available at this size."""
    n = config.n
    if n is None or n > DEFAULT_DISTRIBUTION_CAP:
        return None
    if config.model in ("plancherel", "rsk"):
        return plancherel(n)
    if config.model == "gelfand":
        return gelfand(n)
    if config.model == "schur-weyl":
        return schur_weyl(n, config.D)
    if config.model == "thoma":
        return thoma_induced(n, _thoma_params(config))
    return None


def marginal_summary(config: RunConfig, paths: Sequence[GrowthPath]) -> dict:
    counts = Counter(p.final() for p in paths)
    table = [[list(lam), counts[lam]] for lam in sorted(counts, reverse=True)]
    summary: dict = {"paths": len(paths), "final_shapes": table}
    law = reference_law(config)
    if law is not None:
        keys = sorted(law.probs, reverse=True)
        expected = [float(law.probs[k]) * len(paths) for k in keys]
        observed = [counts.get(k, 0) for k in keys]
        summary["reference"] = [[list(k), rational(law.probs[k])] for k in keys]
        if len(keys) > 1 and sum(observed) == len(paths):
            summary["chi_square_p"] = float(stats.chisquare(observed, expected).pvalue)
    return summary


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def cmd_sample(config: RunConfig) -> int:
    paths = sample_paths(config)
    meta = config.to_json()
    summary = marginal_summary(config, paths)
    if config.out is None:
        sys.stdout.write(dumps_json({"summary": summary}, meta))
        return EXIT_OK
    out = Path(config.out)
    _write(out / "summary.json", dumps_json({"summary": summary}, meta))
    if config.summary_only:
        return EXIT_OK
    if config.format == "json":
        payload = {"paths": [{"index": p.path_index, "shapes": [list(s) for s in p.shapes]} for p in paths]}
        _write(out / "paths.json", dumps_json(payload, meta))
    elif config.format == "csv":
        for p in paths:
            _write(out / f"path_{p.path_index:05d}.csv", dumps_csv(("t", "parts"), p.csv_rows(), meta))
    else:
        for p in paths:
            H = height_array(p)
            n = p.steps
            _write(out / f"height_{p.path_index:05d}.svg",
                   svg_heatmap(H, list(range(-n, n + 1)), list(range(n + 1)), f"H(x,t), path {p.path_index}", meta))
    return EXIT_OK


# ---------------------------------------------------------------------------
# predict
# ---------------------------------------------------------------------------

def _limit_data(config: RunConfig, order: int) -> LimitData:
    model = config.model
    if model in ("plancherel", "gelfand"):
        return plancherel_limit()
    if model == "schur-weyl":
        _require(config, "c")
        return schur_weyl_limit(_fraction(config.c), order)
    if model == "thoma":
        return thoma_limit(_atoms(config.alpha_params), _atoms(config.beta_params), order)
    if model == "square":
        return bernoulli_limit(order)
    if model == "custom":
        _require(config, "coeffs")
        try:
            data = json.loads(Path(config.coeffs).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{config.coeffs}: {exc}") from exc
        try:
            return LimitData(c=tuple(_fraction(str(x)) for x in data["c"]),
                             d={(int(i), int(j)): _fraction(str(v)) for i, j, v in data.get("d", [])},
                             exact=bool(data.get("exact", False)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{config.coeffs}: {exc}") from exc
    raise ConfigError(f"unknown model {model!r}")


def _pair_key(a: Fraction, b: Fraction) -> str:
    return f"{rational(a)}|{rational(b)}"


def predictions(config: RunConfig) -> dict:
    _require(config, "model")
    kmax = 8 if config.kmax is None else config.kmax
    config.kmax = kmax
    if kmax < 0:
        raise ConfigError("--kmax must be non-negative")
    alphas = [_fraction(a) for a in config.alphas] or [Fraction(1)]
    if any(not 0 < a <= 1 for a in alphas):
        raise ConfigError("levels must lie in (0, 1]")
    order = config.order if config.order is not None else 2 * kmax + 4
    data = _limit_data(config, order)
    out: dict = {"limit": data.to_json(), "kmax": kmax}
    out["a"] = lln_moments(data, kmax)
    out["b"] = clt_covariance(data, kmax)
    out["a_alpha"] = {rational(a): multilevel_moments(data, a, kmax) for a in alphas}
    out["b_alpha"] = {}
    out["diagram"] = {}
    for i, a in enumerate(alphas):
        for a2 in alphas[i:]:
            key = _pair_key(a, a2)
            out["b_alpha"][key] = multilevel_covariance(data, a, a2, kmax)
            means, cov = diagram_statistics(data, a, a2, kmax)
            out["diagram"][key] = {"means": means, "cov": cov}
    if config.model == "square":
        out["square_level_moments"] = {rational(a): square_level_moments(a, kmax) for a in alphas}
    if config.model in ("plancherel", "gelfand"):
        factor = 2 if config.model == "gelfand" else 1
        out["field_covariance_over_pi"] = {
            _pair_key(a, a2): [[factor * predicted_pcov(k, k2, a, a2) for k2 in range(kmax + 1)] for k in range(kmax + 1)]
            for i, a in enumerate(alphas) for a2 in alphas[i:]
        }
    return out


def required_order(config: RunConfig, limit: int = 200) -> int | None:
    """Smallest truncation order for which the requested predictions are computable."""
    trial = RunConfig(**{**config.to_json(), "order": None})
    for order in range((config.order or 0) + 1, limit + 1):
        trial.order = order
        try:
            predictions(trial)
        except TruncationError:
            continue
        return order
    return None


def cmd_predict(config: RunConfig) -> int:
    try:
        payload = predictions(config)
    except TruncationError as exc:
        raise ConfigError(f"series truncation order {config.order} is too short ({exc}); "
                          f"required order: {required_order(config)}") from exc
    text = dumps_json(payload, config.to_json())
    if config.out is None:
        sys.stdout.write(text)
    else:
        _write(Path(config.out), text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# fluctuations
# ---------------------------------------------------------------------------

def cmd_fluctuations(config: RunConfig) -> int:
    config.model = config.model or "plancherel"
    _require(config, "n", "paths", "seed")
    if config.paths < 2:
        raise ConfigError("--paths must be at least 2 for a covariance")
    if config.n < 1 or config.seed < 0:
        raise ConfigError("--n must be positive and --seed non-negative")
    alphas = [_fraction(a) for a in config.alphas] or [Fraction(1), Fraction(1, 2)]
    if any(not 0 < a <= 1 for a in alphas):
        raise ConfigError("levels must lie in (0, 1]")
    kmax = 2 if config.kmax is None else config.kmax
    config.kmax = kmax
    report = covariance_report(config.n, config.paths, config.seed, alphas, list(range(1, kmax + 1)))
    meta = config.to_json()
    report_text = dumps_json({"report": report.to_json()}, meta)
    if config.out is None:
        sys.stdout.write(report_text)
        return EXIT_OK
    out = Path(config.out)
    _write(out / "report.json", report_text)
    if config.format in ("csv", "svg"):
        paths = [rsk_growth(config.n, config.seed, i) for i in range(config.paths)]
        field_values = fluctuation_field(paths)
        n = config.n
        if config.format == "csv":
            rows = ((x, t, float(field_values[t, x + n])) for t in range(n + 1) for x in range(-n, n + 1))
            _write(out / "field.csv", dumps_csv(("x", "t", "value"), rows, meta))
        else:
            _write(out / "field.svg", svg_heatmap(field_values, list(range(-n, n + 1)), list(range(n + 1)),
                                                  "H - mean H, path 0", meta))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(config: RunConfig) -> int:
    try:
        codes = resolve_suite(config.suite)
    except KeyError as exc:
        raise ConfigError(str(exc.args[0])) from exc
    results = []
    for code in codes:
        kwargs = {}
        if code == "A11":
            kwargs = {k: getattr(config, k) for k in ("n", "paths", "seed") if getattr(config, k) is not None}
        elif code == "A10" and config.seed is not None:
            kwargs = {"seed": config.seed}
        result = run_check(code, **kwargs)
        print(result.line(), file=sys.stderr)
        results.append(result)
    passed = all(r.passed for r in results)
    text = dumps_json({"suite": config.suite, "passed": passed, "checks": [r.to_json() for r in results]},
                      config.to_json())
    if config.out is None:
        sys.stdout.write(text)
    else:
        _write(Path(config.out), text)
    return EXIT_OK if passed else EXIT_VERIFY


COMMANDS = {"sample": cmd_sample, "predict": cmd_predict, "fluctuations": cmd_fluctuations, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config = make_config(argv)
        return COMMANDS[config.command](config)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code) if isinstance(exc.code, int) else EXIT_CONFIG
    except ValueError as exc:  # ConfigError and invalid model parameters rejected by the library
        print(f"youngfield: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"youngfield: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
