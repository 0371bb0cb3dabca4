"""Command-line surface for the generators, statistics, and checks.

JSON in, JSON out.  Every command prints a canonical document to stdout
or, with --out, writes it to a file plus a .manifest.json sidecar holding
the normalized command line, seed, library versions, and input hashes.
The documents themselves carry no timestamps, so reruns are bit-identical.

Exit codes: 0 success, 1 runtime or domain failure, 2 usage error.
"""

import csv
import io
import json
import os
from fractions import Fraction

import click

from . import __version__
from .errors import ParseError, TilestatError
from .geometry import Point, PointSet
from .manifest import RunManifest
from .pcdecomp import stacked_decomposition
from .stats import (Histogram, build_edges, directions, equidistribution_stat,
                    normalized_gaps, pair_correlation, pair_value_range)
from .tilings import (ammann_chair, ammann_chair2, chair3, integer_lattice,
                      square_grid)
from .ulam import (UlamConfig, fill_order_check, points_per_step_bound,
                   quadratic_fit, timing_series, ulam_generate,
                   verify_structure)

_MODELS = {
    "ammann-chair": ammann_chair,
    "ammann-chair2": ammann_chair2,
    "chair3": chair3,
    "integer-lattice": integer_lattice,
    "square-grid": square_grid,
}

_STATS = ("directions", "slope-gaps", "angle-gaps", "pair-correlation",
          "pc-squared", "ks")

# click parameter name -> actual flag, where they differ
_FLAG_ALIASES = {"input_path": "input", "range_spec": "range",
                 "bins_spec": "bins", "csv_flag": "csv",
                 "radius": "r", "level": "n"}


class FractionPairType(click.ParamType):
    """Comma-separated coordinate pair; decimal literals become exact
    rationals, so 1.618034 means 809017/500000, not a float."""

    name = "x,y"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        parts = value.split(",")
        if len(parts) != 2:
            self.fail("expected two comma-separated coordinates, got %r"
                      % value, param, ctx)
        try:
            return (Fraction(parts[0].strip()), Fraction(parts[1].strip()))
        except (ValueError, ZeroDivisionError):
            self.fail("coordinates must be numbers, got %r" % value,
                      param, ctx)


FRACTION_PAIR = FractionPairType()


class _RootGroup(click.Group):
    """Library failures become exit code 1; usage errors stay at 2."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.ClickException:
            raise
        except TilestatError as exc:
            raise click.ClickException(str(exc)) from exc


def _command_line(ctx: click.Context) -> list[str]:
    """Normalized command for the manifest: command path plus sorted
    --flag=value tokens.  Exact rationals keep their p/q form."""
    parts = ctx.command_path.split()
    parts[0] = "tilestat"
    for name in sorted(ctx.params):
        value = ctx.params[name]
        if value is None or value is False:
            continue
        flag = "--" + _FLAG_ALIASES.get(name, name).replace("_", "-")
        if value is True:
            parts.append(flag)
        elif isinstance(value, tuple):
            parts.append("%s=%s" % (flag, ",".join(str(v) for v in value)))
        else:
            parts.append("%s=%s" % (flag, value))
    return parts


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise click.ClickException("cannot write %s: %s" % (path, exc)) from exc


def _emit(payload: dict, out: str | None, seed: int | None = None,
          inputs: tuple = (), csv_text: str | None = None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out is None:
        if csv_text is not None:
            raise click.UsageError("--csv needs --out")
        click.echo(text, nl=False)
        return
    out = os.fspath(out)
    _write_text(out, text)
    outputs = [out]
    if csv_text is not None:
        csv_path = os.path.splitext(out)[0] + ".csv"
        _write_text(csv_path, csv_text)
        outputs.append(csv_path)
    ctx = click.get_current_context()
    RunManifest.create(_command_line(ctx), seed=seed, inputs=inputs,
                       outputs=outputs).write_sidecar(out)


def _csv_text(payload: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if "edges" in payload:
        writer.writerow(["lo", "hi", "count"])
        for lo, hi, count in zip(payload["edges"], payload["edges"][1:],
                                 payload["counts"]):
            writer.writerow([lo, hi, count])
    elif "gaps" in payload:
        writer.writerow(["index", "gap"])
        for i, gap in enumerate(payload["gaps"]):
            writer.writerow([i, gap])
    elif "values" in payload:
        writer.writerow(["index", "value"])
        for i, value in enumerate(payload["values"]):
            writer.writerow([i, value])
    elif "series" in payload:
        writer.writerow(["n", "count", "expected", "complete", "tMin", "tMax"])
        for rec in payload["series"]:
            writer.writerow([rec["n"], rec["count"], rec["expected"],
                             int(rec["complete"]), rec["tMin"], rec["tMax"]])
    else:
        raise click.UsageError("--csv is not available for this output")
    return buf.getvalue()


@click.group(cls=_RootGroup, name="tilestat")
@click.version_option(__version__, prog_name="tilestat")
def main():
    """Exact tiling statistics: point-set generators, direction and pair
    statistics, and additive-set growth checks."""


@main.group()
def tiling():
    """Point-set generators."""


@tiling.command("gen")
@click.option("--model", required=True,
              help="one of: " + ", ".join(sorted(_MODELS)))
@click.option("--steps", type=click.IntRange(min=0), required=True,
              help="subdivision depth (radius for integer-lattice)")
@click.option("--out", type=click.Path(dir_okay=False))
def tiling_gen(model, steps, out):
    """Write the model's vertex set after the given number of steps."""
    try:
        build = _MODELS[model]
    except KeyError:
        raise click.UsageError(
            "unknown model %r; valid models: %s"
            % (model, ", ".join(sorted(_MODELS)))) from None
    _emit(build(steps).to_json(), out)


def _load_pointset(path: str) -> PointSet:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError("input is not valid JSON: %s" % exc) from None
    return PointSet.from_json(data)


def _parse_range(spec: str) -> tuple[float, float]:
    parts = spec.split(":")
    if len(parts) != 2:
        raise click.UsageError("range must look like a:b, got %r" % spec)
    try:
        a, b = float(parts[0]), float(parts[1])
    except ValueError:
        raise click.UsageError("range must be numeric, got %r" % spec) from None
    if b <= a:
        raise click.UsageError("range needs a < b")
    return a, b


def _run_stat(ps: PointSet, stat: str, kind: str, bins_spec: str | None,
              scale: float, dedupe: bool, gap_norm: str,
              range_spec: str) -> dict:
    if stat == "directions":
        series = directions(ps, kind=kind, dedupe=dedupe)
        if bins_spec is None:
            return series.to_json()
        hist = Histogram.from_values(
            series.values, build_edges(bins_spec, series.values),
            meta={"stat": stat, "kind": kind, "label": ps.label})
        return hist.to_json()

    if stat in ("slope-gaps", "angle-gaps"):
        series = directions(ps, kind=stat.split("-", 1)[0], dedupe=dedupe)
        gaps = normalized_gaps(series, use_value_count=(gap_norm == "values"))
        if bins_spec is None:
            return gaps.to_json()
        hist = Histogram.from_values(
            gaps.gaps, build_edges(bins_spec, gaps.gaps),
            meta={"stat": stat, "label": ps.label})
        return hist.to_json()

    if stat in ("pair-correlation", "pc-squared"):
        if bins_spec is None:
            raise click.UsageError("--bins is required for pair statistics")
        mode = "distance" if stat == "pair-correlation" else "squaredDistance"
        if bins_spec.startswith("auto:"):
            lo, hi = pair_value_range(ps, mode=mode, scale=scale)
            edges = build_edges(bins_spec, [lo, hi])
        else:
            edges = build_edges(bins_spec)
        return pair_correlation(ps, mode=mode, scale=scale,
                                edges=edges).to_json()

    series = directions(ps, kind=kind, dedupe=dedupe)
    a, b = _parse_range(range_spec)
    stat_value = equidistribution_stat(series, a, b)
    return {"statistic": stat_value, "count": len(series.values),
            "range": [a, b], "kind": kind}


@main.command("stats")
@click.option("--input", "input_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--stat", required=True, type=click.Choice(_STATS))
@click.option("--kind", type=click.Choice(["slope", "angle"]),
              default="slope", show_default=True,
              help="direction kind for directions/ks")
@click.option("--bins", "bins_spec", default=None,
              help="'auto:K', 'lo:hi:K', or comma-separated edges")
@click.option("--scale", type=float, default=1.0, show_default=True,
              help="multiplier applied to pair values")
@click.option("--dedupe", is_flag=True, help="collapse repeated directions")
@click.option("--gap-norm", type=click.Choice(["source", "values"]),
              default="source", show_default=True,
              help="scale gaps by the source count or the value count")
@click.option("--range", "range_spec", default="0:1", show_default=True,
              help="reference interval a:b for ks")
@click.option("--csv", "csv_flag", is_flag=True,
              help="also write a CSV next to --out")
@click.option("--out", type=click.Path(dir_okay=False))
def stats_cmd(input_path, stat, kind, bins_spec, scale, dedupe, gap_norm,
              range_spec, csv_flag, out):
    """Compute a statistic of a point-set JSON document.

    Gap statistics emit a gap series, or a histogram when --bins is
    given.  Pair statistics always need --bins.
    """
    ps = _load_pointset(input_path)
    payload = _run_stat(ps, stat, kind, bins_spec, scale, dedupe, gap_norm,
                        range_spec)
    _emit(payload, out, inputs=(input_path,),
          csv_text=_csv_text(payload) if csv_flag else None)


def _config_options(fn):
    for option in reversed([
        click.option("--mode", type=click.Choice(["userdef-2d", "random-2d"]),
                     default="userdef-2d", show_default=True),
        click.option("--v0", type=FRACTION_PAIR, default=None,
                     help="first seed vector x,y (exact rationals)"),
        click.option("--v1", type=FRACTION_PAIR, default=None,
                     help="second seed vector x,y (exact rationals)"),
        click.option("--seed", type=int, default=None,
                     help="draw seed for random-2d"),
        click.option("--golden", is_flag=True,
                     help="use the exact pair (1, phi), (phi, 1)"),
    ]):
        fn = option(fn)
    return fn


def _resolve_config(mode, v0, v1, seed, golden) -> UlamConfig:
    if golden:
        if v0 is not None or v1 is not None or seed is not None \
                or mode != "userdef-2d":
            raise click.UsageError("--golden replaces --mode/--v0/--v1/--seed")
        return UlamConfig.golden()
    if mode == "random-2d":
        if seed is None:
            raise click.UsageError("random-2d needs --seed")
        if v0 is not None or v1 is not None:
            raise click.UsageError("random-2d draws its vectors; drop --v0/--v1")
        return UlamConfig.random_2d(seed)
    if v0 is None or v1 is None:
        raise click.UsageError("userdef-2d needs --v0 and --v1")
    if seed is not None:
        raise click.UsageError("--seed only applies to random-2d")
    return UlamConfig(Point.of(*v0), Point.of(*v1))


@main.group()
def ulam():
    """Additive-set growth tools."""


@ulam.command("gen")
@_config_options
@click.option("--steps", type=click.IntRange(min=0), required=True)
@click.option("--out", type=click.Path(dir_okay=False))
def ulam_gen(mode, v0, v1, seed, golden, steps, out):
    """Run the batch-admission growth process; dump members with entry
    steps and float positions, the timing series, and the step log."""
    config = _resolve_config(mode, v0, v1, seed, golden)
    state = ulam_generate(config, steps)
    payload = state.to_json(include_log=True)
    v0x, v0y = float(config.v0.x), float(config.v0.y)
    v1x, v1y = float(config.v1.x), float(config.v1.y)
    for member in payload["members"]:
        member["x"] = member["a"] * v0x + member["b"] * v1x
        member["y"] = member["a"] * v0y + member["b"] * v1y
    payload["timing"] = [rec.to_json() for rec in timing_series(state)]
    _emit(payload, out, seed=config.seed)


@ulam.command("timing")
@_config_options
@click.option("--steps", type=click.IntRange(min=1), required=True)
@click.option("--fit-min", type=int, default=20, show_default=True,
              help="smallest complete segment used in the fit")
@click.option("--csv", "csv_flag", is_flag=True,
              help="also write the series as CSV next to --out")
@click.option("--out", type=click.Path(dir_okay=False))
def ulam_timing(mode, v0, v1, seed, golden, steps, fit_min, csv_flag, out):
    """Per-segment completion-time series, the quadratic fit of T_max over
    complete segments, and the fill-order report."""
    config = _resolve_config(mode, v0, v1, seed, golden)
    state = ulam_generate(config, steps)
    series = timing_series(state)
    fit_recs = [rec for rec in series if rec.complete and rec.n >= fit_min]
    fit = None
    if len(fit_recs) >= 2:
        c, r2 = quadratic_fit([rec.n for rec in fit_recs],
                              [float(rec.t_max) for rec in fit_recs])
        fit = {"c": c, "rSquared": r2,
               "nRange": [fit_recs[0].n, fit_recs[-1].n]}
    payload = {"config": config.to_json(), "steps": state.steps_done,
               "series": [rec.to_json() for rec in series], "fit": fit,
               "fillOrder": fill_order_check(state).to_json()}
    _emit(payload, out, seed=config.seed,
          csv_text=_csv_text(payload) if csv_flag else None)


@ulam.command("verify-structure")
@_config_options
@click.option("--steps", type=click.IntRange(min=1), required=True)
@click.option("--out", type=click.Path(dir_okay=False))
def ulam_verify(mode, v0, v1, seed, golden, steps, out):
    """Compare membership with the structure predicate over the decided
    region.  The mismatch list should come back empty."""
    config = _resolve_config(mode, v0, v1, seed, golden)
    state = ulam_generate(config, steps)
    payload = {"config": config.to_json()}
    payload.update(verify_structure(state).to_json())
    _emit(payload, out, seed=config.seed)


@ulam.command("bounds")
@_config_options
@click.option("--r", "radius", type=float, required=True, help="probe radius")
@click.option("--out", type=click.Path(dir_okay=False))
def ulam_bounds(mode, v0, v1, seed, golden, radius, out):
    """Closed-form cap on the per-step batch size at probe radius r."""
    config = _resolve_config(mode, v0, v1, seed, golden)
    bound, asymptotic = points_per_step_bound(config, radius)
    _emit({"config": config.to_json(), "r": radius, "bound": bound,
           "asymptotic": asymptotic}, out, seed=config.seed)


@main.group()
def pc():
    """Pair-correlation decomposition."""


@pc.command("decompose")
@click.option("--n", "level", type=int, required=True)
@click.option("--no-values", is_flag=True, help="counts only, no value lists")
@click.option("--out", type=click.Path(dir_okay=False))
def pc_decompose(level, no_values, out):
    """Stacked seven-component approximation of the distance multiset at
    level n, with residual and spurious bookkeeping."""
    if level < 7:
        raise click.UsageError("stacked decomposition needs --n >= 7")
    payload = stacked_decomposition(level).to_json(include_values=not no_values)
    _emit(payload, out)


if __name__ == "__main__":
    main()
