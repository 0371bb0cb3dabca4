"""Render validated JSON payloads to image files.

Payload shapes are checked structurally before any drawing happens, so a
histogram file fed to a scatter plot fails fast with SchemaMismatch
rather than half-rendering.  All numbers come straight from the JSON.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .errors import EmptyData, SchemaMismatch
from .spec import PlotSpec

_FIGSIZE = (8.0, 5.0)
_DPI = 100


@dataclass(frozen=True)
class RenderResult:
    output_path: str
    legend_labels: tuple[str, ...]


def _load(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaMismatch("cannot read %s: %s" % (path, exc)) from None
    except json.JSONDecodeError as exc:
        raise SchemaMismatch("%s is not valid JSON: %s" % (path, exc)) from None
    if not isinstance(data, dict):
        raise SchemaMismatch("%s: expected a JSON object" % path)
    return data


def _number_list(obj, what, path) -> list[float]:
    if not isinstance(obj, list) or \
            not all(isinstance(v, (int, float)) for v in obj):
        raise SchemaMismatch("%s: %s must be a list of numbers" % (path, what))
    return [float(v) for v in obj]


def _check_histogram(payload: dict, path: str) -> dict:
    for key in ("edges", "counts", "total"):
        if key not in payload:
            raise SchemaMismatch("%s: histogram payload needs %r" % (path, key))
    edges = _number_list(payload["edges"], "edges", path)
    counts = payload["counts"]
    if not isinstance(counts, list) or len(counts) != len(edges) - 1 or \
            not all(isinstance(c, int) for c in counts):
        raise SchemaMismatch("%s: counts must be one integer per bin" % path)
    if payload["total"] == 0:
        raise EmptyData("%s: histogram holds no values" % path)
    return payload


def _check_decomposition(payload: dict, path: str) -> dict:
    for key in ("n", "full", "components", "residual"):
        if key not in payload:
            raise SchemaMismatch(
                "%s: decomposition payload needs %r" % (path, key))
    comps = payload["components"]
    if not isinstance(comps, list) or not comps:
        raise SchemaMismatch("%s: components must be a nonempty list" % path)
    for comp in comps:
        if not isinstance(comp, dict) or "name" not in comp:
            raise SchemaMismatch("%s: each component needs a name" % path)
        if "values" not in comp:
            raise SchemaMismatch(
                "%s: components carry no value lists; regenerate without "
                "--no-values" % path)
    if "values" not in payload["full"] or "values" not in payload["residual"]:
        raise SchemaMismatch("%s: full/residual value lists missing" % path)
    if not payload["full"]["values"]:
        raise EmptyData("%s: empty distance set" % path)
    return payload


def _check_run(payload: dict, path: str) -> dict:
    members = payload.get("members")
    if not isinstance(members, list):
        raise SchemaMismatch("%s: run payload needs a members list" % path)
    for m in members[:1]:
        if not isinstance(m, dict) or "x" not in m or "y" not in m:
            raise SchemaMismatch(
                "%s: members need float x/y positions" % path)
    if not members:
        raise EmptyData("%s: no members to draw" % path)
    return payload


def _check_timing(payload: dict, path: str) -> dict:
    series = payload.get("series")
    if not isinstance(series, list):
        raise SchemaMismatch("%s: timing payload needs a series list" % path)
    for rec in series[:1]:
        if not isinstance(rec, dict) or \
                not {"n", "tMin", "tMax", "complete"} <= set(rec):
            raise SchemaMismatch("%s: malformed timing record" % path)
    if not any(rec.get("tMin") is not None for rec in series):
        raise EmptyData("%s: no observed segments" % path)
    return payload


def _input_label(payload: dict, path: str) -> str:
    meta = payload.get("meta")
    if isinstance(meta, dict) and meta.get("label"):
        return str(meta["label"])
    if payload.get("label"):
        return str(payload["label"])
    config = payload.get("config")
    if isinstance(config, dict) and config.get("label"):
        return str(config["label"])
    return os.path.splitext(os.path.basename(path))[0]


def _draw_hist(ax, spec, payloads, paths) -> list[str]:
    labels = []
    for payload, path in zip(payloads, paths):
        label = _input_label(payload, path)
        ax.stairs(payload["counts"], payload["edges"], label=label,
                  fill=len(payloads) == 1, alpha=0.7 if len(payloads) == 1 else 1.0)
        labels.append(label)
    if spec.overlay == "poisson":
        # expected count per bin for unit-rate exponential gaps, drawn at
        # bin centers: total * width * exp(-center)
        ref = payloads[0]
        total = ref["total"]
        edges = ref["edges"]
        xs = [(a + b) / 2 for a, b in zip(edges, edges[1:])]
        ys = [total * (b - a) * math.exp(-x)
              for a, b, x in zip(edges, edges[1:], xs)]
        label = "exp(-t) reference"
        ax.plot(xs, ys, "k--", linewidth=1.5, label=label)
        labels.append(label)
    ax.set_xlabel("value")
    ax.set_ylabel("count")
    return labels


def _draw_stacked(ax, spec, payload) -> list[str]:
    stacks = [_number_list(c["values"], "component values", "input")
              for c in payload["components"]]
    labels = [str(c["name"]) for c in payload["components"]]
    stacks.append(_number_list(payload["residual"]["values"],
                               "residual values", "input"))
    labels.append("residual")
    full = _number_list(payload["full"]["values"], "full values", "input")
    lo, hi = min(full), max(full)
    if hi <= lo:
        hi = lo + 1.0
    width = (hi - lo) / 40
    bins = [lo + i * width for i in range(41)]
    ax.hist(stacks, bins=bins, stacked=True, label=labels)
    ax.set_xlabel("squared distance")
    ax.set_ylabel("count")
    return labels


def _draw_scatter(ax, spec, payloads, paths) -> list[str]:
    labels = []
    for payload, path in zip(payloads, paths):
        label = _input_label(payload, path)
        xs = [m["x"] for m in payload["members"]]
        ys = [m["y"] for m in payload["members"]]
        ax.scatter(xs, ys, s=6, label=label)
        labels.append(label)
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    return labels


def _draw_timing(ax, spec, payload) -> list[str]:
    recs = [r for r in payload["series"] if r.get("tMin") is not None]
    ns = [r["n"] for r in recs]
    ax.plot(ns, [r["tMin"] for r in recs], ".", markersize=4,
            label="T_min(n)")
    ax.plot(ns, [r["tMax"] for r in recs], ".", markersize=4,
            label="T_max(n)")
    labels = ["T_min(n)", "T_max(n)"]
    if spec.overlay == "quadratic-fit":
        fit = payload.get("fit")
        if not isinstance(fit, dict) or "c" not in fit:
            raise EmptyData("timing payload carries no fit to overlay")
        c = float(fit["c"])
        r2 = fit.get("rSquared")
        lo, hi = (fit.get("nRange") or [min(ns), max(ns)])[:2]
        grid = [lo + (hi - lo) * i / 200 for i in range(201)]
        label = "c n^2 fit (c=%.4g)" % c
        if isinstance(r2, (int, float)):
            label = "c n^2 fit (c=%.4g, R^2=%.3f)" % (c, r2)
        ax.plot(grid, [c * n * n for n in grid], "k--", linewidth=1.5,
                label=label)
        labels.append(label)
    ax.set_xlabel("segment index n")
    ax.set_ylabel("entry step")
    return labels


_CHECKERS = {
    "hist": _check_histogram,
    "stacked-hist": _check_decomposition,
    "scatter": _check_run,
    "timing": _check_timing,
}


def render(spec: PlotSpec) -> RenderResult:
    """Draw the spec's inputs and write the image; returns the output
    path with the legend labels actually drawn."""
    payloads = []
    for path in spec.input_paths:
        payloads.append(_CHECKERS[spec.plot_kind](_load(path), path))

    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    try:
        if spec.plot_kind == "hist":
            labels = _draw_hist(ax, spec, payloads, spec.input_paths)
        elif spec.plot_kind == "stacked-hist":
            labels = _draw_stacked(ax, spec, payloads[0])
        elif spec.plot_kind == "scatter":
            labels = _draw_scatter(ax, spec, payloads, spec.input_paths)
        else:
            labels = _draw_timing(ax, spec, payloads[0])
        if spec.title:
            ax.set_title(spec.title)
        ax.legend(loc="best", fontsize=8)
        save_kwargs = {}
        if spec.output_path.lower().endswith(".svg"):
            # keep re-renders byte-identical
            save_kwargs["metadata"] = {"Date": None}
        fig.savefig(spec.output_path, **save_kwargs)
    finally:
        plt.close(fig)

    if not os.path.exists(spec.output_path) or \
            os.path.getsize(spec.output_path) == 0:
        raise EmptyData("nothing was written to %s" % spec.output_path)
    return RenderResult(spec.output_path, tuple(labels))
