"""Command line for rendering tilestat JSON into figures."""

from __future__ import annotations

import json

import click

from . import __version__
from .errors import PlotsError
from .render import render
from .spec import KINDS, OVERLAYS, PlotSpec


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.ClickException:
            raise
        except PlotsError as exc:
            raise click.ClickException(str(exc)) from exc


@click.group(cls=_Group, name="tilestat-plots")
@click.version_option(__version__, prog_name="tilestat-plots")
def main():
    """Draw tilestat JSON outputs as figures."""


@main.command("render")
@click.option("--spec", "spec_path", type=click.Path(exists=True, dir_okay=False),
              help="JSON plot spec; replaces the individual flags")
@click.option("--input", "inputs", multiple=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--kind", type=click.Choice(KINDS))
@click.option("--overlay", type=click.Choice(OVERLAYS), default=None)
@click.option("--out", type=click.Path(dir_okay=False))
@click.option("--title", default=None)
def render_cmd(spec_path, inputs, kind, overlay, out, title):
    """Render one figure, from a spec file or from flags."""
    if spec_path is not None:
        if inputs or kind or overlay or out or title:
            raise click.UsageError("--spec replaces the other options")
        with open(spec_path, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise click.UsageError("spec is not valid JSON: %s" % exc)
        spec = PlotSpec.from_json(data)
    else:
        if not inputs or kind is None or out is None:
            raise click.UsageError("need --input, --kind and --out "
                                   "(or a --spec file)")
        spec = PlotSpec(input_paths=tuple(inputs), plot_kind=kind,
                        output_path=out, overlay=overlay or "none",
                        title=title)
    result = render(spec)
    click.echo(json.dumps({"outputPath": result.output_path,
                           "legendLabels": list(result.legend_labels)},
                          sort_keys=True))


if __name__ == "__main__":
    main()
