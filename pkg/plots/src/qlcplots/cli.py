"""qlcplot: render qlcbench CSVs to static figures.

Spec-file mode reads a TOML description::

    [plot]                     # or [comparison]
    panel = "ratio"            # plot:   ratio | success | beta
    # panels = ["ratio", "beta", "success"]   (comparison only)
    out = "figure.png"         # .png / .svg / .pdf
    # title = "..."
    # xlim = [0, 500]
    # ylim = [0.0, 1.0]
    # beta_clip = [-10.0, 0.0]

    [[series]]
    csv = "results/falqon_dt0.01__inst000.csv"
    label = "FALQON"

Flag mode renders a single panel without a file::

    qlcplot --panel beta --series run.csv:FALQON --beta-clip=-10,0 --out beta.png
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .render import PlotSpec, Series, render, render_comparison


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected LO,HI, got {text!r}")
    return float(parts[0]), float(parts[1])


def _series_arg(text: str) -> Series:
    if ":" in text:
        path, label = text.rsplit(":", 1)
    else:
        path, label = text, Path(text).stem
    return Series(csv=path, label=label)


def load_plot_spec(path: str | Path) -> tuple[PlotSpec, tuple[str, ...] | None]:
    """Parse a spec file; returns (spec, comparison panels or None)."""
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    if ("plot" in raw) == ("comparison" in raw):
        raise ValueError(f"{path}: spec needs exactly one of [plot] or [comparison]")
    block_name = "plot" if "plot" in raw else "comparison"
    block = raw[block_name]
    series = tuple(Series(csv=s["csv"], label=s["label"]) for s in raw.get("series", []))
    panels = None
    if block_name == "comparison":
        panels = tuple(block.get("panels", ("ratio", "beta", "success")))
        panel = panels[0]
    else:
        panel = block["panel"]
    spec = PlotSpec(
        series=series,
        panel=panel,
        out=block["out"],
        title=block.get("title"),
        xlim=tuple(block["xlim"]) if "xlim" in block else None,
        ylim=tuple(block["ylim"]) if "ylim" in block else None,
        beta_clip=tuple(block["beta_clip"]) if "beta_clip" in block else None,
    )
    return spec, panels


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qlcplot", description="render qlcbench CSVs to static figures")
    parser.add_argument("--spec", help="TOML plot description (overrides the flag mode)")
    parser.add_argument("--panel", choices=["ratio", "success", "beta"], help="single-panel flag mode")
    parser.add_argument("--panels", help="comma-separated panels for a flag-mode comparison")
    parser.add_argument("--series", action="append", default=[], metavar="CSV[:LABEL]")
    parser.add_argument("--out", help="output image (.png/.svg/.pdf)")
    parser.add_argument("--title", default=None)
    parser.add_argument("--xlim", default=None, metavar="LO,HI")
    parser.add_argument("--ylim", default=None, metavar="LO,HI")
    parser.add_argument("--beta-clip", default=None, metavar="LO,HI")
    return parser


def cli_main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.spec:
            spec, panels = load_plot_spec(args.spec)
        else:
            if args.out is None or (args.panel is None and args.panels is None):
                raise ValueError("flag mode needs --out and one of --panel/--panels (or use --spec)")
            panels = tuple(args.panels.split(",")) if args.panels else None
            spec = PlotSpec(
                series=tuple(_series_arg(s) for s in args.series),
                panel=args.panel or panels[0],
                out=args.out,
                title=args.title,
                xlim=_pair(args.xlim) if args.xlim else None,
                ylim=_pair(args.ylim) if args.ylim else None,
                beta_clip=_pair(args.beta_clip) if args.beta_clip else None,
            )
        out = render_comparison(spec, panels) if panels else render(spec)
        print(f"wrote {out}")
        return 0
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()
