"""Command line interface.

Datasets are given as CSV paths; bare names resolve against the
SCAFFOLDVIZ_DATA_DIR environment variable and then against the bundled
fixtures (iris, wbc). Report commands write delimited output and a
matplotlib figure next to it when asked.
"""

from __future__ import annotations

import os
from pathlib import Path

import click

from . import datasets as bundled
from .classifiers import ClassifierSpec, DecisionTree
from .data import DataError, Dataset, load_dataset
from .evaluation import EvaluationError, run_experiment
from .geometry import ConfigError, PlotConfig, map_plot
from .hyperblocks import (
    extract_hyperblocks,
    format_purity_table,
    order_attributes,
    primary_blocks,
    purity_table,
    purity_table_csv,
    purity_table_json,
)
from .project import BoxRef, ProjectError, load_project, save_project, with_box, with_split, with_report
from .render import RenderSpec, render_svg
from .splits import SelectionBox, box_select, build_worst_split, default_mode

DATA_DIR_ENV = "SCAFFOLDVIZ_DATA_DIR"


def resolve_dataset(token: str) -> Path:
    path = Path(token)
    if path.exists():
        return path
    data_dir = os.environ.get(DATA_DIR_ENV)
    if data_dir:
        candidate = Path(data_dir) / token
        if candidate.exists():
            return candidate
        candidate = Path(data_dir) / f"{token}.csv"
        if candidate.exists():
            return candidate
    fixtures = {"iris": bundled.iris_path(), "wbc": bundled.wbc_path()}
    name = token.removesuffix(".csv")
    if name in fixtures:
        return fixtures[name]
    raise click.ClickException(f"dataset {token!r} not found")


def _load(token: str, class_column: str) -> Dataset:
    try:
        return load_dataset(resolve_dataset(token), class_column=class_column)
    except DataError as exc:
        raise click.ClickException(str(exc)) from exc


def _auto_order(data: Dataset, paired: bool, max_depth: int | None = None) -> tuple[int, ...]:
    tree = DecisionTree(max_depth=max_depth).fit(
        data.scaled_matrix(), data.label_indices(), n_classes=len(data.classes)
    )
    hbs = extract_hyperblocks(tree, data)
    order, fallback = order_attributes(
        primary_blocks(hbs), data.n_attributes, for_pairs=paired
    )
    if fallback:
        click.echo("warning: no attribute of separation found; keeping dataset order", err=True)
    return order


def _parse_order(
    raw: str, data: Dataset, system: str, max_depth: int | None = None
) -> tuple[int, ...]:
    if raw == "auto":
        order = _auto_order(
            data, paired=system in ("spc", "dsc2", "ngon"), max_depth=max_depth
        )
        if system in ("spc", "dsc2", "ngon") and len(order) % 2 != 0:
            order = order[:-1]  # drop the least informative attribute
        return order
    try:
        return tuple(int(tok) for tok in raw.split(",") if tok.strip() != "")
    except ValueError:
        raise click.ClickException(f"cannot parse attribute order {raw!r}") from None


@click.group()
def main() -> None:
    """Lossless multidimensional plots, hyperblocks, and worst-case splits."""


@main.command("plot")
@click.argument("data")
@click.option("--system", type=click.Choice(["pc", "spc", "dsc1", "dsc2", "ngon"]), default="dsc1")
@click.option("--order", default="auto", help="comma-separated attribute indices, or 'auto'")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--class-column", default="class")
@click.option("--first-angle", type=float, default=-10.0)
@click.option("--rest-angle", type=float, default=-45.0)
@click.option("--pair-weights", default=None, help="comma-separated pair weights (paired systems)")
@click.option("--separator", "separators", multiple=True,
              help="attr:position[:target] nonlinear separator, repeatable")
@click.option("--hyperblocks", "show_hbs", is_flag=True, help="overlay hyperblock boundaries")
@click.option("--hb-only", is_flag=True, help="draw only hyperblock boundaries, no sample lines")
@click.option("--max-depth", type=int, default=None,
              help="tree depth for the hyperblock analysis (auto order and overlays)")
@click.option("--ngon", "ngon_k", type=int, default=3, help="vertex count for the ngon system")
def plot_command(data, system, order, out, class_column, first_angle, rest_angle,
                 pair_weights, separators, show_hbs, hb_only, max_depth, ngon_k) -> None:
    """Render a dataset to an SVG plot."""
    dataset = _load(data, class_column)
    order_tuple = _parse_order(order, dataset, system, max_depth)
    nonlinear = []
    for token in separators:
        parts = token.split(":")
        if len(parts) not in (2, 3):
            raise click.ClickException(f"bad separator {token!r}, want attr:pos[:target]")
        attr, pos = int(parts[0]), float(parts[1])
        target = float(parts[2]) if len(parts) == 3 else 0.5
        nonlinear.append((attr, pos, target))
    weights = None
    if pair_weights:
        weights = tuple(float(w) for w in pair_weights.split(","))

    try:
        if system == "ngon":
            if len(order_tuple) % 2 != 0:
                raise ConfigError(
                    "ngon needs an even attribute count; drop an attribute from "
                    "the order or list one twice to duplicate it"
                )
            vertex_configs = []
            for v in range(ngon_k):
                rotated = order_tuple[2 * v % len(order_tuple):] + order_tuple[:2 * v % len(order_tuple)]
                vertex_configs.append(
                    PlotConfig(
                        system="dsc2",
                        attribute_order=rotated,
                        pair_weights=weights,
                        nonlinear=tuple(nonlinear),
                    )
                )
            config = PlotConfig(
                system="ngon-dsc2",
                attribute_order=order_tuple,
                ngon_vertices=tuple(vertex_configs),
            )
        else:
            config = PlotConfig(
                system=system,
                attribute_order=order_tuple,
                first_angle=first_angle,
                rest_angle=rest_angle,
                pair_weights=weights,
                nonlinear=tuple(nonlinear),
            )
    except ConfigError as exc:
        raise click.ClickException(str(exc)) from exc

    hbs = None
    if show_hbs or hb_only:
        tree = DecisionTree(max_depth=max_depth).fit(
            dataset.scaled_matrix(), dataset.label_indices(), n_classes=len(dataset.classes)
        )
        hbs = extract_hyperblocks(tree, dataset)
    try:
        geometry = map_plot(dataset, config, hbs)
        spec = RenderSpec(show_samples=not hb_only)
        svg = render_svg(geometry, spec, classes=dataset.classes)
    except (ConfigError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc
    Path(out).write_text(svg)
    click.echo(f"wrote {out} ({system}, order {','.join(map(str, order_tuple))})")


@main.command("hyperblocks")
@click.argument("data")
@click.option("--max-depth", type=int, default=None,
              help="limit tree depth (default: grow to purity)")
@click.option("--class-column", default="class")
@click.option("--out-csv", type=click.Path(dir_okay=False), default=None)
@click.option("--out-json", type=click.Path(dir_okay=False), default=None)
@click.option("--figure", type=click.Path(dir_okay=False), default=None)
def hyperblocks_command(data, max_depth, class_column, out_csv, out_json, figure) -> None:
    """Extract hyperblocks from a decision tree and print the purity table."""
    dataset = _load(data, class_column)
    tree = DecisionTree(max_depth=max_depth).fit(
        dataset.scaled_matrix(), dataset.label_indices(), n_classes=len(dataset.classes)
    )
    hbs = extract_hyperblocks(tree, dataset)
    rows = purity_table(hbs)
    click.echo(f"{len(hbs)} hyperblocks from a depth-{tree.depth()} tree on {dataset.name}")
    click.echo(format_purity_table(rows))
    if out_csv:
        Path(out_csv).write_text(purity_table_csv(rows))
        click.echo(f"wrote {out_csv}")
    if out_json:
        Path(out_json).write_text(purity_table_json(hbs, rows))
        click.echo(f"wrote {out_json}")
    if figure:
        from .figures import save_purity_figure

        save_purity_figure(rows, dataset.classes, figure, dataset_name=dataset.name)
        click.echo(f"wrote {figure}")


@main.command("rules")
@click.argument("data")
@click.option("--max-depth", type=int, default=None,
              help="limit tree depth (default: grow to purity)")
@click.option("--class-column", default="class")
@click.option("--project", "project_file", type=click.Path(dir_okay=False),
              default=None, help="store the compiled series in this project file")
def rules_command(data, max_depth, class_column, project_file) -> None:
    """Compile the decision tree into a separator series and print it."""
    from .rules import compile_tree_to_series, format_rules, series_accuracy

    dataset = _load(data, class_column)
    tree = DecisionTree(max_depth=max_depth).fit(
        dataset.scaled_matrix(), dataset.label_indices(), n_classes=len(dataset.classes)
    )
    series = compile_tree_to_series(tree, dataset.classes)
    click.echo(format_rules(series, dataset.attribute_names()))
    accuracy, captures = series_accuracy(series, dataset)
    click.echo(f"training accuracy {accuracy * 100:.1f}%, per-stage captures {captures}")
    if series.fallback_used:
        click.echo(
            "note: tree has branch points without a leaf child; the series "
            "collapsed those below-sides to their majority class", err=True
        )
    if project_file:
        from dataclasses import replace as dc_replace

        project = load_project(project_file)
        save_project(dc_replace(project, rule_series=series), project_file)
        click.echo(f"stored rule series in {project_file}")


@main.command("split")
@click.argument("project_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--box", default=None, help="x0,y0,x1,y1 selection rectangle to add")
@click.option("--plot", "plot_name", default=None, help="plot the box belongs to")
@click.option("--mode", type=click.Choice(["bounding", "clipping"]), default=None,
              help="default: clipping on dsc1 plots, bounding elsewhere")
@click.option("--fraction", type=float, default=0.10)
@click.option("--seed", type=int, default=0)
@click.option("--per-box-cap", type=int, default=None)
@click.option("--export-ids", default=None,
              help="path prefix: writes <prefix>_training.txt and <prefix>_validation.txt")
def split_command(project_file, box, plot_name, mode, fraction, seed, per_box_cap,
                  export_ids) -> None:
    """Build a worst-case split from the project's selection boxes."""
    try:
        project = load_project(project_file)
    except ProjectError as exc:
        raise click.ClickException(str(exc)) from exc
    if plot_name is None:
        if not project.plots:
            raise click.ClickException("project has no plots")
        plot_name = next(iter(project.plots))
    if plot_name not in project.plots:
        raise click.ClickException(f"unknown plot {plot_name!r}")

    if box:
        try:
            x0, y0, x1, y1 = (float(v) for v in box.split(","))
            box_mode = mode or default_mode(project.plots[plot_name].system)
            ref = BoxRef(plot=plot_name, box=SelectionBox(x0, y0, x1, y1, mode=box_mode))
        except ValueError as exc:
            raise click.ClickException(f"bad box {box!r}: {exc}") from exc
        project = with_box(project, ref)

    geometry = map_plot(project.dataset, project.plots[plot_name])
    selections = [
        box_select(geometry, ref.box) for ref in project.boxes if ref.plot == plot_name
    ]
    if not selections:
        raise click.ClickException("no selection boxes for that plot; pass --box")
    for i, ids in enumerate(selections):
        click.echo(f"box {i}: {len(ids)} samples selected")
    split = build_worst_split(
        project.dataset, selections, target_fraction=fraction, seed=seed,
        per_box_cap=per_box_cap,
    )
    project = with_split(project, split)
    save_project(project, project_file)
    click.echo(
        f"split {len(project.splits) - 1}: validation {len(split.validation_ids)} "
        f"/ training {len(split.training_ids)} (saved to {project_file})"
    )
    if export_ids:
        train_path = Path(f"{export_ids}_training.txt")
        val_path = Path(f"{export_ids}_validation.txt")
        train_path.write_text("\n".join(map(str, split.training_ids)) + "\n")
        val_path.write_text("\n".join(map(str, split.validation_ids)) + "\n")
        click.echo(f"wrote {train_path} and {val_path}")


@main.command("evaluate")
@click.argument("project_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", type=int, default=10)
@click.option("--seed", type=int, default=0)
@click.option("--split-index", type=int, default=None,
              help="which stored split to evaluate (default: last)")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="write the report JSON here")
@click.option("--figure", type=click.Path(dir_okay=False), default=None)
def evaluate_command(project_file, k, seed, split_index, out, figure) -> None:
    """Run the cross-validation vs worst-split experiment."""
    try:
        project = load_project(project_file)
    except ProjectError as exc:
        raise click.ClickException(str(exc)) from exc
    if not project.splits:
        raise click.ClickException("project has no splits; run `scaffoldviz split` first")
    index = len(project.splits) - 1 if split_index is None else split_index
    if not 0 <= index < len(project.splits):
        raise click.ClickException(f"split {index} does not exist")
    if project.experiments:
        specs = project.experiments[0].specs
    else:
        specs = (
            ClassifierSpec(kind="decision-tree", max_depth=None),
            ClassifierSpec(kind="knn", k=5),
            ClassifierSpec(kind="gaussian-nb"),
        )
    try:
        report = run_experiment(list(specs), project.dataset, project.splits[index],
                                k=k, seed=seed)
    except EvaluationError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(report.to_text())
    project = with_report(project, report.to_dict())
    save_project(project, project_file)
    if out:
        Path(out).write_text(report.to_json())
        click.echo(f"wrote {out}")
    if figure:
        from .figures import save_experiment_figure

        save_experiment_figure(report, figure)
        click.echo(f"wrote {figure}")


@main.command("serve")
@click.option("--project", "project_file", type=click.Path(exists=True, dir_okay=False),
              default=None, help="project file (default: the bundled wbc project)")
@click.option("--port", type=int, default=8650)
@click.option("--host", default="127.0.0.1")
def serve_command(project_file, port, host) -> None:
    """Serve the HTTP/JSON API for the workbench UI."""
    if project_file is None:
        project_file = str(bundled.wbc_project_path())
    try:
        project = load_project(project_file)
    except ProjectError as exc:
        raise click.ClickException(str(exc)) from exc
    from .service import serve

    click.echo(f"serving {project.dataset.name} on http://{host}:{port}")
    serve(project, port=port, host=host, project_path=project_file)


if __name__ == "__main__":
    main(prog_name="scaffoldviz")
