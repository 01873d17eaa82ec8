import re
import xml.etree.ElementTree as ET

import pytest

from scaffoldviz.geometry import PlotConfig, map_dsc1, map_plot
from scaffoldviz.hyperblocks import extract_hyperblocks
from scaffoldviz.render import RenderError, RenderSpec, render_svg
from scaffoldviz.rules import compile_tree_to_series
from scaffoldviz.splits import SelectionBox


@pytest.fixture(scope="module")
def iris_dsc1(iris):
    return map_dsc1(iris, PlotConfig(system="dsc1", attribute_order=(3, 0, 1, 2)))


class TestDeterminism:
    def test_same_inputs_byte_identical(self, iris, iris_dsc1):
        a = render_svg(iris_dsc1, classes=iris.classes)
        b = render_svg(iris_dsc1, classes=iris.classes)
        assert a == b

    def test_recomputed_geometry_byte_identical(self, iris):
        config = PlotConfig(system="dsc1", attribute_order=(3, 0, 1, 2))
        a = render_svg(map_dsc1(iris, config), classes=iris.classes)
        b = render_svg(map_dsc1(iris, config), classes=iris.classes)
        assert a == b


class TestContent:
    def test_iris_dsc1_element_counts(self, iris, iris_dsc1):
        svg = render_svg(iris_dsc1, classes=iris.classes)
        root = ET.fromstring(svg)
        ns = {"svg": "http://www.w3.org/2000/svg"}
        polylines = root.findall(".//svg:g[@id='layer-samples']/svg:polyline", ns)
        assert len(polylines) == 150
        colors = {p.get("stroke") for p in polylines}
        assert len(colors) == 3

    def test_hb_bands_only_mode(self, iris, iris_tree):
        hbs = extract_hyperblocks(iris_tree, iris)
        config = PlotConfig(system="dsc1", attribute_order=(3, 0, 1, 2))
        geometry = map_plot(iris, config, hbs)
        spec = RenderSpec(show_samples=False)
        svg = render_svg(geometry, spec, classes=iris.classes)
        root = ET.fromstring(svg)
        ns = {"svg": "http://www.w3.org/2000/svg"}
        assert not root.findall(".//svg:g[@id='layer-samples']", ns)
        bands = root.findall(".//svg:g[@id='layer-hb']/svg:polyline", ns)
        assert len(bands) == 2 * len(hbs)

    def test_all_vertices_inside_canvas(self, iris, iris_dsc1):
        spec = RenderSpec(width=640, height=480, margin=30)
        svg = render_svg(iris_dsc1, spec, classes=iris.classes)
        for x, y in re.findall(r"(\d+\.\d+),(-?\d+\.\d+)", svg):
            assert -1e-6 <= float(x) <= 640 + 1e-6
            assert -1e-6 <= float(y) <= 480 + 1e-6

    def test_separator_and_box_layers(self, iris, iris_tree_depth2, iris_dsc1):
        series = compile_tree_to_series(iris_tree_depth2, iris.classes)
        svg = render_svg(
            iris_dsc1,
            classes=iris.classes,
            separators=series,
            boxes=(SelectionBox(0.1, 0.1, 0.5, 0.5),),
        )
        assert 'id="layer-separators"' in svg
        assert 'id="layer-boxes"' in svg

    def test_layer_toggles(self, iris, iris_dsc1):
        spec = RenderSpec(show_separators=False, show_boxes=False)
        svg = render_svg(iris_dsc1, spec, classes=iris.classes)
        assert "layer-separators" not in svg
        assert "layer-boxes" not in svg


class TestValidation:
    def test_empty_geometry(self, iris, iris_dsc1):
        from dataclasses import replace

        empty = replace(iris_dsc1, polylines=())
        with pytest.raises(RenderError, match="empty"):
            render_svg(empty)

    def test_palette_shorter_than_classes(self, iris, iris_dsc1):
        spec = RenderSpec(palette=("#111111",))
        with pytest.raises(RenderError, match="palette"):
            render_svg(iris_dsc1, spec, classes=iris.classes)

    def test_margin_bounds(self):
        with pytest.raises(RenderError, match="margin"):
            RenderSpec(width=50, height=50, margin=30)

    def test_opacity_bounds(self):
        with pytest.raises(RenderError, match="opacity"):
            RenderSpec(line_opacity=1.5)


class TestFigures:
    def test_purity_figure_written(self, tmp_path, iris, iris_tree):
        from scaffoldviz.figures import save_purity_figure
        from scaffoldviz.hyperblocks import purity_table

        rows = purity_table(extract_hyperblocks(iris_tree, iris))
        out = save_purity_figure(rows, iris.classes, tmp_path / "purity.png")
        assert out.exists() and out.stat().st_size > 1000

    def test_experiment_figure_written(self, tmp_path, wbc):
        from scaffoldviz.classifiers import ClassifierSpec
        from scaffoldviz.evaluation import run_experiment
        from scaffoldviz.figures import save_experiment_figure
        from scaffoldviz.splits import build_worst_split

        split = build_worst_split(wbc, [tuple(range(68))], 0.10, seed=0)
        report = run_experiment(
            [ClassifierSpec(kind="gaussian-nb")], wbc, split, k=10, seed=0
        )
        out = save_experiment_figure(report, tmp_path / "exp.png")
        assert out.exists() and out.stat().st_size > 1000
