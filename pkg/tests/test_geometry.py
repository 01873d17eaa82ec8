import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from scaffoldviz.classifiers import DecisionTree
from scaffoldviz.geometry import (
    ConfigError,
    PlotConfig,
    hb_boundary_bands,
    map_dsc1,
    map_dsc2,
    map_ngon_dsc2,
    map_pc,
    map_plot,
    map_spc,
    ngon_vertex_positions,
    nonlinear_scale,
    nonlinear_unscale,
    reconstruct,
)
from scaffoldviz.hyperblocks import extract_hyperblocks

from conftest import make_dataset


def two_sample_dataset(*rows, labels=None):
    rows = np.array(rows, dtype=float)
    labels = labels or ["a"] * len(rows)
    return make_dataset(rows, labels)


class TestPC:
    def test_two_dim_sample(self):
        ds = two_sample_dataset([0.25, 0.75])
        g = map_pc(ds, PlotConfig(system="pc", attribute_order=(0, 1)))
        assert g.polylines[0].vertices == ((0.0, 0.25), (1.0, 0.75))

    def test_all_zero_sample_is_flat(self):
        ds = two_sample_dataset([0.0, 0.0, 0.0])
        g = map_pc(ds, PlotConfig(system="pc", attribute_order=(0, 1, 2)))
        assert all(y == 0.0 for _, y in g.polylines[0].vertices)

    def test_iris_lossless(self, iris):
        config = PlotConfig(system="pc", attribute_order=(0, 1, 2, 3))
        g = map_pc(iris, config)
        assert len(g.polylines) == 150
        assert all(len(p.vertices) == 4 for p in g.polylines)
        err = np.abs(reconstruct(g) - iris.scaled_matrix()).max()
        assert err < 1e-9


class TestDSC1:
    def test_all_zero_collapses_to_origin(self):
        ds = two_sample_dataset([0.0, 0.0, 0.0, 0.0])
        g = map_dsc1(ds, PlotConfig(system="dsc1", attribute_order=(0, 1, 2, 3)))
        assert all(v == (0.0, 0.0) for v in g.polylines[0].vertices)

    def test_unit_sample_final_vertex(self):
        # direct trigonometric evaluation is the oracle
        ds = two_sample_dataset([1.0, 1.0, 1.0, 1.0])
        g = map_dsc1(ds, PlotConfig(system="dsc1", attribute_order=(0, 1, 2, 3)))
        expected_x = math.cos(math.radians(80)) + 3 * math.cos(math.radians(45))
        expected_y = math.sin(math.radians(80)) + 3 * math.sin(math.radians(45))
        assert expected_x == pytest.approx(2.2950, abs=1e-4)
        assert expected_y == pytest.approx(3.1061, abs=1e-4)
        final = g.polylines[0].vertices[-1]
        assert final[0] == pytest.approx(expected_x, abs=1e-12)
        assert final[1] == pytest.approx(expected_y, abs=1e-12)

    def test_vertex_count_and_origin_start(self, iris):
        g = map_dsc1(iris, PlotConfig(system="dsc1", attribute_order=(3, 0, 1, 2)))
        for line in g.polylines:
            assert len(line.vertices) == 5
            assert line.vertices[0] == (0.0, 0.0)

    def test_first_scaffold_separation_on_iris_blocks(self, iris, iris_tree):
        hbs = extract_hyperblocks(iris_tree, iris)
        top3 = hbs.by_size()[:3]
        config = PlotConfig(system="dsc1", attribute_order=(3, 0, 1, 2))
        g = map_dsc1(iris, config)
        direction = np.array(g.scaffold["directions"][0])
        ranges = []
        for block in top3:
            projections = [
                float(np.dot(g.polylines[i].vertices[1], direction))
                for i in block.member_ids
            ]
            ranges.append((min(projections), max(projections)))
        for i in range(3):
            for j in range(i + 1, 3):
                (alo, ahi), (blo, bhi) = ranges[i], ranges[j]
                assert ahi < blo or bhi < alo

    def test_angle_validation(self):
        ds = two_sample_dataset([0.5, 0.5])
        for bad in (0.0, -90.0, 10.0, -120.0):
            with pytest.raises(ConfigError, match="angle"):
                PlotConfig(system="dsc1", attribute_order=(0, 1), first_angle=bad)

    def test_custom_angles_change_direction(self):
        ds = two_sample_dataset([1.0, 0.0])
        g = map_dsc1(
            ds,
            PlotConfig(system="dsc1", attribute_order=(0, 1), first_angle=-30.0),
        )
        tip = g.polylines[0].vertices[1]
        assert tip[0] == pytest.approx(math.cos(math.radians(60)))
        assert tip[1] == pytest.approx(math.sin(math.radians(60)))


class TestDSC2:
    def test_vector_addition_example(self):
        ds = two_sample_dataset([0.2, 0.4, 0.1, 0.3])
        g = map_dsc2(ds, PlotConfig(system="dsc2", attribute_order=(0, 1, 2, 3)))
        v = g.polylines[0].vertices
        assert v[0] == (0.0, 0.0)
        assert v[1] == (pytest.approx(0.2), pytest.approx(0.4))
        assert v[2] == (pytest.approx(0.3), pytest.approx(0.7))

    def test_all_zero_degenerate(self):
        ds = two_sample_dataset([0.0, 0.0, 0.0, 0.0])
        g = map_dsc2(ds, PlotConfig(system="dsc2", attribute_order=(0, 1, 2, 3)))
        assert all(v == (0.0, 0.0) for v in g.polylines[0].vertices)

    def test_odd_attribute_count_error(self):
        with pytest.raises(ConfigError, match="drop an attribute|duplicate"):
            PlotConfig(system="dsc2", attribute_order=(0, 1, 2))

    def test_pair_weights_validation(self):
        with pytest.raises(ConfigError, match="pair weights"):
            PlotConfig(system="dsc2", attribute_order=(0, 1), pair_weights=(1.0, 2.0))
        with pytest.raises(ConfigError, match="positive"):
            PlotConfig(system="dsc2", attribute_order=(0, 1), pair_weights=(0.0,))

    def test_weight_linearity(self, iris):
        base = map_dsc2(iris, PlotConfig(system="dsc2", attribute_order=(0, 1, 2, 3)))
        w = (1.5, 0.05)
        weighted = map_dsc2(
            iris,
            PlotConfig(system="dsc2", attribute_order=(0, 1, 2, 3), pair_weights=w),
        )
        for b, s in zip(base.polylines, weighted.polylines):
            for j in range(1, 3):
                db = np.subtract(b.vertices[j], b.vertices[j - 1])
                dw = np.subtract(s.vertices[j], s.vertices[j - 1])
                assert dw == pytest.approx(db * w[j - 1], abs=1e-12)

    def test_wbc_pair_weight_config(self, wbc):
        config = PlotConfig(
            system="dsc2",
            attribute_order=(1, 2, 0, 3, 4, 5, 6, 7),
            pair_weights=(1.5, 0.05, 0.05, 0.05),
        )
        g = map_dsc2(wbc, config)
        assert len(g.polylines) == 683
        assert all(len(p.vertices) == 5 for p in g.polylines)
        err = np.abs(
            reconstruct(g)[:, list(config.attribute_order)]
            - wbc.scaled_matrix()[:, list(config.attribute_order)]
        ).max()
        assert err < 1e-9

    def test_duplicated_attribute_allowed_and_lossless(self, iris):
        config = PlotConfig(system="dsc2", attribute_order=(0, 1, 2, 3, 3, 0))
        g = map_dsc2(iris, config)
        rec = reconstruct(g)
        assert np.abs(rec - iris.scaled_matrix()).max() < 1e-9


class TestNonlinearScale:
    def test_identity_when_position_equals_target(self):
        values = np.linspace(0, 1, 11)
        out = nonlinear_scale(values, 0.3, 0.3)
        assert np.abs(out - values).max() < 1e-12

    def test_separator_at_017_maps_to_half(self):
        assert nonlinear_scale(0.17, 0.17, 0.5) == pytest.approx(0.5)
        assert nonlinear_scale(0.0, 0.17, 0.5) == 0.0
        assert nonlinear_scale(1.0, 0.17, 0.5) == pytest.approx(1.0)

    def test_upper_piece_interpolation(self):
        # oracle: linear interpolation between (0.17, 0.5) and (1, 1)
        v = 0.585
        expected = 0.5 + (v - 0.17) * (1 - 0.5) / (1 - 0.17)
        assert expected == pytest.approx(0.75)
        assert nonlinear_scale(v, 0.17, 0.5) == pytest.approx(0.75)

    def test_position_target_bounds(self):
        for s, t in ((0.0, 0.5), (1.0, 0.5), (0.5, 0.0), (0.5, 1.0)):
            with pytest.raises(ConfigError):
                nonlinear_scale(0.3, s, t)

    @given(
        st.floats(min_value=0.01, max_value=0.99),
        st.floats(min_value=0.01, max_value=0.99),
        st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=2, max_size=20),
    )
    def test_monotone_and_invertible(self, s, t, values):
        values = np.array(sorted(values))
        mapped = nonlinear_scale(values, s, t)
        assert (np.diff(mapped) >= -1e-15).all()
        back = nonlinear_unscale(mapped, s, t)
        assert np.abs(back - values).max() < 1e-12

    def test_strictly_monotone(self):
        v = np.linspace(0, 1, 101)
        out = nonlinear_scale(v, 0.17, 0.67)
        assert (np.diff(out) > 0).all()


class TestSPC:
    def test_panel_placement(self):
        ds = two_sample_dataset([0.0, 0.0, 1.0, 1.0])
        g = map_spc(ds, PlotConfig(system="spc", attribute_order=(0, 1, 2, 3)))
        assert g.polylines[0].vertices == ((0.0, 0.0), (2.0, 1.0))

    def test_full_cube_block_gives_full_panel_rect(self, iris, iris_tree):
        ds = two_sample_dataset([0.5, 0.5, 0.5, 0.5])
        tree = DecisionTree().fit(ds.scaled_matrix(), ds.label_indices(), n_classes=1)
        hbs = extract_hyperblocks(tree, ds)
        config = PlotConfig(system="spc", attribute_order=(0, 1, 2, 3))
        overlays = hb_boundary_bands(hbs, config)
        assert overlays[0].boxes == ((0.0, 0.0, 1.0, 1.0), (1.0, 0.0, 2.0, 1.0))

    def test_iris_rects_contain_member_samples(self, iris, iris_tree):
        # oracle: recompute per-attribute member min/max and check they sit
        # inside the block rectangles
        hbs = extract_hyperblocks(iris_tree, iris)
        config = PlotConfig(system="spc", attribute_order=(0, 1, 2, 3))
        overlays = hb_boundary_bands(hbs, config)
        X = iris.scaled_matrix()
        for block, overlay in zip(hbs.blocks, overlays):
            members = X[list(block.member_ids)]
            for j, (a, b) in enumerate(config.pairs()):
                x0, y0, x1, y1 = overlay.boxes[j]
                assert x0 == pytest.approx(j + block.intervals[a][0])
                assert x1 == pytest.approx(j + block.intervals[a][1])
                assert members[:, a].min() >= block.intervals[a][0] - 1e-12
                assert members[:, a].max() <= block.intervals[a][1] + 1e-12
                assert members[:, b].min() >= block.intervals[b][0] - 1e-12
                assert members[:, b].max() <= block.intervals[b][1] + 1e-12

    def test_spc_lossless(self, iris):
        config = PlotConfig(system="spc", attribute_order=(2, 3, 0, 1))
        g = map_spc(iris, config)
        assert np.abs(reconstruct(g) - iris.scaled_matrix()).max() < 1e-9


class TestNGon:
    def test_vertex_positions_regular_triangle(self):
        # regular polygon construction oracle
        positions = ngon_vertex_positions(3, 1.0)
        for (x, y), angle in zip(positions, (90.0, 210.0, 330.0)):
            assert x == pytest.approx(math.cos(math.radians(angle)), abs=1e-12)
            assert y == pytest.approx(math.sin(math.radians(angle)), abs=1e-12)

    def test_translation_equivariance(self, iris):
        vertex = PlotConfig(system="dsc2", attribute_order=(0, 1, 2, 3))
        config = PlotConfig(
            system="ngon-dsc2",
            attribute_order=(),
            ngon_vertices=(vertex, vertex, vertex),
        )
        g = map_ngon_dsc2(iris, config)
        standalone = map_dsc2(iris, vertex)
        positions = ngon_vertex_positions(3, 1.0)
        assert len(g.polylines) == 3 * 150
        for v in range(3):
            ox, oy = positions[v]
            for i in range(150):
                moved = g.polylines[v * 150 + i].vertices
                base = standalone.polylines[i].vertices
                for (mx, my), (bx, by) in zip(moved, base):
                    assert mx == pytest.approx(bx + ox, abs=1e-12)
                    assert my == pytest.approx(by + oy, abs=1e-12)

    def test_eight_dims_three_vertex_configs(self):
        rng = np.random.default_rng(2)
        ds = make_dataset(rng.random((40, 8)), ["a"] * 20 + ["b"] * 20)
        configs = tuple(
            PlotConfig(system="dsc2", attribute_order=order)
            for order in ((0, 1, 2, 3), (4, 5, 6, 7), (0, 4, 2, 6))
        )
        g = map_ngon_dsc2(
            ds,
            PlotConfig(system="ngon-dsc2", attribute_order=(), ngon_vertices=configs),
        )
        assert len(g.polylines) == 3 * 40
        rec = reconstruct(g)
        assert np.abs(rec - ds.scaled_matrix()).max() < 1e-9

    def test_requires_three_vertices(self):
        vertex = PlotConfig(system="dsc2", attribute_order=(0, 1))
        with pytest.raises(ConfigError, match="at least 3"):
            PlotConfig(system="ngon-dsc2", attribute_order=(), ngon_vertices=(vertex,))


class TestReconstruct:
    def test_dsc1_unit_sample(self):
        ds = two_sample_dataset([1.0, 1.0, 1.0, 1.0])
        config = PlotConfig(system="dsc1", attribute_order=(0, 1, 2, 3))
        g = map_dsc1(ds, config)
        assert np.abs(reconstruct(g) - 1.0).max() < 1e-9

    def test_origin_only_polyline_gives_zeros(self):
        ds = two_sample_dataset([0.0, 0.0])
        config = PlotConfig(system="dsc1", attribute_order=(0, 1))
        g = map_dsc1(ds, config)
        assert np.abs(reconstruct(g)).max() == 0.0

    def test_vertex_count_mismatch_error(self, iris):
        config = PlotConfig(system="dsc1", attribute_order=(0, 1, 2, 3))
        g = map_dsc1(iris, config)
        wrong = PlotConfig(system="dsc1", attribute_order=(0, 1))
        with pytest.raises(ValueError, match="vertices"):
            reconstruct(g, wrong)

    def test_random_configs_lossless(self):
        rng = np.random.default_rng(99)
        X = rng.random((50, 10))
        ds = make_dataset(X, ["a"] * 25 + ["b"] * 25)
        for trial in range(10):
            order = tuple(rng.permutation(10).tolist())
            nonlinear = tuple(
                (int(a), float(rng.uniform(0.05, 0.95)), float(rng.uniform(0.05, 0.95)))
                for a in rng.choice(10, size=3, replace=False)
            )
            dsc1 = PlotConfig(
                system="dsc1",
                attribute_order=order,
                first_angle=float(rng.uniform(-80, -5)),
                rest_angle=float(rng.uniform(-80, -5)),
                nonlinear=nonlinear,
            )
            g1 = map_dsc1(ds, dsc1)
            assert np.abs(reconstruct(g1) - X).max() < 1e-9
            dsc2 = PlotConfig(
                system="dsc2",
                attribute_order=order,
                pair_weights=tuple(rng.uniform(0.05, 2.0, size=5).tolist()),
                nonlinear=nonlinear,
            )
            g2 = map_dsc2(ds, dsc2)
            assert np.abs(reconstruct(g2) - X).max() < 1e-9


class TestBoundaryBands:
    def test_full_cube_bands(self):
        ds = two_sample_dataset([0.3, 0.6, 0.2, 0.9])
        tree = DecisionTree().fit(ds.scaled_matrix(), ds.label_indices(), n_classes=1)
        hbs = extract_hyperblocks(tree, ds)
        config = PlotConfig(system="dsc1", attribute_order=(0, 1, 2, 3))
        overlays = hb_boundary_bands(hbs, config)
        assert all(v == (0.0, 0.0) for v in overlays[0].lower)
        ones = map_dsc1(
            two_sample_dataset([1.0, 1.0, 1.0, 1.0]), config
        ).polylines[0].vertices
        for got, expected in zip(overlays[0].upper, ones):
            assert got == pytest.approx(expected, abs=1e-12)

    def test_member_polylines_inside_bands(self, iris, iris_tree):
        hbs = extract_hyperblocks(iris_tree, iris)
        setosa = next(b for b in hbs.by_size() if b.majority_class == "setosa")
        index = hbs.blocks.index(setosa)
        config = PlotConfig(system="dsc1", attribute_order=(3, 0, 1, 2))
        g = map_dsc1(iris, config)
        overlay = hb_boundary_bands(hbs, config)[index]
        assert len(setosa.member_ids) == 50
        for i in setosa.member_ids:
            for (x, y), (lx, ly), (ux, uy) in zip(
                g.polylines[i].vertices, overlay.lower, overlay.upper
            ):
                assert lx - 1e-12 <= x <= ux + 1e-12
                assert ly - 1e-12 <= y <= uy + 1e-12

    def test_degenerate_block_bands_coincide(self):
        from scaffoldviz.hyperblocks import Hyperblock, HyperblockSet

        block = Hyperblock(
            intervals=((0.4, 0.4), (0.7, 0.7)),
            member_ids=(),
            class_counts=(1, 0),
            majority_class="a",
        )
        hbs = HyperblockSet(
            blocks=(block,), dataset_name="d", dataset_size=1, classes=("a", "b")
        )
        config = PlotConfig(system="dsc1", attribute_order=(0, 1))
        overlay = hb_boundary_bands(hbs, config)[0]
        for lo, up in zip(overlay.lower, overlay.upper):
            assert lo == pytest.approx(up, abs=1e-15)

    def test_dsc2_bands_and_boxes(self, iris, iris_tree):
        hbs = extract_hyperblocks(iris_tree, iris)
        config = PlotConfig(system="dsc2", attribute_order=(3, 0, 1, 2))
        overlays = hb_boundary_bands(hbs, config)
        g = map_dsc2(iris, config)
        for block, overlay in zip(hbs.blocks, overlays):
            assert len(overlay.boxes) == 2
            for i in block.member_ids:
                for (x, y), (lx, ly), (ux, uy) in zip(
                    g.polylines[i].vertices, overlay.lower, overlay.upper
                ):
                    assert lx - 1e-12 <= x <= ux + 1e-12
                    assert ly - 1e-12 <= y <= uy + 1e-12

    def test_pc_not_supported(self, iris):
        from scaffoldviz.hyperblocks import HyperblockSet

        with pytest.raises(ConfigError, match="not defined"):
            hb_boundary_bands(
                HyperblockSet(blocks=(), dataset_name="x", dataset_size=0, classes=()),
                PlotConfig(system="pc", attribute_order=(0,)),
            )


class TestMapPlot:
    def test_dispatch_and_overlays(self, iris, iris_tree):
        hbs = extract_hyperblocks(iris_tree, iris)
        config = PlotConfig(system="dsc1", attribute_order=(3, 0, 1, 2))
        g = map_plot(iris, config, hbs)
        assert g.system == "dsc1"
        assert len(g.hb_overlays) == len(hbs)

    def test_order_out_of_range(self, iris):
        config = PlotConfig(system="pc", attribute_order=(0, 9))
        with pytest.raises(ConfigError, match="out of range"):
            map_pc(iris, config)
