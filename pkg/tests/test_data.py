import pytest
from hypothesis import given, strategies as st

from scaffoldviz.data import DataError, load_dataset, minmax_scale, unscale


class TestLoad:
    def test_iris_shape(self, iris):
        assert len(iris) == 150
        assert iris.n_attributes == 4
        assert iris.classes == ("setosa", "versicolor", "virginica")
        assert all(n == 50 for n in iris.class_counts().values())

    def test_wbc_drops_missing_rows(self, wbc):
        assert len(wbc) == 683
        counts = wbc.class_counts()
        assert counts["benign"] == 444
        assert counts["malignant"] == 239

    def test_wbc_raw_file_has_699_rows(self):
        from scaffoldviz import datasets

        lines = datasets.wbc_path().read_text().strip().splitlines()
        assert len(lines) - 1 == 699
        assert sum("?" in line for line in lines) == 16

    def test_sample_ids_are_file_order(self, wbc):
        assert [s.id for s in wbc.samples] == list(range(683))

    def test_dropping_preserves_order(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("a,b,class\n1,2,x\n3,?,y\n5,6,x\n7,8,y\n")
        ds = load_dataset(f)
        assert [s.raw_values[0] for s in ds.samples] == [1.0, 5.0, 7.0]
        assert ds.classes == ("x", "y")

    def test_minmax_over_retained_rows_only(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("a,class\n100,x\n?,x\n0,y\n50,y\n")
        ds = load_dataset(f)
        assert ds.attributes[0].minimum == 0.0
        assert ds.attributes[0].maximum == 100.0
        assert [s.scaled_values[0] for s in ds.samples] == [1.0, 0.0, 0.5]

    def test_empty_dataset_error(self, tmp_path):
        f = tmp_path / "empty.csv"
        f.write_text("a,b,class\n")
        with pytest.raises(DataError, match="empty dataset"):
            load_dataset(f)

    def test_all_rows_missing_error(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("a,class\n?,x\n?,y\n")
        with pytest.raises(DataError, match="empty dataset"):
            load_dataset(f)

    def test_unknown_class_column(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("a,b\n1,2\n")
        with pytest.raises(DataError, match="label"):
            load_dataset(f, class_column="label")

    def test_parse_error_names_row_and_column(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("a,b,class\n1,2,x\n1,oops,y\n")
        with pytest.raises(DataError, match=r"row 3.*'b'"):
            load_dataset(f)

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(DataError, match="cannot read"):
            load_dataset(tmp_path / "nope.csv")

    def test_scaled_values_in_unit_interval(self, wbc):
        X = wbc.scaled_matrix()
        assert X.min() >= 0.0
        assert X.max() <= 1.0


class TestScaling:
    def test_affine_endpoints(self):
        scaled, lo, hi = minmax_scale([0.0, 5.0, 10.0])
        assert scaled.tolist() == [0.0, 0.5, 1.0]
        assert (lo, hi) == (0.0, 10.0)

    def test_constant_column_scales_to_zero(self):
        scaled, lo, hi = minmax_scale([3.0, 3.0, 3.0])
        assert scaled.tolist() == [0.0, 0.0, 0.0]
        assert lo == hi == 3.0

    def test_iris_petal_width_midpoint(self, iris):
        # independent oracle: recompute column min/max from the raw values
        idx = iris.attribute_index("petal_width")
        column = [s.raw_values[idx] for s in iris.samples]
        lo, hi = min(column), max(column)
        assert (lo, hi) == (0.1, 2.5)
        expected = (1.3 - lo) / (hi - lo)
        assert expected == pytest.approx(0.5)
        scaled, *_ = minmax_scale(column)
        i = column.index(1.3)
        assert scaled[i] == pytest.approx(0.5)

    def test_unscale_examples(self):
        assert unscale(0.5, 0.0, 10.0) == pytest.approx(5.0)
        assert unscale(0.0, 0.1, 2.5) == pytest.approx(0.1)
        assert unscale(0.5, 0.1, 2.5) == pytest.approx(1.3)

    def test_unscale_range_error(self):
        with pytest.raises(ValueError, match="outside"):
            unscale(1.1, 0.0, 1.0)
        with pytest.raises(ValueError, match="outside"):
            unscale(-0.1, 0.0, 1.0)
        # within the 1e-9 tolerance band is fine
        unscale(1.0 + 5e-10, 0.0, 1.0)

    def test_unscale_min_above_max(self):
        with pytest.raises(ValueError, match="exceeds"):
            unscale(0.5, 2.0, 1.0)

    @given(
        st.lists(
            st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
            min_size=2,
            max_size=30,
        )
    )
    def test_roundtrip_property(self, values):
        scaled, lo, hi = minmax_scale(values)
        if hi > lo:
            for v, s in zip(values, scaled):
                assert abs(unscale(float(s), lo, hi) - v) < 1e-9 * max(1.0, abs(hi - lo))

    def test_roundtrip_on_fixtures(self, iris, wbc):
        for ds in (iris, wbc):
            for j, attr in enumerate(ds.attributes):
                for s in ds.samples:
                    back = unscale(s.scaled_values[j], attr.minimum, attr.maximum)
                    assert abs(back - s.raw_values[j]) < 1e-9
