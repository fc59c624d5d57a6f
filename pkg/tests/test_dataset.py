import math

import numpy as np
import pytest

from corrsynth import (
    CsvParseError,
    Dataset,
    DuplicateColumnError,
    EmptyBodyError,
    ZeroVarianceError,
    column_stats,
    load_csv,
    write_csv,
    znormalize,
)


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestLoadCsv:
    def test_basic_parse(self, tmp_path):
        p = _write(tmp_path / "d.csv", "a,b\n1,2\n3,4\n")
        d = load_csv(p)
        assert d.columns == ("a", "b")
        assert d.n_rows == 2 and d.n_cols == 2
        np.testing.assert_array_equal(d.values, [[1.0, 2.0], [3.0, 4.0]])

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_csv(str(tmp_path / "nope.csv"))

    def test_non_numeric_cell_position(self, tmp_path):
        p = _write(tmp_path / "d.csv", "a,b\n1,2\n3,oops\n")
        with pytest.raises(CsvParseError) as exc:
            load_csv(p)
        assert exc.value.row == 2
        assert exc.value.col == 2
        assert exc.value.cell == "oops"

    def test_empty_cell_rejected(self, tmp_path):
        p = _write(tmp_path / "d.csv", "a,b\n1,\n3,4\n")
        with pytest.raises(CsvParseError) as exc:
            load_csv(p)
        assert (exc.value.row, exc.value.col) == (1, 2)

    def test_non_finite_rejected(self, tmp_path):
        p = _write(tmp_path / "d.csv", "a,b\n1,2\nnan,4\n")
        with pytest.raises(CsvParseError):
            load_csv(p)

    def test_ragged_row_rejected(self, tmp_path):
        p = _write(tmp_path / "d.csv", "a,b\n1,2\n3\n")
        with pytest.raises(CsvParseError) as exc:
            load_csv(p)
        assert exc.value.row == 2

    def test_duplicate_header(self, tmp_path):
        p = _write(tmp_path / "d.csv", "a,a\n1,2\n3,4\n")
        with pytest.raises(DuplicateColumnError):
            load_csv(p)

    @pytest.mark.parametrize("body", ["", "1,2\n"])
    def test_fewer_than_two_rows(self, tmp_path, body):
        p = _write(tmp_path / "d.csv", "a,b\n" + body)
        with pytest.raises(EmptyBodyError):
            load_csv(p)

    def test_empty_file(self, tmp_path):
        p = _write(tmp_path / "d.csv", "")
        with pytest.raises(EmptyBodyError):
            load_csv(p)

    def test_alternate_delimiter(self, tmp_path):
        p = _write(tmp_path / "d.csv", "a;b\n1;2\n3;4\n")
        d = load_csv(p, delimiter=";")
        assert d.columns == ("a", "b")
        assert d.values[1, 1] == 4.0


class TestRoundTrip:
    def test_write_then_load_is_identity(self, tmp_path, make_correlated):
        d = make_correlated(11, 40, 5)
        p = str(tmp_path / "out.csv")
        write_csv(d, p)
        d2 = load_csv(p)
        assert d2.columns == d.columns
        np.testing.assert_array_equal(d2.values, d.values)

    def test_tenth_survives(self, tmp_path):
        # 0.1 is not representable exactly; repr output must reload to the
        # same double anyway.
        d = Dataset(("a",), np.array([[0.1], [0.2]]))
        p = str(tmp_path / "out.csv")
        write_csv(d, p)
        assert load_csv(p).values[0, 0] == 0.1

    def test_lf_line_endings(self, tmp_path):
        d = Dataset(("a", "b"), np.array([[1.0, 2.0], [3.0, 4.0]]))
        p = tmp_path / "out.csv"
        write_csv(d, str(p))
        raw = p.read_bytes()
        assert b"\r" not in raw

    def test_write_to_bad_path(self, tmp_path):
        d = Dataset(("a",), np.array([[1.0], [2.0]]))
        with pytest.raises(OSError):
            write_csv(d, str(tmp_path / "no" / "such" / "dir.csv"))


class TestColumnStats:
    def test_symmetric_three_points(self):
        d = Dataset(("a",), np.array([[1.0], [2.0], [3.0]]))
        s = column_stats(d)
        assert s.means[0] == 2.0
        assert s.stds[0] == 1.0

    def test_two_point_column(self):
        # mean 5, sample std sqrt((25 + 25) / 1) = sqrt(50)
        d = Dataset(("a",), np.array([[0.0], [10.0]]))
        s = column_stats(d)
        assert s.means[0] == 5.0
        assert s.stds[0] == pytest.approx(math.sqrt(50.0), abs=1e-12)

    def test_constant_column_rejected(self):
        d = Dataset(("a", "b"), np.array([[5.0, 1.0], [5.0, 2.0], [5.0, 3.0]]))
        with pytest.raises(ZeroVarianceError) as exc:
            column_stats(d)
        assert exc.value.name == "a"

    def test_shifted_constant_rejected(self):
        vals = np.full((50, 1), 1e6)
        d = Dataset(("a",), vals)
        with pytest.raises(ZeroVarianceError):
            column_stats(d)

    def test_single_row_rejected(self):
        d = Dataset(("a",), np.array([[1.0]]))
        with pytest.raises(EmptyBodyError):
            column_stats(d)


class TestZnormalize:
    def test_three_point_values(self):
        d = Dataset(("a",), np.array([[1.0], [2.0], [3.0]]))
        np.testing.assert_array_equal(
            znormalize(d).values, [[-1.0], [0.0], [1.0]]
        )

    def test_two_point_values(self):
        d = Dataset(("a",), np.array([[0.0], [10.0]]))
        z = znormalize(d)
        np.testing.assert_allclose(
            z.values, [[-math.sqrt(0.5)], [math.sqrt(0.5)]], atol=1e-15
        )

    def test_result_has_zero_mean_unit_std(self, make_correlated):
        z = znormalize(make_correlated(3, 200, 6))
        s = column_stats(z)
        np.testing.assert_allclose(s.means, 0.0, atol=1e-12)
        np.testing.assert_allclose(s.stds, 1.0, atol=1e-12)

    def test_idempotent(self, make_correlated):
        z1 = znormalize(make_correlated(4, 120, 4))
        z2 = znormalize(z1)
        np.testing.assert_allclose(z2.values, z1.values, atol=1e-12)

    def test_shape_preserved(self, make_correlated):
        d = make_correlated(5, 77, 3)
        assert znormalize(d).values.shape == d.values.shape


class TestDatasetType:
    def test_values_read_only(self):
        d = Dataset(("a",), np.array([[1.0], [2.0]]))
        with pytest.raises(ValueError):
            d.values[0, 0] = 9.0

    def test_column_lookup(self):
        d = Dataset(("a", "b"), np.array([[1.0, 2.0], [3.0, 4.0]]))
        np.testing.assert_array_equal(d.column("b"), [2.0, 4.0])
        with pytest.raises(KeyError):
            d.column("zz")

    def test_duplicate_names_rejected(self):
        with pytest.raises(DuplicateColumnError):
            Dataset(("a", "a"), np.zeros((2, 2)))
