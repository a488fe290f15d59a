from fractions import Fraction

import numpy as np
import pytest

from goa import designs as dz
from goa import serialize as io
from goa.errors import FileFormatError


class TestJsonRoundTrip:
    def test_byte_identical(self, tmp_path, ebert3):
        path = tmp_path / "d.json"
        io.save_json(ebert3, path)
        first = path.read_bytes()
        io.save_json(io.load_json(path), path)
        assert path.read_bytes() == first

    def test_fractions_survive(self, tmp_path, thm1_3):
        gd = dz.GroupedDesign(
            thm1_3.design,
            [dz.Group([0, 1, 2, 3], 3, 3, (0, 0, 0, 1), Fraction(54, 55))],
            claimed_t0=2,
            verified_t0=2,
        )
        path = tmp_path / "p.json"
        io.save_json(gd, path)
        back = io.load_json(path)
        assert back.groups[0].p == Fraction(54, 55)
        assert back.groups[0].wlp == (0, 0, 0, 1)

    def test_generator_survives(self, tmp_path, thm1_3):
        path = tmp_path / "g.json"
        io.save_json(thm1_3, path)
        back = io.load_json(path)
        assert np.array_equal(back.generator.matrix, thm1_3.generator.matrix)

    def test_bad_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(FileFormatError):
            io.load_json(path)

    def test_missing_keys(self, tmp_path):
        path = tmp_path / "short.json"
        path.write_text('{"s": 2}')
        with pytest.raises(FileFormatError):
            io.load_json(path)


class TestCsv:
    def test_round_trip_through_json(self, tmp_path, thm1_3):
        csv_path = tmp_path / "d.csv"
        io.save_csv(thm1_3.design, csv_path)
        loaded = io.load_csv(csv_path, 3)
        assert np.array_equal(loaded.matrix, thm1_3.design.matrix)
        json_path = tmp_path / "d.json"
        io.save_json(dz.GroupedDesign(loaded, [], claimed_t0=0), json_path)
        again = io.load_json(json_path)
        assert np.array_equal(again.design.matrix, thm1_3.design.matrix)

    def test_no_header(self, tmp_path, thm1_3):
        path = tmp_path / "d.csv"
        io.save_csv(thm1_3.design, path)
        first = path.read_text().splitlines()[0]
        assert set(first.split(",")) <= {"0", "1", "2"}

    def test_csv_needs_level_count(self, tmp_path, thm1_3):
        path = tmp_path / "d.csv"
        io.save_csv(thm1_3.design, path)
        with pytest.raises(FileFormatError):
            io.load_design_file(path)

    def test_ragged_rejected(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("0,1,2\n0,1\n")
        with pytest.raises(FileFormatError):
            io.load_csv(path, 3)

    def test_out_of_range_levels_rejected(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("0,1\n2,0\n")
        with pytest.raises(FileFormatError):
            io.load_csv(path, 2)


class TestRealDesign:
    def test_real_json(self, tmp_path):
        m = np.array([[0.25, -0.25], [0.5, 0.0]])
        io.save_real_json(m, "test", tmp_path / "r.json", np.array([[1, -1], [2, 0]]))
        import json

        doc = json.loads((tmp_path / "r.json").read_text())
        assert doc["real_matrix"][0][0] == 0.25
        assert doc["int_matrix"][1] == [2, 0]
