import json
import xml.etree.ElementTree as ET
from fractions import Fraction

import numpy as np
from hypothesis import given, strategies as st

from youngfield import __version__
from youngfield.export import (
    CANVAS_HEIGHT,
    CANVAS_WIDTH,
    dumps_csv,
    dumps_json,
    ramp_color,
    rational,
    read_csv,
    svg_heatmap,
    to_plain,
)

SVG_NS = "{http://www.w3.org/2000/svg}"


class TestRational:
    def test_strings(self):
        assert rational(Fraction(3, 4)) == "3/4"
        assert rational(Fraction(-6, 3)) == "-2"
        assert rational(5) == "5"

    @given(st.fractions())
    def test_roundtrip(self, x):
        assert Fraction(rational(x)) == x

    def test_to_plain_nested(self):
        data = {"a": [Fraction(1, 2), (Fraction(2), 3)], 4: {"b": np.float64(0.5), "c": np.int64(7)}}
        assert to_plain(data) == {"a": ["1/2", ["2", 3]], "4": {"b": 0.5, "c": 7}}


class TestJson:
    def test_meta_and_sorting(self):
        text = dumps_json({"z": Fraction(1, 3), "a": 1}, {"seed": 4})
        data = json.loads(text)
        assert data["meta"] == {"library": "youngfield", "version": __version__, "config": {"seed": 4}}
        assert data["z"] == "1/3"
        assert text.index('"a"') < text.index('"meta"') < text.index('"z"')
        assert text.endswith("\n")


class TestCsv:
    def test_roundtrip(self):
        text = dumps_csv(("t", "parts"), [(0, ""), (1, "1"), (2, "1;1")], {"seed": 1, "model": "x"})
        lines = text.splitlines()
        assert lines[0] == f"# youngfield {__version__}"
        assert lines[1] == '# config {"model": "x", "seed": 1}'
        header, rows = read_csv(text)
        assert header == ["t", "parts"]
        assert rows == [["0", ""], ["1", "1"], ["2", "1;1"]]

    def test_rationals(self):
        _, rows = read_csv(dumps_csv(("v",), [(Fraction(2, 6),)], {}))
        assert rows == [["1/3"]]


class TestSvg:
    def values(self):
        return np.array([[0.0, 1.0, -2.0], [2.0, 0.5, 0.0]])

    def test_deterministic(self):
        a = svg_heatmap(self.values(), [-1, 0, 1], [0, 1], "t", {"seed": 1})
        b = svg_heatmap(self.values(), [-1, 0, 1], [0, 1], "t", {"seed": 1})
        assert a == b

    def test_structure(self):
        text = svg_heatmap(self.values(), [-1, 0, 1], [0, 1], "field", {"seed": 1})
        root = ET.fromstring(text)
        assert root.get("width") == str(CANVAS_WIDTH) and root.get("height") == str(CANVAS_HEIGHT)
        rects = root.findall(f"{SVG_NS}rect")
        assert len(rects) == 1 + 6  # background + cells
        meta = json.loads(root.find(f"{SVG_NS}metadata").text)
        assert meta["config"] == {"seed": 1}

    def test_ramp(self):
        assert ramp_color(0, 1) == "#f7f7f7"
        assert ramp_color(1, 1) == "#b2182b"
        assert ramp_color(-1, 1) == "#2166ac"
        assert ramp_color(5, 1) == "#b2182b"
        assert ramp_color(3, 0) == "#f7f7f7"

    def test_cell_colors(self):
        root = ET.fromstring(svg_heatmap(self.values(), [-1, 0, 1], [0, 1], "t", {}))
        fills = [r.get("fill") for r in root.findall(f"{SVG_NS}rect")[1:]]
        # scale is max |value| = 2; row 0 first
        assert fills[2] == "#2166ac" and fills[3] == "#b2182b" and fills[0] == "#f7f7f7"
