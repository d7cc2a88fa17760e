import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from gfmatch.baseline import SUBSTRING
from gfmatch.core import intern
from gfmatch.matcher import MatcherConfig, match
from gfmatch.viz import LayoutTooLarge, arc_diagram_svg, red_hue

GOLDEN = Path(__file__).parent / "golden"
NS = "{http://www.w3.org/2000/svg}"
SONNET = "ABABCDCDEFEFGG"


def sonnet_instance(blocks=6):
    text = intern([f"{b}:{c}" for b in range(blocks) for c in SONNET])
    pattern = intern(SONNET)
    return pattern, text, match(pattern, text, MatcherConfig(mode=SUBSTRING))


def classes(svg, cls):
    root = ET.fromstring(svg.encode("utf-8"))
    return [el for el in root.iter() if el.get("class") == cls]


def test_abab_single_arc():
    svg = arc_diagram_svg(intern("abab"))
    arcs = classes(svg, "rep")
    assert len(arcs) == 1
    assert arcs[0].get("d").startswith("M20.00,")
    assert classes(svg, "match-span") == []
    assert ET.fromstring(svg.encode()).find(f"{NS}g[@id='matches']") is None


def test_sonnet_six_red_spans():
    p, t, found = sonnet_instance()
    svg = arc_diagram_svg(t, found, pattern=p, markers=range(0, 85, 14))
    spans = classes(svg, "match-span")
    assert len(spans) == len(found) >= 6
    assert len(classes(svg, "marker")) == 7
    for el in spans:
        r, g, b = (int(el.get("fill")[i:i + 2], 16) for i in (1, 3, 5))
        assert r > g and r > b


def test_golden_files():
    cases = {"abab.svg": arc_diagram_svg(intern("abab"))}
    p, t, found = sonnet_instance(2)
    cases["sonnet2.svg"] = arc_diagram_svg(t, found, pattern=p)
    for name, svg in cases.items():
        assert svg == (GOLDEN / name).read_text(encoding="utf-8"), name


def test_deterministic_and_escaped():
    t = intern("<&><&>")
    a, b = arc_diagram_svg(t), arc_diagram_svg(t)
    assert a == b
    ET.fromstring(a.encode())


def test_sequence_input_has_no_labels():
    svg = arc_diagram_svg([0, 1, 0, 1])
    assert "<text" not in svg


def test_layout_budget():
    with pytest.raises(LayoutTooLarge):
        arc_diagram_svg([0] * 5001)


def test_red_hue_stable():
    assert red_hue(0, 1) == red_hue(0, 1)
    assert len({red_hue(i, 10) for i in range(10)}) > 1
