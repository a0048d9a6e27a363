import xml.etree.ElementTree as ET

from rvknot import gallery
from rvknot.codec import parse_gauss_code, realize
from rvknot.render import render_chord_svg

NS = "{http://www.w3.org/2000/svg}"


def _parse(svg: str):
    return ET.fromstring(svg)


def _with_class(root, cls):
    return [el for el in root.iter() if cls in el.get("class", "").split()]


def test_svg_is_well_formed_and_deterministic():
    for d in (gallery.trefoil(), gallery.borromean(), gallery.virtual_trefoil(), gallery.nodal_trefoil()):
        a = render_chord_svg(d, title="x < y")
        assert a == render_chord_svg(d, title="x < y")
        root = _parse(a)
        assert root.tag == NS + "svg"


def test_one_circle_per_component():
    root = _parse(render_chord_svg(gallery.borromean()))
    big = [c for c in root.iter(NS + "circle") if c.get("r") == "100.00"]
    assert len(big) == 3


def test_chords_and_markers():
    root = _parse(render_chord_svg(gallery.nodal_trefoil()))
    assert len(_with_class(root, "chord")) == len(gallery.nodal_trefoil().sites)
    assert len(_with_class(root, "standard")) == 3
    special = realize(parse_gauss_code("S1 S2 S1 S2"))
    root = _parse(render_chord_svg(special))
    assert len(_with_class(root, "special")) == 2
    assert len(_with_class(root, "indicator")) == 2
    assert len(_with_class(root, "virtual")) == len(special.virtual_ids()) == 1


def _on_line(line, x, y):
    x1, y1, x2, y2 = (float(line.get(k)) for k in ("x1", "y1", "x2", "y2"))
    cross = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1)
    return abs(cross) / max(1e-9, ((x2 - x1) ** 2 + (y2 - y1) ** 2) ** 0.5) < 0.05


def test_virtual_marker_sits_on_chord_crossing():
    for code in ("O1+ U2+ U1+ O2+", "1 2 3 1 3 2", "O1+ U2- O3+ U1+ O2- U3+ 4 4"):
        d = realize(parse_gauss_code(code))
        root = _parse(render_chord_svg(d))
        chords = _with_class(root, "chord")
        markers = _with_class(root, "virtual")
        assert len(markers) == len(d.virtual_ids())
        for m in markers:
            x, y = float(m.get("cx")), float(m.get("cy"))
            assert sum(_on_line(c, x, y) for c in chords) >= 2


def test_small_words():
    root = _parse(render_chord_svg(realize(parse_gauss_code("1 1"))))
    assert len(_with_class(root, "chord")) == 1
    assert len(_with_class(root, "standard")) == 1
    root = _parse(render_chord_svg(realize(parse_gauss_code("1 2 1 2"))))
    assert len(_with_class(root, "chord")) == 2
    assert len(_with_class(root, "virtual")) == 1
