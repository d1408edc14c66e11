import hashlib
import json
import re
from fractions import Fraction

import pytest

from fjl import kernels
from fjl.exact import QBox, box_of_rect, rat
from fjl.geometry import square_P, square_Q
from fjl.render import (render_overview, render_q_zoom, render_tree, to_ppm, to_svg)
from fjl.tree import TreeCapExceeded

FIG1 = QBox(-3, 9, -3, 5)


def test_overview_figure_one():
    scene = render_overview(FIG1)
    ps = {s.rect for s in scene.of_class("P")}
    qs = {s.rect for s in scene.of_class("Q3")}
    for j in range(-1, 4):
        for k in range(-1, 2):
            assert square_P(j, k) in ps
    for j in range(1, 8):
        assert square_Q(j, 3) in qs
    for s in scene.shapes:
        assert box_of_rect(s.rect).intersects(scene.viewport)


def test_overview_empty_viewport():
    v = QBox(rat("-41/20"), rat("-39/20"), rat("-1/20"), rat("1/20"))
    assert render_overview(v).shapes == []


def test_overview_unit_cell():
    scene = render_overview(QBox(0, 2, 0, 2))
    assert [s.rect for s in scene.of_class("P")] == [square_P(0, 0)]
    # Q^3_2 touches x = 2 and counts under the closed-set rule
    assert [s.rect for s in scene.of_class("Q3")] == [square_Q(1, 3), square_Q(2, 3)]


def test_overview_degenerate_viewport_rejected():
    with pytest.raises(ValueError):
        render_overview(QBox(0, 0, 0, 1))


def test_q_fills_miss_p_outlines():
    scene = render_overview(QBox(-5, 20, -6, 6))
    for q in scene.of_class("Q3"):
        for p in scene.of_class("P"):
            assert not box_of_rect(q.rect).intersects(box_of_rect(p.rect))


def test_zoom_counts_and_insets():
    scene = render_q_zoom(1)
    assert len(scene.shapes) == 51
    assert [len(scene.of_class(c)) for c in ("R3", "R2", "R1")] == [16, 16, 16]
    q2 = scene.of_class("Q2")[0].rect
    q3 = scene.of_class("Q3-outline")[0].rect
    assert (q3.half_side - q2.half_side) / q3.side == Fraction(1, 64)
    assert scene.metadata["subpixel_insets"] is True
    assert scene.metadata["exaggerate_effective"] == 1


def test_zoom_exaggeration_clamped_and_recorded():
    scene = render_q_zoom(1, exaggerate=8)
    assert scene.metadata["exaggerate_requested"] == 8
    assert scene.metadata["exaggerate_effective"] == 2
    assert scene.metadata["clamped"] is True
    assert all(s.rect.half_side > 0 for s in scene.shapes)
    assert render_q_zoom(5, exaggerate=8).metadata["clamped"] is False


def test_tree_scene():
    assert render_tree(1).metadata["node_count"] == 1
    scene = render_tree(3)
    assert len(scene.of_class("node")) == 256
    root = box_of_rect(scene.of_class("root")[0].rect)
    assert all(root.contains_box(box_of_rect(s.rect)) for s in scene.of_class("node"))
    with pytest.raises(TreeCapExceeded):
        render_tree(8)


def test_svg_deterministic_and_wellformed():
    import xml.etree.ElementTree as ET
    a = to_svg(render_q_zoom(1))
    assert a == to_svg(render_q_zoom(1))
    root = ET.fromstring(a)
    assert root.tag.endswith("svg")
    rects = [e for e in root.iter() if e.tag.endswith("rect")]
    assert len(rects) == 52  # background + 51 shapes
    meta = json.loads(next(e for e in root.iter() if e.tag.endswith("metadata")).text)
    assert meta["subpixel_insets"] is True


def test_svg_exact_coordinates():
    svg = to_svg(render_overview(QBox(0, 2, 0, 2)))
    # P_{0,0} = [1/2, 3/2]^2 drawn with y flipped
    assert '<rect class="P" x="0.5" y="-1.5" width="1" height="1"/>' in svg


def test_svg_precision_control():
    svg = to_svg(render_q_zoom(3), precision=4)
    nums = re.findall(r' x="([^"]+)"', svg)
    assert all(len(n.replace("-", "").replace(".", "").lstrip("0").split("E")[0]) <= 4
               for n in nums)


@pytest.mark.parametrize("backend", sorted(kernels.backends()))
def test_ppm_golden(backend):
    scene = render_q_zoom(1, exaggerate=2, ppu=1024)
    data = to_ppm(scene, backend=backend)
    header, _, body = data.partition(b"255\n")
    assert header.startswith(b"P6\n")
    w, h = map(int, header.split()[1:3])
    assert len(body) == 3 * w * h
    assert set(body) <= {0x00, 0x80, 0xB0, 0xFF}
    assert hashlib.sha256(data).hexdigest() == hashlib.sha256(
        to_ppm(scene, backend="python")).hexdigest()
