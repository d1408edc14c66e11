"""Figures of the construction as SVG (exact geometry) or PPM rasters."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from fjl import kernels
from fjl.exact import QBox, QRect, box_of_rect, pow2, rat
from fjl.geometry import CELLS, cell_center, delta, square_P, square_Q
from fjl.tree import DEFAULT_CAP, TreeCapExceeded, enumerate_level, tree_root
from fjl.verify import DEFAULT_PRECISION, decimal_str

DEFAULT_PPU = Fraction(100)

# class -> (svg style, raster rgb, raster dash (on, off))
STYLES = {
    "P": ("fill:none;stroke:#000", 0x000000, (0, 0)),
    "Q3": ("fill:#000;stroke:none", 0x000000, (0, 0)),
    "Q3-outline": ("fill:none;stroke:#000", 0x000000, (0, 0)),
    "Q2": ("fill:#b0b0b0;stroke:none", 0xB0B0B0, (0, 0)),
    "Q1": ("fill:#808080;stroke:none", 0x808080, (0, 0)),
    "R3": ("fill:none;stroke:#000", 0x000000, (0, 0)),
    "R2": ("fill:none;stroke:#000;stroke-dasharray:4 2", 0x000000, (4, 2)),
    "R1": ("fill:none;stroke:#000;stroke-dasharray:1 1", 0x000000, (1, 1)),
    "root": ("fill:none;stroke:#000", 0x000000, (0, 0)),
    "node": ("fill:#000;stroke:none", 0x000000, (0, 0)),
}


@dataclass(frozen=True)
class Shape:
    rect: QRect
    style: str  # "outline" or "fill"
    layer: int
    cls: str


@dataclass
class Scene:
    viewport: QBox
    shapes: list[Shape]
    ppu: Fraction = DEFAULT_PPU
    metadata: dict = field(default_factory=dict)

    def of_class(self, cls: str) -> list[Shape]:
        return [s for s in self.shapes if s.cls == cls]


def _check_viewport(v: QBox) -> None:
    if v.x_lo >= v.x_hi or v.y_lo >= v.y_hi:
        raise ValueError("viewport must have positive width and height")


def render_overview(viewport: QBox, ppu=DEFAULT_PPU) -> Scene:
    """P_{j,k} outlines and filled Q^3_j meeting the viewport."""
    _check_viewport(viewport)
    shapes = []
    for j in range(math.floor(viewport.x_lo / 2) - 1, math.floor(viewport.x_hi / 2) + 2):
        for k in range(math.floor(viewport.y_lo / 2) - 1, math.floor(viewport.y_hi / 2) + 2):
            p = square_P(j, k)
            if box_of_rect(p).intersects(viewport):
                shapes.append(Shape(p, "outline", 0, "P"))
    for j in range(max(1, math.floor(viewport.x_lo) - 1), math.floor(viewport.x_hi) + 2):
        q = square_Q(j, 3)
        if box_of_rect(q).intersects(viewport):
            shapes.append(Shape(q, "fill", 1, "Q3"))
    return Scene(viewport, shapes, rat(ppu), {"figure": "overview"})


def render_q_zoom(j: int, exaggerate: int = 1, ppu=DEFAULT_PPU) -> Scene:
    """Nested Q^m_j squares and the R^m_{j,l} cells, insets optionally widened.

    Insets are multiplied by ``exaggerate`` but capped at 2^j so that R^1
    keeps at least half the width of R^3; requested and applied factors
    are both recorded in the metadata.
    """
    if exaggerate < 1:
        raise ValueError("exaggeration factor must be >= 1")
    d = delta(j)
    eff = min(exaggerate, 2 ** j)
    inset = eff * d
    q3 = square_Q(j, 3)
    shapes = [
        Shape(QRect(q3.center, q3.half_side - inset), "fill", 0, "Q2"),
        Shape(QRect(q3.center, q3.half_side - 2 * inset), "fill", 1, "Q1"),
        Shape(q3, "outline", 2, "Q3-outline"),
    ]
    cell = pow2(-j - 4)
    for level, cls, shrink in ((3, "R3", 0), (2, "R2", inset), (1, "R1", 2 * inset)):
        for l in range(1, CELLS + 1):
            shapes.append(Shape(QRect(cell_center(j, l), cell - shrink), "outline", 6 - level, cls))
    pad = q3.half_side / 8
    viewport = QBox(q3.x_lo - pad, q3.x_hi + pad, q3.y_lo - pad, q3.y_hi + pad)
    ppu = rat(ppu)
    inset_px = inset * ppu
    meta = {"figure": "zoom", "j": j, "exaggerate_requested": exaggerate,
            "exaggerate_effective": eff, "clamped": eff != exaggerate,
            "inset_px": decimal_str(inset_px, 6), "subpixel_insets": inset_px < 1}
    return Scene(viewport, shapes, ppu, meta)


def render_tree(depth: int, cap: int = 16 ** 4, ppu=DEFAULT_PPU) -> Scene:
    """R^1_{1,1} outline plus every depth-``depth`` node of the Cantor tree."""
    if 16 ** (depth - 1) > cap:
        raise TreeCapExceeded(depth, 16 ** (depth - 1), cap)
    root = tree_root().rect
    nodes = enumerate_level(depth, cap=min(cap, DEFAULT_CAP))
    shapes = [Shape(root, "outline", 0, "root")]
    shapes += [Shape(n.rect, "fill", 1, "node") for n in nodes]
    pad = root.half_side / 8
    viewport = QBox(root.x_lo - pad, root.x_hi + pad, root.y_lo - pad, root.y_hi + pad)
    return Scene(viewport, shapes, rat(ppu),
                 {"figure": "tree", "depth": depth, "node_count": len(nodes)})


def _ordered(scene: Scene) -> list[Shape]:
    # stable sort keeps construction order inside a layer
    return sorted(scene.shapes, key=lambda s: s.layer)


def to_svg(scene: Scene, precision: int = DEFAULT_PRECISION) -> str:
    v = scene.viewport

    def num(q: Fraction) -> str:
        return decimal_str(q, precision)

    w, h = v.x_hi - v.x_lo, v.y_hi - v.y_lo
    used = sorted({s.cls for s in scene.shapes})
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{num(w * scene.ppu)}" height="{num(h * scene.ppu)}" '
        f'viewBox="{num(v.x_lo)} {num(-v.y_hi)} {num(w)} {num(h)}">',
        f"<metadata>{json.dumps(scene.metadata, sort_keys=True)}</metadata>",
        "<style>",
        "rect{vector-effect:non-scaling-stroke;stroke-width:1px}",
    ]
    lines += [f".{c}{{{STYLES[c][0]}}}" for c in used]
    lines.append("</style>")
    lines.append(f'<rect x="{num(v.x_lo)}" y="{num(-v.y_hi)}" width="{num(w)}" '
                 f'height="{num(h)}" style="fill:#fff;stroke:none"/>')
    for s in _ordered(scene):
        r = s.rect
        lines.append(f'<rect class="{s.cls}" x="{num(r.x_lo)}" y="{num(-r.y_hi)}" '
                     f'width="{num(r.side)}" height="{num(r.side)}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def raster_ops(scene: Scene) -> tuple[int, int, list[int]]:
    """Pixel size of the scene and its paint operations, in exact arithmetic."""
    v, ppu = scene.viewport, scene.ppu
    width = max(1, math.ceil((v.x_hi - v.x_lo) * ppu))
    height = max(1, math.ceil((v.y_hi - v.y_lo) * ppu))
    ops: list[int] = []
    for s in _ordered(scene):
        r = s.rect
        x0 = math.floor((r.x_lo - v.x_lo) * ppu)
        x1 = math.floor((r.x_hi - v.x_lo) * ppu)
        y0 = math.floor((v.y_hi - r.y_hi) * ppu)
        y1 = math.floor((v.y_hi - r.y_lo) * ppu)
        _, rgb, (on, off) = STYLES[s.cls]
        kind = kernels.FILL if s.style == "fill" else kernels.OUTLINE
        ops += [kind, x0, y0, x1, y1, rgb, on, off]
    return width, height, ops


def to_ppm(scene: Scene, backend=None) -> bytes:
    width, height, ops = raster_ops(scene)
    buf = bytearray(b"\xff" * (3 * width * height))
    kernels.paint(buf, width, height, ops, backend=backend)
    return b"P6\n%d %d\n255\n" % (width, height) + bytes(buf)
