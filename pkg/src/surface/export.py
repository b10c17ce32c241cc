"""
JSON, SVG and PNG output for surface models.

SVG follows the labelling convention of matching edge labels: interiors of top/bottom
segments labelled ``A<n>`` are identified, and so are right/left segments labelled
``B<n>``. Output is deterministic.
"""

import os
from typing import Any, Dict, List

import cv2
import numpy as np

from ..config.constants import PNG_BG, PNG_CANVAS, PNG_RECT_COLORS, SVG_CANVAS
from ..utils.json_io import write_json
from ..utils.logging_config import LOGGER
from .model import RIGHT, TOP, FlatSurfaceModel

SVG_MARGIN = 24
MIN_LABEL_PX = 14.0


def export_json(surface: FlatSurfaceModel) -> Dict[str, Any]:
    return surface.to_dict()


def import_json(doc: Dict[str, Any]) -> FlatSurfaceModel:
    return FlatSurfaceModel.from_dict(doc)


def _extent(surface: FlatSurfaceModel):
    rects = surface.rectangles
    return float(rects[-1].x1), float(rects[-1].y1)


def _fmt(value: float) -> str:
    return f"{value:.4f}".rstrip("0").rstrip(".")


def export_svg(surface: FlatSurfaceModel, labels: bool = True) -> str:
    """SVG 1.1 drawing of the rectangles with their identified edge segments."""
    width, height = _extent(surface)
    scale = (SVG_CANVAS - 2 * SVG_MARGIN) / max(width, height)

    def px(x) -> float:
        return SVG_MARGIN + float(x) * scale

    def py(y) -> float:
        return SVG_MARGIN + (height - float(y)) * scale

    size = SVG_CANVAS
    lines: List[str] = [
        "<?xml version='1.0' encoding='UTF-8'?>",
        f"<svg xmlns='http://www.w3.org/2000/svg' version='1.1' width='{size}' height='{size}' "
        f"viewBox='0 0 {size} {size}'>",
        "<g fill='none' stroke='black' stroke-width='1' font-family='sans-serif' font-size='9'>",
    ]
    for rect in surface.rectangles:
        lines.append(
            f"<rect x='{_fmt(px(rect.x0))}' y='{_fmt(py(rect.y1))}' "
            f"width='{_fmt(float(rect.width) * scale)}' height='{_fmt(float(rect.height) * scale)}' "
            f"fill='#eef2f7'/>"
        )
    rects = surface.rectangles
    counters = {TOP: 0, RIGHT: 0}
    for pair in surface.identifications():
        counters[pair.kind] += 1
        label = ("A" if pair.kind == TOP else "B") + str(counters[pair.kind])
        dash = " stroke-dasharray='3,2'" if pair.closing else ""
        if pair.kind == TOP:
            src_y, dst_y = rects[pair.source_rect].y1, rects[pair.target_rect].y0
            segments = [((pair.source[0], src_y), (pair.source[1], src_y), 0, -3),
                        ((pair.target[0], dst_y), (pair.target[1], dst_y), 0, 10)]
        else:
            src_x, dst_x = rects[pair.source_rect].x1, rects[pair.target_rect].x0
            segments = [((src_x, pair.source[0]), (src_x, pair.source[1]), 3, 3),
                        ((dst_x, pair.target[0]), (dst_x, pair.target[1]), -14, 3)]
        for (x1, y1), (x2, y2), dx, dy in segments:
            lines.append(f"<line x1='{_fmt(px(x1))}' y1='{_fmt(py(y1))}' x2='{_fmt(px(x2))}' "
                         f"y2='{_fmt(py(y2))}' stroke='#1f5fa8'{dash}/>")
            long_enough = max(abs(px(x2) - px(x1)), abs(py(y2) - py(y1))) >= MIN_LABEL_PX
            if labels and long_enough:
                mx, my = (px(x1) + px(x2)) / 2 + dx, (py(y1) + py(y2)) / 2 + dy
                lines.append(f"<text x='{_fmt(mx)}' y='{_fmt(my)}' stroke='none' fill='black'>{label}</text>")
    for x, y in surface.singular_set():
        lines.append(f"<circle cx='{_fmt(px(x))}' cy='{_fmt(py(y))}' r='2' fill='#c0392b' stroke='none'/>")
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_png(surface: FlatSurfaceModel) -> np.ndarray:
    """BGR raster of the rectangles with the top cell boundaries marked."""
    width, height = _extent(surface)
    margin = SVG_MARGIN
    scale = (PNG_CANVAS - 2 * margin) / max(width, height)
    img = np.full((PNG_CANVAS, PNG_CANVAS, 3), PNG_BG, dtype=np.uint8)

    def pt(x, y):
        return int(round(margin + float(x) * scale)), int(round(margin + (height - float(y)) * scale))

    for rect in surface.rectangles:
        color = PNG_RECT_COLORS[rect.index % len(PNG_RECT_COLORS)]
        cv2.rectangle(img, pt(rect.x0, rect.y1), pt(rect.x1, rect.y0), color, thickness=-1)
        cv2.rectangle(img, pt(rect.x0, rect.y1), pt(rect.x1, rect.y0), (235, 235, 235), thickness=1)
    rects = surface.rectangles
    for x, s in zip(surface.top_map.lefts, surface.top_map.symbols):
        r = rects[s]
        cv2.line(img, pt(x, r.y1), pt(x, r.y1 - (r.y1 - r.y0) * 0.08), (255, 255, 255), 1, cv2.LINE_AA)
    for y, s in zip(surface.right_map.lefts, surface.right_map.symbols):
        r = rects[s]
        cv2.line(img, pt(r.x1, y), pt(r.x1 - (r.x1 - r.x0) * 0.08, y), (255, 255, 255), 1, cv2.LINE_AA)
    return img


def write_surface_files(surface: FlatSurfaceModel, out_dir: str, stem: str = "surface",
                        png: bool = False) -> Dict[str, str]:
    """Write ``<stem>.json`` and ``<stem>.svg`` (and optionally ``<stem>.png``) into ``out_dir``."""
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "json": os.path.join(out_dir, f"{stem}.json"),
        "svg": os.path.join(out_dir, f"{stem}.svg"),
    }
    write_json(paths["json"], export_json(surface))
    with open(paths["svg"], "w", encoding="utf-8") as f:
        f.write(export_svg(surface))
    if png:
        paths["png"] = os.path.join(out_dir, f"{stem}.png")
        if not cv2.imwrite(paths["png"], render_png(surface)):
            LOGGER.warning(f"OpenCV could not write {paths['png']}")
    LOGGER.info(f"surface written to {out_dir} ({', '.join(sorted(paths))})")
    return paths