#!/usr/bin/env python3
"""
PNG rendering of Dynkin diagrams: white circles for even simple roots,
crossed circles for odd ones, root labels underneath.
"""

from pathlib import Path
from typing import Tuple

from console import warn
from superalgebra import DynkinDiagram

# Try to import PIL, but gracefully degrade if not available
try:
    from PIL import Image, ImageDraw
    HAS_PIL = True
except ImportError:
    HAS_PIL = False

NODE_RADIUS = 14
NODE_SPACING = 80
MARGIN = 30
LABEL_GAP = 8
LINE_WIDTH = 2


def diagram_size(diagram: DynkinDiagram) -> Tuple[int, int]:
    count = max(len(diagram.nodes), 1)
    width = 2 * MARGIN + (count - 1) * NODE_SPACING + 2 * NODE_RADIUS
    height = 2 * MARGIN + 2 * NODE_RADIUS + 2 * LABEL_GAP + 12
    return width, height


def render_dynkin_png(diagram: DynkinDiagram, path: Path) -> bool:
    """Draw the diagram to path; False when Pillow is unavailable."""
    if not HAS_PIL:
        warn("PIL/Pillow not installed. PNG rendering disabled.")
        return False
    width, height = diagram_size(diagram)
    image = Image.new("RGB", (width, height), "white")
    draw = ImageDraw.Draw(image)
    cy = MARGIN + NODE_RADIUS
    centers = {node.index: MARGIN + NODE_RADIUS + i * NODE_SPACING for i, node in enumerate(diagram.nodes)}

    for a, b in diagram.edges:
        draw.line([(centers[a] + NODE_RADIUS, cy), (centers[b] - NODE_RADIUS, cy)], fill="black", width=LINE_WIDTH)

    for node in diagram.nodes:
        cx = centers[node.index]
        box = [cx - NODE_RADIUS, cy - NODE_RADIUS, cx + NODE_RADIUS, cy + NODE_RADIUS]
        draw.ellipse(box, outline="black", fill="white", width=LINE_WIDTH)
        if node.odd:
            d = NODE_RADIUS * 0.7
            draw.line([(cx - d, cy - d), (cx + d, cy + d)], fill="black", width=LINE_WIDTH)
            draw.line([(cx - d, cy + d), (cx + d, cy - d)], fill="black", width=LINE_WIDTH)
        label_width = draw.textlength(node.label)
        draw.text((cx - label_width / 2, cy + NODE_RADIUS + LABEL_GAP), node.label, fill="black")

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    image.save(path, format="PNG")
    return True
