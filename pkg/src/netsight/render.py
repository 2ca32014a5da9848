"""Draw a graph to SVG (and PNG) for a vision-capable selector: colored
circles per node, lines per edge, node ids as text labels."""

from __future__ import annotations

import hashlib
import io
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from PIL import Image, ImageDraw, ImageFont

from .graph import Graph
from .layout import LayoutResult
from .communities import CommunityAssignment

# 12 well-separated fills on a white canvas
DEFAULT_PALETTE = (
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4",
    "#f032e6", "#bfef45", "#469990", "#9a6324", "#800000", "#808000",
)


@dataclass(frozen=True)
class FullLabels:
    kind: str = field(default="full", init=False)


@dataclass(frozen=True)
class PartialLabels:
    top_fraction: float = 0.01
    min_labels: int = 20
    kind: str = field(default="partial", init=False)

    def __post_init__(self):
        if not 0.0 < self.top_fraction <= 1.0:
            raise ValueError("top_fraction must lie in (0, 1]")
        if self.min_labels < 0:
            raise ValueError("min_labels must be nonnegative")


@dataclass(frozen=True)
class RenderSpec:
    canvas_px: tuple[int, int] = (2048, 2048)
    node_radius_px: float = 6.0
    palette: tuple[str, ...] = DEFAULT_PALETTE
    label_policy: object = FullLabels()
    label_color: str = "black"
    background: str = "white"
    label_font_px: int = 14
    edge_color: str = "#999999"
    edge_width_px: float = 1.0

    def __post_init__(self):
        w, h = self.canvas_px
        if w < 256 or h < 256:
            raise ValueError("canvas must be at least 256x256")
        if len(self.palette) < 12:
            raise ValueError("palette needs at least 12 colors")
        if self.label_color == self.background:
            raise ValueError("label color must contrast with the background")


@dataclass(frozen=True)
class ImageArtifact:
    svg: bytes
    png: bytes | None
    content_hash: str
    labeled_nodes: frozenset[int]
    canvas_px: tuple[int, int]
    warnings: tuple[str, ...] = ()


def _fit_to_canvas(positions, canvas, margin_frac=0.05):
    """Uniform affine map of layout coordinates into the canvas, leaving
    the margin free on every side. Layout y grows upward, pixel y grows
    downward."""
    w, h = canvas
    xs = [p[0] for p in positions]
    ys = [p[1] for p in positions]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    inner_w = w * (1 - 2 * margin_frac)
    inner_h = h * (1 - 2 * margin_frac)
    span_x = maxx - minx
    span_y = maxy - miny
    if span_x <= 0 and span_y <= 0:
        scale = 1.0
    else:
        sx = inner_w / span_x if span_x > 0 else math.inf
        sy = inner_h / span_y if span_y > 0 else math.inf
        scale = min(sx, sy)
    off_x = (w - scale * span_x) / 2.0
    off_y = (h - scale * span_y) / 2.0
    return [
        (off_x + (x - minx) * scale, h - (off_y + (y - miny) * scale))
        for x, y in positions
    ]


def labeled_node_set(g: Graph, policy) -> frozenset[int]:
    """Internal ids that receive a text label under the policy. Partial
    labeling keeps the global top ceil(top_fraction * n) nodes by degree
    (no fewer than min_labels), degree ties broken by lower id."""
    if isinstance(policy, FullLabels):
        return frozenset(range(g.node_count))
    n = g.node_count
    want = max(math.ceil(policy.top_fraction * n), policy.min_labels)
    want = min(want, n)
    ranked = sorted(range(n), key=lambda v: (-g.degree(v), v))
    return frozenset(ranked[:want])


def render(g: Graph, layout: LayoutResult, asg: CommunityAssignment | None,
           spec: RenderSpec) -> ImageArtifact:
    """Produce the SVG artifact. Edges are drawn beneath nodes; every
    node is a filled circle colored by community (one uniform color when
    no assignment is given); labels show original node ids, offset
    above-right so small radii do not swallow the text."""
    if len(layout.positions) != g.node_count:
        raise ValueError("layout does not cover the graph")
    w, h = spec.canvas_px
    pts = _fit_to_canvas(layout.positions, spec.canvas_px)
    warnings = []
    if asg is not None and asg.community_count > len(spec.palette):
        warnings.append(
            f"palette cycled: {asg.community_count} communities > {len(spec.palette)} colors"
        )

    def fill(v: int) -> str:
        if asg is None:
            return spec.palette[0]
        return spec.palette[asg.membership[v] % len(spec.palette)]

    labeled = labeled_node_set(g, spec.label_policy)
    r = spec.node_radius_px
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="{spec.background}"/>',
        f'<g stroke="{spec.edge_color}" stroke-width="{spec.edge_width_px}">',
    ]
    for u, v in g.edges:
        x1, y1 = pts[u]
        x2, y2 = pts[v]
        parts.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}"/>')
    parts.append("</g><g>")
    for v in range(g.node_count):
        x, y = pts[v]
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}" fill="{fill(v)}"/>')
    parts.append(
        f'</g><g font-family="sans-serif" font-size="{spec.label_font_px}" '
        f'fill="{spec.label_color}">'
    )
    for v in sorted(labeled):
        x, y = pts[v]
        parts.append(
            f'<text x="{x + r + 2:.2f}" y="{y - r - 2:.2f}">{escape(str(g.label_of(v)))}</text>'
        )
    parts.append("</g></svg>")
    svg = "\n".join(parts).encode("utf-8")
    digest = hashlib.sha256(svg).hexdigest()
    return ImageArtifact(svg, None, digest, labeled, spec.canvas_px, tuple(warnings))


def _load_font(size_px: int):
    try:
        return ImageFont.load_default(size=size_px)
    except TypeError:  # older bitmap-only fallback
        return ImageFont.load_default()


def rasterize(img: ImageArtifact, scale: float = 1.0) -> ImageArtifact:
    """Fill in the PNG by drawing the artifact's own SVG subset with
    Pillow. Output dimensions are canvas * scale; bytes are deterministic
    for a fixed library version."""
    try:
        root = ET.fromstring(img.svg)
    except ET.ParseError as exc:
        raise ValueError(f"malformed svg: {exc}") from exc
    ns = "{http://www.w3.org/2000/svg}"
    w = round(float(root.get("width")) * scale)
    h = round(float(root.get("height")) * scale)
    canvas = Image.new("RGBA", (w, h))
    draw = ImageDraw.Draw(canvas)

    for rect in root.iter(f"{ns}rect"):
        draw.rectangle(
            [float(rect.get("x")) * scale, float(rect.get("y")) * scale,
             (float(rect.get("x")) + float(rect.get("width"))) * scale - 1,
             (float(rect.get("y")) + float(rect.get("height"))) * scale - 1],
            fill=rect.get("fill"),
        )
    # groups arrive in document order: edges, then nodes, then labels
    for group in root.iter(f"{ns}g"):
        stroke = group.get("stroke")
        width = max(1, round(float(group.get("stroke-width", "1")) * scale)) if stroke else 1
        for line in group.findall(f"{ns}line"):
            draw.line(
                [float(line.get("x1")) * scale, float(line.get("y1")) * scale,
                 float(line.get("x2")) * scale, float(line.get("y2")) * scale],
                fill=stroke, width=width,
            )
        for circle in group.findall(f"{ns}circle"):
            cx = float(circle.get("cx")) * scale
            cy = float(circle.get("cy")) * scale
            r = float(circle.get("r")) * scale
            draw.ellipse([cx - r, cy - r, cx + r, cy + r], fill=circle.get("fill"))
        font = _load_font(round(float(group.get("font-size", "14")) * scale))
        for text in group.findall(f"{ns}text"):
            x = float(text.get("x")) * scale
            y = float(text.get("y")) * scale
            try:
                draw.text((x, y), text.text or "", fill=group.get("fill", "black"),
                          font=font, anchor="ls")
            except (ValueError, TypeError):
                draw.text((x, y - getattr(font, "size", 11)), text.text or "",
                          fill=group.get("fill", "black"), font=font)

    buf = io.BytesIO()
    canvas.save(buf, format="PNG")
    return ImageArtifact(img.svg, buf.getvalue(), img.content_hash,
                         img.labeled_nodes, img.canvas_px, img.warnings)
