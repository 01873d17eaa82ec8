"""Deterministic SVG rendering of plot geometry.

Output is a pure function of its inputs: fixed-precision coordinates,
stable element ordering (class order, then sample id), no timestamps or
generated ids, so identical calls produce byte-identical documents.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import PlotGeometry
from .rules import RuleSeries
from .splits import SelectionBox

# red/green/blue first (class colors used throughout the plots), then a
# colorblind-safe extension
DEFAULT_PALETTE = (
    "#e41a1c",
    "#4daf4a",
    "#377eb8",
    "#ff7f00",
    "#984ea3",
    "#a65628",
    "#f781bf",
    "#999999",
)


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class RenderSpec:
    width: int = 960
    height: int = 640
    margin: int = 40
    palette: tuple[str, ...] = DEFAULT_PALETTE
    line_opacity: float = 0.7
    show_samples: bool = True
    show_hb_bands: bool = True
    show_separators: bool = True
    show_boxes: bool = True

    def __post_init__(self) -> None:
        if self.width <= 2 * self.margin or self.height <= 2 * self.margin:
            raise RenderError("canvas must be larger than twice the margin")
        if not 0.0 <= self.line_opacity <= 1.0:
            raise RenderError("line opacity must lie in [0, 1]")


@dataclass(frozen=True)
class Transform:
    """Affine plot-plane -> pixel map with aspect preserved, y flipped."""

    scale: float
    x_offset: float
    y_offset: float
    height: float

    def apply(self, x: float, y: float) -> tuple[float, float]:
        return (
            self.x_offset + self.scale * x,
            self.height - (self.y_offset + self.scale * y),
        )


def fit_transform(
    bbox: tuple[float, float, float, float], spec: RenderSpec
) -> Transform:
    x_min, y_min, x_max, y_max = bbox
    span_x = max(x_max - x_min, 1e-12)
    span_y = max(y_max - y_min, 1e-12)
    inner_w = spec.width - 2 * spec.margin
    inner_h = spec.height - 2 * spec.margin
    scale = min(inner_w / span_x, inner_h / span_y)
    x_offset = spec.margin + (inner_w - scale * span_x) / 2 - scale * x_min
    y_offset = spec.margin + (inner_h - scale * span_y) / 2 - scale * y_min
    return Transform(scale=scale, x_offset=x_offset, y_offset=y_offset, height=spec.height)


def _points(vertices, transform: Transform) -> str:
    return " ".join(
        "{:.3f},{:.3f}".format(*transform.apply(x, y)) for x, y in vertices
    )


def _class_colors(geometry: PlotGeometry, spec: RenderSpec, classes) -> dict[str, str]:
    if len(spec.palette) < len(classes):
        raise RenderError(
            f"palette has {len(spec.palette)} colors for {len(classes)} classes"
        )
    return {label: spec.palette[i] for i, label in enumerate(classes)}


def render_svg(
    geometry: PlotGeometry,
    spec: RenderSpec = RenderSpec(),
    classes: "tuple[str, ...] | None" = None,
    separators: "RuleSeries | None" = None,
    boxes: "tuple[SelectionBox, ...]" = (),
) -> str:
    """Render geometry (plus optional overlays) as an SVG document string."""
    if not geometry.polylines:
        raise RenderError("empty geometry")
    if classes is None:
        seen: list[str] = []
        for line in geometry.polylines:
            if line.class_label not in seen:
                seen.append(line.class_label)
        classes = tuple(seen)
    colors = _class_colors(geometry, spec, classes)
    transform = fit_transform(geometry.bounding_box(), spec)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">',
        f'<rect width="{spec.width}" height="{spec.height}" fill="white"/>',
    ]

    if spec.show_samples:
        out.append('<g id="layer-samples" fill="none">')
        order = {label: i for i, label in enumerate(classes)}
        lines = sorted(
            geometry.polylines, key=lambda p: (order[p.class_label], p.sample_id)
        )
        for line in lines:
            out.append(
                f'<polyline points="{_points(line.vertices, transform)}" '
                f'stroke="{colors[line.class_label]}" stroke-width="1" '
                f'stroke-opacity="{spec.line_opacity:.3f}"/>'
            )
        out.append("</g>")

    if spec.show_hb_bands and geometry.hb_overlays:
        out.append('<g id="layer-hb" fill="none">')
        for overlay in geometry.hb_overlays:
            color = colors.get(overlay.class_label, "#555555")
            for band in (overlay.lower, overlay.upper):
                if band:
                    out.append(
                        f'<polyline points="{_points(band, transform)}" '
                        f'stroke="{color}" stroke-width="2.5"/>'
                    )
            for x0, y0, x1, y1 in overlay.boxes:
                (px0, py0) = transform.apply(x0, y0)
                (px1, py1) = transform.apply(x1, y1)
                left, top = min(px0, px1), min(py0, py1)
                w, h = abs(px1 - px0), abs(py1 - py0)
                out.append(
                    f'<rect x="{left:.3f}" y="{top:.3f}" width="{w:.3f}" '
                    f'height="{h:.3f}" stroke="{color}" stroke-width="2" '
                    f'fill="{color}" fill-opacity="0.08"/>'
                )
        out.append("</g>")

    if spec.show_separators and separators is not None:
        out.append('<g id="layer-separators" fill="none">')
        for line_points in separator_lines(geometry, separators):
            out.append(
                f'<polyline points="{_points(line_points, transform)}" '
                f'stroke="#222222" stroke-width="1.5" stroke-dasharray="6 3"/>'
            )
        out.append("</g>")

    if spec.show_boxes and boxes:
        out.append('<g id="layer-boxes" fill="none">')
        for box in boxes:
            (px0, py0) = transform.apply(box.x_min, box.y_min)
            (px1, py1) = transform.apply(box.x_max, box.y_max)
            left, top = min(px0, px1), min(py0, py1)
            out.append(
                f'<rect x="{left:.3f}" y="{top:.3f}" width="{abs(px1 - px0):.3f}" '
                f'height="{abs(py1 - py0):.3f}" stroke="#000000" '
                f'stroke-width="1.5" stroke-dasharray="4 4"/>'
            )
        out.append("</g>")

    out.append("</svg>")
    return "\n".join(out) + "\n"


def separator_lines(geometry: PlotGeometry, series: RuleSeries):
    """Plot-plane line segments for each separator stage.

    On dsc1 the separator is drawn perpendicular to the first scaffold
    direction at the stage threshold; on paired systems it is a vertical
    or horizontal line at the threshold of the leading pair, and on pc a
    horizontal tick across the axis of the stage attribute.
    """
    bbox = geometry.bounding_box()
    span = max(bbox[2] - bbox[0], bbox[3] - bbox[1])
    config = geometry.config
    segments = []
    for stage in series.stages:
        t = stage.threshold
        if geometry.system == "dsc1":
            dx, dy = geometry.scaffold["directions"][0]
            anchor = (t * dx, t * dy)
            normal = (-dy, dx)
            segments.append(
                (
                    (anchor[0] - 0.2 * span * normal[0], anchor[1] - 0.2 * span * normal[1]),
                    (anchor[0] + 1.2 * span * normal[0], anchor[1] + 1.2 * span * normal[1]),
                )
            )
        elif geometry.system in ("dsc2", "spc"):
            order = config.attribute_order
            weight = config.weights()[0] if geometry.system == "dsc2" else 1.0
            if stage.attribute == order[0]:
                x = weight * t
                segments.append(((x, bbox[1]), (x, bbox[3])))
            else:
                y = weight * t
                segments.append(((bbox[0], y), (bbox[2], y)))
        else:  # pc
            try:
                position = list(config.attribute_order).index(stage.attribute)
            except ValueError:
                continue
            segments.append(((position - 0.4, t), (position + 0.4, t)))
    return segments
