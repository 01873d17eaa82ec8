"""Lossless 2-D polyline geometry for multidimensional data.

Five coordinate systems share one vocabulary: every sample becomes a
polyline whose vertices are built from its scaled attribute values.

pc         n vertical axes, vertex i = (i, value_i)
spc        attribute pairs as points in side-by-side unit panels
dsc1       per-attribute scaffold vectors rotated from the vertical,
           chained tip-to-tail from the origin
dsc2       per-pair scaffold vectors (x, y) = pair values, chained
ngon-dsc2  several dsc2 plots with origins on a regular polygon

Each construction is invertible: reconstruct() recovers the scaled
values from the vertices given the plot configuration, including
piecewise-linear attribute rescaling and pair weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .data import Dataset
from .hyperblocks import HyperblockSet

SYSTEMS = ("pc", "spc", "dsc1", "dsc2", "ngon-dsc2")
PAIRED_SYSTEMS = ("spc", "dsc2")


class ConfigError(ValueError):
    pass


def nonlinear_scale(values, position: float, target: float):
    """Piecewise-linear monotone map on [0, 1] sending position -> target.

    Fixes 0 and 1; values at or below the separator position compress
    toward 0, values above stretch toward 1 (or vice versa when the
    target is below the position).
    """
    if not (0.0 < position < 1.0 and 0.0 < target < 1.0):
        raise ConfigError(
            f"separator position {position} and target {target} must be inside (0, 1)"
        )
    v = np.asarray(values, dtype=float)
    low = v * (target / position)
    high = target + (v - position) * (1.0 - target) / (1.0 - position)
    out = np.where(v <= position, low, high)
    if np.isscalar(values) or np.ndim(values) == 0:
        return float(out)
    return out


def nonlinear_unscale(values, position: float, target: float):
    """Inverse of nonlinear_scale with the same parameters."""
    return nonlinear_scale(values, position=target, target=position)


@dataclass(frozen=True)
class PlotConfig:
    """Everything needed to map scaled samples into one plot plane."""

    system: str
    attribute_order: tuple[int, ...]
    first_angle: float = -10.0  # degrees of rotation from the vertical axis
    rest_angle: float = -45.0
    pair_weights: tuple[float, ...] | None = None
    nonlinear: tuple[tuple[int, float, float], ...] = ()  # (attr, position, target)
    ngon_vertices: tuple["PlotConfig", ...] = ()
    circumradius: float = 1.0

    def __post_init__(self) -> None:
        if self.system not in SYSTEMS:
            raise ConfigError(f"unknown plot system {self.system!r}")
        order = tuple(int(i) for i in self.attribute_order)
        object.__setattr__(self, "attribute_order", order)
        if self.system != "ngon-dsc2":
            if not order:
                raise ConfigError("attribute order is empty")
            if any(i < 0 for i in order):
                raise ConfigError("attribute indices must be non-negative")
        if self.system in ("pc", "dsc1"):
            if len(set(order)) != len(order):
                raise ConfigError(f"{self.system} order must not repeat attributes")
        if self.system in PAIRED_SYSTEMS:
            if len(order) % 2 != 0:
                raise ConfigError(
                    "paired systems need an even attribute count; "
                    "drop an attribute from the order or list one twice to duplicate it"
                )
            if any(order.count(i) > 2 for i in order):
                raise ConfigError("an attribute may appear at most twice in a paired order")
            if self.pair_weights is not None:
                weights = tuple(float(w) for w in self.pair_weights)
                object.__setattr__(self, "pair_weights", weights)
                if len(weights) != len(order) // 2:
                    raise ConfigError(
                        f"{len(weights)} pair weights for {len(order) // 2} pairs"
                    )
                if any(w <= 0 for w in weights):
                    raise ConfigError("pair weights must be positive")
        if self.system == "dsc1":
            for name, angle in (("first", self.first_angle), ("rest", self.rest_angle)):
                if not -90.0 < angle < 0.0:
                    raise ConfigError(
                        f"{name} angle {angle} outside (-90, 0) degrees from vertical"
                    )
        for attr, position, target in self.nonlinear:
            if not (0.0 < position < 1.0 and 0.0 < target < 1.0):
                raise ConfigError(
                    f"nonlinear separator on attribute {attr}: position {position} "
                    f"and target {target} must be inside (0, 1)"
                )
        if self.system == "ngon-dsc2":
            if len(self.ngon_vertices) < 3:
                raise ConfigError("ngon-dsc2 needs at least 3 vertex configs")
            for v in self.ngon_vertices:
                if v.system != "dsc2":
                    raise ConfigError("every ngon vertex config must be a dsc2 config")
            if self.circumradius <= 0:
                raise ConfigError("circumradius must be positive")

    def weights(self) -> tuple[float, ...]:
        if self.pair_weights is not None:
            return self.pair_weights
        return tuple(1.0 for _ in range(len(self.attribute_order) // 2))

    def pairs(self) -> list[tuple[int, int]]:
        order = self.attribute_order
        return [(order[i], order[i + 1]) for i in range(0, len(order), 2)]

    def to_dict(self) -> dict:
        d = {
            "system": self.system,
            "attribute_order": list(self.attribute_order),
            "first_angle": self.first_angle,
            "rest_angle": self.rest_angle,
            "pair_weights": list(self.pair_weights) if self.pair_weights else None,
            "nonlinear": [list(s) for s in self.nonlinear],
        }
        if self.system == "ngon-dsc2":
            d["ngon_vertices"] = [v.to_dict() for v in self.ngon_vertices]
            d["circumradius"] = self.circumradius
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "PlotConfig":
        return cls(
            system=d["system"],
            attribute_order=tuple(d["attribute_order"]),
            first_angle=d.get("first_angle", -10.0),
            rest_angle=d.get("rest_angle", -45.0),
            pair_weights=tuple(d["pair_weights"]) if d.get("pair_weights") else None,
            nonlinear=tuple(tuple(s) for s in d.get("nonlinear", ())),
            ngon_vertices=tuple(
                cls.from_dict(v) for v in d.get("ngon_vertices", ())
            ),
            circumradius=d.get("circumradius", 1.0),
        )


@dataclass(frozen=True)
class Polyline:
    sample_id: int
    class_label: str
    vertices: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class HyperblockOverlay:
    """Lower/upper boundary polylines and, for paired systems, boxes."""

    block_index: int
    class_label: str
    lower: tuple[tuple[float, float], ...] = ()
    upper: tuple[tuple[float, float], ...] = ()
    boxes: tuple[tuple[float, float, float, float], ...] = ()


@dataclass(frozen=True)
class PlotGeometry:
    system: str
    n_attributes: int
    polylines: tuple[Polyline, ...]
    config: PlotConfig
    scaffold: dict = field(default_factory=dict)
    hb_overlays: tuple[HyperblockOverlay, ...] = ()

    def bounding_box(self) -> tuple[float, float, float, float]:
        xs = [x for line in self.polylines for x, _ in line.vertices]
        ys = [y for line in self.polylines for _, y in line.vertices]
        for ov in self.hb_overlays:
            for path in (ov.lower, ov.upper):
                xs.extend(p[0] for p in path)
                ys.extend(p[1] for p in path)
            for x0, y0, x1, y1 in ov.boxes:
                xs.extend((x0, x1))
                ys.extend((y0, y1))
        if not xs:
            raise ValueError("empty geometry has no bounding box")
        return (min(xs), min(ys), max(xs), max(ys))

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "n_attributes": self.n_attributes,
            "config": self.config.to_dict(),
            "scaffold": self.scaffold,
            "polylines": [
                {
                    "sample_id": p.sample_id,
                    "class_label": p.class_label,
                    "vertices": [list(v) for v in p.vertices],
                }
                for p in self.polylines
            ],
            "hb_overlays": [
                {
                    "block_index": o.block_index,
                    "class_label": o.class_label,
                    "lower": [list(v) for v in o.lower],
                    "upper": [list(v) for v in o.upper],
                    "boxes": [list(b) for b in o.boxes],
                }
                for o in self.hb_overlays
            ],
        }


def direction(angle_from_vertical: float) -> tuple[float, float]:
    """Unit vector for a rotation (in degrees) away from the +y axis."""
    elevation = math.radians(90.0 + angle_from_vertical)
    return (math.cos(elevation), math.sin(elevation))


def _check_order(data: Dataset, config: PlotConfig) -> None:
    for i in config.attribute_order:
        if i >= data.n_attributes:
            raise ConfigError(
                f"attribute index {i} out of range for {data.n_attributes} attributes"
            )


def effective_values(data: Dataset, config: PlotConfig) -> np.ndarray:
    """Scaled matrix with any nonlinear separators applied, original order."""
    V = data.scaled_matrix()
    for attr, position, target in config.nonlinear:
        V[:, attr] = nonlinear_scale(V[:, attr], position, target)
    return V


def _transform_bounds(bounds: np.ndarray, config: PlotConfig) -> np.ndarray:
    out = bounds.astype(float).copy()
    for attr, position, target in config.nonlinear:
        out[attr] = nonlinear_scale(out[attr], position, target)
    return out


def _dsc1_directions(config: PlotConfig) -> list[tuple[float, float]]:
    dirs = [direction(config.first_angle)]
    dirs.extend(direction(config.rest_angle) for _ in config.attribute_order[1:])
    return dirs


def _dsc1_vertices(values_in_order: np.ndarray, dirs) -> tuple[tuple[float, float], ...]:
    x, y = 0.0, 0.0
    vertices = [(0.0, 0.0)]
    for v, (dx, dy) in zip(values_in_order, dirs):
        x += v * dx
        y += v * dy
        vertices.append((x, y))
    return tuple(vertices)


def _dsc2_vertices(pair_points: np.ndarray, weights) -> tuple[tuple[float, float], ...]:
    x, y = 0.0, 0.0
    vertices = [(0.0, 0.0)]
    for (vx, vy), w in zip(pair_points, weights):
        x += w * vx
        y += w * vy
        vertices.append((x, y))
    return tuple(vertices)


def map_pc(data: Dataset, config: PlotConfig) -> PlotGeometry:
    _check_order(data, config)
    V = effective_values(data, config)
    order = config.attribute_order
    polylines = tuple(
        Polyline(
            sample_id=s.id,
            class_label=s.class_label,
            vertices=tuple((float(i), float(V[s.id, a])) for i, a in enumerate(order)),
        )
        for s in data.samples
    )
    scaffold = {"axis_positions": list(range(len(order))), "order": list(order)}
    return PlotGeometry("pc", data.n_attributes, polylines, config, scaffold)


def map_dsc1(data: Dataset, config: PlotConfig) -> PlotGeometry:
    _check_order(data, config)
    V = effective_values(data, config)
    order = config.attribute_order
    dirs = _dsc1_directions(config)
    polylines = tuple(
        Polyline(
            sample_id=s.id,
            class_label=s.class_label,
            vertices=_dsc1_vertices(V[s.id, list(order)], dirs),
        )
        for s in data.samples
    )
    scaffold = {"directions": [list(d) for d in dirs], "order": list(order)}
    return PlotGeometry("dsc1", data.n_attributes, polylines, config, scaffold)


def map_spc(data: Dataset, config: PlotConfig) -> PlotGeometry:
    _check_order(data, config)
    V = effective_values(data, config)
    pairs = config.pairs()
    polylines = []
    for s in data.samples:
        vertices = tuple(
            (float(j) + float(V[s.id, a]), float(V[s.id, b]))
            for j, (a, b) in enumerate(pairs)
        )
        polylines.append(Polyline(s.id, s.class_label, vertices))
    scaffold = {
        "panel_origins": [[float(j), 0.0] for j in range(len(pairs))],
        "pairs": [list(p) for p in pairs],
    }
    return PlotGeometry("spc", data.n_attributes, tuple(polylines), config, scaffold)


def map_dsc2(data: Dataset, config: PlotConfig) -> PlotGeometry:
    _check_order(data, config)
    V = effective_values(data, config)
    pairs = config.pairs()
    weights = config.weights()
    polylines = []
    for s in data.samples:
        points = np.array([[V[s.id, a], V[s.id, b]] for a, b in pairs])
        polylines.append(Polyline(s.id, s.class_label, _dsc2_vertices(points, weights)))
    scaffold = {"pairs": [list(p) for p in pairs], "weights": list(weights)}
    return PlotGeometry("dsc2", data.n_attributes, tuple(polylines), config, scaffold)


def ngon_vertex_positions(k: int, circumradius: float) -> list[tuple[float, float]]:
    """Regular k-gon vertices, the first at the top, counterclockwise."""
    out = []
    for i in range(k):
        angle = math.radians(90.0 + 360.0 * i / k)
        out.append((circumradius * math.cos(angle), circumradius * math.sin(angle)))
    return out


def map_ngon_dsc2(data: Dataset, config: PlotConfig) -> PlotGeometry:
    k = len(config.ngon_vertices)
    positions = ngon_vertex_positions(k, config.circumradius)
    polylines = []
    for vertex_config, (ox, oy) in zip(config.ngon_vertices, positions):
        part = map_dsc2(data, vertex_config)
        for line in part.polylines:
            moved = tuple((x + ox, y + oy) for x, y in line.vertices)
            polylines.append(Polyline(line.sample_id, line.class_label, moved))
    scaffold = {
        "vertex_positions": [list(p) for p in positions],
        "vertex_count": k,
    }
    return PlotGeometry(
        "ngon-dsc2", data.n_attributes, tuple(polylines), config, scaffold
    )


_MAPPERS = {
    "pc": map_pc,
    "spc": map_spc,
    "dsc1": map_dsc1,
    "dsc2": map_dsc2,
    "ngon-dsc2": map_ngon_dsc2,
}


def map_plot(
    data: Dataset, config: PlotConfig, hbs: HyperblockSet | None = None
) -> PlotGeometry:
    """Map a dataset into plot geometry, with hyperblock overlays if given."""
    geometry = _MAPPERS[config.system](data, config)
    if hbs is not None and config.system in ("dsc1", "dsc2", "spc"):
        overlays = hb_boundary_bands(hbs, config)
        geometry = replace(geometry, hb_overlays=overlays)
    return geometry


def hb_boundary_bands(
    hbs: HyperblockSet, config: PlotConfig
) -> tuple[HyperblockOverlay, ...]:
    """Lower/upper boundary geometry per block under one plot config.

    The interval bounds run through the same scaffold construction as the
    samples, so member polylines sit vertex-wise between the two bands.
    Paired systems also get one box per pair: SPC boxes live in their
    panels, DSC2 boxes connect consecutive band vertices.
    """
    if config.system not in ("dsc1", "dsc2", "spc"):
        raise ConfigError(f"hyperblock overlays not defined for {config.system}")
    overlays = []
    for index, block in enumerate(hbs.blocks):
        lows = _transform_bounds(np.array([lo for lo, _ in block.intervals]), config)
        highs = _transform_bounds(np.array([hi for _, hi in block.intervals]), config)
        order = list(config.attribute_order)
        if config.system == "dsc1":
            dirs = _dsc1_directions(config)
            lower = _dsc1_vertices(lows[order], dirs)
            upper = _dsc1_vertices(highs[order], dirs)
            boxes: tuple = ()
        elif config.system == "dsc2":
            weights = config.weights()
            pairs = config.pairs()
            lo_pts = np.array([[lows[a], lows[b]] for a, b in pairs])
            hi_pts = np.array([[highs[a], highs[b]] for a, b in pairs])
            lower = _dsc2_vertices(lo_pts, weights)
            upper = _dsc2_vertices(hi_pts, weights)
            boxes = tuple(
                (lower[j][0], lower[j][1], upper[j][0], upper[j][1])
                for j in range(1, len(lower))
            )
        else:  # spc
            pairs = config.pairs()
            lower = ()
            upper = ()
            boxes = tuple(
                (j + lows[a], lows[b], j + highs[a], highs[b])
                for j, (a, b) in enumerate(pairs)
            )
        overlays.append(
            HyperblockOverlay(
                block_index=index,
                class_label=block.majority_class,
                lower=lower,
                upper=upper,
                boxes=boxes,
            )
        )
    return tuple(overlays)


def _invert_nonlinear(values: np.ndarray, attrs: list[int], config: PlotConfig) -> np.ndarray:
    separators = {attr: (s, t) for attr, s, t in config.nonlinear}
    out = values.copy()
    for i, attr in enumerate(attrs):
        if attr in separators:
            s, t = separators[attr]
            out[:, i] = nonlinear_unscale(out[:, i], s, t)
    return out


def reconstruct(geometry: PlotGeometry, config: PlotConfig | None = None) -> np.ndarray:
    """Recover scaled values from plot geometry.

    Returns an (n_samples, n_attributes) array; attributes that a config
    never mentions come back as NaN. Duplicated attributes in a paired
    order recover from their first occurrence.
    """
    config = config or geometry.config
    if config.system == "ngon-dsc2":
        return _reconstruct_ngon(geometry, config)

    order = list(config.attribute_order)
    expected = {
        "pc": len(order),
        "spc": len(order) // 2,
        "dsc1": len(order) + 1,
        "dsc2": len(order) // 2 + 1,
    }[config.system]
    ids = []
    rows = []
    for line in geometry.polylines:
        if len(line.vertices) != expected:
            raise ValueError(
                f"{config.system} polyline has {len(line.vertices)} vertices, "
                f"expected {expected}"
            )
        vertices = np.asarray(line.vertices)
        if config.system == "pc":
            values = vertices[:, 1]
        elif config.system == "dsc1":
            dirs = np.asarray(_dsc1_directions(config))
            diffs = np.diff(vertices, axis=0)
            values = np.sum(diffs * dirs, axis=1)
        elif config.system == "spc":
            panel = np.arange(len(order) // 2)
            values = np.column_stack(
                [vertices[:, 0] - panel, vertices[:, 1]]
            ).reshape(-1)
        else:  # dsc2
            weights = np.asarray(config.weights())
            diffs = np.diff(vertices, axis=0) / weights[:, None]
            values = diffs.reshape(-1)
        ids.append(line.sample_id)
        rows.append(values)

    raw = np.asarray(rows)
    raw = _invert_nonlinear(raw, order, config)
    n_samples = max(ids) + 1 if ids else 0
    out = np.full((n_samples, geometry.n_attributes), np.nan)
    for row, sample_id in zip(raw, ids):
        for position, attr in enumerate(order):
            if np.isnan(out[sample_id, attr]):
                out[sample_id, attr] = row[position]
    return out


def _reconstruct_ngon(geometry: PlotGeometry, config: PlotConfig) -> np.ndarray:
    k = len(config.ngon_vertices)
    positions = ngon_vertex_positions(k, config.circumradius)
    per_vertex = len(geometry.polylines) // k
    out = None
    for v, ((ox, oy), vertex_config) in enumerate(zip(positions, config.ngon_vertices)):
        lines = geometry.polylines[v * per_vertex : (v + 1) * per_vertex]
        moved = tuple(
            Polyline(
                line.sample_id,
                line.class_label,
                tuple((x - ox, y - oy) for x, y in line.vertices),
            )
            for line in lines
        )
        sub = PlotGeometry(
            "dsc2", geometry.n_attributes, moved, vertex_config, {}
        )
        part = reconstruct(sub, vertex_config)
        if out is None:
            out = part
        else:
            take = np.isnan(out) & ~np.isnan(part)
            out[take] = part[take]
    return out if out is not None else np.empty((0, geometry.n_attributes))
