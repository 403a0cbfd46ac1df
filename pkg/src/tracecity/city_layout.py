"""Deterministic code-city geometry.

Packages become flat platforms stacked 0.5 units per nesting level,
classes become buildings (interfaces: cylinders) whose side grows with
sqrt(NOA + NOM) and whose height is NOM, and methods become unit cubes
stacked in a lattice inside their class. All footprints are integers
and elevations are half-units, so layouts serialize byte-identically
across runs and platforms.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

from .code_model import ClassNode, CodeModel, MethodNode, PackageNode

PLATFORM_THICKNESS = 0.5
GAP = 1
MARGIN = 1

KIND_PLATFORM = "platform"
KIND_BUILDING = "building"
KIND_CYLINDER = "cylinder"
KIND_METHOD = "method_cube"

LOC_THRESHOLDS = (200, 500, 1000, 1500, 2000)


@dataclass(frozen=True)
class Palette:
    loc_colors: tuple[str, ...] = ("#CFD8DC", "#90A4AE", "#607D8B", "#455A64", "#263238", "#101418")
    package_base: str = "#37474F"
    method_color: str = "#2962FF"
    rc_band_colors: tuple[str, ...] = ("#D32F2F", "#F57C00", "#4FC3F7", "#388E3C")


DEFAULT_PALETTE = Palette()


@dataclass(frozen=True)
class Glyph:
    qname: str
    kind: str
    position: tuple[float, float, float]
    dims: tuple[float, float, float]
    base_color: str
    parent: str | None
    detail_level: str = "always"


@dataclass(frozen=True)
class CityLayout:
    glyphs: tuple[Glyph, ...]
    bounds: tuple[tuple[float, float, float], tuple[float, float, float]]


def _ceil_sqrt(n: int) -> int:
    if n <= 0:
        return 0
    s = math.isqrt(n)
    return s if s * s == n else s + 1


def class_glyph_dims(nom: int, noa: int) -> tuple[int, int]:
    """(side, height) of a class glyph; side grows with NOM so tall
    buildings widen instead of turning needle-like."""
    side = max(1, _ceil_sqrt(noa + nom))
    height = max(1, nom)
    return side, height


def _hex_channels(color: str) -> tuple[int, int, int]:
    value = color.lstrip("#")
    return int(value[0:2], 16), int(value[2:4], 16), int(value[4:6], 16)


def lighten(color: str, fraction: float) -> str:
    """Mix a hex color toward white by the given fraction."""
    channels = (int(c + (255 - c) * fraction + 0.5) for c in _hex_channels(color))
    return "#{:02X}{:02X}{:02X}".format(*channels)


def relative_luminance(color: str) -> float:
    r, g, b = (c / 255.0 for c in _hex_channels(color))
    return 0.2126 * r + 0.7152 * g + 0.0722 * b


def class_color(loc: int, palette: Palette = DEFAULT_PALETTE) -> str:
    """Six lines-of-code bands (light to dark), lower bound inclusive."""
    return palette.loc_colors[bisect_right(LOC_THRESHOLDS, loc)]


def package_color(nl: int, palette: Palette = DEFAULT_PALETTE) -> str:
    """Platform gradient: one 5% lightening step per level, saturating at 8."""
    level = min(max(nl, 1), 8)
    return lighten(palette.package_base, 0.40 - 0.05 * level)


def rc_band_color(band: int, palette: Palette = DEFAULT_PALETTE) -> str:
    return palette.rc_band_colors[band - 1]


def pack_rectangles(
    items: Sequence[tuple[str, int, int]],
) -> tuple[list[tuple[str, int, int]], tuple[int, int]]:
    """Greedy deterministic rectangle packing with 1-unit gaps.

    Items (id, width, depth) are inflated by the gap on +x/+z, sorted by
    longest side then area then id, and inserted into the first free
    rectangle in (z, x) order. Free rectangles split into a right-of and
    a behind-of remainder; when nothing fits the region grows along its
    shorter axis. Returns min-corner placements (gap removed) and the
    tight bounds over the placed items.
    """
    if not items:
        return [], (0, 0)
    for item_id, w, d in items:
        if w <= 0 or d <= 0:
            raise ValueError(f"item {item_id!r} has non-positive footprint {w}x{d}")
    inflated = [(item_id, w + GAP, d + GAP) for item_id, w, d in items]
    order = sorted(inflated, key=lambda t: (-max(t[1], t[2]), -(t[1] * t[2]), t[0]))
    seed = max(1, math.ceil(math.sqrt(sum(w * d for _, w, d in inflated)) * 1.2))
    region_w = region_d = seed
    free: list[tuple[int, int, int, int]] = [(0, 0, seed, seed)]  # x, z, w, d
    placed: dict[str, tuple[int, int]] = {}

    def find_slot(iw: int, idp: int) -> tuple[int, int, int, int] | None:
        for rect in sorted(free, key=lambda r: (r[1], r[0])):
            if rect[2] >= iw and rect[3] >= idp:
                return rect
        return None

    for item_id, iw, idp in order:
        slot = find_slot(iw, idp)
        while slot is None:
            if region_w <= region_d:
                free.append((region_w, 0, iw, region_d))
                region_w += iw
            else:
                free.append((0, region_d, region_w, idp))
                region_d += idp
            slot = find_slot(iw, idp)
        x, z, w, d = slot
        free.remove(slot)
        if w - iw > 0:
            free.append((x + iw, z, w - iw, d))
        if d - idp > 0:
            free.append((x, z + idp, iw, d - idp))
        placed[item_id] = (x, z)

    placements = [(item_id, *placed[item_id]) for item_id, _, _ in items]
    bounds_w = max(placed[i][0] + w for i, w, _ in items)
    bounds_d = max(placed[i][1] + d for i, _, d in items)
    return placements, (bounds_w, bounds_d)


def layout_methods(class_glyph: Glyph, methods: Iterable[MethodNode],
                   palette: Palette = DEFAULT_PALETTE) -> list[Glyph]:
    """Unit cubes in a side-by-side lattice, one layer per height unit,
    row-major from the class min corner, bottom layer first."""
    side = int(class_glyph.dims[0])
    gx, gy, gz = class_glyph.position
    cubes = []
    for i, method in enumerate(sorted(methods, key=lambda m: m.qname)):
        layer, cell = divmod(i, side * side)
        row, col = divmod(cell, side)
        cubes.append(
            Glyph(
                qname=method.qname,
                kind=KIND_METHOD,
                position=(gx + col, gy + layer, gz + row),
                dims=(1, 1, 1),
                base_color=palette.method_color,
                parent=class_glyph.qname,
                detail_level="on_demand",
            )
        )
    return cubes


def _translate(glyph: Glyph, dx: float, dy: float, dz: float) -> Glyph:
    x, y, z = glyph.position
    return Glyph(
        qname=glyph.qname,
        kind=glyph.kind,
        position=(x + dx, y + dy, z + dz),
        dims=glyph.dims,
        base_color=glyph.base_color,
        parent=glyph.parent,
        detail_level=glyph.detail_level,
    )


def _class_glyphs(cls: ClassNode, parent_qname: str, palette: Palette) -> tuple[list[Glyph], int, int]:
    side, height = class_glyph_dims(cls.nom, cls.noa)
    glyph = Glyph(
        qname=cls.qname,
        kind=KIND_CYLINDER if cls.kind == "interface" else KIND_BUILDING,
        position=(0, 0, 0),
        dims=(side, height, side),
        base_color=class_color(cls.loc, palette),
        parent=parent_qname,
    )
    return [glyph] + layout_methods(glyph, cls.methods, palette), side, side


def _layout_package(pkg: PackageNode, palette: Palette) -> tuple[list[Glyph], int, int]:
    """Glyphs positioned relative to this package's platform min corner;
    returns (glyphs, width, depth) of the platform."""
    child_glyphs: dict[str, list[Glyph]] = {}
    items: list[tuple[str, int, int]] = []
    for sub in pkg.subpackages:
        glyphs, w, d = _layout_package(sub, palette)
        child_glyphs[sub.name] = glyphs
        items.append((sub.name, w, d))
    for cls in pkg.classes:
        glyphs, w, d = _class_glyphs(cls, pkg.qname, palette)
        child_glyphs[cls.name] = glyphs
        items.append((cls.name, w, d))
    placements, (bw, bd) = pack_rectangles(items)
    width = bw + 2 * MARGIN
    depth = bd + 2 * MARGIN
    platform = Glyph(
        qname=pkg.qname,
        kind=KIND_PLATFORM,
        position=(0, 0, 0),
        dims=(width, PLATFORM_THICKNESS, depth),
        base_color=package_color(pkg.nl, palette),
        parent=pkg.qname.rsplit(".", 1)[0] if "." in pkg.qname else None,
    )
    out = [platform]
    offsets = {item_id: (x, z) for item_id, x, z in placements}
    for name in sorted(child_glyphs):
        px, pz = offsets[name]
        out.extend(
            _translate(g, MARGIN + px, PLATFORM_THICKNESS, MARGIN + pz)
            for g in child_glyphs[name]
        )
    return out, width, depth


def layout_city(model: CodeModel, palette: Palette = DEFAULT_PALETTE) -> CityLayout:
    """Lay out the whole model bottom-up into a deterministic glyph list
    (depth-first, siblings in ascending name order)."""
    roots: dict[str, list[Glyph]] = {}
    items: list[tuple[str, int, int]] = []
    for root in model.roots:
        glyphs, w, d = _layout_package(root, palette)
        roots[root.name] = glyphs
        items.append((root.name, w, d))
    if not items:
        return CityLayout((), ((0, 0, 0), (0, 0, 0)))
    placements, (bw, bd) = pack_rectangles(items)
    offsets = {item_id: (x, z) for item_id, x, z in placements}
    glyphs: list[Glyph] = []
    for name in sorted(roots):
        px, pz = offsets[name]
        glyphs.extend(_translate(g, px, 0, pz) for g in roots[name])
    height = max((g.position[1] + g.dims[1] for g in glyphs), default=0)
    return CityLayout(tuple(glyphs), ((0, 0, 0), (bw, height, bd)))
