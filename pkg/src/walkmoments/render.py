"""Raster picture of the non-integer entries of A(nu).

Entry (k, j) becomes pixel (row k, column j) of a square binary PPM (P6),
row 0 at the top.  Integer entries and the upper triangle stay white; a
non-integer entry is coloured by exact lookup of its reduced denominator.
"""
from __future__ import annotations

import colorsys
import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .denominators import scan_denominators, tightened_bound
from .numtheory import Factorization, factorize_smooth, lcm_of

RGB = tuple[int, int, int]

WHITE: RGB = (255, 255, 255)
GRAY: RGB = (128, 128, 128)
BLACK: RGB = (0, 0, 0)

BASE_COLORS: dict[int, RGB] = {
    2: (255, 0, 0),
    3: (0, 0, 255),
    7: (0, 128, 0),
    9: (255, 165, 0),
}


@dataclass(frozen=True)
class DenominatorGrid:
    nu: int
    rows: int
    cells: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        for (k, j), den in self.cells.items():
            if not 0 <= j <= k < self.rows or den < 2:
                raise ValueError(f"bad grid cell ({k}, {j}) -> {den}")

    def denominators(self) -> set[int]:
        return set(self.cells.values())


def denominator_grid(
    nu: int,
    rows: int,
    threads: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> DenominatorGrid:
    """Reduced denominators of every non-integer A_{k,j}(nu) with k < rows.

    Raises :class:`~walkmoments.errors.ArithmeticIntegrityError` if any
    denominator escapes (2nu-1)!/nu!.
    """
    cells = scan_denominators(nu, rows, threads, progress)
    return DenominatorGrid(nu, rows, {(k, j): den for k, j, den in cells})


@dataclass(frozen=True)
class Palette:
    colors: tuple[tuple[int, RGB], ...]
    fallback_known: RGB = GRAY
    fallback_unknown: RGB = BLACK

    def __post_init__(self):
        values = [d for d, _ in self.colors]
        if len(values) != len(set(values)):
            raise ValueError("palette denominators must be distinct")

    def lookup(self) -> dict[int, RGB]:
        return dict(self.colors)

    def to_dict(self) -> dict:
        return {
            "colors": {str(d): list(c) for d, c in self.colors},
            "fallback_known": list(self.fallback_known),
            "fallback_unknown": list(self.fallback_unknown),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Palette":
        colors = tuple(sorted((int(d), _rgb(c)) for d, c in data["colors"].items()))
        return cls(
            colors,
            _rgb(data.get("fallback_known", GRAY)),
            _rgb(data.get("fallback_unknown", BLACK)),
        )


def _rgb(value) -> RGB:
    r, g, b = (int(x) for x in value)
    if not all(0 <= x <= 255 for x in (r, g, b)):
        raise ValueError(f"colour out of range: {value}")
    return (r, g, b)


def load_palette(path: str | Path) -> Palette:
    return Palette.from_dict(json.loads(Path(path).read_text()))


def _divisors(n: int) -> list[int]:
    return sorted(d for d in range(1, n + 1) if n % d == 0)


def _auto_color(i: int) -> RGB:
    # Golden-angle hue walk at fixed saturation/value; never white, gray or black.
    h = (0.13 + i * 0.618033988749895) % 1.0
    r, g, b = colorsys.hsv_to_rgb(h, 0.75, 0.8 if i % 2 else 0.6)
    return (round(r * 255), round(g * 255), round(b * 255))


def default_palette(nu: int) -> Palette:
    """Fixed colours for 2, 3, 7, 9 plus generated colours for every other
    divisor > 1 of the tightened bound, in ascending order of divisor."""
    colors = dict(BASE_COLORS)
    if nu >= 1:
        extra = [d for d in _divisors(tightened_bound(nu).value) if d > 1 and d not in colors]
        for i, d in enumerate(extra):
            colors[d] = _auto_color(i)
    return Palette(tuple(sorted(colors.items())))


def _bound(nu: int) -> int:
    return tightened_bound(nu).value if nu >= 1 else 1


def classify(grid: DenominatorGrid, palette: Palette) -> dict[tuple[int, int], RGB]:
    lookup = palette.lookup()
    bound = _bound(grid.nu)
    pixels = {}
    for key, den in grid.cells.items():
        if den in lookup:
            pixels[key] = lookup[den]
        elif bound % den == 0:
            pixels[key] = palette.fallback_known
        else:
            pixels[key] = palette.fallback_unknown
    return pixels


def render_image(grid: DenominatorGrid, palette: Palette) -> bytes:
    """Binary PPM (P6, maxval 255) of size rows x rows."""
    size = grid.rows
    data = bytearray(b"\xff" * (3 * size * size))
    for (k, j), rgb in classify(grid, palette).items():
        offset = 3 * (k * size + j)
        data[offset : offset + 3] = bytes(rgb)
    return f"P6\n{size} {size}\n255\n".encode("ascii") + bytes(data)


@dataclass(frozen=True)
class RenderSummary:
    rows: int
    cells: int
    palette_hits: int
    fallback_known: int
    black: int
    denominators: dict[int, int]
    lcm: int

    def to_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cells": self.cells,
            "palette_hits": self.palette_hits,
            "fallback_known": self.fallback_known,
            "black": self.black,
            "denominators": {str(d): c for d, c in sorted(self.denominators.items())},
            "lcm": self.lcm,
        }


def summarize(grid: DenominatorGrid, palette: Palette) -> RenderSummary:
    """Count cells by how they were coloured."""
    lookup = palette.lookup()
    bound = _bound(grid.nu)
    counts: dict[int, int] = {}
    hits = known = black = 0
    for den in grid.cells.values():
        counts[den] = counts.get(den, 0) + 1
        if den in lookup:
            hits += 1
        elif bound % den == 0:
            known += 1
        else:
            black += 1
    return RenderSummary(grid.rows, len(grid.cells), hits, known, black, counts, lcm_of(counts))


def dump_grid_csv(grid: DenominatorGrid) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "j", "denominator"])
    for (k, j), den in sorted(grid.cells.items()):
        writer.writerow([k, j, den])
    return buf.getvalue()


def grid_factorizations(grid: DenominatorGrid) -> dict[int, Factorization]:
    return {d: factorize_smooth(d, max(2, 2 * grid.nu)) for d in sorted(grid.denominators())}
