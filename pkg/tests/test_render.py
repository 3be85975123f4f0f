import hashlib
import json
from pathlib import Path

import pytest

from walkmoments.errors import ArithmeticIntegrityError
from walkmoments.render import (
    BLACK,
    GRAY,
    BASE_COLORS,
    WHITE,
    DenominatorGrid,
    Palette,
    default_palette,
    denominator_grid,
    dump_grid_csv,
    grid_factorizations,
    load_palette,
    render_image,
    summarize,
)

DATA = Path(__file__).parent / "data"
GOLDEN_256_SHA256 = "cb9f52142e0a58f5aa316adc1f9026f5c0d0144a027dbdb03646ef62eef27b0d"


def read_ppm(blob):
    magic, dims, maxval, pixels = blob.split(b"\n", 3)
    w, h = map(int, dims.split())
    assert magic == b"P6" and maxval == b"255" and len(pixels) == 3 * w * h
    return w, h, lambda r, c: tuple(pixels[3 * (r * w + c) : 3 * (r * w + c) + 3])


def test_grid_for_nu_2():
    grid = denominator_grid(2, 8)
    assert grid.cells == {(2, 1): 3, (5, 1): 3, (5, 4): 3}
    assert dump_grid_csv(grid) == "k,j,denominator\n2,1,3\n5,1,3\n5,4,3\n"


def test_integer_matrices_give_empty_grid():
    assert denominator_grid(1, 100).cells == {}
    assert denominator_grid(0, 60).cells == {}
    assert dump_grid_csv(DenominatorGrid(1, 5)) == "k,j,denominator\n"


def test_nu_3_denominators_divide_ten():
    assert denominator_grid(3, 50).denominators() <= {2, 5, 10}


def test_nu_5_thousand_rows():
    grid = denominator_grid(5, 1000)
    dens = grid.denominators()
    assert all(504 % d == 0 for d in dens)
    summary = summarize(grid, default_palette(5))
    assert summary.lcm == 126
    assert summary.black == 0 and summary.fallback_known == 0
    assert all(f.value == d for d, f in grid_factorizations(grid).items())


def test_grid_mirror_symmetry():
    for nu in (2, 3, 5, 6):
        grid = denominator_grid(nu, 120)
        for (k, j), den in grid.cells.items():
            assert grid.cells.get((k, k - j)) == den


def test_grid_rejects_bad_cells():
    with pytest.raises(ValueError):
        DenominatorGrid(2, 4, {(1, 2): 3})
    with pytest.raises(ValueError):
        DenominatorGrid(2, 4, {(2, 1): 1})


def test_denominator_outside_bound_aborts(monkeypatch):
    import walkmoments.denominators as d

    monkeypatch.setattr(d, "reduced_denominator", lambda nu, k, j: 5)
    monkeypatch.setattr(d, "_scan_rows", lambda nu, s, e: [(2, 1, 5)] if s == 0 else [])
    with pytest.raises(ArithmeticIntegrityError):
        denominator_grid(2, 8)


def test_default_palette():
    palette = default_palette(5)
    lookup = palette.lookup()
    for d, rgb in BASE_COLORS.items():
        assert lookup[d] == rgb
    assert lookup[2] == (255, 0, 0) and lookup[3] == (0, 0, 255)
    assert lookup[7] == (0, 128, 0) and lookup[9] == (255, 165, 0)
    divisors = [d for d in range(2, 505) if 504 % d == 0]
    assert set(divisors) <= set(lookup)
    assert not {WHITE, GRAY, BLACK} & set(lookup.values())


def test_palette_roundtrip(tmp_path):
    palette = default_palette(3)
    path = tmp_path / "palette.json"
    path.write_text(json.dumps(palette.to_dict()))
    assert load_palette(path) == palette
    with pytest.raises(ValueError):
        Palette(((2, (1, 2, 3)), (2, (3, 2, 1))))


def test_empty_grid_is_white():
    blob = render_image(DenominatorGrid(5, 7), default_palette(5))
    w, h, px = read_ppm(blob)
    assert (w, h) == (7, 7)
    assert all(px(r, c) == WHITE for r in range(7) for c in range(7))


def test_pixels_follow_cells():
    grid = denominator_grid(5, 64)
    palette = default_palette(5)
    _, _, px = read_ppm(render_image(grid, palette))
    lookup = palette.lookup()
    for r in range(64):
        for c in range(64):
            if (r, c) in grid.cells:
                assert px(r, c) == lookup[grid.cells[(r, c)]]
            else:
                assert px(r, c) == WHITE


def test_fallback_colours():
    grid = DenominatorGrid(5, 4, {(2, 1): 6, (3, 1): 5})
    palette = Palette(((2, (255, 0, 0)),))
    _, _, px = read_ppm(render_image(grid, palette))
    assert px(2, 1) == GRAY  # divides 504, not in palette
    assert px(3, 1) == BLACK  # outside the bound
    s = summarize(grid, palette)
    assert (s.palette_hits, s.fallback_known, s.black) == (0, 1, 1)


def test_render_is_deterministic():
    grid = denominator_grid(5, 100)
    assert render_image(grid, default_palette(5)) == render_image(denominator_grid(5, 100), default_palette(5))


def test_golden_256_render():
    blob = render_image(denominator_grid(5, 256), default_palette(5))
    assert hashlib.sha256(blob).hexdigest() == GOLDEN_256_SHA256
    assert blob == (DATA / "a5_256.ppm").read_bytes()
