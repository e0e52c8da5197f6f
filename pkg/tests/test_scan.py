# tests/test_scan.py
"""Slice families, pixel colour tables and the scan orchestrator."""

import pytest

from primstab.core import registry
from primstab.core.config import BqConfig
from primstab.core.errors import InvalidGeometry
from primstab.core.types import PixelLabel
from primstab.markoff.triples import TraceTriple
from primstab.scan import (
    CustomAffineSlice,
    DiagonalSlice,
    FixedXYSlice,
    PixelVerdict,
    ScanMetrics,
    ScanOrchestrator,
    ScanWindow,
    classify_point,
    decode_pixel,
    parse_size,
    recount,
    render,
    write_image,
)
from primstab.scan.image import grey_value, rgb_value


# ── Windows and sizes ─────────────────────────────────────────────────────────


def test_window_parse():
    win = ScanWindow.parse("-3,-3,3,3")
    assert win.as_list() == [-3.0, -3.0, 3.0, 3.0]


def test_window_must_have_positive_extent():
    with pytest.raises(InvalidGeometry):
        ScanWindow.parse("1,0,0,1")


def test_window_needs_four_numbers():
    with pytest.raises(ValueError):
        ScanWindow.parse("0,0,1")


def test_pixel_centres():
    win = ScanWindow(0, 0, 4, 2)
    assert win.pixel_centre(0, 0, 4, 2) == complex(0.5, 1.5)
    assert win.pixel_centre(3, 1, 4, 2) == complex(3.5, 0.5)


def test_parse_size():
    assert parse_size("64x32") == (64, 32)
    with pytest.raises(InvalidGeometry):
        parse_size("0x4")
    with pytest.raises(ValueError):
        parse_size("big")


# ── Families ──────────────────────────────────────────────────────────────────


def test_registered_families():
    assert registry.list_registered() == ["custom", "diagonal", "fixed-xy"]
    assert isinstance(registry.create("diagonal", {}), DiagonalSlice)


def test_unknown_family():
    with pytest.raises(KeyError):
        registry.create("spiral", {})


def test_registry_checks_required_params():
    assert registry.entry("fixed-xy").requires == ("x0", "y0")
    assert registry.missing_params("fixed-xy", {"x0": 3}) == ["y0"]
    with pytest.raises(ValueError, match="y0"):
        registry.create("fixed-xy", {"x0": 3})


def test_registry_describes_families():
    summaries = registry.describe()
    assert list(summaries) == registry.list_registered()
    assert summaries["diagonal"] == "x = y = z = t"


def test_registry_rejects_rebinding_a_name():
    with pytest.raises(ValueError, match="already bound"):

        @registry.register("diagonal")
        class Other(DiagonalSlice):
            pass


def test_diagonal_slice():
    assert DiagonalSlice({}).triple_at(3 + 1j) == TraceTriple(3 + 1j, 3 + 1j, 3 + 1j)


def test_fixed_xy_slice():
    fam = FixedXYSlice({"x0": 3, "y0": 2 + 1j})
    assert fam.triple_at(5j) == TraceTriple(3, 2 + 1j, 5j)
    assert fam.params_json() == {"x0": [3.0, 0.0], "y0": [2.0, 1.0]}
    with pytest.raises(ValueError):
        FixedXYSlice({"x0": 3})


def test_custom_affine_slice():
    coeffs = CustomAffineSlice.parse_affine("1,0,0,3,2i,1")
    fam = CustomAffineSlice(coeffs)
    assert fam.triple_at(2) == TraceTriple(2, 3, 1 + 4j)
    with pytest.raises(ValueError):
        CustomAffineSlice.parse_affine("1,2,3")


# ── Colour tables ─────────────────────────────────────────────────────────────


def test_grey_values():
    assert grey_value(PixelVerdict(PixelLabel.BQ)) == 255
    assert grey_value(PixelVerdict(PixelLabel.ELEMENTARY)) == 128
    assert grey_value(PixelVerdict(PixelLabel.NOT_BQ_INTERVAL, 3)) == 28
    assert grey_value(PixelVerdict(PixelLabel.NOT_BQ_INTERVAL, 100)) == 112


def test_rgb_values():
    assert rgb_value(PixelVerdict(PixelLabel.NOT_BQ_EXCEPTIONAL)) == (255, 0, 0)
    assert rgb_value(PixelVerdict(PixelLabel.NOT_BQ_INTERVAL, 2)) == (0, 0, 80)


def test_decode_inverts_tables():
    for label in PixelLabel:
        for depth in (0, 5, 40):
            v = PixelVerdict(label, depth)
            assert decode_pixel(grey_value(v)) is label
            assert decode_pixel(rgb_value(v)) is label


def test_decode_rejects_foreign_colours():
    with pytest.raises(ValueError):
        decode_pixel(200)
    with pytest.raises(ValueError):
        decode_pixel((10, 20, 30))


@pytest.mark.parametrize("kind,suffix", [("pgm", ".pgm"), ("ppm", ".ppm")])
def test_render_write_recount(tmp_path, kind, suffix):
    rows = [
        [PixelVerdict(PixelLabel.BQ), PixelVerdict(PixelLabel.NOT_BQ_INTERVAL, 4)],
        [PixelVerdict(PixelLabel.ELEMENTARY), PixelVerdict(PixelLabel.BQ)],
        [PixelVerdict(PixelLabel.UNKNOWN), PixelVerdict(PixelLabel.NOT_BQ_EXCEPTIONAL)],
    ]
    img = render(rows, kind)
    assert img.size == (2, 3)
    path = tmp_path / "out" / f"slice{suffix}"
    write_image(img, path)
    counts = recount(path)
    assert counts == {
        "bq": 2,
        "not_bq_interval": 1,
        "not_bq_exceptional": 1,
        "unknown": 1,
        "elementary": 1,
    }


# ── Classification ────────────────────────────────────────────────────────────


def test_classify_point():
    cfg = BqConfig()
    assert classify_point(TraceTriple(2, 2, 2), cfg).label is PixelLabel.ELEMENTARY
    assert classify_point(TraceTriple(1, 1, 1), cfg).label is PixelLabel.NOT_BQ_INTERVAL
    assert classify_point(TraceTriple(3, 3, 3), cfg).label is PixelLabel.BQ


def test_classify_point_out_of_budget():
    cfg = BqConfig(m=10.0, depth_budget=0)
    assert classify_point(TraceTriple(3, 3, 3), cfg).label is PixelLabel.UNKNOWN


def test_metrics_counts():
    metrics = ScanMetrics()
    metrics.record_row([PixelVerdict(PixelLabel.BQ, 4), PixelVerdict(PixelLabel.UNKNOWN, 9)])
    assert metrics.pixels == 2
    assert metrics.rows_done == 1
    assert metrics.max_depth == 9
    assert metrics.to_dict()["bq"] == 1
    metrics.reset()
    assert metrics.pixels == 0


# ── Orchestrator ──────────────────────────────────────────────────────────────


async def test_scan_covers_every_pixel():
    result = await ScanOrchestrator(DiagonalSlice({}), ScanWindow(-3, -3, 3, 3), (5, 4), threads=1).run()
    assert len(result.rows) == 4
    assert all(len(row) == 5 for row in result.rows)
    assert result.metrics.pixels == 20
    assert sum(result.metrics.counts.values()) == 20


async def test_scan_does_not_depend_on_workers():
    window = ScanWindow(-3, -3, 3, 3)
    single = await ScanOrchestrator(DiagonalSlice({}), window, (4, 4), threads=1).run()
    pooled = await ScanOrchestrator(DiagonalSlice({}), window, (4, 4), threads=2).run()
    assert single.rows == pooled.rows
    assert single.metrics.counts == pooled.metrics.counts
    assert pooled.metrics.workers == 2
