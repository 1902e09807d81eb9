import csv

import pytest
from click.testing import CliRunner

from juliart.cli import main
from juliart.gallery import PRESET_NAMES, preset

GOOD_SCENE = "startshape S\nshape S {\n  loop i = 4 [] {\n    SQUARE[x i b i / 4]\n  }\n}\n"
BROKEN_SCENE = "startshape S\nshape S {\n  SQUARE[x]\n}\n"


@pytest.fixture
def runner():
    return CliRunner()


class TestRender:
    def test_renders_to_named_output(self, runner, tmp_path):
        scene = tmp_path / "art.cfdg"
        scene.write_text(GOOD_SCENE)
        out = tmp_path / "art_out.png"
        result = runner.invoke(main, ["render", str(scene), str(out), "-s", "32"])
        assert result.exit_code == 0, result.output
        assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
        assert f"{out}: 32x32, 4 primitives," in result.output

    def test_output_defaults_to_scene_name(self, runner, tmp_path):
        scene = tmp_path / "art.cfdg"
        scene.write_text(GOOD_SCENE)
        result = runner.invoke(main, ["render", str(scene), "-s", "16"])
        assert result.exit_code == 0
        assert (tmp_path / "art.png").exists()

    def test_timings_flag(self, runner, tmp_path):
        scene = tmp_path / "art.cfdg"
        scene.write_text(GOOD_SCENE)
        result = runner.invoke(main, ["render", str(scene), "-s", "16", "--timings"])
        assert result.exit_code == 0
        for stage in ("parse", "evaluate", "rasterize", "encode"):
            assert stage in result.output

    def test_syntax_error_diagnostic(self, runner, tmp_path):
        scene = tmp_path / "bad.cfdg"
        scene.write_text(BROKEN_SCENE)
        result = runner.invoke(main, ["render", str(scene)])
        assert result.exit_code == 1
        assert "syntax error: expected expression, found ']' (line 3, column 11)" in result.stderr
        assert not (tmp_path / "bad.png").exists()

    def test_eval_error_names_the_shape(self, runner, tmp_path):
        scene = tmp_path / "div.cfdg"
        scene.write_text("startshape S\nshape S {\n  SQUARE[x 1/0]\n}\n")
        result = runner.invoke(main, ["render", str(scene)])
        assert result.exit_code == 1
        assert "eval error: division by zero (line 3, column 13) [in S]" in result.stderr

    def test_missing_file_is_usage_error(self, runner, tmp_path):
        result = runner.invoke(main, ["render", str(tmp_path / "absent.cfdg")])
        assert result.exit_code == 2

    def test_stdin_requires_output_argument(self, runner):
        result = runner.invoke(main, ["render", "-"], input=GOOD_SCENE)
        assert result.exit_code == 2
        assert "OUTPUT is required" in result.stderr

    def test_stdin_with_output(self, runner, tmp_path):
        out = tmp_path / "from_stdin.png"
        result = runner.invoke(main, ["render", "-", str(out), "-s", "16"], input=GOOD_SCENE)
        assert result.exit_code == 0
        assert out.exists()

    def test_variation_flag_changes_bytes(self, runner, tmp_path):
        scene = tmp_path / "r.cfdg"
        scene.write_text(
            "startshape S\nshape S {\n  loop i = 6 [] {\n    SQUARE[x i y rand(0, 3)]\n  }\n}\n"
        )
        a = tmp_path / "a.png"
        b = tmp_path / "b.png"
        assert runner.invoke(main, ["render", str(scene), str(a), "-s", "16", "-v", "one"]).exit_code == 0
        assert runner.invoke(main, ["render", str(scene), str(b), "-s", "16", "-v", "two"]).exit_code == 0
        assert a.read_bytes() != b.read_bytes()


class TestPresets:
    def test_list_shows_every_preset(self, runner):
        result = runner.invoke(main, ["presets", "list"])
        assert result.exit_code == 0
        for name in PRESET_NAMES:
            assert name in result.output
        assert "N=40" in result.output  # basic's iteration cap

    def test_dump_prints_source(self, runner):
        result = runner.invoke(main, ["presets", "dump", "basic"])
        assert result.exit_code == 0
        assert result.output == preset("basic").source

    def test_dump_unknown(self, runner):
        result = runner.invoke(main, ["presets", "dump", "zzz"])
        assert result.exit_code == 1
        assert "unknown preset 'zzz'" in result.stderr


class TestCheck:
    def test_check_passes_for_ragnarok(self, runner):
        result = runner.invoke(main, ["check", "ragnarok"])
        assert result.exit_code == 0, result.output
        assert "ragnarok: ok (" in result.output
        assert "ragnarok: ok  " in result.output  # individual check lines

    def test_check_unknown(self, runner):
        result = runner.invoke(main, ["check", "zzz"])
        assert result.exit_code == 1


class TestReport:
    def test_report_writes_figures_and_tables(self, runner, tmp_path):
        outdir = tmp_path / "rep"
        result = runner.invoke(main, ["report", str(outdir), "-s", "48"])
        assert result.exit_code == 0, result.output

        for name in PRESET_NAMES:
            assert (outdir / f"{name}.png").exists()
        for fname in (
            "gallery.csv",
            "precision_series.csv",
            "gallery_sheet.png",
            "timings.png",
            "precision_series.png",
        ):
            assert (outdir / fname).exists(), fname
            assert str(outdir / fname) in result.output

        with open(outdir / "gallery.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert [r["preset"] for r in rows] == list(PRESET_NAMES)
        assert all(int(r["primitives"]) > 0 for r in rows)

        with open(outdir / "precision_series.csv") as fh:
            series = list(csv.DictReader(fh))
        assert [int(r["max_steps"]) for r in series] == [40, 60, 80, 100]
        counts = [int(r["in_set_pixels"]) for r in series]
        assert counts == sorted(counts, reverse=True)


def test_version_flag(runner):
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
    assert "juliart" in result.output
