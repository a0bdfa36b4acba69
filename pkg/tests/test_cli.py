import subprocess
import sys

import numpy as np
import pytest

from mpiview import (
    DisparityMap,
    DisparityUnit,
    ImageBuffer,
    load_image_png,
    load_mpi,
    save_disparity_pfm,
    save_image_png,
)
from mpiview.cli import main


@pytest.fixture
def scene(rng, tmp_path):
    """Small quantized scene: fg PNG + disparity PFM on float32 grid."""
    fg = ImageBuffer(np.round(rng.random((16, 16, 3)) * 255.0) / 255.0)
    disparity = DisparityMap(
        rng.random((16, 16)).astype(np.float32).astype(np.float64),
        DisparityUnit.INVERSE_METERS,
    )
    fg_path = tmp_path / "fg.png"
    d_path = tmp_path / "d.pfm"
    save_image_png(fg, fg_path)
    save_disparity_pfm(disparity, d_path)
    return fg, disparity, fg_path, d_path


def build_args(scene, tmp_path, planes=6, extra=()):
    _, _, fg_path, d_path = scene
    return [
        "build",
        "--fg", str(fg_path),
        "--disparity", str(d_path),
        "--planes", str(planes),
        "--near", "1", "--far", "100",
        "--sigma", "10", "--window", "31",
        "-o", str(tmp_path / "arc"),
        *extra,
    ]


class TestBuildRender:
    def test_build_then_identity_render_reproduces_fg(self, scene, tmp_path):
        fg, _, _, _ = scene
        assert main(build_args(scene, tmp_path)) == 0
        mpi = load_mpi(tmp_path / "arc")
        assert mpi.plane_count == 6
        out_png = tmp_path / "render.png"
        assert main(["render", "--mpi", str(tmp_path / "arc"),
                     "--pose", "0,0,0", "-o", str(out_png)]) == 0
        assert load_image_png(out_png) == fg

    def test_render_with_rotation_pose(self, scene, tmp_path):
        assert main(build_args(scene, tmp_path)) == 0
        out_png = tmp_path / "render.png"
        code = main(["render", "--mpi", str(tmp_path / "arc"),
                     "--pose", "0.05,0,0,0,0.01,0", "-o", str(out_png)])
        assert code == 0
        assert out_png.exists()

    def test_build_with_weights_and_bg(self, scene, rng, tmp_path):
        fg, _, fg_path, d_path = scene
        bg = ImageBuffer(np.round(rng.random((16, 16, 3)) * 255.0) / 255.0)
        save_image_png(bg, tmp_path / "bg.png")
        np.save(tmp_path / "w.npy", np.ones((6, 16, 16)))
        args = build_args(
            scene, tmp_path,
            extra=["--bg", str(tmp_path / "bg.png"), "--weights", str(tmp_path / "w.npy")],
        )
        assert main(args) == 0
        mpi = load_mpi(tmp_path / "arc")
        # weights == 1 means every plane carries the foreground
        assert np.array_equal(mpi.colors[0], fg.data)

    def test_bg_without_weights_is_an_argument_error(self, scene, rng, tmp_path):
        save_image_png(ImageBuffer(rng.random((16, 16, 3))), tmp_path / "bg.png")
        args = build_args(scene, tmp_path, extra=["--bg", str(tmp_path / "bg.png")])
        assert main(args) == 2

    def test_even_window_is_an_argument_error(self, scene, tmp_path):
        args = build_args(scene, tmp_path)
        args[args.index("--window") + 1] = "30"
        assert main(args) == 2

    def test_missing_file_is_a_data_error(self, tmp_path):
        assert main(["render", "--mpi", str(tmp_path / "nope"),
                     "--pose", "0,0,0", "-o", str(tmp_path / "x.png")]) == 3

    def test_bad_pose_string_is_an_argument_error(self, scene, tmp_path):
        assert main(build_args(scene, tmp_path)) == 0
        assert main(["render", "--mpi", str(tmp_path / "arc"),
                     "--pose", "0,0", "-o", str(tmp_path / "x.png")]) == 2

    def test_identical_inputs_give_bitwise_identical_outputs(self, scene, tmp_path):
        assert main(build_args(scene, tmp_path)) == 0
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        for out in (a, b):
            assert main(["render", "--mpi", str(tmp_path / "arc"),
                         "--pose", "0.07,-0.02,0.01", "-o", str(out)]) == 0
        assert a.read_bytes() == b.read_bytes()


class TestPath:
    def test_grid_path_writes_n_squared_frames(self, scene, tmp_path):
        assert main(build_args(scene, tmp_path, planes=4)) == 0
        out = tmp_path / "frames"
        assert main(["path", "--mpi", str(tmp_path / "arc"), "--kind", "grid",
                     "--n", "3", "--extent", "0.3", "-o", str(out)]) == 0
        frames = sorted(p.name for p in out.iterdir())
        assert frames == [f"frame_{i:04d}.png" for i in range(9)]

    def test_circle_path_frame_count(self, scene, tmp_path):
        assert main(build_args(scene, tmp_path, planes=4)) == 0
        out = tmp_path / "circle"
        assert main(["path", "--mpi", str(tmp_path / "arc"), "--kind", "circle",
                     "--n", "5", "--extent", "0.2", "-o", str(out)]) == 0
        assert len(list(out.iterdir())) == 5

    def test_zoom_path_frame_count(self, scene, tmp_path):
        assert main(build_args(scene, tmp_path, planes=4)) == 0
        out = tmp_path / "zoom"
        assert main(["path", "--mpi", str(tmp_path / "arc"), "--kind", "zoom",
                     "--n", "4", "--extent", "0.5", "-o", str(out)]) == 0
        assert len(list(out.iterdir())) == 4


class TestBaselineCommand:
    def test_baseline_diffusion_produces_full_image(self, scene, tmp_path):
        _, _, fg_path, d_path = scene
        out = tmp_path / "baseline.png"
        code = main(["baseline", "--fg", str(fg_path), "--disparity", str(d_path),
                     "--pose", "0.05,0,0", "--inpaint", "diffusion", "-o", str(out)])
        assert code == 0
        assert out.exists()

    def test_baseline_none_keeps_holes(self, scene, tmp_path):
        _, _, fg_path, d_path = scene
        out = tmp_path / "baseline.png"
        code = main(["baseline", "--fg", str(fg_path), "--disparity", str(d_path),
                     "--pose", "0.4,0,0", "--inpaint", "none", "-o", str(out)])
        assert code == 0
        img = load_image_png(out)
        assert not img.data[:, 0].any()  # leading strip stays black


class TestAlignCommand:
    def test_align_prints_fit_and_writes_pfm(self, rng, tmp_path, capsys):
        rel = rng.random((12, 12)).astype(np.float32).astype(np.float64)
        absolute = np.clip(2.0 * rel + 0.1, 0, None).astype(np.float32).astype(np.float64)
        save_disparity_pfm(DisparityMap(rel, DisparityUnit.INVERSE_METERS), tmp_path / "r.pfm")
        save_disparity_pfm(
            DisparityMap(absolute, DisparityUnit.INVERSE_METERS), tmp_path / "a.pfm"
        )
        code = main(["align", "--relative", str(tmp_path / "r.pfm"),
                     "--absolute", str(tmp_path / "a.pfm"), "-o", str(tmp_path / "out.pfm")])
        assert code == 0
        printed = capsys.readouterr().out
        assert "s=" in printed and "b=" in printed
        s = float(printed.split("s=")[1].split()[0])
        assert s == pytest.approx(2.0, abs=1e-5)
        assert (tmp_path / "out.pfm").exists()

    def test_degenerate_align_is_a_numeric_error(self, tmp_path):
        rel = np.full((8, 8), 0.5)
        absolute = np.linspace(0.1, 1.0, 64).reshape(8, 8)
        save_disparity_pfm(DisparityMap(rel, DisparityUnit.INVERSE_METERS), tmp_path / "r.pfm")
        save_disparity_pfm(
            DisparityMap(absolute, DisparityUnit.INVERSE_METERS), tmp_path / "a.pfm"
        )
        assert main(["align", "--relative", str(tmp_path / "r.pfm"),
                     "--absolute", str(tmp_path / "a.pfm"),
                     "-o", str(tmp_path / "out.pfm")]) == 4


class TestSamplePairsCommand:
    def make_trajectory_file(self, tmp_path, n=100):
        lines = ["https://example.com/v"]
        for i in range(n):
            lines.append(f"{i * 1000} 0.5 0.89 0.5 0.5 0 0 1 0 0 {0.01 * i} 0 1 0 0 0 0 1 0")
        path = tmp_path / "traj.txt"
        path.write_text("\n".join(lines) + "\n")
        return path

    def test_deterministic_output(self, tmp_path):
        traj = self.make_trajectory_file(tmp_path)
        out1 = tmp_path / "pairs1.txt"
        out2 = tmp_path / "pairs2.txt"
        assert main(["sample-pairs", "--trajectory", str(traj), "--seed", "5",
                     "-o", str(out1)]) == 0
        assert main(["sample-pairs", "--trajectory", str(traj), "--seed", "5",
                     "-o", str(out2)]) == 0
        assert out1.read_text() == out2.read_text()
        pairs = [tuple(map(int, ln.split())) for ln in out1.read_text().splitlines()]
        assert all(0 <= s < 100 and 0 <= t < 100 and s != t for s, t in pairs)

    def test_short_trajectory_is_a_data_error(self, tmp_path):
        traj = self.make_trajectory_file(tmp_path, n=50)
        assert main(["sample-pairs", "--trajectory", str(traj), "--seed", "1",
                     "-o", str(tmp_path / "p.txt")]) == 3


class TestExportWebCommand:
    def test_export_web_layout(self, scene, tmp_path):
        assert main(build_args(scene, tmp_path, planes=4)) == 0
        out = tmp_path / "web"
        assert main(["export-web", "--mpi", str(tmp_path / "arc"), "-o", str(out)]) == 0
        assert (out / "meta.json").exists()
        assert len(list(out.glob("plane_*.png"))) == 4


class TestEntryPoint:
    def test_module_invocation_and_usage_error_exit_code(self):
        proc = subprocess.run(
            [sys.executable, "-m", "mpiview.cli", "no-such-command"],
            capture_output=True,
        )
        assert proc.returncode == 2

    def test_module_invocation_help(self):
        proc = subprocess.run(
            [sys.executable, "-m", "mpiview.cli", "--help"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        for sub in ("build", "render", "path", "baseline", "align", "sample-pairs", "export-web"):
            assert sub in proc.stdout
