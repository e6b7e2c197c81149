"""CLI surface: subcommands, exit codes, determinism of outputs."""

import csv
import subprocess
import sys

import pytest

FIG_M = """pmod 2 3
gens 1
2 2
rels 1
6 2 ; 0:1
"""

FIG_N = """pmod 2 3
gens 2
0 1
1 0
rels 3
2 2 ; 0:1 1:2
5 0 ; 1:1
5 1 ; 0:1
"""


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "mphom.cli", *args],
        capture_output=True,
        text=True,
    )


@pytest.fixture
def fig_files(tmp_path):
    x = tmp_path / "X.pmod"
    y = tmp_path / "Y.pmod"
    x.write_text(FIG_M)
    y.write_text(FIG_N)
    return x, y


def test_hom_direct_header(fig_files):
    x, y = fig_files
    out = run_cli("hom", str(x), str(y), "--alg", "direct")
    assert out.returncode == 0, out.stderr
    lines = out.stdout.splitlines()
    assert lines[0] == "hombasis 2 3"
    assert "dim 1" in lines
    assert "coords generators" in lines


def test_hom_all_algorithms_agree(fig_files):
    x, y = fig_files
    for alg in ("direct", "a", "mixed", "b", "a-star", "b-star", "oracle"):
        out = run_cli("hom", str(x), str(y), "--alg", alg)
        assert out.returncode == 0, (alg, out.stderr)
        assert "dim 1" in out.stdout.splitlines(), alg


def test_end_with_check(fig_files, tmp_path):
    x, y = fig_files
    out = run_cli("end", str(y), "--alg", "b", "--check")
    assert out.returncode == 0, out.stderr
    assert "check ok" in out.stderr


def test_thickness_command(fig_files):
    x, y = fig_files
    out = run_cli("thickness", str(y))
    assert out.returncode == 0
    assert out.stdout.strip() == "2"
    out = run_cli("thickness", str(x))
    assert out.stdout.strip() == "1"


def test_cli_outputs_are_deterministic(fig_files, tmp_path):
    x, y = fig_files
    first = run_cli("hom", str(x), str(y), "--alg", "a")
    second = run_cli("hom", str(x), str(y), "--alg", "a")
    assert first.stdout == second.stdout
    r1 = run_cli("random", "--seed", "7", "--gens", "5", "--rels", "5")
    r2 = run_cli("random", "--seed", "7", "--gens", "5", "--rels", "5")
    assert r1.stdout == r2.stdout
    m1 = run_cli("minimize", str(y))
    m2 = run_cli("minimize", str(y))
    assert m1.stdout == m2.stdout


def test_minimize_and_sparsify_round_trip(fig_files):
    _, y = fig_files
    out = run_cli("minimize", str(y))
    assert out.returncode == 0
    assert out.stdout == FIG_N
    sp = run_cli("sparsify", str(y))
    assert sp.returncode == 0
    assert sp.stdout.startswith("pmod 2 3")


def test_missing_file_exit_code():
    out = run_cli("thickness", "no-such-file.pmod")
    assert out.returncode == 2


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.pmod"
    bad.write_text("pmod 2 4\ngens 0\nrels 0\n")
    out = run_cli("thickness", str(bad))
    assert out.returncode == 3


def test_grid_cap_exit_code(fig_files):
    x, y = fig_files
    out = run_cli("hom", str(x), str(y), "--alg", "oracle", "--grid-cap", "2")
    assert out.returncode == 4


def test_field_mismatch_is_an_error(fig_files):
    x, _ = fig_files
    out = run_cli("thickness", str(x), "--field", "5")
    assert out.returncode != 0


def test_bench_csv(tmp_path):
    target = tmp_path / "bench.csv"
    out = run_cli(
        "bench", "--count", "2", "--seed", "3", "--gens", "4", "--rels", "4",
        "--out", str(target),
    )
    assert out.returncode == 0, out.stderr
    with open(target) as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == [
        "instance", "algorithm", "variables", "equations", "avg_entries",
        "time_s", "dim_hom", "thick_target", "thick_target_betti",
        "b0_source", "b1_source", "b0_target", "b1_target",
    ]
    # 2 instances x 4 algorithms.
    assert len(rows) == 1 + 8
    # Each instance has a single dimension across algorithms.
    dims = {}
    for row in rows[1:]:
        dims.setdefault(row[0], set()).add(row[6])
    assert all(len(v) == 1 for v in dims.values())


def test_bench_parallel_matches_serial(tmp_path):
    a = tmp_path / "serial.csv"
    b = tmp_path / "parallel.csv"
    run_cli("bench", "--count", "2", "--seed", "5", "--gens", "4",
            "--rels", "4", "--out", str(a))
    run_cli("bench", "--count", "2", "--seed", "5", "--gens", "4",
            "--rels", "4", "--jobs", "2", "--out", str(b))

    def strip_times(path):
        with open(path) as handle:
            rows = list(csv.reader(handle))
        return [row[:5] + row[6:] for row in rows]

    assert strip_times(a) == strip_times(b)


def test_random_then_hom_pipeline(tmp_path):
    mod = tmp_path / "m.pmod"
    out = run_cli("random", "--seed", "11", "--gens", "5", "--rels", "4",
                  "--out", str(mod))
    assert out.returncode == 0
    end = run_cli("end", str(mod), "--alg", "mixed", "--check")
    assert end.returncode == 0, end.stderr


def test_check_passes_on_bundled_fixture_corpus():
    import pathlib

    fixtures = pathlib.Path(__file__).parent / "fixtures"
    files = sorted(fixtures.iterdir())
    assert files, "fixture corpus missing"
    for path in files:
        out = run_cli("end", str(path), "--check")
        assert out.returncode == 0, (path.name, out.stderr)
        assert "check ok" in out.stderr


def test_firep_input_is_detected(tmp_path):
    import pathlib

    firep = pathlib.Path(__file__).parent / "fixtures" / "rectangle.firep"
    out = run_cli("thickness", str(firep))
    assert out.returncode == 0
    assert out.stdout.strip() == "1"


def test_stats_flag_appends_csv(fig_files, tmp_path):
    x, y = fig_files
    stats = tmp_path / "stats.csv"
    out = run_cli("hom", str(x), str(y), "--alg", "b", "--stats", str(stats))
    assert out.returncode == 0
    with open(stats) as handle:
        rows = list(csv.reader(handle))
    assert len(rows) == 2
    assert rows[1][1] == "b"
