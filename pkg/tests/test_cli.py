import subprocess
import sys

import pytest

from conftest import identity_matrix
from singerlat.ball import complex_from_text
from singerlat.cli import main
from singerlat.diffsets import canonical_difference_set, matrix_to_text, \
    set_from_text
from singerlat.exotic import NormalizedMatrix, census_from_text
from singerlat.permgrp import identity
from singerlat.plane import canonical_plane, plane_from_text, plane_to_text


def run(capsys, *args):
    code = main([str(a) for a in args])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def q2_file(tmp_path):
    path = tmp_path / "classical_q2.dm"
    path.write_text(matrix_to_text(identity_matrix(2)))
    return path


@pytest.fixture
def twisted_q5_file(tmp_path):
    M = NormalizedMatrix(5, canonical_difference_set(5),
                         (0, 2, 1, 3, 4, 5), identity(6)).decode()
    path = tmp_path / "twisted_q5.dm"
    path.write_text(matrix_to_text(M))
    return path


def test_gen_singer_stdout(capsys):
    code, out, _ = run(capsys, "gen-singer", 2)
    assert code == 0
    assert out == '{"elements": [0, 1, 3], "modulus": 7, "q": 2}\n'


def test_gen_singer_large_q_parses_back(capsys):
    code, out, _ = run(capsys, "gen-singer", 8)
    assert code == 0
    D = set_from_text(out)
    assert D.q == 8 and D.modulus == 73 and len(D.elements) == 9


def test_gen_singer_rejects_non_prime_power(capsys):
    code, out, err = run(capsys, "gen-singer", 6)
    assert code == 2
    assert out == ""
    assert "prime power" in err


def test_gen_singer_to_file(tmp_path, capsys):
    target = tmp_path / "ds.json"
    code, out, _ = run(capsys, "gen-singer", 3, "-o", target)
    assert code == 0
    assert str(target) in out
    assert set_from_text(target.read_text()) == canonical_difference_set(3)


def test_verify_ds_round_trip(tmp_path, capsys):
    target = tmp_path / "ds.json"
    run(capsys, "gen-singer", 4, "-o", target)
    code, out, _ = run(capsys, "verify-ds", target)
    assert code == 0
    assert out.startswith("ok: q=4 modulus=21")
    assert "canonical=yes" in out


def test_verify_ds_non_canonical(tmp_path, capsys):
    target = tmp_path / "ds.json"
    target.write_text('{"elements": [0, 2, 3], "modulus": 7, "q": 2}\n')
    code, out, _ = run(capsys, "verify-ds", target)
    assert code == 0
    assert "canonical=no" in out


def test_verify_ds_rejects_non_difference_set(tmp_path, capsys):
    target = tmp_path / "ds.json"
    target.write_text('{"elements": [0, 1, 2], "modulus": 7, "q": 2}\n')
    code, out, err = run(capsys, "verify-ds", target)
    assert code == 2
    assert err.startswith("error:")


def test_verify_ds_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "verify-ds", tmp_path / "nope.json")
    assert code == 2
    assert "cannot read" in err


def test_build_plane_stdout_parses(capsys):
    code, out, _ = run(capsys, "build-plane", 3)
    assert code == 0
    assert plane_from_text(out) == canonical_plane(3)


def test_build_plane_to_file(tmp_path, capsys):
    target = tmp_path / "plane.txt"
    code, out, _ = run(capsys, "build-plane", 2, "-o", target)
    assert code == 0
    assert "7 points, 7 lines" in out
    assert target.read_text() == plane_to_text(canonical_plane(2))


def test_build_plane_rejects_non_prime_power(capsys):
    assert run(capsys, "build-plane", 10)[0] == 2


def test_certify_inconclusive(q2_file, capsys):
    code, out, _ = run(capsys, "certify", q2_file)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "q=2 modulus=7"
    assert "verdict=Inconclusive" in lines
    assert "witness=-" in lines


def test_certify_moufang_candidate_exit_code(twisted_q5_file, capsys):
    code, out, _ = run(capsys, "certify", twisted_q5_file)
    assert code == 0
    assert "verdict=CertifiedExotic" in out
    code, out, _ = run(capsys, "certify", twisted_q5_file,
                       "--moufang-candidate")
    assert code == 1
    assert "witness=edge" in out


def test_certify_inconclusive_moufang_candidate_ok(q2_file, capsys):
    assert run(capsys, "certify", q2_file, "--moufang-candidate")[0] == 0


def test_certify_malformed_matrix_diagnostics(tmp_path, capsys):
    bad = tmp_path / "bad.dm"
    bad.write_text('{"q": 2, "modulus": 7}\n')
    code, _, err = run(capsys, "certify", bad)
    assert code == 2
    assert "columns" in err


def test_certify_rejects_non_matrix_json(tmp_path, capsys):
    bad = tmp_path / "bad.dm"
    bad.write_text("[1, 2, 3]\n")
    code, _, err = run(capsys, "certify", bad)
    assert code == 2
    assert "JSON object" in err


def test_classify_writes_parseable_census(tmp_path, capsys):
    code, out, _ = run(capsys, "classify", 3, "--outdir", tmp_path)
    assert code == 0
    assert "processed 576 matrices into 24 classes" in out
    census = census_from_text((tmp_path / "census_q3.txt").read_text())
    assert len(census) == 24
    assert sum(c.orbit_size for c in census) == 576
    summary = (tmp_path / "summary_q3.tsv").read_text()
    assert summary.splitlines()[1] == "3\t576\t24\t0\t24\t64"


def test_classify_threads_do_not_change_bytes(tmp_path, capsys):
    run(capsys, "classify", 3, "--outdir", tmp_path / "a", "--threads", 1)
    run(capsys, "classify", 3, "--outdir", tmp_path / "b", "--threads", 8)
    for name in ("census_q3.txt", "summary_q3.tsv"):
        assert (tmp_path / "a" / name).read_bytes() \
            == (tmp_path / "b" / name).read_bytes()


def test_classify_extra_moves(tmp_path, capsys):
    code, out, _ = run(capsys, "classify", 2, "--extra-moves",
                       "--outdir", tmp_path)
    assert code == 0
    assert "into 2 classes" in out
    census = census_from_text((tmp_path / "census_q2_extra.txt").read_text())
    assert sum(c.orbit_size for c in census) == 36


def test_classify_cap(capsys):
    code, _, err = run(capsys, "classify", 7)
    assert code == 3
    assert "capped" in err


def test_classify_rejects_bad_thread_count(tmp_path, capsys):
    code, _, err = run(capsys, "classify", 2, "--threads", 0,
                       "--outdir", tmp_path)
    assert code == 2
    assert "thread count" in err


def test_bounds_table(capsys):
    code, out, _ = run(capsys, "bounds", 2, 3, 4, 5)
    assert code == 0
    assert out.splitlines() == [
        "q\tbound_B\tlower_A\tratio",
        "2\t4\t2/9\t18.0",
        "3\t64\t32/9\t18.0",
        "4\t400\t100/9\t36.0",
        "5\t1600\t3200\t0.5",
    ]


def test_bounds_rejects_non_prime_power(capsys):
    assert run(capsys, "bounds", 2, 6)[0] == 2


def test_ball_stdout_parses(q2_file, capsys):
    code, out, err = run(capsys, "ball", q2_file, 1)
    assert code == 0
    ball = complex_from_text(out)
    assert ball.vertex_count == 15
    assert "verification ok" in err


def test_ball_to_file(q2_file, tmp_path, capsys):
    target = tmp_path / "ball.txt"
    code, out, _ = run(capsys, "ball", q2_file, 2, "-o", target)
    assert code == 0
    assert "113 vertices, 231 chambers" in out
    assert "verification ok" in out
    ball = complex_from_text(target.read_text())
    assert ball.q == 2 and ball.radius == 2
    assert len(ball.chambers) == 231


def test_ball_bad_radius(q2_file, capsys):
    assert run(capsys, "ball", q2_file, 3)[0] == 2


def test_ball_radius_two_cap(twisted_q5_file, capsys):
    code, _, err = run(capsys, "ball", twisted_q5_file, 2)
    assert code == 3
    assert "capped" in err


def test_unknown_subcommand_exits_two():
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "singerlat.cli", "gen-singer", "2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == '{"elements": [0, 1, 3], "modulus": 7, "q": 2}\n'
