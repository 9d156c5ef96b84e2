import json
import subprocess
import sys

import pytest

from laumon import cli
from laumon.closed_form import theorem_Z
from laumon.series import from_json_dict


def run_main(capsys, *argv):
    code = cli.main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_parse_args_defaults(monkeypatch):
    monkeypatch.delenv("LAUMON_THREADS", raising=False)
    cfg = cli.parse_args(["zr-closed", "--ranks", "2,1"])
    assert cfg.command == "zr-closed"
    assert cfg.ranks == (2, 1)
    assert cfg.max_order == 4
    assert cfg.format == "json"
    assert cfg.out is None
    assert cfg.threads >= 1
    cfg = cli.parse_args(["verify-appendixA"])
    assert cfg.max_order == 12
    cfg = cli.parse_args(["verify-lemma32", "--max-order", "3"])
    assert cfg.max_order == 3


def test_unknown_flag_is_usage_error(capsys):
    # verify-wz takes --m/--s, not --ranks
    code, out, err = run_main(capsys, "verify-wz", "--ranks", "1,1")
    assert code == 2
    assert "usage" in err


def test_zr_brute_json_round_trip(capsys):
    code, out, err = run_main(capsys, "zr-brute", "--ranks", "1,1")
    assert code == 0
    payload = json.loads(out)
    assert from_json_dict(payload) == theorem_Z((1, 1), 4)
    hits = [t for t in payload["terms"]
            if t["exp"] == {"y": 2, "q0": 1, "q1": 1}]
    assert hits and hits[0]["coeff"] == "2"


def test_verify_thm(capsys):
    code, out, err = run_main(capsys, "verify-thm", "--ranks", "1,1,1",
                              "--max-order", "3")
    assert code == 0
    assert json.loads(out)["equal"] is True


def test_verify_thm_text(capsys):
    code, out, err = run_main(capsys, "verify-thm", "--ranks", "1,1",
                              "--format", "text")
    assert code == 0
    assert out == "product form vs localization: PASS\n"


def test_morse_payload(capsys):
    code, out, err = run_main(capsys, "morse", "--ranks", "1,1", "--n", "1,1")
    assert code == 0
    payload = json.loads(out)
    assert payload["agree"] is True
    assert payload["poincare"] == {"0": 1, "2": 2}
    assert len(payload["fixed_points"]) == 3


def test_tangent_counts(capsys):
    code, out, err = run_main(capsys, "tangent", "--ranks", "1,1", "--n", "1,1")
    assert code == 0
    payload = json.loads(out)
    for e in payload["fixed_points"]:
        assert e["total_terms"] == 8
        assert e["invariant_terms"] == 4


def test_characters_payload(capsys):
    code, out, err = run_main(capsys, "characters", "--m", "1,1",
                              "--s", "1,2", "--max-order", "2")
    assert code == 0
    chars = json.loads(out)["characters"]
    assert set(chars) == {"X_1", "X_2", "X_1_2", "B_1_2", "betagamma_1_2",
                          "w_refined_verma"}
    assert chars["X_1_2"]["factors"]
    assert all("_inf^-1" in f for f in chars["X_1_2"]["factors"])
    from_json_dict(chars["X_1_2"]["series"])


def test_spin_payload(capsys):
    code, out, err = run_main(capsys, "spin", "--m", "1,1", "--s", "1,2")
    assert code == 0
    payload = json.loads(out)
    assert payload["N"] == 3
    assert payload["total_dim"] == 9
    assert payload["free_field_counts"]["pairs"][0]["direct"] == {
        "fermions": 4, "betagamma": 1}


def test_verma_denominator(capsys):
    code, out, err = run_main(capsys, "verma-denominator", "--size", "1",
                              "--max-order", "6")
    assert code == 0
    s = from_json_dict(json.loads(out))
    assert [s.coefficient((k, 0)) for k in range(7)] == [1, 1, 2, 3, 5, 7, 11]


def test_out_file(tmp_path, capsys):
    path = tmp_path / "z.json"
    code, out, err = run_main(capsys, "zr-closed", "--ranks", "1,1",
                              "--out", str(path))
    assert code == 0
    assert out == ""
    assert from_json_dict(json.loads(path.read_text())) == theorem_Z((1, 1), 4)


def test_bad_ranks_exit_2(capsys):
    code, out, err = run_main(capsys, "zr-closed", "--ranks", "1")
    assert code == 2
    assert err.startswith("error:")


def test_zero_rank_warning(capsys):
    code, out, err = run_main(capsys, "zr-closed", "--ranks", "0,1")
    assert code == 0
    assert "zero entry" in err


def test_threads_env_and_flag_agree(monkeypatch, capsys):
    monkeypatch.delenv("LAUMON_THREADS", raising=False)
    code, base, err = run_main(capsys, "zr-brute", "--ranks", "2,1",
                               "--threads", "1")
    assert code == 0
    code, flag4, err = run_main(capsys, "zr-brute", "--ranks", "2,1",
                                "--threads", "4")
    assert flag4 == base
    monkeypatch.setenv("LAUMON_THREADS", "4")
    code, env4, err = run_main(capsys, "zr-brute", "--ranks", "2,1",
                               "--threads", "1")
    assert env4 == base


def test_bad_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("LAUMON_THREADS", "many")
    code, out, err = run_main(capsys, "zr-closed", "--ranks", "1,1")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "laumon", "spin",
                           "--m", "2", "--s", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["total_dim"] == 4


def test_acceptance_all_pass(capsys):
    code, out, err = run_main(capsys, "acceptance", "--format", "text",
                              "--threads", "1")
    assert code == 0
    assert out.rstrip().endswith("ALL PASS")


def test_golden_names_cover_grid():
    names = dict(cli.golden_names())
    assert names["zr_2_2_1.json"] == ("zr", (2, 2, 1))
    assert names["verma_3.json"] == ("verma", 3)
    for name in names:
        assert cli._load_golden(name) is not None
