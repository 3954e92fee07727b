import json
import subprocess
import sys

import pytest

from cactus.cli import PAPER_TABLE, RunManifest, Verdict, main, theorem_rank


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json", "--no-timing")
    return code, json.loads(out)


def test_present(capsys):
    code, out = run(capsys, "present", "--pres", "minimal", "-n", "3")
    assert code == 0 and out.strip() == "< g2,g3 | g2^2, g3^2 >"
    code, d = run_json(capsys, "present", "--pres", "standard", "-n", "3")
    assert d["results"]["presentation"]["ngens"] == 3


def test_counts(capsys):
    code, d = run_json(capsys, "counts", "--n-max", "12")
    assert code == 0 and len(d["verdicts"]) == 11
    assert all(v["passed"] for v in d["verdicts"])
    code, out = run(capsys, "counts", "--n-max", "4", "--csv")
    assert out.splitlines()[0].startswith("n,G,R,G_min,R_min")


def test_hom_check_schema(capsys):
    code, d = run_json(capsys, "hom", "check", "--map", "psi-d8", "-n", "6")
    rep = d["results"]["report"]
    assert set(rep) == {"map", "n", "passed", "failures"}
    assert rep["passed"] is False and code == 0
    assert rep["failures"][0]["image"] == "a^0*(ab)^4"
    code, d = run_json(capsys, "hom", "check", "--map", "pi", "-n", "5", "--presentation", "standard")
    assert code == 0 and d["results"]["report"]["passed"]


def test_hom_check_even_phi_inf_exits_1(capsys):
    code, d = run_json(capsys, "hom", "check", "--map", "phi-inf", "-n", "4")
    assert code == 1 and not d["results"]["report"]["passed"]
    code, _ = run_json(capsys, "hom", "check", "--map", "phi-inf", "-n", "4", "--pivot", "3")
    assert code == 0


@pytest.mark.parametrize("name", ["phi-d4", "theta", "theta-lambda", "qn"])
def test_hom_check_maps(capsys, name):
    code, d = run_json(capsys, "hom", "check", "--map", name, "-n", "6")
    assert code == 0 and d["results"]["report"]["passed"]


def test_hom_check_dihedral_target(capsys):
    code, d = run_json(capsys, "hom", "check", "--map", "phi-inf", "-n", "5", "--target-m", "7")
    assert code == 0
    assert d["verdicts"][0]["computed"] == {"passed": True, "surjective": True}


def test_order(capsys, tmp_path):
    out_csv = tmp_path / "table.csv"
    code, d = run_json(capsys, "order", "--pres", "thmd", "-n", "4", "--dump-csv", str(out_csv))
    assert code == 0 and d["results"]["index"] == 32
    assert len(out_csv.read_text().splitlines()) == 33
    code, d = run_json(capsys, "order", "--pres", "thmd", "-n", "4", "--subgroup", "g2")
    assert d["results"]["index"] == 16
    code, d = run_json(capsys, "order", "--pres", "trunc", "-n", "3", "--class", "3",
                       "--strategy", "felsch")
    assert d["results"]["index"] == 16


def test_order_cap_exit_code(capsys, monkeypatch):
    code, d = run_json(capsys, "order", "--pres", "minimal", "-n", "3", "--max-cosets", "500")
    assert code == 2 and d["results"]["index"] is None
    monkeypatch.setenv("CACTUS_MAX_COSETS", "100")
    code, d = run_json(capsys, "order", "--pres", "thmd", "-n", "6")
    assert code == 2 and d["config"]["max_cosets"] == 100


def test_lcs_and_abelianize(capsys):
    code, d = run_json(capsys, "lcs", "--pres", "thmd", "-n", "4")
    assert d["results"]["lcs"]["orders"] == [32, 4, 1]
    code, out = run(capsys, "abelianize", "--pres", "standard", "-n", "5")
    assert out.splitlines()[0] == "Z2 x Z2 x Z2 x Z2"


def test_iso(capsys):
    code, d = run_json(capsys, "iso", "--left", "thmd:4", "--right", "wreath")
    assert code == 0 and d["results"]["isomorphic"]
    code, d = run_json(capsys, "iso", "--left", "thmd:4", "--right", "dihedral:16")
    assert not d["results"]["isomorphic"]


def test_table(capsys):
    code, d = run_json(capsys, "table", "--n", "4", "5", "--max-class", "3")
    assert code == 0
    cells = {(c["n"], c["i"]): c["computed"] for c in d["results"]["table"]}
    assert cells == {(4, 1): 3, (4, 2): 2, (4, 3): 3, (5, 1): 4, (5, 2): 2, (5, 3): 3}


def test_manifest_is_deterministic(capsys):
    outs = [run(capsys, "order", "--pres", "thmd", "-n", "5", "--json", "--no-timing")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    assert "seconds" not in outs[0] and "wall_time" not in outs[0]


def test_manifest_exit_codes():
    m = RunManifest("x", {}, {})
    assert m.exit_code() == 0
    m.add(Verdict("a", "s", 1, 1, True))
    m.add(Verdict("b", "s", None, 1, False, status="capped"))
    assert m.exit_code() == 2
    m.add(Verdict("c", "s", 1, 2, False, required=False))
    assert m.exit_code() == 2
    m.add(Verdict("d", "s", 1, 2, False))
    assert m.exit_code() == 1


def test_every_verdict_has_source_and_value(capsys):
    code, d = run_json(capsys, "table", "--n", "4", "--max-class", "2")
    for v in d["verdicts"]:
        assert v["source"] and "computed" in v


def test_theorem_ranks_and_table_data():
    assert PAPER_TABLE["label"] == "published"
    assert [theorem_rank(6, i) for i in (1, 2, 3, 4)] == [5, 3, 5, None]
    assert PAPER_TABLE[6][2] == 4  # disagrees with the closed form above


def test_bad_arguments():
    with pytest.raises(SystemExit):
        main(["order", "--pres", "nope", "-n", "3"])


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "cactus", "present", "--pres", "thmd", "-n", "3"],
                         capture_output=True, text=True, check=True).stdout
    assert out.startswith("< g2,g3 |")
