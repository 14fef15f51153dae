import json
import subprocess
import sys

import pytest

from catauto.cli import run


def cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_oracle_eq(capsys):
    code, out, _ = cli(capsys, "oracle", "eq", "--variety", "inverse_semigroup",
                       "(mul x1 (mul (inv x1) x1))", "x1")
    assert (code, out.strip()) == (0, "equal")
    code, out, _ = cli(capsys, "oracle", "eq", "(mul x1 x2)", "(mul x2 x1)")
    assert (code, out.strip()) == (1, "not equal")


def test_oracle_normalize_and_munn(capsys):
    code, out, _ = cli(capsys, "oracle", "normalize", "--variety", "semigroup", "(mul (mul x1 x2) x1)")
    assert (code, out.strip()) == (0, "1,2,1")
    code, out, _ = cli(capsys, "oracle", "munn", "--json", "(mul x1 (inv x1))")
    assert json.loads(out)["munn"] == "[1+]|0|0"


def test_terms_enumerate(capsys):
    code, out, _ = cli(capsys, "terms", "enumerate", "--variety", "semigroup", "--vars", "1",
                       "--max-size", "5", "--json")
    assert code == 0 and json.loads(out)["count"] == 4


def test_solve_json(capsys):
    code, out, _ = cli(capsys, "solve", "--system", "systems/semigroup_binary.eqs",
                       "--max-size", "5", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["bounds"]["max_size"] == 5
    assert data["results"][0]["solutions"] == [{"w": "(mul x1 x2)"}, {"w": "(mul x2 x1)"}]


def test_json_is_byte_identical(capsys):
    args = ["category", "verify", "--spec", "specs/mirror_semigroup.json", "--samples", "30",
            "--seed", "4", "--json"]
    first = cli(capsys, *args)
    assert first == cli(capsys, *args)
    assert first[0] == 0


def test_category_verify_fails_with_wrong_family(capsys):
    code, out, _ = cli(capsys, "category", "verify", "--spec", "specs/mirror_semigroup.json",
                       "--family", "families/identity_semigroup.json", "--samples", "30", "--json")
    data = json.loads(out)
    assert code == 1
    bad = [c for c in data["checks"] if c["status"] == "fail"]
    assert bad and "counterexample" in bad[0]


def test_derive_and_auto(capsys):
    assert cli(capsys, "derive", "check", "--spec", "specs/mirror_semigroup.json")[0] == 0
    code, out, _ = cli(capsys, "auto", "inner", "--spec", "specs/mirror_inverse.json", "--json")
    assert code == 0 and json.loads(out)["witness"]["term"] == "(inv x1)"
    code, out, _ = cli(capsys, "auto", "inner", "--spec", "specs/mirror_semigroup.json", "--json")
    assert code == 1 and json.loads(out)["verdict"] == "not_inner_up_to_bound"
    assert cli(capsys, "auto", "reduction", "--spec", "specs/mirror_semigroup.json")[0] == 1
    assert cli(capsys, "auto", "reduction", "--spec", "specs/identity_semigroup.json")[0] == 0


def test_indicator(capsys):
    code, out, _ = cli(capsys, "indicator", "right", "--a0", "tables/semilattice2.tbl",
                       "--universe", "tables/semilattices_le3/")
    assert (code, out.strip()) == (0, "right indicator: true")
    code, out, _ = cli(capsys, "indicator", "left", "--a0", "tables/trivial.tbl",
                       "--universe", "tables/semilattices_le3/", "--json")
    assert code == 1 and json.loads(out)["certificate"]


def test_monoid(capsys, tmp_path):
    out_file = tmp_path / "t2.tbl"
    code, out, _ = cli(capsys, "monoid", "build", "--n", "2", "--out", str(out_file))
    assert code == 0 and out_file.read_text().startswith("name T_2")
    code, out, _ = cli(capsys, "monoid", "aut-check", "--n", "2", "--partial", "--json")
    assert code == 0 and json.loads(out)["automorphism_count"] == 2


@pytest.mark.parametrize("argv,code", [
    (["solve", "--system", "missing.eqs", "--max-size", "3"], 2),
    (["oracle", "eq", "(mul x1)", "x1"], 2),
    (["monoid", "build", "--n", "6"], 3),
    (["solve", "--system", "systems/semigroup_binary.eqs", "--max-size", "9", "--cap", "100"], 3),
    (["derive", "check", "--spec", "specs/mirror_semigroup_table.json", "--bound", "2"], 3),
])
def test_exit_codes(capsys, argv, code):
    assert cli(capsys, *argv)[0] == code


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as e:
        run(["solve", "--max-size", "0", "--system", "systems/semigroup_binary.eqs"])
    assert e.value.code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "catauto", "oracle", "eq", "x1", "x1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "equal"
