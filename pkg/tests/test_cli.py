"""Command line surface: argument handling, exit codes, JSON shape,
and reproducibility of the suite report."""

import json
import pathlib
import subprocess
import sys

from realisability.cli import main, parse_pole
from realisability.poles import Empty, Full, Generated
from realisability.vm import Lam, Var, encode


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


# ---------------------------------------------------------------------------
# Configuration parsing

def test_parse_pole_forms():
    assert parse_pole("empty") == Empty()
    assert parse_pole("full") == Full()
    g = parse_pole("generated:0,3,8")
    assert g == Generated(frozenset({0, 3, 8}), 64)
    assert parse_pole("generated:1:9") == Generated(frozenset({1}), 9)


def test_bad_pole_is_usage_error(capsys):
    code = main(["truth", "(= 0 0)", "--pole", "sideways"])
    assert code == 3


def test_bad_subcommand_is_usage_error():
    assert main(["definitely-not-a-command"]) == 3


def test_bad_formula_is_usage_error(capsys):
    assert main(["truth", "(= 0"]) == 3
    assert main(["ord", "cmp", "wibble", "0"]) == 3


# ---------------------------------------------------------------------------
# Queries

def test_parse_reports_code_and_free_vars(capsys):
    code, rep = run_cli(capsys, "parse", "(imp (= x 0) (= 0 0))")
    assert code == 0
    assert rep["free_vars"] == ["x"]
    # closed numeral formulas have codes small enough to print exactly
    code, rep = run_cli(capsys, "parse", "(= 0 1)")
    assert isinstance(rep["code"], int)


def test_parse_ram_formula(capsys):
    code, rep = run_cli(capsys, "parse", "(fals 1 s 5)", "--ram")
    assert code == 0
    assert rep["formula"] == "(fals 1 s 5)"
    assert rep["free_vars"] == ["s"]


def test_truth_exit_codes(capsys):
    assert run_cli(capsys, "truth", "(= 0 0)")[0] == 0
    assert run_cli(capsys, "truth", "(= 0 1)")[0] == 1
    code, rep = run_cli(capsys, "truth", "(all x (= (+ x 0) x))",
                        "--width", "50")
    assert code == 2 and rep["truth"]["kind"] == "unknown"


def test_pole_member(capsys):
    code, rep = run_cli(capsys, "pole", "member", "3",
                        "--pole", "generated:0,3,8")
    assert code == 0 and rep["member"]["kind"] == "in"
    code, rep = run_cli(capsys, "pole", "member", "5", "--pole", "empty")
    assert code == 0 and rep["member"]["kind"] == "out"


def test_refutes_and_realises(capsys):
    code, rep = run_cli(capsys, "refutes", "7", "(= 0 1)")
    assert code == 0 and rep["refutes"]["kind"] == "in"
    assert run_cli(capsys, "realises", "0", "(= 0 0)")[0] == 0
    code, rep = run_cli(capsys, "realises", "0", "(= 0 1)")
    assert code == 1 and "witness" in rep


def test_run_applies_a_program(capsys):
    ident = encode(Lam(Var(0)))
    code, rep = run_cli(capsys, "run", str(ident), "9")
    assert code == 0 and rep["result"] == 9


# ---------------------------------------------------------------------------
# Proof commands

PROOF = str(pathlib.Path(__file__).resolve().parent.parent
            / "corpus" / "proofs" / "dne.sexp")


def test_prove_check(capsys):
    code, rep = run_cli(capsys, "prove-check", PROOF)
    assert code == 0 and rep["ok"]
    assert rep["conclusion"].startswith("(imp")


def test_prove_check_missing_file_is_usage_error(capsys):
    assert main(["prove-check", "/nonexistent/file.sexp"]) == 3


def test_extract_and_validate(capsys):
    code, rep = run_cli(capsys, "extract", PROOF)
    assert code == 0 and rep["ok"]
    code, rep = run_cli(capsys, "validate", PROOF,
                        "--pole", "generated:0,3,8", "--samples", "10")
    assert code == 0
    assert rep["realises"]["kind"] == "in"


# ---------------------------------------------------------------------------
# Ordinal and well-ordering commands

def test_ord_cmp(capsys):
    code, rep = run_cli(capsys, "ord", "cmp", "w^2", "w*5+1")
    assert code == 0 and rep["result"] == "greater"


def test_ord_fs_epsilon_zero(capsys):
    code, rep = run_cli(capsys, "ord", "fs", "e[0]", "2")
    assert code == 0
    assert rep["result"] == "w^w"


def test_ord_fs_rejects_non_limits(capsys):
    code, rep = run_cli(capsys, "ord", "fs", "3", "2")
    assert code == 1


def test_ti_prove(capsys):
    code, rep = run_cli(capsys, "ti", "prove", "zero")
    assert code == 0 and rep["ok"]


def test_ti_realise(capsys):
    code, rep = run_cli(capsys, "ti", "realise", "w^2",
                        "--pole", "generated:0,3,8", "--samples", "5")
    assert code == 0
    assert rep["verdict"] == "in"


def test_ti_validate_small_family(capsys):
    code, rep = run_cli(capsys, "ti", "validate", "--alphas", "0,1,w",
                        "--pole", "generated:0,3,8", "--samples", "5")
    assert code == 0
    assert [r["verdict"] for r in rep["results"]] == ["in"] * 3


# ---------------------------------------------------------------------------
# Level-indexed commands

def test_ram_explicit(capsys):
    code, rep = run_cli(capsys, "ram", "explicit", "refute", "s", "(= 0 1)")
    assert code == 0
    assert rep["result"] == "(imp (= 0 1) (pole s))"


def test_ram_translate_modes(capsys):
    code, rep = run_cli(capsys, "ram", "translate", "conservative",
                        "(pole 3)")
    assert code == 0 and rep["result"] == "(= 0 0)"
    code, rep = run_cli(capsys, "ram", "translate", "empty", "(fals 1 2 5)")
    assert code == 0 and rep["result"] == "(tru 1 (taue (memf 2 5)))"
    code, rep = run_cli(capsys, "ram", "translate", "zero", "(tru 1 7)")
    assert code == 0 and rep["result"].startswith("(imp (= (sentt 7")


def test_ram_axiom_and_level_error(capsys):
    code, rep = run_cli(capsys, "ram", "axiom", "RR4",
                        "--formula", "(= 0 1)", "--a", "4")
    assert code == 0 and rep["ok"]
    code, rep = run_cli(capsys, "ram", "axiom", "RR7", "--beta", "0")
    assert code == 1 and not rep["ok"]


def test_ram_check_small_corpus(capsys):
    code, rep = run_cli(capsys, "ram", "check", "--count", "20",
                        "--gamma", "2", "--pole", "generated:0,3,8")
    assert code in (0, 2)
    assert not any(r["verdict"] == "disagree" for r in rep["equivalence"])


def test_axioms_check(capsys):
    code, rep = run_cli(capsys, "axioms-check", "--pole", "generated:0,3,8")
    assert code in (0, 2)
    assert not any(r["verdict"] == "disagree" for r in rep["records"])


# ---------------------------------------------------------------------------
# Suite reproducibility

def test_suite_is_byte_identical(capsys):
    argv = ["suite", "--seed", "42", "--pole", "generated:0,3,8"]
    code1 = main(list(argv))
    out1 = capsys.readouterr().out
    code2 = main(list(argv))
    out2 = capsys.readouterr().out
    assert code1 == code2
    assert code1 in (0, 2)
    assert out1 == out2
    rep = json.loads(out1)
    assert rep["schema"] == 1
    assert not any(r["verdict"] == "disagree" for r in rep["axioms"])
    assert all(r["verdict"] == "in" for r in rep["ti"])


def test_suite_seed_changes_report(capsys):
    main(["suite", "--seed", "1"])
    out1 = capsys.readouterr().out
    main(["suite", "--seed", "2"])
    out2 = capsys.readouterr().out
    assert json.loads(out1)["seed"] == 1
    assert out1 != out2


def test_report_flag_writes_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code = main(["ord", "cmp", "0", "w", "--report", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    assert path.read_text() == out


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "realisability.cli",
                        "ord", "fs", "e[0]", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["result"] == "w^w"
