import json

import pytest

from arithver.cli import main

COUNT = "y:=0; while y<x do y:=y+1 od"


def run_cli(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv, "--json")
    return code, json.loads(out)


def test_parse_formula(capsys):
    code, out, _ = run_cli(capsys, "parse-formula", "exists y. y*y = 49")
    assert code == 0
    assert out.strip() == "(exists y . (y * y) = 49)"


def test_parse_formula_json(capsys):
    code, tree = run_json(capsys, "parse-formula", "x < 3 -> x < 4")
    assert code == 0
    assert tree["kind"] == "implies"
    assert tree["left"] == {"kind": "lt", "left": {"kind": "var", "name": "x"},
                            "right": {"kind": "lit", "value": 3}}


def test_parse_error_exit_code(capsys):
    code, out, err = run_cli(capsys, "parse-formula", "x + = 1")
    assert code == 3
    assert "parse error" in err and "bytes" in err


def test_usage_error_exit_code(capsys):
    assert main(["no-such-command"]) == 3


def test_parse_program_json(capsys):
    code, tree = run_json(capsys, "parse-program", COUNT)
    assert code == 0
    assert tree["kind"] == "seq"
    assert tree["second"]["kind"] == "while"


def test_run(capsys):
    code, out, _ = run_cli(capsys, "run", COUNT, "--input", "x=5", "--fuel", "100")
    assert code == 0
    assert "terminated" in out and "y=5" in out


def test_run_fuel_exhaustion_exit_2(capsys):
    code, tree = run_json(capsys, "run", "while 0<1 do x:=x od",
                          "--input", "", "--fuel", "9")
    assert code == 2
    assert tree["terminated"] is False and tree["steps"] == 9


def test_run_bad_input_assignment(capsys):
    code, _, err = run_cli(capsys, "run", COUNT, "--input", "x:oops")
    assert code == 3


def test_encode_alpha(capsys):
    code, tree = run_json(capsys, "encode-alpha", COUNT)
    assert code == 0
    assert tree["vars"] == ["y", "x"]
    assert tree["out_vars"] == ["y'", "x'"]
    assert tree["formula"]["kind"] == "exists"


def test_encode_alpha_out(capsys):
    code, tree = run_json(capsys, "encode-alpha", COUNT,
                          "--out-index", "1", "--inputs", "x")
    assert code == 0
    assert tree["kind"] == "alpha-out"
    assert tree["inputs"] == ["x"]


def test_encode_alpha_out_bad_index(capsys):
    code, _, err = run_cli(capsys, "encode-alpha", COUNT, "--out-index", "9")
    assert code == 3


def test_classify(capsys):
    code, tree = run_json(capsys, "classify", "forall x. exists y. y = x + 1")
    assert code == 0
    assert (tree["class"], tree["n"], tree["strict"]) == ("pi", 2, True)


def test_prenex(capsys):
    code, out, _ = run_cli(capsys, "prenex",
                           "(exists y. y = x) /\\ (exists z. z = x)")
    assert code == 0
    assert out.strip().startswith("(exists")


def test_eval_exit_codes(capsys):
    assert run_cli(capsys, "eval", "1 < 2")[0] == 0
    assert run_cli(capsys, "eval", "2 < 1")[0] == 1
    code, out, _ = run_cli(capsys, "eval", "exists y. y = 99", "--qbound", "5")
    assert code == 2
    assert "unknown" in out


def test_eval_assignment(capsys):
    code, tree = run_json(capsys, "eval", "x + y = 7", "--assign", "x=3,y=4")
    assert code == 0 and tree["value"] == "true"


def test_vc(capsys):
    code, tree = run_json(capsys, "vc", COUNT, "--pre", "true",
                          "--post", "~(y<x)")
    assert code == 0
    assert tree["kind"] == "forall"


def test_check_triple_verified(capsys):
    code, tree = run_json(capsys, "check-triple", COUNT, "--pre", "true",
                          "--post", "~(y<x)", "--grid", "4", "--fuel", "500")
    assert code == 0
    assert tree["status"] == "verified"


def test_check_triple_counterexample(capsys):
    code, tree = run_json(capsys, "check-triple", "x:=x", "--pre", "true",
                          "--post", "x<0", "--grid", "2", "--fuel", "10")
    assert code == 1
    assert tree["status"] == "counterexample"
    assert tree["input"] == {"x": 0}


def test_check_triple_params(capsys):
    code, tree = run_json(capsys, "check-triple", COUNT, "--pre", "x = n",
                          "--post", "y = n", "--grid", "3", "--fuel", "500",
                          "--params", "n")
    assert code == 0 and tree["status"] == "verified"


def test_xrec_eval(tmp_path, capsys):
    f = tmp_path / "monus.sch"
    f.write_text("pr(proj(1,1); cn(pred; proj(3,3)))")
    code, out, _ = run_cli(capsys, "xrec", "eval", "--schema", str(f),
                           "--args", "9,3")
    assert code == 0 and out.strip() == "6"


def test_xrec_eval_divergence(tmp_path, capsys):
    f = tmp_path / "diverge.sch"
    f.write_text("mn(const(1,1))")
    code, tree = run_json(capsys, "xrec", "eval", "--schema", str(f),
                          "--fuel", "500")
    assert code == 2 and tree["diverged"] is True


def test_xrec_gamma(tmp_path, capsys):
    f = tmp_path / "pred.sch"
    f.write_text("pred")
    code, tree = run_json(capsys, "xrec", "gamma", "--schema", str(f))
    assert code == 0
    assert tree["inputs"] == ["x1"] and tree["result"] == "y"


def test_xrec_compile(tmp_path, capsys):
    f = tmp_path / "max.sch"
    f.write_text("max")
    code, tree = run_json(capsys, "xrec", "compile", "--schema", str(f))
    assert code == 0
    assert tree["result"] == "res" and len(tree["inputs"]) == 2


def test_xrec_missing_file(capsys):
    code, _, err = run_cli(capsys, "xrec", "eval", "--schema", "/no/such/file")
    assert code == 3


def test_sigma1_compile(capsys):
    code, tree = run_json(capsys, "sigma1-compile",
                          "exists z. (z = x /\\ y = z + z)", "--result", "y")
    assert code == 0
    assert tree["formula_inputs"] == ["x"]


def test_sigma1_compile_nonfunctional(capsys):
    code, _, err = run_cli(capsys, "sigma1-compile",
                           "y = x \\/ y = x + 1", "--result", "y")
    assert code == 3
    assert "two results" in err


def test_pi1_program(capsys):
    code, tree = run_json(capsys, "pi1-program", "y < 5", "--var", "y")
    assert code == 0
    assert tree["kind"] == "compiled"


def test_check_proof(tmp_path, capsys):
    good = tmp_path / "good.prf"
    good.write_text("""
    conseq {
      inner: assign { conclusion: {0 = 0} x := 0 {x = 0} }
      conclusion: {true} x := 0 {x = 0}
    }
    """)
    code, tree = run_json(capsys, "check-proof", str(good), "--grid", "3")
    assert code == 0 and tree["accepted"] is True

    bad = tmp_path / "bad.prf"
    bad.write_text("""
    conseq {
      inner: assign { conclusion: {0 = 0} x := 0 {x = 0} }
      conclusion: {true} x := 0 {x = 1}
    }
    """)
    code, tree = run_json(capsys, "check-proof", str(bad), "--grid", "3")
    assert code == 1 and tree["accepted"] is False


def test_check_proof_unknown_side_condition(tmp_path, capsys):
    f = tmp_path / "unk.prf"
    f.write_text("""
    conseq {
      inner: assign { conclusion: {exists z. z = y + 6} x := 0 {exists z. z = y + 6} }
      conclusion: {true} x := 0 {exists z. z = y + 6}
    }
    """)
    code, tree = run_json(capsys, "check-proof", str(f), "--grid", "2",
                          "--qbound", "3")
    assert code == 2 and tree["accepted"] is True


def test_console_script_installed():
    import shutil
    assert shutil.which("arithver")
