import json

import pytest

from nrcx.cli import main
from nrcx.frontend import parse, print_expr
from nrcx.rx import eval_rx
from nrcx.translate import decode_relation, encode_db
from nrcx.values import Atom, DataNode, vset


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


# --- eval ------------------------------------------------------------------


def test_eval_empty_sequence(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(empty)")
    env = write(tmp_path, "env.json", "{}")
    code, out, _ = run(capsys, "eval", expr, env, "--lang", "rx")
    assert code == 0
    assert json.loads(out) == {"set": []}


def test_eval_undefined_exit_3(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr",
                 "(for x R (for y x (ifeq z y (fst z) (sing y))))")
    env = write(tmp_path, "env.json", json.dumps({
        "R": {"set": [{"set": [{"atom": "a"}, {"atom": "b"}]},
                      {"set": [{"atom": "c"}]},
                      {"set": [{"atom": "a"}, {"atom": "b"},
                               {"atom": "d"}]}]},
        "z": {"atom": "d"}}))
    code, out, _ = run(capsys, "eval", expr, env, "--lang", "penrc")
    assert code == 3
    payload = json.loads(out)
    assert payload["undefined"] == "proj-on-nonpair"
    assert payload["at"] == "(fst z)"


def test_eval_missing_binding_exit_1(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(seq x y)")
    env = write(tmp_path, "env.json", json.dumps({"x": {"set": []}}))
    code, out, err = run(capsys, "eval", expr, env, "--lang", "rx")
    assert code == 1
    assert "y" in err


def test_eval_parse_error_exit_1(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(seq x")
    env = write(tmp_path, "env.json", "{}")
    code, _, err = run(capsys, "eval", expr, env, "--lang", "rx")
    assert code == 1 and err


def test_eval_oracle_selection(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(data x)")
    env = write(tmp_path, "env.json", json.dumps(
        {"x": {"set": [{"elem": {"name": "a", "children": []}}]}}))
    _, out_default, _ = run(capsys, "eval", expr, env, "--lang", "rx")
    _, out_alt, _ = run(capsys, "eval", expr, env, "--lang", "rx",
                        "--oracle", "alt")
    assert out_default != out_alt


# --- check -----------------------------------------------------------------


def test_check_welldef_counterexample_exit_4(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(fst x)")
    gamma = write(tmp_path, "gamma.sexpr", "((x (coll (atom))))")
    code, out, _ = run(capsys, "check", expr, "--lang", "penrc",
                       "--mode", "welldef", "--gamma", gamma)
    assert code == 4
    verdict = json.loads(out)
    assert verdict["result"] is False
    assert verdict["counterexample"] == {"x": {"set": []}}
    assert set(verdict["bounds"]) == {"card", "atoms", "examined"}


def test_check_welldef_holds_exit_0(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(fst x)")
    gamma = write(tmp_path, "gamma.sexpr", "((x (prod (atom) (atom))))")
    code, out, _ = run(capsys, "check", expr, "--lang", "penrc",
                       "--mode", "welldef", "--gamma", gamma)
    assert code == 0
    assert json.loads(out)["result"] is True


def test_check_type_empty_against_empty_coll(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(empty)")
    gamma = write(tmp_path, "gamma.sexpr", "()")
    tau = write(tmp_path, "tau.sexpr", "(coll (void))")
    code, out, _ = run(capsys, "check", expr, "--lang", "penrc",
                       "--mode", "type", "--gamma", gamma, "--type", tau)
    assert code == 0 and json.loads(out)["result"] is True


def test_check_sat_of_empty_exit_4(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(empty)")
    gamma = write(tmp_path, "gamma.sexpr", "()")
    code, out, _ = run(capsys, "check", expr, "--lang", "penrc",
                       "--mode", "sat", "--gamma", gamma)
    assert code == 4 and json.loads(out)["result"] is False


def test_check_type_precondition_exit_1(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(fst x)")
    gamma = write(tmp_path, "gamma.sexpr", "((x (coll (atom))))")
    tau = write(tmp_path, "tau.sexpr", "(atom)")
    code, _, err = run(capsys, "check", expr, "--lang", "penrc",
                       "--mode", "type", "--gamma", gamma, "--type", tau)
    assert code == 1 and "not well defined" in err


def test_check_budget_exit_5(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(for x R (fst x))")
    gamma = write(tmp_path, "gamma.sexpr",
                  "((R (coll (prod (atom) (atom)))))")
    code, _, err = run(capsys, "check", expr, "--lang", "penrc",
                       "--mode", "welldef", "--gamma", gamma,
                       "--max-envs", "2")
    assert code == 5 and "budget" in err


def test_check_pure_rx_language(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(sing x)")
    gamma = write(tmp_path, "gamma.sexpr", "((x (atom)))")
    tau = write(tmp_path, "tau.sexpr", "(coll (atom))")
    code, out, _ = run(capsys, "check", expr, "--lang", "pure-rx",
                       "--mode", "type", "--gamma", gamma, "--type", tau)
    assert code == 0 and json.loads(out)["result"] is True


def test_check_no_prune_same_verdict(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(fst x)")
    gamma = write(tmp_path, "gamma.sexpr", "((x (coll (atom))))")
    base = run(capsys, "check", expr, "--lang", "penrc", "--mode", "welldef",
               "--gamma", gamma)
    nop = run(capsys, "check", expr, "--lang", "penrc", "--mode", "welldef",
              "--gamma", gamma, "--no-prune")
    assert base[0] == nop[0] == 4
    assert json.loads(base[1])["counterexample"] == \
        json.loads(nop[1])["counterexample"]


# --- parse and translate ---------------------------------------------------


def test_parse_reprints_canonically(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(seq  x ( empty ))")
    code, out, _ = run(capsys, "parse", expr, "--lang", "rx")
    assert code == 0 and out.strip() == "(seq x (empty))"


def test_translate_children(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(children x)")
    code, out, _ = run(capsys, "translate", expr)
    assert code == 0
    got = parse(out.strip(), "penrc")
    assert got == __import__("nrcx").translate.translate_expr(
        parse("(children x)", "pure-rx"))


def test_translate_rejects_emptiness(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(ifempty x y x)")
    code, _, err = run(capsys, "translate", expr)
    assert code == 1 and err


# --- compile-ra ------------------------------------------------------------


def test_compile_ra_union_runs(tmp_path, capsys):
    expr = write(tmp_path, "q.sexpr",
                 "(ra-union (rel R) (rename D B (rename C A (rel S))))")
    schema = write(tmp_path, "schema.sexpr", "((R (A B)) (S (C D)))")
    gout = str(tmp_path / "gamma.sexpr")
    code, out, _ = run(capsys, "compile-ra", expr, "--schema", schema,
                       "--gamma-out", gout)
    assert code == 0
    compiled = parse(out.strip(), "rx")
    db = {"R": {("1", "2")}, "S": {("3", "4")}}
    sch = {"R": ("A", "B"), "S": ("C", "D")}
    result = eval_rx(compiled, encode_db(db, sch))
    assert result.is_defined
    assert decode_relation(result.value, ("A", "B")) == \
        frozenset({("1", "2"), ("3", "4")})
    assert "(coll" in (tmp_path / "gamma.sexpr").read_text()


def test_compile_ra_schema_error_exit_1(tmp_path, capsys):
    expr = write(tmp_path, "q.sexpr", "(project (Z) (rel R))")
    schema = write(tmp_path, "schema.sexpr", "((R (A B)))")
    code, _, err = run(capsys, "compile-ra", expr, "--schema", schema)
    assert code == 1 and err


# --- reduce-deps -----------------------------------------------------------


def test_reduce_deps_writes_four_files(tmp_path, capsys):
    sigma = write(tmp_path, "sigma.sexpr", "(fd (A1) (A2))")
    rho = write(tmp_path, "rho.sexpr", "(fd (A1 A2) (A2))")
    outdir = tmp_path / "red"
    code, _, _ = run(capsys, "reduce-deps", "--sigma", sigma, "--rho", rho,
                     "--arity", "2", "--out-dir", str(outdir))
    assert code == 0
    for name in ("e1.sexpr", "e2.sexpr", "gamma.sexpr", "output-type.sexpr"):
        assert (outdir / name).read_text().strip(), name
    parse((outdir / "e1.sexpr").read_text(), "rx")
    parse((outdir / "e2.sexpr").read_text(), "rx")


def test_reduce_deps_requires_single_conclusion(tmp_path, capsys):
    rho = write(tmp_path, "rho.sexpr", "(fd (A1) (A2)) (fd (A2) (A1))")
    code, _, err = run(capsys, "reduce-deps", "--rho", rho, "--arity", "2",
                       "--out-dir", str(tmp_path / "red"))
    assert code == 1 and err


# --- determinism -----------------------------------------------------------


def test_outputs_are_byte_identical_across_runs(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(for x R (fst x))")
    gamma = write(tmp_path, "gamma.sexpr", "((R (coll (coll (atom)))))")
    runs = [run(capsys, "check", expr, "--lang", "penrc", "--mode",
                "welldef", "--gamma", gamma) for _ in range(2)]
    assert runs[0] == runs[1]

    sigma = write(tmp_path, "sigma.sexpr", "(ind (A1) (A2))")
    rho = write(tmp_path, "rho.sexpr", "(ind (A2) (A1))")
    texts = []
    for i in range(2):
        outdir = tmp_path / f"red{i}"
        run(capsys, "reduce-deps", "--sigma", sigma, "--rho", rho,
            "--arity", "2", "--out-dir", str(outdir))
        texts.append(tuple(sorted(
            (p.name, p.read_text()) for p in outdir.iterdir())))
    assert texts[0] == texts[1]


def test_out_flag_writes_file(tmp_path, capsys):
    expr = write(tmp_path, "e.sexpr", "(lit a)")
    env = write(tmp_path, "env.json", "{}")
    target = tmp_path / "result.json"
    code, out, _ = run(capsys, "eval", expr, env, "--lang", "rx",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text()) == {"set": [{"atom": "a"}]}
