import json

from nilhecke.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_apply(capsys):
    code, out, _ = run(capsys, "apply", "--group", "A1", "--expr", "d1", "--poly", "t1")
    assert code == 0 and out.strip() == "-1"
    code, out, _ = run(capsys, "apply", "--group", "A1", "--expr", "d1", "--poly", "t1", "--convention", "classical")
    assert out.strip() == "1"


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "apply", "--group", "A1", "--expr", "d1*(", "--poly", "t1")
    assert code == 2 and "position 4" in err


def test_invalid_inputs(capsys):
    assert run(capsys, "apply", "--group", "Q3", "--expr", "d1", "--poly", "t1")[0] == 2
    assert run(capsys, "apply", "--group", "A1", "--expr", "d2", "--poly", "t1")[0] == 2
    assert run(capsys, "corner", "--group", "A2", "--parabolic", "5", "--expr", "d1")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_normal_form_and_mul(capsys):
    code, out, _ = run(capsys, "normal-form", "--group", "A1", "--expr", "d1*t1")
    assert out.strip() == "-1 + (t2)*d1"
    code, out, _ = run(capsys, "mul", "--group", "A2", "--expr", "d1", "--expr", "d1")
    assert code == 0 and out.strip() == "0"


def test_corner(capsys):
    code, body = run_json(capsys, "corner", "--group", "A2", "--parabolic", "1", "--expr", "d2")
    assert code == 0 and body["preserves_invariants"]


def test_gkm_commands(capsys):
    code, body = run_json(capsys, "gkm", "tym", "--group", "A1", "--input", "(0, t1 - t2)")
    assert code == 1 and body["values"] == ["0", "2"] and body["member"] is False
    code, body = run_json(capsys, "gkm", "tym-corrected", "--group", "A1", "--input", "(0, t1 - t2)")
    assert code == 0 and body["values"] == ["1", "1"]
    code, body = run_json(capsys, "gkm", "member", "--group", "A1", "--values", "(0, t1)")
    assert code == 1 and body["member"] is False
    code, body = run_json(capsys, "gkm", "kk", "--group", "A1", "--values", "(0, t1 - t2)", "--gkm-convention", "right-all")
    assert code == 0 and body["values"] == ["1", "1"]


def test_gkm_json_input(capsys, tmp_path):
    data = {"group": "A1", "parabolic": [], "values": [
        {"rep": [], "poly": {"vars": 2, "terms": []}},
        {"rep": [1], "poly": {"vars": 2, "terms": [{"coeff": "1", "exps": [1, 0]}, {"coeff": "-1", "exps": [0, 1]}]}},
    ]}
    path = tmp_path / "p.json"
    path.write_text(json.dumps(data))
    code, body = run_json(capsys, "gkm", "tym-corrected", "--group", "A1", "--input", str(path))
    assert code == 0 and body["values"] == ["1", "1"]


def test_schubert(capsys):
    code, out, _ = run(capsys, "schubert", "--n", "3")
    assert code == 0
    polys = {line.split(": ")[1] for line in out.strip().splitlines()}
    assert polys == {"1", "t1", "t1 + t2", "t1^2", "t1*t2", "t1^2*t2"}


def test_flowup_and_coinvariant(capsys):
    assert run(capsys, "flowup", "--group", "A2", "--parabolic", "1,2")[0] == 0
    code, body = run_json(capsys, "coinvariant-dim", "--group", "A2", "--parabolic", "1")
    assert code == 0 and body["dimension"] == 3 and body["expected"] == 3


def test_freeness_json(capsys, tmp_path):
    fig = tmp_path / "free.png"
    code, body = run_json(capsys, "freeness", "--group", "A2", "--parabolic", "1", "--max-degree", "4", "--figure", str(fig))
    assert code == 0 and body["consistent"]
    assert len(body["per_degree"]) == 5
    assert fig.exists() and fig.stat().st_size > 0


def test_reineke(capsys):
    code, body = run_json(capsys, "reineke", "relations", "--d1", "2", "--d2", "2")
    assert code == 0
    code, body = run_json(capsys, "reineke", "corner", "--d1", "1", "--d2", "3")
    assert code == 0 and body["closed"]


def test_json_is_deterministic(capsys, tmp_path):
    argv = ["selfcheck", "--group", "A2", "--seed", "5", "--samples", "10", "--format", "json"]
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    body = json.loads(a.read_text())
    assert body["config"]["seed"] == 5
