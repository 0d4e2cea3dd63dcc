import json

from circulant.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_schurity_verb(capsys):
    code, out, _ = run_cli(
        capsys, "schurity", "--n", "8",
        "--ring", '{"basic_sets":[[0],[1,3],[2,6],[4],[5,7]]}')
    assert code == 0
    data = json.loads(out)
    assert data["schurian"] is True
    assert data["aut_order"] == "16"
    assert isinstance(data["aut_order"], str)
    assert data["stabilizer_orbits"][0] == [0]


def test_validate_verb_errors(capsys):
    code, out, err = run_cli(
        capsys, "validate", "--n", "4", "--ring", '{"basic_sets":[[0],[1],[2,3]]}')
    assert code == 1
    assert "inverse-closed" in json.loads(err)["error"]


def test_malformed_json(capsys):
    code, out, err = run_cli(capsys, "validate", "--n", "4", "--ring", "{oops")
    assert code == 1
    assert "position" in json.loads(err)["error"]


def test_budget_exit_code(capsys):
    ring = json.dumps({"basic_sets": [[0], list(range(1, 1100))]})
    code, out, err = run_cli(capsys, "schurity", "--n", "1100", "--ring", ring)
    assert code == 2
    assert "budget_error" in json.loads(err) or "budget_error" in err


def test_construct_and_analyze(capsys):
    code, out, _ = run_cli(capsys, "construct", "--kind", "cyclotomic",
                           "--n", "8", "--gens", "3")
    assert code == 0
    ring = json.loads(out)["ring"]
    assert ring["basic_sets"] == [[0], [1, 3], [2, 6], [4], [5, 7]]
    code, out, _ = run_cli(capsys, "analyze", "--ring", json.dumps(ring))
    assert code == 0
    data = json.loads(out)
    assert data["radical_order"] == 1 and data["dense"] is True


def test_construct_gwp(capsys):
    left = '{"n":3,"basic_sets":[[0],[1,2]]}'
    code, out, _ = run_cli(capsys, "construct", "--kind", "gwp", "--n", "9",
                           "--u", "3", "--l", "3", "--left", left, "--right", left)
    assert code == 0
    assert json.loads(out)["ring"]["basic_sets"] == [[0], [1, 2, 4, 5, 7, 8], [3, 6]]


def test_enumerate_verb(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--n", "9")
    assert code == 0
    rings = [json.loads(line) for line in out.strip().splitlines()]
    assert len(rings) == 7
    assert any(r["basic_sets"] == [[0], [1, 2, 4, 5, 7, 8], [3, 6]] for r in rings)


def test_sweep_verb(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--ns", "4,9")
    assert code == 0
    reports = json.loads(out)["reports"]
    assert reports[0]["total"] == 3 and reports[0]["schurian"] == 3


def test_resolve_verb(capsys):
    code, out, _ = run_cli(capsys, "resolve", "--n", "9",
                           "--ring", '{"basic_sets":[[0],[3,6],[1,2,4,5,7,8]]}')
    assert code == 0
    data = json.loads(out)
    assert data["two_equivalent_to_aut"] is True
    assert data["order"] == "1296"


def test_nonschurity_verb(capsys):
    code, out, _ = run_cli(capsys, "nonschurity", "--n", "9", "--u", "3", "--l", "3",
                           "--ring", '{"basic_sets":[[0],[3,6],[1,2,4,5,7,8]]}')
    assert code == 0
    assert json.loads(out)["nonschurian_certificate"] is False


def test_determinism(capsys):
    args = ["analyze", "--n", "12", "--ring",
            '{"basic_sets":[[0],[1,5,7,11],[2,10],[3,9],[4,8],[6]]}']
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_modulus_mismatch(capsys):
    code, _, err = run_cli(capsys, "schurity", "--n", "5",
                           "--ring", '{"n":4,"basic_sets":[[0],[1,3],[2]]}')
    assert code == 1
    assert "mismatch" in json.loads(err)["error"]
