"""Command-line front end: parsing, reports, determinism, exit codes."""
import json

import pytest

from orbicurve import cli, suites


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_doc(tmp_path, doc, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_parse_valid_chain_bundle_document():
    doc = {"chain": [{"c": 4, "d": 6}], "bundle": [[{"k1": 0, "k2": 0, "d": 2}]]}
    cli.validate_document(doc)
    chain = cli.parse_chain(doc)
    split = cli.parse_split_bundle(doc, chain)
    assert len(chain.components) == 1 and split.rank == 1
    assert chain.components[0].l1 == 2


def test_parse_rejects_gcd_violation():
    doc = {"chain": [{"a": 2, "b": 4}]}
    cli.validate_document(doc)  # schema-valid, semantically wrong
    with pytest.raises(cli.InputError, match=r"gcd\(a,b\)=2"):
        cli.parse_chain(doc)


def test_schema_violation_reports_pointer():
    with pytest.raises(cli.InputError, match="schema violation at /chain/0"):
        cli.validate_document({"chain": [{"c": 0, "d": 6}]})


def test_wps_document():
    doc = {"wps": {"weights": [1, 1, 2, 2], "bundle": [1]}}
    cli.validate_document(doc)
    model = cli.parse_wps(doc)
    assert model.weights == (1, 1, 2, 2) and model.bundle_degrees == (1,)


def test_roundtrip_canonical_document():
    doc = {
        "chain": [{"a": 2, "b": 3, "l1": 2, "l2": 1, "degree": "1"}],
        "bundle": [[{"k1": 1, "k2": 0, "d": 4}]],
    }
    chain = cli.parse_chain(doc)
    split = cli.parse_split_bundle(doc, chain)
    out = cli.serialize_document(chain, split)
    assert out == doc
    # and parsing the serialized form is a fixed point
    chain2 = cli.parse_chain(out)
    split2 = cli.parse_split_bundle(out, chain2)
    assert cli.serialize_document(chain2, split2) == out


def test_cohomology_command(tmp_path, capsys):
    path = write_doc(
        tmp_path, {"chain": [{"c": 1, "d": 2}], "bundle": [[{"k1": 0, "k2": 0, "d": 3}]]}
    )
    code, out, _ = run_cli(capsys, "--json", "cohomology", path)
    assert code == 0
    report = json.loads(out)
    assert report["results"] == {"h0": 2, "h1": 0, "euler_char": "2"}


def test_cohomology_command_multisummand_with_twist(tmp_path, capsys):
    doc = {
        "chain": [{"c": 1, "d": 1}],
        "bundle": [[{"d": 2}], [{"d": -1}]],
        "twist": {"point": "x2", "sign": -1},
    }
    code, out, _ = run_cli(capsys, "--json", "cohomology", write_doc(tmp_path, doc))
    assert code == 0
    results = json.loads(out)["results"]
    assert results["summands"][0] == {"h0": 2, "h1": 0, "euler_char": "2"}
    assert results["summands"][1] == {"h0": 0, "h1": 1, "euler_char": "-1"}


def test_convexity_command(tmp_path, capsys):
    doc = {"chain": [{"c": 1, "d": 1}], "bundle": [[{"d": 1}], [{"d": 0}]]}
    code, out, _ = run_cli(capsys, "--json", "convexity", write_doc(tmp_path, doc))
    assert code == 0
    results = json.loads(out)["results"]
    assert results["weakly_semipositive"] and results["weakly_convex"]
    assert results["weakly_concave_dual"] and results["witnesses"] == []


def test_input_error_exit_code(tmp_path, capsys):
    path = write_doc(tmp_path, {"chain": [{"a": 2, "b": 4}]})
    code, _, err = run_cli(capsys, "--json", "cohomology", path)
    assert code == 2 and "gcd(a,b)=2" in err


def test_sign_command(capsys):
    code, out, _ = run_cli(capsys, "--json", "sign", "--beta-detE", "1/2", "--g1", "", "--g2", "1/2")
    assert code == 0
    results = json.loads(out)["results"]
    assert results["exponent"] == "1" and results["sign"] == -1


def test_rank_command(capsys):
    code, out, _ = run_cli(capsys, "--json", "rank", "--beta-detE", "1/2", "--g1", "0", "--g2", "1/2")
    assert code == 0
    results = json.loads(out)["results"]
    assert results["rank"] == "1" and results["is_integer"]


def test_wps_sectors_command(capsys):
    code, out, _ = run_cli(capsys, "--json", "wps", "sectors", "--weights", "1,1,2,2", "--bundle", "1")
    assert code == 0
    sectors = json.loads(out)["results"]["sectors"]
    assert [s["f"] for s in sectors] == ["0", "1/2"]
    assert sectors[1]["age"] == "1/2"


def test_wps_verify_command_deterministic(capsys):
    code1, out1, _ = run_cli(capsys, "--json", "wps", "verify", "--weights", "1,1,2,2", "--bundle", "1")
    code2, out2, _ = run_cli(capsys, "--json", "wps", "verify", "--weights", "1,1,2,2", "--bundle", "1")
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical reports


def test_verify_suite_command(capsys):
    code, out, _ = run_cli(
        capsys, "--json", "verify", "--suite", "h1-vanishing", "--max-a", "2", "--max-l", "2", "--max-d", "4"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["ok"]
    assert payload["results"]["suites"][0]["failures"] == 0


def test_verify_suite_failure_exit_code(capsys, monkeypatch):
    def failing_suite(**kwargs):
        return suites.SuiteResult("stub", instances=1, failures=1, first_counterexample={"x": 1})

    monkeypatch.setitem(suites.SUITES, "h1-vanishing", failing_suite)
    code, out, _ = run_cli(capsys, "--json", "verify", "--suite", "h1-vanishing")
    assert code == 1


def test_series_verify_random(capsys):
    code, out, _ = run_cli(
        capsys, "--json", "--seed", "3", "series-verify", "--random", "--trials", "3"
    )
    assert code == 0
    assert json.loads(out)["results"]["failures"] == 0


def test_series_verify_table_document(tmp_path, capsys):
    doc = {
        "wps": {"weights": [1, 1], "bundle": [2]},
        "table": {
            "dim": 1,
            "entries": [
                {"beta": {"degrees": [1, 1]}, "sectors": [0, 0], "psi_power": 0, "row": 0, "col": 0, "value": "3"}
            ],
        },
    }
    code, out, _ = run_cli(capsys, "--json", "series-verify", write_doc(tmp_path, doc))
    assert code == 0
    results = json.loads(out)["results"]
    assert results["ok"] and results["state_dim"] == 1


def test_table_output_contains_wall_clock(tmp_path, capsys):
    path = write_doc(
        tmp_path, {"chain": [{"c": 1, "d": 2}], "bundle": [[{"k1": 0, "k2": 0, "d": 3}]]}
    )
    code, out, _ = run_cli(capsys, "cohomology", path)
    assert code == 0 and "wall-clock" in out and "h0" in out
