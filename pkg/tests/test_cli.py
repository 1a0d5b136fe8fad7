import json

import numpy as np
import pytest

from hsentangle.cli import (
    EXIT_INVALID,
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    EXIT_REFUSED,
    HEADER,
    SpecError,
    closed_form_for,
    cmd_compute,
    cmd_figure,
    cmd_sweep,
    main,
    parse_run_report,
    parse_state_spec,
    sig,
)
from hsentangle.closed_form import CENTRAL_HI, CENTRAL_LO, Regime
from hsentangle.states import bell_projector, werner


@pytest.mark.parametrize(
    "text,kind",
    [
        ('{"kind": "bell", "i": 2}', "bell"),
        ('{"kind": "phi_mix", "i": 1, "j": 3}', "phi_mix"),
        ('{"kind": "werner", "i": 1, "epsilon": 0.5}', "werner"),
        ('{"kind": "bell_mixture", "i": 1, "lambdas": [0.4, 0.2, 0.2, 0.2]}', "bell_mixture"),
        ('{"kind": "pure_schmidt", "a2": 0.3}', "pure_schmidt"),
        ('{"kind": "pure_vector", "re": [0.6, 0, 0, 0.8], "im": [0, 0, 0, 0]}', "pure_vector"),
    ],
)
def test_parse_valid(text, kind):
    spec = parse_state_spec(text)
    assert spec.kind == kind
    assert parse_state_spec(text.encode()) == spec
    assert np.trace(spec.matrix()).real == pytest.approx(1)


def test_parse_raw_matrix():
    W = werner(1, 0.2)
    doc = {"kind": "raw_matrix", "re": W.real.tolist(), "im": W.imag.tolist()}
    spec = parse_state_spec(json.dumps(doc))
    assert np.allclose(spec.matrix(), W)
    assert closed_form_for(spec) is None


@pytest.mark.parametrize(
    "text,field",
    [
        ("{not json", "<root>"),
        ("[1, 2]", "<root>"),
        ('{"kind": "ghz"}', "kind"),
        ('{"kind": "bell"}', "i"),
        ('{"kind": "bell", "i": 5}', "i"),
        ('{"kind": "bell", "i": 1, "eps": 0.1}', "eps"),
        ('{"kind": "phi_mix", "i": 2, "j": 2}', "j"),
        ('{"kind": "werner", "i": 1, "epsilon": 1.5}', "epsilon"),
        ('{"kind": "werner", "i": 1, "epsilon": "x"}', "epsilon"),
        ('{"kind": "bell_mixture", "i": 1, "lambdas": [0.5, 0.5]}', "lambdas"),
        ('{"kind": "bell_mixture", "i": 1, "lambdas": [0.5, 0.6, 0, 0]}', "lambdas"),
        ('{"kind": "pure_schmidt", "a2": -0.1}', "a2"),
        ('{"kind": "pure_vector", "re": [1, 1, 0, 0], "im": [0, 0, 0, 0]}', "re"),
        ('{"kind": "raw_matrix", "re": [[1,0,0,0],[0,1,0,0],[0,0,0,0],[0,0,0,0]], "im": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}', "re"),
    ],
)
def test_parse_errors_name_field(text, field):
    with pytest.raises(SpecError) as info:
        parse_state_spec(text)
    assert info.value.field == field


def test_parse_rejects_bad_utf8():
    with pytest.raises(SpecError):
        parse_state_spec(b"\xff\xfe")


def test_closed_form_dispatch():
    assert closed_form_for(parse_state_spec('{"kind": "werner", "i": 1, "epsilon": 0.2}')).regime is Regime.SEPARABLE
    r = closed_form_for(parse_state_spec('{"kind": "werner", "i": 2, "epsilon": 0.5}'))
    assert r.entanglement == pytest.approx(0.25**2 / 3)
    assert closed_form_for(parse_state_spec('{"kind": "phi_mix", "i": 1, "j": 2}')).entanglement == 0
    r = closed_form_for(parse_state_spec('{"kind": "pure_vector", "re": [0.6, 0, 0, 0.8], "im": [0, 0, 0, 0]}'))
    assert r.entanglement == pytest.approx(4 * 0.36 * 0.64 / 3)


def test_sig():
    assert sig(1 / 3) == 0.333333333333
    assert sig(0.0) == 0.0


def test_compute_json_roundtrip(capsys, cfg):
    assert main(["compute", '{"kind": "bell", "i": 1}', "--format", "json"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith(HEADER + "\n")
    doc = parse_run_report(out)
    assert doc["closed_form"]["entanglement"] == sig(1 / 3)
    assert abs(doc["numerical"]["value"] - 1 / 3) <= 1e-4
    assert doc["certificate"]["passed"] is True
    assert doc["entropy"]["rel_entropy_closed_form"]["value"] == pytest.approx(1.0)
    assert doc["spec"] == {"kind": "bell", "i": 1}


def test_parse_run_report_rejects_tampering(capsys):
    main(["compute", '{"kind": "pure_schmidt", "a2": 0.5}', "--format", "json"])
    out = capsys.readouterr().out
    with pytest.raises(ValueError):
        parse_run_report(out.replace(HEADER, "other/1"))
    head, body = out.split("\n", 1)
    doc = json.loads(body)
    del doc["numerical"]["gap"]
    with pytest.raises(Exception):
        parse_run_report(head + "\n" + json.dumps(doc))


def test_compute_text_and_csv(capsys):
    assert main(["compute", '{"kind": "pure_schmidt", "a2": 0.05}']) == EXIT_OK
    text = capsys.readouterr().out
    assert "conjectured" in text and "certificate" in text
    assert main(["compute", '{"kind": "werner", "i": 1, "epsilon": 0.1}', "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == HEADER and lines[1] == "field,value"


def test_compute_raw_matrix_certifies_numerical_basepoint(cfg):
    W = werner(1, 0.6)
    spec = parse_state_spec(json.dumps({"kind": "raw_matrix", "re": W.real.tolist(), "im": W.imag.tolist()}))
    rep = cmd_compute(spec, cfg)
    assert rep.certificate_target == "numerical"
    assert rep.numerical.value == pytest.approx(0.8**2 / 12, abs=1e-4)


def test_exit_codes(capsys, tmp_path):
    assert main(["compute", '{"kind": "bell", "i": 9}']) == EXIT_INVALID
    assert main(["compute", str(tmp_path / "missing.json")]) == EXIT_INVALID
    assert main(["compute", '{"kind": "bell", "i": 1}', "--max-iters", "1", "--tol", "1e-12"]) == EXIT_NOT_CONVERGED
    assert main(["compute", '{"kind": "bell", "i": 1}', "--tol", "-1"]) == EXIT_INVALID
    psi = bell_projector(1)
    cand = json.dumps({"kind": "raw_matrix", "re": psi.real.tolist(), "im": psi.imag.tolist()})
    assert main(["certify", '{"kind": "bell", "i": 1}', cand]) == EXIT_REFUSED
    assert main(["certify", "-", "-"]) == EXIT_INVALID
    capsys.readouterr()


def test_certify_outcomes(capsys, tmp_path):
    good = '{"kind": "werner", "i": 1, "epsilon": 0.3333333333333333}'
    assert main(["certify", '{"kind": "bell", "i": 1}', good, "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out.split("\n", 1)[1])
    assert doc["passed"] is True
    spec_file = tmp_path / "state.json"
    spec_file.write_text('{"kind": "bell", "i": 1}')
    # a separable but non-optimal candidate is reported, not refused
    assert main(["certify", str(spec_file), '{"kind": "werner", "i": 1, "epsilon": 0}']) == EXIT_OK
    out = capsys.readouterr().out
    assert "FAILED" in out and "-0.5" in out


def test_sweep_csv_deterministic(capsys, tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep", "werner", "-n", "5", "--format", "csv", "-o", str(out1)]) == EXIT_OK
    assert main(["sweep", "werner", "-n", "5", "--format", "csv", "-o", str(out2)]) == EXIT_OK
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    assert lines[0] == HEADER
    assert lines[1] == "parameter,closed_form,numerical,gap,converged,abs_difference,regime"
    assert len(lines) == 2 + 5


def test_sweep_rows(cfg):
    rows = cmd_sweep("pure", 5, cfg)
    assert [r["parameter"] for r in rows] == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert all(r["abs_difference"] <= 1e-4 for r in rows)
    with pytest.raises(ValueError):
        cmd_sweep("ghz", 5, cfg)
    with pytest.raises(ValueError):
        cmd_sweep("pure", 1, cfg)


def test_figure_data(capsys):
    blocks = cmd_figure(41)
    got = sorted(r["a2"] for r in blocks["intersections"])
    assert got[0] == pytest.approx(CENTRAL_LO, abs=1e-12)
    assert got[1] == pytest.approx(CENTRAL_HI, abs=1e-12)
    for row in blocks["parabola"]:
        assert abs(row["min_eigenvalue"]) <= 1e-9
        assert row["x00"] + row["x11"] + row["xplus"] == pytest.approx(1)
    for row in blocks["projected"]:
        inside = CENTRAL_LO < row["a2"] < CENTRAL_HI
        # residual is 4ab(1/3 - ab): negative strictly inside the central interval
        assert (row["parabola_residual"] < 0) == inside
    assert main(["figure", "-n", "5", "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out.split("\n", 1)[1])
    assert set(doc) == {"parabola", "projected", "intersections"}


def test_argparse_rejects_unknown_command(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
