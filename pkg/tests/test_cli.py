import json

import pytest

from conjalg.cli import main, validate_report
from conjalg.diskmaps import MobiusMap
from conjalg.dynsys import FiniteDynSys
from conjalg.skewpoly import SkewPoly


def write_json(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_finite_conjugate(tmp_path, capsys):
    a = write_json(tmp_path, "a.json", {"n": 3, "map": [0, 0, 1]})
    b = write_json(tmp_path, "b.json", {"n": 3, "map": [1, 1, 0]})
    code, report = run(capsys, ["finite", a, b])
    assert code == 0
    assert report["conjugate"] is True
    assert report["witness"] == [1, 0, 2]


def test_finite_not_conjugate(tmp_path, capsys):
    a = write_json(tmp_path, "a.json", {"n": 2, "map": [1, 0]})
    b = write_json(tmp_path, "b.json", {"n": 2, "map": [0, 1]})
    code, report = run(capsys, ["finite", a, b])
    assert code == 0
    assert report == {"command": "finite", "conjugate": False}


def test_finite_bad_json(tmp_path, capsys):
    bad = write_json(tmp_path, "bad.json", {"n": 2})
    ok = write_json(tmp_path, "ok.json", {"n": 2, "map": [0, 1]})
    code, _ = run(capsys, ["finite", bad, ok])
    assert code == 2
    code, _ = run(capsys, ["finite", str(tmp_path / "missing.json"), ok])
    assert code == 2


def test_canon(tmp_path, capsys):
    s = write_json(tmp_path, "s.json", {"n": 3, "map": [0, 0, 1]})
    code, report = run(capsys, ["canon", s])
    assert code == 0
    assert report["canonical_form"] == "1:((()))"


def test_char_space(tmp_path, capsys):
    s = write_json(tmp_path, "s.json", {"n": 3, "map": [0, 0, 1]})
    code, report = run(capsys, ["char-space", s])
    assert code == 0
    assert report["points"][0] == {"x": 0, "kind": "disc", "r": 1.0}
    assert report["points"][1]["kind"] == "point"


def test_norms(tmp_path, capsys):
    sys_ = FiniteDynSys(2, (1, 0))
    p = SkewPoly.monomial(sys_, [1, 1], 1)
    path = write_json(tmp_path, "p.json", p.to_json())
    code, report = run(capsys, ["norms", path, "--trunc", "16"])
    assert code == 0
    assert report["estimate"] == pytest.approx(1.0)
    assert report["monotone_check"] is True
    assert report["estimate"] <= report["l1_norm"] + 1e-9


def test_pencil_check(tmp_path, capsys):
    s = write_json(tmp_path, "s.json", {"n": 3, "map": [0, 0, 1]})
    code, report = run(capsys, ["pencil-check", s, "1", "--samples", "20"])
    assert code == 0
    assert report["passed"] is True
    assert report["max_deviation"] <= 1e-12


def test_pencil_check_precondition(tmp_path, capsys):
    s = write_json(tmp_path, "s.json", {"n": 3, "map": [0, 0, 1]})
    code, _ = run(capsys, ["pencil-check", s, "0"])  # 0 is fixed
    assert code == 3
    code, _ = run(capsys, ["pencil-check", s, "1", "--z-re", "1.0"])
    assert code == 3


def test_disk_classify(tmp_path, capsys):
    m = write_json(tmp_path, "m.json", {"preset": "blaschke_half"})
    code, report = run(capsys, ["disk", "classify", m])
    assert code == 0
    assert report["kind"] == "hyperbolic"
    assert report["normal_form"][0] == pytest.approx([1 / 3, 0])


def test_disk_classify_precondition(tmp_path, capsys):
    m = write_json(tmp_path, "m.json", {"preset": "dilation", "lambda": [3, 0]})
    code, _ = run(capsys, ["disk", "classify", m])
    assert code == 3


def test_disk_conjugate(tmp_path, capsys):
    c = [0.6, 0.8]
    m1 = write_json(tmp_path, "m1.json", {"preset": "rotation", "c": c})
    m2 = write_json(tmp_path, "m2.json",
                    MobiusMap.rotation(complex(*c)).to_json())
    code, report = run(capsys, ["disk", "conjugate", m1, m2])
    assert code == 0
    assert report["conjugate"] is True
    assert report["max_deviation"] <= 1e-10

    m3 = write_json(tmp_path, "m3.json", {"preset": "blaschke_quarter"})
    e1 = write_json(tmp_path, "e1.json", {"preset": "blaschke_half"})
    code, report = run(capsys, ["disk", "conjugate", e1, m3])
    assert code == 0
    assert report["conjugate"] is False


def test_disk_iso(tmp_path, capsys):
    m1 = write_json(tmp_path, "m1.json", {"preset": "rotation", "c": [0.6, 0.8]})
    m2 = write_json(tmp_path, "m2.json", {"preset": "rotation", "c": [0.6, -0.8]})
    code, report = run(capsys, ["disk", "iso", m1, m2])
    assert code == 0
    assert report["verdict"] == "InverseConjugate"


def test_disk_verify_witness(tmp_path, capsys):
    m1 = write_json(tmp_path, "m1.json", {"preset": "dilation", "lambda": [0.5, 0]})
    m2 = write_json(tmp_path, "m2.json", {"preset": "dilation", "lambda": [0.25, 0]})
    code, report = run(capsys, ["disk", "verify-witness", "radial-square", m1, m2,
                                "--tolerance", "1e-12"])
    assert code == 0
    assert report["passed"] is True

    e1 = write_json(tmp_path, "e1.json", {"preset": "blaschke_half"})
    d3 = write_json(tmp_path, "d3.json",
                    {"preset": "dilation", "lambda": [1 / 3, 0]})
    code, report = run(capsys, ["disk", "verify-witness", "cayley-flip", e1, d3])
    assert code == 0
    assert report["passed"] is True

    code, _ = run(capsys, ["disk", "verify-witness", "nope", e1, d3])
    assert code == 2


def test_verify_suite_quick_deterministic(capsys):
    code1 = main(["verify-suite", "--quick", "--seed", "7"])
    out1 = capsys.readouterr().out
    code2 = main(["verify-suite", "--quick", "--seed", "7"])
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical for a fixed seed
    report = json.loads(out1)
    assert report["passed"] is True
    assert validate_report(report)


def test_conj_seed_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CONJ_SEED", "99")
    code1 = main(["verify-suite", "--quick"])
    out1 = capsys.readouterr().out
    code2 = main(["verify-suite", "--quick", "--seed", "99"])
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1 == out2
    assert json.loads(out1)["seed"] == 99


def test_parse_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["norms", "x.json", "--trunc", "-4"])
    assert exc.value.code == 2


def test_validate_report():
    assert validate_report({"command": "x", "v": 1.5})
    assert not validate_report({"v": 1})
    assert not validate_report(["command"])
    assert not validate_report({"command": "x", "v": float("nan")})
