import json
import pathlib

import pytest

import dnss

CORPUS = pathlib.Path(__file__).resolve().parents[2] / "corpus"
GKOS1 = ["x1' - 1", "u1 - x1^2", "u1^2"]


def test_poly_arithmetic():
    p = dnss.Poly("x1^2 - u1")
    assert str(p * dnss.Poly(2)) == str(dnss.Poly("2*x1^2 - 2*u1"))
    assert p.derivative() == dnss.Poly("2*x1*x1' - u1'")
    assert p.degree() == 2 and p.order() == 0
    assert (p - p).is_zero()


def test_decide_gkos():
    v = dnss.decide(GKOS1, max_order=6)
    assert v["status"] == "inconsistent"
    assert v["L_min"] == "4"
    assert dnss.verify(v["certificate"], GKOS1)


def test_decide_document_text():
    text = (CORPUS / "chain.dnss").read_text()
    v = dnss.decide(text, max_order=4)
    assert v["L_min"] == "2"


def test_consistent():
    v = dnss.decide(["x1' - x1"], max_order=3)
    assert v["status"] == "consistent_up_to"
    assert "certificate" not in v


def test_strong():
    cert = dnss.strong_nss(["x1^2"], "x1")
    assert cert["M"] == "2" and cert["L"] == "0"
    assert dnss.verify(json.dumps(cert), ["x1^2"])
    assert dnss.strong_nss(["x1^2"], "x1 + 1", max_order=2, max_power=4) is None


def test_bound():
    b = dnss.bound(n=1, m=1, degree=2, dim=0)["bounds"]
    assert b["eps0"]["value"] == "4"
    assert b["M"]["value"] == "128"


def test_errors():
    with pytest.raises(dnss.ParseError):
        dnss.Poly("x1 +")
    assert issubclass(dnss.ParseError, dnss.Error)
    with pytest.raises(dnss.CertificateError):
        dnss.verify("{not json", GKOS1)


def test_cli_passthrough():
    code, out, err = dnss.run_cli(["bound", "--n", "1", "--degree", "2"])
    assert code == 0 and err == ""
    assert json.loads(out)["profile"]["n"] == "1"
