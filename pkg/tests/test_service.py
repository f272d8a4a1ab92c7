import json
from fractions import Fraction

import jsonschema
import pytest
from fastapi.testclient import TestClient

from hypolab.service.app import create_app
from hypolab.service.schema_bundle import generate_bundle, load_shipped_bundle, schema_for

FOUR_TERM = {"alpha": "2", "n": 2, "beta": "1", "m": 1, "gamma": "1", "p": 1, "delta": "1", "q": 2}
REVEALING_BELOW = {"alpha": "0", "n": 2, "beta": "19/10", "m": 1, "gamma": "0", "p": 1, "delta": "1", "q": 2}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    assert client.get("/health").json()["status"] == "ok"


def test_project_zero(client):
    assert client.post("/project", json={"u": 3, "v": 2}).json() == {"result": "0"}


def test_project_nonzero(client):
    data = client.post("/project", json={"u": 2, "v": 3}).json()
    assert data == {"result": {"coeff": "1/2", "degree": 1}}


def test_inner(client):
    data = client.post("/inner", json={"u": 1, "v": 2, "w": 2, "t": 3}).json()
    assert data["result"] == {"re": "1/6", "im": "0"}


def test_inner_precondition_is_400(client):
    response = client.post("/inner", json={"u": 3, "v": 2, "w": 2, "t": 3})
    assert response.status_code == 400
    assert response.json()["error"] == "PRECONDITION"


def test_commutator_element_four_term(client):
    payload = {"symbol": {"alpha": "0", "n": 2, "beta": "2", "m": 1, "gamma": "0", "p": 1, "delta": "1", "q": 2},
               "src": 2, "dst": 2}
    data = client.post("/commutator-element", json=payload).json()
    assert data["result"] == {"re": "1/45", "im": "0"}


def test_commutator_element_harmonic_symbol(client):
    payload = {
        "symbol": {"analytic": [{"deg": 1, "re": "2"}], "coanalytic": [{"deg": 2, "re": "1"}]},
        "src": 2,
        "dst": 2,
    }
    data = client.post("/commutator-element", json=payload).json()
    assert data["result"]["re"] == "1/45"


def test_closed_form_endpoint(client):
    data = client.post("/closed-form", json={"a": 2, "b": 2, "k": 3, "l": 5, "c": "1"}).json()
    assert data["result"]["re"] == "1/18"


def test_qform(client):
    data = client.post("/qform", json={"symbol": FOUR_TERM, "k": 5}).json()
    assert data["k"] == 5 and data["l"] == 6 and data["r"] == 7
    assert data["a01"] == {"re": "0", "im": "0"}


def test_qform_unbalanced_maps_to_400(client):
    bad = dict(FOUR_TERM, n=3)
    response = client.post("/qform", json={"symbol": bad, "k": 5})
    assert response.status_code == 400
    assert response.json()["error"] == "UNBALANCED"


def test_compress(client):
    data = client.post("/compress", json={"symbol": FOUR_TERM, "degrees": [2, 3, 4]}).json()
    assert data["dim"] == 3
    # hermitian wire format
    assert data["entries"][1][0]["re"] == data["entries"][0][1]["re"]


def test_scan_refuted(client):
    data = client.post("/scan", json={"symbol": REVEALING_BELOW, "max_degree": 10}).json()
    assert data["verdict"] == "REFUTED"
    assert data["witness"]["value"] == {"re": "-29/891000", "im": "0"}
    support = [i for i, v in enumerate(data["witness"]["vector"]) if v != {"re": "0", "im": "0"}]
    assert support == [8]
    jsonschema.validate(data, schema_for("scan_report"))


def test_scan_max_degree_cap(client):
    response = client.post("/scan", json={"symbol": REVEALING_BELOW, "max_degree": 5000})
    assert response.status_code == 422


def test_limits(client):
    data = client.post("/limits", json={"symbol": FOUR_TERM}).json()
    assert data == {"a": "12", "rho": {"re": "2", "im": "0"}}


def test_spectrum_from_symbol(client):
    data = client.post("/spectrum", json={"symbol": FOUR_TERM}).json()
    assert data["a"] == "12" and data["abs_rho"] == "2"
    assert data["interval"] == ["8", "16"]
    jsonschema.validate(data, schema_for("spectrum_report"))


def test_spectrum_from_model(client):
    data = client.post("/spectrum", json={"model": {"a": "2", "rho": "1"}}).json()
    assert data["interval"] == ["0", "4"]


def test_spectrum_requires_exactly_one_source(client):
    response = client.post("/spectrum", json={})
    assert response.status_code == 400
    response = client.post("/spectrum", json={"symbol": FOUR_TERM, "model": {"a": "2", "rho": "1"}})
    assert response.status_code == 400


def test_sections(client):
    data = client.post("/sections", json={"model": {"a": "2", "rho": "1"}, "n": 3}).json()
    assert data["min_eigenvalue"] == pytest.approx(2 - 2 ** 0.5)
    assert len(data["eigenvalues"]) == 3


def test_converge(client):
    data = client.post("/converge", json={"symbol": FOUR_TERM, "k_list": [100, 200]}).json()
    assert [row["k"] for row in data["rows"]] == [100, 200]
    assert data["rows"][0]["a01"] == {"re": "0", "im": "0"}
    jsonschema.validate(data, schema_for("convergence_report"))


def test_check_main(client):
    data = client.post("/check-main", json={"symbol": FOUR_TERM}).json()
    assert data["holds"] and data["lhs"] == "12" and data["rhs_squared"] == "16"
    jsonschema.validate(data, schema_for("inequality_report"))


def test_check_specific(client):
    data = client.post("/check-specific", json={"symbol": FOUR_TERM}).json()
    assert data["holds"]


def test_compare_lushi(client):
    symbol = {"alpha": "1", "n": 2, "beta": "1", "m": 1, "gamma": "0", "p": 1, "delta": "3/4", "q": 2}
    data = client.post("/compare-lushi", json={"symbol": symbol}).json()
    assert data["strictly_sharper"]
    assert data["lu_shi_bound"]["holds"] and not data["paper_bound"]["holds"]
    jsonschema.validate(data, schema_for("lushi_report"))


def test_threshold_example(client):
    data = client.post("/threshold-example", json={"max_k": 4}).json()
    assert data["bounds"][0] == {"k": 0, "bound": "2/3"}
    assert data["bounds"][1] == {"k": 1, "bound": "3"}
    assert data["bounds"][2] == {"k": 2, "bound": "16/5"}
    assert data["supremum"] == "4"
    jsonschema.validate(data, schema_for("threshold_report"))


def test_threshold_unsupported(client):
    response = client.post("/threshold-example", json={"q_exp": 3})
    assert response.status_code == 400
    assert response.json()["error"] == "UNSUPPORTED"


def test_classify_normal(client):
    symbol = {"alpha": "1", "n": 2, "beta": "1", "m": 1, "gamma": "-1", "p": 1, "delta": "-1", "q": 2}
    data = client.post("/classify-normal", json={"symbol": symbol}).json()
    assert data["normal"] and data["type"] == "TYPE_II"
    assert data["lambda"] == {"re": "1", "im": "0"}
    jsonschema.validate(data, schema_for("normality_report"))


def test_hardy_check(client):
    payload = {"symbol": {"coeffs": {"-2": "1", "1": "2"}}}
    data = client.post("/hardy-check", json=payload).json()
    assert data["necessary"]["fails"] and data["necessary"]["m"] == 2 and data["necessary"]["N"] == 1
    assert data["equal_modulus"]["status"] == "NOT_APPLICABLE"
    jsonschema.validate(data, schema_for("hardy_report"))


def test_sweep(client):
    payload = {
        "base": {"alpha": "1", "n": 2, "beta": "1", "m": 1, "gamma": "0", "p": 1, "delta": "0", "q": 2},
        "vary": [{"slot": "delta", "values": ["0", "1/2", "3/4", "1"]}],
    }
    data = client.post("/sweep", json=payload).json()
    assert [row["index"] for row in data["rows"]] == [0, 1, 2, 3]
    holds = [row["holds"] for row in data["rows"]]
    assert holds == [True, True, False, False]
    assert data["violations"] == 2
    jsonschema.validate(data, schema_for("sweep_report"))


def test_sweep_two_slots_deterministic_order(client):
    payload = {
        "base": {"alpha": "1", "n": 2, "beta": "0", "m": 1, "gamma": "0", "p": 1, "delta": "0", "q": 2},
        "vary": [
            {"slot": "beta", "values": ["0", "1"]},
            {"slot": "delta", "values": ["0", "1", "2"]},
        ],
    }
    first = client.post("/sweep", json=payload).json()
    second = client.post("/sweep", json=payload).json()
    assert first == second
    assert len(first["rows"]) == 6
    assert first["rows"][1]["coefficients"]["beta"] == {"re": "0", "im": "0"}
    assert first["rows"][1]["coefficients"]["delta"] == {"re": "1", "im": "0"}


def test_malformed_rational_is_422(client):
    response = client.post("/limits", json={"symbol": dict(FOUR_TERM, alpha={"re": "x", "im": "0"})})
    assert response.status_code == 422


def test_shipped_schema_bundle_is_current():
    assert load_shipped_bundle() == generate_bundle()


def test_rationals_survive_wire_round_trip(client):
    symbol = dict(FOUR_TERM, alpha={"re": "123456789/987654321", "im": "-22/7"})
    data = client.post("/limits", json={"symbol": symbol}).json()
    # |alpha|^2 * 4 + 1 - 1 - 4, all exact
    expected = (
        4 * (Fraction(123456789, 987654321) ** 2 + Fraction(22, 7) ** 2)
        + Fraction(1) - Fraction(1) - Fraction(4)
    )
    assert Fraction(data["a"]) == expected
    assert str(Fraction(data["a"])) == data["a"]
