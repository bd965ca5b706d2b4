import json
import math
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from projfactor.service import create_app
from projfactor.service.handlers import report_json
from projfactor.service.models import ReportDocument

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def load(name):
    return json.loads((DATA / name).read_text())


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


class TestFactorEndpoint:
    def test_identical_subspaces_all_paths(self, client):
        doc = load("plane_r4.json")
        r = client.post("/factor", json={"document": doc, "v": "V", "w": "V"})
        assert r.status_code == 200
        body = r.json()
        assert body["passed"] is True
        values = [i["value"] for i in body["items"] if i["kind"] == "factor"]
        assert values and all(abs(v - 1.0) < 1e-12 for v in values)

    def test_coordinate_plane_factors_match_measure_ratios(self, client):
        doc = load("plane_r4.json")
        expected = {"V12": 0.5, "V13": 0.0, "V14": 0.5,
                    "V23": 0.5, "V24": 0.0, "V34": 0.5}
        for name, value in expected.items():
            r = client.post("/factor", json={
                "document": doc, "v": "V", "w": name, "path": "svd"})
            assert r.status_code == 200
            item = r.json()["items"][0]
            assert item["value"] == pytest.approx(value, abs=1e-12)

    def test_unknown_name_is_400(self, client):
        doc = load("plane_r4.json")
        r = client.post("/factor", json={"document": doc, "v": "V", "w": "nope"})
        assert r.status_code == 400
        assert "nope" in r.json()["detail"]

    def test_schema_violation_is_422(self, client):
        doc = load("plane_r4.json")
        doc["subspaces"]["V"] = [[1, 0, 0]]  # wrong length
        r = client.post("/factor", json={"document": doc, "v": "V", "w": "V12"})
        assert r.status_code == 422

    def test_blade_path_dimension_clash_is_400(self, client):
        doc = load("plane_r4.json")
        doc["subspaces"]["line"] = [[1, 0, 0, 0]]
        r = client.post("/factor", json={
            "document": doc, "v": "line", "w": "V12", "path": "blade"})
        assert r.status_code == 400


class TestAngleAndPrincipal:
    def test_angle_of_plane_with_itself(self, client):
        doc = load("plane_r4.json")
        r = client.post("/angle", json={"document": doc, "v": "V", "w": "V"})
        assert r.json()["items"][0]["value"] == pytest.approx(0.0)

    def test_principal_decomposition_fields(self, client):
        doc = load("plane_r4.json")
        r = client.post("/principal", json={"document": doc, "v": "V", "w": "V12"})
        details = r.json()["items"][0]["details"]
        assert details["sigma"] == pytest.approx([math.sqrt(2) / 2] * 2, abs=1e-12)
        assert details["theta"] == pytest.approx([math.pi / 4] * 2, abs=1e-12)
        assert len(details["e_vectors"]) == 2


class TestVerifyEndpoint:
    def test_line_partition_from_document(self, client):
        doc = load("complex_line_c2.json")
        r = client.post("/verify", json={
            "theorem": "line-partition", "document": doc,
            "line": "ray", "partition": "coordinate_lines"})
        body = r.json()
        assert body["passed"] is True

    def test_subspace_coords_with_measures(self, client):
        doc = load("plane_r4.json")
        r = client.post("/verify", json={
            "theorem": "subspace-coords", "document": doc,
            "v": "V", "set_name": "square"})
        body = r.json()
        assert body["passed"] is True
        sums = {i["name"]: i for i in body["items"]}
        assert sums["coordinate_measure_sum"]["target"] == pytest.approx(16.0)

    def test_random_binomial(self, client):
        r = client.post("/verify", json={
            "theorem": "binomial", "random": {"n": 5, "p": 2, "q": 3},
            "field": "complex", "seed": 11})
        body = r.json()
        assert body["passed"] is True
        assert body["items"][0]["target"] == pytest.approx(3.0)

    def test_invalid_partition_is_400(self, client):
        doc = load("plane_r4.json")
        doc["partitions"]["bad"] = ["V", "ZW"]  # not orthogonal, wrong dims
        r = client.post("/verify", json={
            "theorem": "line-partition", "document": doc,
            "line": "V12", "partition": "bad"})
        assert r.status_code == 400


class TestQuantumEndpoint:
    def test_eigenvector_distribution(self, client):
        doc = load("complex_line_c2.json")
        r = client.post("/quantum", json={
            "document": doc, "state": "psi", "observable": "spin"})
        body = r.json()
        probs = {i["name"]: i["value"] for i in body["items"]
                 if i["kind"] == "probability"}
        assert probs["probability[-1]"] == pytest.approx(0.0)
        assert probs["probability[1]"] == pytest.approx(1.0)
        assert body["passed"] is True

    def test_balanced_superposition_and_fidelity(self, client):
        doc = load("complex_line_c2.json")
        r = client.post("/quantum", json={
            "document": doc, "state": "balanced", "observable": "spin",
            "fidelity_with": "psi"})
        body = r.json()
        items = {i["name"]: i for i in body["items"]}
        assert items["probability[1]"]["value"] == pytest.approx(0.5)
        assert items["fidelity[balanced,psi]"]["value"] == pytest.approx(0.5)

    def test_real_document_rejected(self, client):
        doc = load("plane_r4.json")
        doc["states"] = {"s": [1, 0, 0, 0]}
        r = client.post("/quantum", json={
            "document": doc, "state": "s", "fidelity_with": "s"})
        assert r.status_code == 400


class TestAppendixEndpoint:
    def test_small_run_passes(self, client):
        r = client.post("/appendix", json={"trials": 5, "seed": 3, "dims_up_to": 5})
        body = r.json()
        assert body["passed"] is True
        assert all(i["kind"] == "identity" for i in body["items"])

    def test_zero_trials_gives_empty_valid_report(self, client):
        r = client.post("/appendix", json={"trials": 0, "seed": 3})
        body = r.json()
        assert body["passed"] is True
        assert body["items"] == []
        assert body["summary"]["total"] == 0

    def test_fixed_seed_is_reproducible(self, client):
        payload = {"trials": 4, "seed": 99, "dims_up_to": 5, "field": "real"}
        a = client.post("/appendix", json=payload)
        b = client.post("/appendix", json=payload)
        ra = report_json(ReportDocument.model_validate(a.json()))
        rb = report_json(ReportDocument.model_validate(b.json()))
        assert ra == rb
