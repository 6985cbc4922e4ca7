import math

import numpy as np
import pytest
from fastapi.testclient import TestClient

from canfield.full_joint import configuration_from_dict, validate
from canfield.service import create_app

FIG14 = {"ell": 6, "b": 4, "theta_deg": 150, "p": 5.8, "phi_deg": 20}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(grid_cap=(100, 100), cors_origin="http://localhost:5173"))


class TestSolve:
    def test_invalid_is_data_not_error(self, client):
        r = client.post("/api/solve", json=FIG14)
        assert r.status_code == 200
        doc = r.json()
        assert doc["valid"] is False
        assert doc["configurations"] == []
        assert doc["failures"]

    def test_valid_configurations(self, client):
        r = client.post("/api/solve", json={**FIG14, "ell": 7})
        assert r.status_code == 200
        doc = r.json()
        assert doc["valid"] is True
        assert len(doc["configurations"]) == 4
        assert doc["valid"] == bool(doc["configurations"])
        # embedded canonical configuration re-deserializes and re-validates
        for entry in doc["configurations"]:
            cfg = configuration_from_dict(entry["config"])
            assert validate(cfg, 1e-9) == []
            assert entry["thetas_deg"][0] == pytest.approx(150.0, abs=1e-9)

    def test_branch_filter(self, client):
        r = client.post("/api/solve", json={**FIG14, "ell": 7, "branch": "-+"})
        assert [c["branch"] for c in r.json()["configurations"]] == ["-+"]

    def test_malformed_input_400(self, client):
        assert client.post("/api/solve", json={**FIG14, "ell": -1}).status_code == 400
        assert client.post("/api/solve", json={"ell": 6}).status_code == 400
        assert (
            client.post("/api/solve", json={**FIG14, "ell": "six"}).status_code == 400
        )

    def test_p_out_of_bounds_400(self, client):
        assert client.post("/api/solve", json={**FIG14, "p": 99}).status_code == 400

    def test_bounds_included(self, client):
        doc = client.post("/api/solve", json={**FIG14, "ell": 7}).json()
        assert doc["bounds"]["p_bounds"] == [0.0, 7.0]
        assert doc["bounds"]["theta_max_deg"] > 180


class TestSweep:
    def test_nonempty(self, client):
        r = client.post(
            "/api/sweep",
            json={"ell": 6, "b": 4, "theta_deg": 100, "p_samples": 40, "phi_samples": 40},
        )
        assert r.status_code == 200
        doc = r.json()
        assert doc["samples"]
        assert 0 < doc["coverage"]["fraction"] <= 1
        assert doc["rejected"] + len(doc["samples"]) == 40 * 40 * 4

    def test_grid_cap_413(self, client):
        r = client.post(
            "/api/sweep",
            json={"ell": 6, "b": 4, "theta_deg": 100, "p_samples": 101, "phi_samples": 5},
        )
        assert r.status_code == 413

    def test_unreachable_angle_empty_200(self, client):
        r = client.post(
            "/api/sweep",
            json={"ell": 6, "b": 4, "theta_deg": 300, "p_samples": 5, "phi_samples": 5},
        )
        assert r.status_code == 200
        doc = r.json()
        assert doc["empty"] is True
        assert doc["samples"] == []

    def test_coverage_ordering(self, client):
        fr = {}
        for th in (100, 160):
            r = client.post(
                "/api/sweep",
                json={
                    "ell": 6, "b": 4, "theta_deg": th,
                    "p_samples": 50, "phi_samples": 50,
                    "p_range": [3.0, 6.0],
                    "phi_range_deg": [-90, 90],
                },
            )
            fr[th] = r.json()["coverage"]["fraction"]
        assert fr[100] > fr[160]


class TestFk:
    def test_round_trip(self, client):
        solve = client.post("/api/solve", json={**FIG14, "ell": 7, "branch": "++"}).json()
        thetas_deg = solve["configurations"][0]["thetas_deg"]
        r = client.post(
            "/api/fk",
            json={
                "ell": 7, "b": 4,
                "theta1_deg": thetas_deg[0],
                "theta2_deg": thetas_deg[1],
                "theta3_deg": thetas_deg[2],
            },
        )
        assert r.status_code == 200
        sols = r.json()["solutions"]
        assert any(
            s["branch"] == "++"
            and abs(s["p"] - 5.8) < 1e-6
            and abs(s["phi_deg"] - 20) < 1e-4
            for s in sols
        )

    def test_symmetric_targets_phi_zero(self, client):
        solve = client.post(
            "/api/solve",
            json={"ell": 6, "b": 4, "theta_deg": 120, "p": 3.5, "phi_deg": 0, "branch": "++"},
        ).json()
        t = solve["configurations"][0]["thetas_deg"]
        r = client.post(
            "/api/fk",
            json={"ell": 6, "b": 4, "theta1_deg": t[0], "theta2_deg": t[1], "theta3_deg": t[2]},
        )
        assert any(abs(s["phi_deg"]) < 1e-4 for s in r.json()["solutions"])

    def test_unreachable_empty_200(self, client):
        r = client.post(
            "/api/fk",
            json={"ell": 6, "b": 4, "theta1_deg": 114, "theta2_deg": 17, "theta3_deg": 345},
        )
        assert r.status_code == 200
        assert r.json()["solutions"] == []


class TestBounds:
    def test_p_zero(self, client):
        doc = client.get("/api/bounds", params={"ell": 6, "b": 4, "p": 0}).json()
        assert doc["theta_max_deg"] == pytest.approx(180.0, abs=1e-12)
        assert doc["p_bounds"] == [0.0, 6.0]

    def test_figure_value(self, client):
        doc = client.get("/api/bounds", params={"ell": 6, "b": 4, "p": 5.8}).json()
        assert doc["theta_max_deg"] == pytest.approx(248.2889079888746, abs=1e-9)
        assert doc["d"] == pytest.approx(math.sqrt(5.8 ** 2 + 16 / 3), abs=1e-12)

    def test_out_of_range_400(self, client):
        assert client.get("/api/bounds", params={"ell": 6, "b": 4, "p": 7}).status_code == 400

    def test_bad_params_400(self, client):
        assert client.get("/api/bounds", params={"ell": 0, "b": 4}).status_code == 400


class TestStatelessness:
    def test_request_order_irrelevant(self, client):
        reqs = [
            ("/api/solve", FIG14),
            ("/api/solve", {**FIG14, "ell": 7}),
            ("/api/bounds", None),
            ("/api/fk", {"ell": 6, "b": 4, "theta1_deg": 114, "theta2_deg": 17, "theta3_deg": 345}),
        ]

        def run(order):
            out = []
            for k in order:
                path, body = reqs[k]
                if body is None:
                    out.append(client.get(path, params={"ell": 6, "b": 4, "p": 2}).json())
                else:
                    out.append(client.post(path, json=body).json())
            return out

        first = run([0, 1, 2, 3])
        second = run([3, 2, 1, 0])
        for a, b in zip(first, reversed(second)):
            assert a == b
