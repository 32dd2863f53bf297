"""HTTP surface: endpoints, wire formats, and the error contract."""

import math

import pytest
from starlette.testclient import TestClient

from graceful.service import app

COSH_HALF = 1.1276259652063807852


@pytest.fixture(scope="module")
def client():
    with TestClient(app, raise_server_exceptions=False) as c:
        yield c


class TestHealth:
    def test_health(self, client):
        body = client.get("/health").json()
        assert body["status"] == "ok"


class TestEval:
    def test_roots_golden(self, client):
        resp = client.post("/eval", json={
            "problem": {"roots": [[1, 0], [2, 0]]}, "x": [1, 0]})
        assert resp.status_code == 200
        body = resp.json()
        assert body["backend_used"] == "pf"
        (g1re, g1im), (g2re, g2im) = body["values"]
        assert abs(g1re - -1.9524924420125597565) < 1e-9
        assert abs(g2re - 4.6707742704716049919) < 1e-9
        assert abs(g1im) < 1e-12 and abs(g2im) < 1e-12

    def test_confluent_monomials(self, client):
        resp = client.post("/eval", json={
            "problem": {"roots": [[0, 0], [0, 0], [0, 0]]}, "x": [2, 0]})
        body = resp.json()
        assert body["backend_used"] == "exp"
        got = [v[0] for v in body["values"]]
        assert max(abs(a - b) for a, b in zip(got, [1.0, 2.0, 2.0])) < 1e-12

    def test_coeffs_input(self, client):
        resp = client.post("/eval", json={
            "problem": {"coeffs": [[2, 0], [-3, 0], [1, 0]]}, "x": [0, 0]})
        body = resp.json()
        assert abs(body["values"][0][0] - 1.0) < 1e-9
        assert abs(body["values"][1][0]) < 1e-9

    def test_contour_backend_reports_nodes(self, client):
        resp = client.post("/eval", json={
            "problem": {"roots": [[1, 0], [2, 0]]}, "x": [1, 0], "backend": "contour"})
        body = resp.json()
        assert body["backend_used"] == "contour"
        assert body["diagnostics"]["quad_nodes"] >= 16

    def test_every_backend_selectable(self, client):
        want = -1.9524924420125597565
        for backend in ("pf", "exp", "contour", "series", "auto"):
            resp = client.post("/eval", json={
                "problem": {"roots": [[1, 0], [2, 0]]}, "x": [1, 0],
                "backend": backend})
            assert resp.status_code == 200
            assert abs(resp.json()["values"][0][0] - want) < 1e-8

    def test_both_roots_and_coeffs_rejected(self, client):
        resp = client.post("/eval", json={
            "problem": {"roots": [[1, 0]], "coeffs": [[1, 0], [1, 0]]}, "x": [0, 0]})
        assert resp.status_code == 422
        assert resp.json()["error"]["type"] == "ValidationError"

    def test_non_monic_coeffs_rejected(self, client):
        resp = client.post("/eval", json={
            "problem": {"coeffs": [[2, 0], [-3, 0], [2, 0]]}, "x": [0, 0]})
        assert resp.status_code == 422

    def test_numerical_failure_envelope(self, client):
        resp = client.post("/eval", json={
            "problem": {"roots": [[1, 0], [1, 0]]}, "x": [1, 0], "backend": "pf"})
        assert resp.status_code == 500
        assert resp.json()["error"]["type"] == "ConfluentRoots"

    def test_nan_rejected(self, client):
        resp = client.post("/eval", json={
            "problem": {"roots": [["nan", 0]]}, "x": [1, 0]})
        assert resp.status_code == 422


class TestTable:
    def test_header_and_grid(self, client):
        resp = client.post("/table", json={
            "problem": {"roots": [[1, 0], [-1, 0]]},
            "x_min": 0.0, "x_max": 1.0, "n_points": 3})
        assert resp.status_code == 200
        assert resp.headers["content-type"].startswith("text/csv")
        lines = resp.text.strip().split("\n")
        assert lines[0] == "x,g1_re,g1_im,g2_re,g2_im,backend"
        assert len(lines) == 4
        middle = lines[2].split(",")
        assert abs(float(middle[0]) - 0.5) < 1e-15
        assert abs(float(middle[1]) - COSH_HALF) < 1e-12

    def test_two_points_are_the_endpoints(self, client):
        resp = client.post("/table", json={
            "problem": {"roots": [[1, 0]]}, "x_min": -2.0, "x_max": 2.0, "n_points": 2})
        rows = [line.split(",") for line in resp.text.strip().split("\n")[1:]]
        assert [float(r[0]) for r in rows] == [-2.0, 2.0]

    def test_confluent_rows_note_companion_backend(self, client):
        resp = client.post("/table", json={
            "problem": {"roots": [[1, 0], [1, 0]]}, "x_min": 0.0, "x_max": 1.0,
            "n_points": 3})
        rows = resp.text.strip().split("\n")[1:]
        assert all(row.endswith(",exp") for row in rows)

    def test_bad_grid_rejected(self, client):
        resp = client.post("/table", json={
            "problem": {"roots": [[1, 0]]}, "x_min": 1.0, "x_max": 0.0, "n_points": 5})
        assert resp.status_code == 422

    def test_deterministic(self, client):
        body = {"problem": {"roots": [[0.3, 0.1], [2, -1]]},
                "x_min": -1.0, "x_max": 1.0, "n_points": 9}
        first = client.post("/table", json=body).text
        second = client.post("/table", json=body).text
        assert first == second


class TestVerify:
    def test_separated_roots_pass(self, client):
        resp = client.post("/verify", json={
            "problem": {"roots": [[1, 0], [2, 0], [4, 0]]}, "samples": 10, "seed": 7})
        body = resp.json()
        assert body["passed"] is True
        assert len(body["samples"]) == 10
        assert "surrogate" in body["entirety_note"]

    def test_confluent_roots_pass(self, client):
        resp = client.post("/verify", json={
            "problem": {"roots": [[1, 0], [1, 0], [1, 0]]}, "samples": 8, "seed": 3})
        assert resp.json()["passed"] is True

    def test_seed_determinism(self, client):
        body = {"problem": {"coeffs": [[2, 0], [-3, 0], [1, 0]]}, "samples": 6, "seed": 11}
        first = client.post("/verify", json=body).content
        second = client.post("/verify", json=body).content
        assert first == second


class TestSweep:
    def test_report_shape_and_failure_row(self, client):
        resp = client.post("/sweep", json={
            "problem": {"roots": [[1, 0], [1, 0]]},
            "eps": [1e-2, 1e-8, 0.0], "x": [1, 0]})
        body = resp.json()
        assert body["reference_backend"] == "series_extended"
        assert body["columns"]["eps"] == [1e-2, 1e-8, 0.0]
        last = body["points"][-1]
        assert last["partial_fraction_error"] is None
        assert "partial_fraction" in last["failures"]
        assert body["points"][0]["partial_fraction_error"] < 1e-10

    def test_single_root_template_rejected(self, client):
        resp = client.post("/sweep", json={
            "problem": {"roots": [[1, 0]]}, "eps": [1e-2], "x": [1, 0]})
        assert resp.status_code == 422


class TestIvp:
    def test_cosh_values(self, client):
        resp = client.post("/ivp", json={
            "problem": {"coeffs": [[-1, 0], [0, 0], [1, 0]]},
            "x0": [0, 0], "derivs": [[1, 0], [0, 0]],
            "eval_points": [[0, 0], [1, 0], [-1, 0]]})
        body = resp.json()
        assert body["coefficients"] == [[1.0, 0.0], [0.0, 0.0]]
        values = [v[0] for v in body["values"]]
        assert abs(values[0] - 1.0) < 1e-12
        assert abs(values[1] - math.cosh(1.0)) < 1e-10
        assert abs(values[2] - math.cosh(1.0)) < 1e-10

    def test_wrong_deriv_count(self, client):
        resp = client.post("/ivp", json={
            "problem": {"coeffs": [[-1, 0], [0, 0], [1, 0]]},
            "derivs": [[1, 0]]})
        assert resp.status_code == 422
