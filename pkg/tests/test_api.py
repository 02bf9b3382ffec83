import math

import pytest
from fastapi.testclient import TestClient

from chordgraph.api import app

ARCH = [[0, 0], [1, 2], [2, 3], [3, 2.1], [4, 0.1]]
EQUILATERAL = [[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]]
SQUARE_PATH = {"points": [[0, 0], [1, 0], [1, 1], [0, 1]], "edges": [[0, 1], [1, 2], [2, 3]]}


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_info(client):
    response = client.get("/info")
    assert response.status_code == 200
    body = response.json()
    assert body["detour_bound"] == pytest.approx(2.094)
    assert "lattice" in body["pipeline_kinds"]


def test_build_convex(client):
    heptagon = [[math.cos(0.1 + 2 * math.pi * k / 7), math.sin(0.1 + 2 * math.pi * k / 7)] for k in range(7)]
    response = client.post("/build/convex", json={"points": heptagon})
    assert response.status_code == 200
    body = response.json()
    assert body["edge_count"] <= body["budget_bound"]
    assert len(body["graph"]["points"]) == 7


def test_build_convex_rejects_interior_points(client):
    response = client.post("/build/convex", json={"points": [[0, 0], [4, 0.1], [0.2, 4], [1, 1]]})
    assert response.status_code == 400
    assert "convex" in response.json()["detail"]


def test_build_one_sided(client):
    response = client.post("/build/one-sided", json={"points": ARCH, "direction_deg": 0.0})
    assert response.status_code == 200
    assert response.json()["edge_count"] == 7


def test_gabriel(client):
    response = client.post("/gabriel", json={"points": EQUILATERAL})
    assert response.status_code == 200
    body = response.json()
    assert body["edge_count"] == 3
    assert body["gabriel"]["ok"] is True


def test_route(client):
    response = client.post("/route", json={"graph": SQUARE_PATH, "source": 0, "target": 2})
    assert response.status_code == 200
    body = response.json()
    assert body["found"] is True
    assert body["witness"]["vertices"] == [0, 1, 2]
    assert body["report"]["increasing_chord"] is True


def test_route_not_found(client):
    response = client.post("/route", json={"graph": SQUARE_PATH, "source": 0, "target": 3})
    assert response.status_code == 200
    assert response.json()["found"] is False


def test_verify_path_errors(client):
    response = client.post("/verify/path", json={"graph": SQUARE_PATH, "path": [0, 1, 0]})
    assert response.status_code == 400
    response = client.post("/verify/path", json={"graph": SQUARE_PATH, "path": [0, 2]})
    assert response.status_code == 400


def test_invalid_graph_document(client):
    bad = {"points": [[0, 0], [1, 0]], "edges": [[1, 0]]}
    response = client.post("/verify/path", json={"graph": bad, "path": [0, 1]})
    assert response.status_code == 422


def test_pipeline(client):
    response = client.post("/pipeline", json={"kind": "convex", "n": 8, "seed": 1, "record": True})
    assert response.status_code == 200
    body = response.json()
    assert body["success"] is True
    assert body["state"]["report"]["failures"] == 0

    history = client.get("/history", params={"limit": 5})
    assert history.status_code == 200
    assert history.json()[0]["command"] == "pipeline convex"


def test_pipeline_unknown_kind(client):
    response = client.post("/pipeline", json={"kind": "spiral", "n": 8, "seed": 1})
    assert response.status_code == 400
