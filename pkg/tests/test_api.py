"""Tests for the read-only HTTP surface."""


def test_root(client):
    r = client.get("/")
    assert r.status_code == 200
    assert r.json() == {"service": "clusterlab", "docs": "/docs", "api": "/api"}


def test_health(client):
    r = client.get("/api/health")
    assert r.status_code == 200
    data = r.json()
    assert data["status"] == "ok"
    assert "sl2" in data["suites"]
    assert data["max_seeds"] > 0


def test_framed_seed(client):
    r = client.get("/api/seeds/framed/A1")
    assert r.status_code == 200
    data = r.json()
    assert [v["name"] for v in data["vertices"]] == ["A0", "A2", "A1", "A3"]
    assert data["sigma"] == ["A2", "A3"]
    assert data["word"] == [1, -1]


def test_framed_seed_dot(client):
    r = client.get("/api/seeds/framed/A1", params={"format": "dot"})
    assert r.status_code == 200
    assert r.text.startswith("digraph")


def test_framed_seed_unknown_type(client):
    r = client.get("/api/seeds/framed/Q7")
    assert r.status_code == 400
    assert "Unknown Cartan type" in r.json()["detail"]


def test_build_seed(client):
    body = {"cartan": {"matrix": [[2, -1], [-1, 2]]}, "word": [1, 2, 1, -1, -2, -1]}
    r = client.post("/api/seeds/build", json=body)
    assert r.status_code == 200
    data = r.json()
    assert len(data["vertices"]) == 8
    assert sum(not v["frozen"] for v in data["vertices"]) == 4
    assert len(data["epsilon"]) == 8


def test_build_seed_invalid_word(client):
    body = {"cartan": {"matrix": [[2]]}, "word": [1, 1]}
    assert client.post("/api/seeds/build", json=body).status_code == 400


def test_build_seed_rejects_extra_fields(client):
    body = {"cartan": {"matrix": [[2]]}, "word": [1, -1], "depth": 3}
    assert client.post("/api/seeds/build", json=body).status_code == 422


def test_membership(client):
    body = {"cartan_type": "A1", "expression": "A0^-1", "sigma": ["all"]}
    r = client.post("/api/membership", json=body)
    assert r.status_code == 200
    data = r.json()
    assert data["verdict"] == "InUpperOnly"
    assert data["witnesses"][0]["offending_vertex"] == "A0"

    r = client.post("/api/membership", json={"cartan_type": "A1", "expression": "A1'"})
    assert r.json()["verdict"] == "InUpperBar"


def test_membership_bad_expression(client):
    r = client.post("/api/membership", json={"cartan_type": "A1", "expression": "A7"})
    assert r.status_code == 400


def test_verify_suite(client):
    r = client.get("/api/verify/monomial-hom", params={"seed": 5})
    assert r.status_code == 200
    data = r.json()
    assert data["failed"] == 0
    assert data["config"]["command"] == "api monomial-hom"
    assert data["config"]["rng_seed"] == 5


def test_verify_gl2_single_k(client):
    r = client.get("/api/verify/gl2", params={"k": 1})
    assert r.status_code == 200
    assert r.json()["total"] == 6


def test_verify_unknown_suite(client):
    r = client.get("/api/verify/sl9")
    assert r.status_code == 404
    assert r.json()["detail"] == "Suite 'sl9' not found"


def test_verify_rejects_bad_query(client):
    assert client.get("/api/verify/sl2", params={"samples": 0}).status_code == 422
