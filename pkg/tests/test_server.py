from __future__ import annotations

import json
import threading
import urllib.error
import urllib.request
from http.server import ThreadingHTTPServer

import pytest

import paretopaths as pp
from paretopaths.cli import Session, _Handler

GREEN = json.load(open("fixtures/cupped_green_waypoints.json"))


@pytest.fixture(scope="module")
def server():
    session = Session(pp.examples.gen_cupped_sphere())
    handler = type("TestHandler", (_Handler,), {"session": session})
    httpd = ThreadingHTTPServer(("127.0.0.1", 0), handler)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{httpd.server_address[1]}"
    httpd.shutdown()


def get(base, path):
    with urllib.request.urlopen(base + path) as r:
        return r.status, r.read().decode()


def post(base, path, doc):
    req = urllib.request.Request(base + path, data=json.dumps(doc).encode(),
                                 headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req) as r:
            return r.status, r.read().decode()
    except urllib.error.HTTPError as e:
        return e.code, e.read().decode()


class TestEndpoints:
    def test_get_diagram(self, server):
        status, body = get(server, "/diagram")
        assert status == 200
        assert json.loads(body)["field"] == "Z/2"

    def test_get_arrangement_and_labeling(self, server):
        status, body = get(server, "/arrangement")
        assert status == 200
        arr = json.loads(body)
        assert arr["bottom_face"] != arr["top_face"]
        status, body = get(server, "/labeling")
        assert status == 200
        assert "1+t^2" in json.loads(body)["labels"].values()

    def test_get_rep_paths(self, server):
        status, body = get(server, "/rep-paths")
        assert status == 200
        doc = json.loads(body)
        assert doc["truncated"] is False and doc["paths"]

    def test_svg(self, server):
        status, body = get(server, "/svg/arrangement")
        assert status == 200 and body.startswith("<?xml")

    def test_post_green_path(self, server):
        status, body = post(server, "/path", GREEN)
        assert status == 200
        doc = json.loads(body)
        assert set(doc["barcode"]["dims"]) == {"0", "2"}
        assert doc["report"]["euler_ok"] is True
        # waypoint echo: the submitted points come back snapped in order
        assert len(doc["path"]["waypoints"]) == len(GREEN["waypoints"])

    def test_post_equivalent(self, server):
        _, body = post(server, "/path", GREEN)
        bc = json.loads(body)["barcode"]
        status, body2 = post(server, "/equivalent", {"a": bc, "b": bc})
        assert status == 200
        assert json.loads(body2)["equivalent"] is True

    def test_non_monotone_rejected_422(self, server):
        status, body = post(server, "/path",
                            {"waypoints": [[1.0, 1.6], [-0.7, -0.7]]})
        assert status == 422
        assert json.loads(body)["error"]["code"] == "order-error"

    def test_malformed_json_400(self, server):
        req = urllib.request.Request(server + "/path", data=b"{nope",
                                     headers={"Content-Type": "application/json"})
        try:
            with urllib.request.urlopen(req) as r:
                status = r.status
        except urllib.error.HTTPError as e:
            status = e.code
        assert status == 400

    def test_unknown_route_404(self, server):
        status, _ = post(server, "/nothing", {})
        assert status == 404


class TestKleinSession:
    def test_klein_labeling_contains_1_plus_4t(self):
        session = Session(pp.examples.gen_klein())
        handler = type("KHandler", (_Handler,), {"session": session})
        httpd = ThreadingHTTPServer(("127.0.0.1", 0), handler)
        thread = threading.Thread(target=httpd.serve_forever, daemon=True)
        thread.start()
        try:
            base = f"http://127.0.0.1:{httpd.server_address[1]}"
            status, body = get(base, "/labeling")
            assert status == 200
            assert "1+4t" in json.loads(body)["labels"].values()
        finally:
            httpd.shutdown()
