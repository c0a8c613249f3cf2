"""Command-line surface and the localhost JSON server for the explorer UI."""
from __future__ import annotations

import argparse
import json
import sys
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .arrangement import build_arrangement
from .barcodes import barcodes_equivalent, compute_barcode, equivalence_classes
from .core import (
    EngineError,
    canonical_json,
    diagram_from_json,
    diagram_to_json,
    validate_diagram,
)
from .criticality import compute_critical_set, pareto_to_json
from .examples import (
    gen_cupped_sphere,
    gen_cyclic_solid_torus,
    gen_klein,
    gen_rotational,
    rotational_model,
)
from .labeling import infer_effects, labeling_to_json, propagate_labels
from .morse import morse_report
from .oracle import SampledModel, region_polynomials
from .paths import make_path, rep_family
from .svg import svg_arrangement, svg_barcode

EXAMPLES = {
    "rotational": lambda: gen_rotational((1.0, 3.0), (0, 2), 2),
    "cupped-sphere": gen_cupped_sphere,
    "klein": gen_klein,
    "cyclic-solid-torus": gen_cyclic_solid_torus,
}


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _write(path: str | None, text: str):
    if path is None:
        sys.stdout.write(text + ("\n" if not text.endswith("\n") else ""))
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_diagram(path: str):
    return diagram_from_json(_read_json(path))


def _pipeline(diagram):
    pareto = compute_critical_set(diagram)
    arr = build_arrangement(pareto, diagram.frame, diagram.tolerance())
    return pareto, arr


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="paretopaths",
                                 description="Persistence paths for singular-value diagrams")
    sub = ap.add_subparsers(dest="cmd")

    p = sub.add_parser("validate", help="check a diagram, exit 0 iff clean")
    p.add_argument("diagram")

    p = sub.add_parser("critical", help="compute the Pareto critical set")
    p.add_argument("diagram")
    p.add_argument("-o", "--out")

    p = sub.add_parser("arrange", help="build the planar arrangement")
    p.add_argument("diagram")
    p.add_argument("-o", "--out")
    p.add_argument("--svg")

    p = sub.add_parser("label", help="propagate region polynomials")
    p.add_argument("diagram")
    p.add_argument("-o", "--out")
    p.add_argument("--svg")
    p.add_argument("--infer-effects", action="store_true")

    p = sub.add_parser("paths", help="persistence paths (rep family or waypoints)")
    p.add_argument("diagram")
    p.add_argument("--rep", action="store_true")
    p.add_argument("--waypoints")
    p.add_argument("--max-paths", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0,
                   help="reserved for randomized probing; the rep enumeration "
                        "itself is deterministic")
    p.add_argument("-o", "--out")

    p = sub.add_parser("barcode", help="path-wise barcode of a path")
    p.add_argument("diagram")
    p.add_argument("--path", required=True)
    p.add_argument("-o", "--out")
    p.add_argument("--svg")

    p = sub.add_parser("report", help="Morse-Conley report for a path")
    p.add_argument("diagram")
    p.add_argument("--path", required=True)
    p.add_argument("-o", "--out")

    p = sub.add_parser("example", help="emit a built-in diagram")
    p.add_argument("name", choices=sorted(EXAMPLES))
    p.add_argument("-o", "--out")
    p.add_argument("--model", help="also write the companion sampled model")

    p = sub.add_parser("oracle", help="brute-force region Betti polynomials")
    p.add_argument("model")
    p.add_argument("--arrangement", required=True,
                   help="arrangement JSON (or a diagram JSON to arrange first)")
    p.add_argument("-o", "--out")

    p = sub.add_parser("serve", help="serve a diagram session for the explorer UI")
    p.add_argument("diagram")
    p.add_argument("--port", type=int, default=8642)

    args = ap.parse_args(argv)
    if args.cmd is None:
        ap.print_usage(sys.stderr)
        return 2
    try:
        return _dispatch(args)
    except EngineError as exc:
        sys.stderr.write(f"error[{exc.code}]: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error[io]: {exc}\n")
        return 1


def _dispatch(args) -> int:
    if args.cmd == "validate":
        d = _load_diagram(args.diagram)
        violations = validate_diagram(d)
        for v in violations:
            print(f"{v.code}: {v.message} ({v.where})")
        return 0 if not violations else 1

    if args.cmd == "critical":
        d = _load_diagram(args.diagram)
        pareto, _ = _pipeline(d)
        _write(args.out, canonical_json(pareto_to_json(pareto)))
        return 0

    if args.cmd == "arrange":
        d = _load_diagram(args.diagram)
        _, arr = _pipeline(d)
        if args.svg:
            _write(args.svg, svg_arrangement(arr))
        _write(args.out, canonical_json(arr.to_json()))
        return 0

    if args.cmd == "label":
        d = _load_diagram(args.diagram)
        _, arr = _pipeline(d)
        if args.infer_effects:
            maps = infer_effects(arr, d)
            _write(args.out, canonical_json([dict(sorted(m.items())) for m in maps]))
            return 0
        labeling = propagate_labels(arr, d)
        if args.svg:
            _write(args.svg, svg_arrangement(arr, labeling))
        _write(args.out, canonical_json(labeling_to_json(labeling)))
        return 0

    if args.cmd == "paths":
        d = _load_diagram(args.diagram)
        _, arr = _pipeline(d)
        if args.rep:
            fam = rep_family(arr, d, max_paths=args.max_paths)
            doc = {"paths": [p.to_json() for p in fam.paths],
                   "truncated": fam.truncated,
                   "classes": [[fam.paths.index(p) for p in cl]
                               for cl in equivalence_classes(fam)]}
            _write(args.out, canonical_json(doc))
            return 0
        if not args.waypoints:
            raise EngineError("need --rep or --waypoints")
        wp = [_as_point(w) for w in _read_json(args.waypoints)["waypoints"]]
        path = make_path(arr, d, wp, snap_radius=0.05 * d.frame.diagonal, nudge=True)
        _write(args.out, canonical_json(path.to_json()))
        return 0

    if args.cmd == "barcode":
        d = _load_diagram(args.diagram)
        path = _path_from_json(d, _read_json(args.path))
        bc = compute_barcode(path)
        if args.svg:
            _write(args.svg, svg_barcode(bc))
        _write(args.out, canonical_json(bc.to_json()))
        return 0

    if args.cmd == "report":
        d = _load_diagram(args.diagram)
        path = _path_from_json(d, _read_json(args.path))
        rep = morse_report(path, d.total_poly)
        lines = ["j  c_j  weak  strong"]
        for j, cj in enumerate(rep.c):
            lines.append(f"{j}  {cj}    {'ok' if rep.weak[j] else 'FAIL'}"
                         f"    {'ok' if rep.strong[j] else 'FAIL'}")
        lines.append(f"chi = {rep.chi}  euler {'ok' if rep.euler_ok else 'FAIL'}")
        q_txt = "FAIL: " + rep.q_failure if rep.q_failure else str(list(rep.q_poly))
        lines.append(f"Q = {q_txt}")
        _write(args.out, "\n".join(lines))
        return 0

    if args.cmd == "example":
        d = EXAMPLES[args.name]()
        if args.model:
            if args.name != "rotational":
                raise EngineError(f"no sampled model for example {args.name!r}")
            _write(args.model, canonical_json(rotational_model().to_json()))
        _write(args.out, canonical_json(diagram_to_json(d)))
        return 0

    if args.cmd == "oracle":
        model = SampledModel.from_json(_read_json(args.model))
        doc = _read_json(args.arrangement)
        if "faces" in doc:  # a serialized arrangement: probe its face samples
            from .oracle import betti, sublevel_complex
            regions = {}
            for face in doc["faces"]:
                a, b = face["sample"]
                regions[face["id"]] = betti(model, sublevel_complex(model, a, b))
        else:
            d = diagram_from_json(doc)
            _, arr = _pipeline(d)
            regions = region_polynomials(model, arr)
        _write(args.out, canonical_json(
            {fid: list(p.coeffs) for fid, p in sorted(regions.items())}))
        return 0

    if args.cmd == "serve":
        d = _load_diagram(args.diagram)
        serve(d, args.port)
        return 0

    return 2


def _as_point(w):
    return (float(w[0]), float(w[1]))


def _path_from_json(diagram, data):
    """Rebuild a path from its waypoints (the JSON's own crossings are echo)."""
    pareto = compute_critical_set(diagram)
    arr = build_arrangement(pareto, diagram.frame, diagram.tolerance())
    wp = [_as_point(w) for w in data["waypoints"]]
    return make_path(arr, diagram, wp, snap_radius=0.05 * diagram.frame.diagonal,
                     nudge=True)


# ---------------------------------------------------------------------------
# serve mode

class Session:
    """Immutable per-diagram state shared by all requests."""

    def __init__(self, diagram):
        self.diagram = diagram
        self.pareto = compute_critical_set(diagram)
        self.arr = build_arrangement(self.pareto, diagram.frame, diagram.tolerance())
        self.labeling = propagate_labels(self.arr, diagram)
        self._rep = None

    def rep(self):
        if self._rep is None:
            self._rep = rep_family(self.arr, self.diagram)
        return self._rep

    def post_path(self, payload: dict) -> dict:
        wp = [_as_point(w) for w in payload["waypoints"]]
        snap = float(payload.get("snap_radius", 0.05 * self.diagram.frame.diagonal))
        path = make_path(self.arr, self.diagram, wp, snap_radius=snap, nudge=True)
        bc = compute_barcode(path)
        rep = morse_report(path, self.diagram.total_poly)
        return {"path": path.to_json(), "barcode": bc.to_json(),
                "report": rep.to_json()}


def _barcode_from_json(doc: dict):
    from .barcodes import Bar, Barcode
    bars = []
    for q, rows in doc.get("dims", {}).items():
        for birth, death, bkey, dkey in rows:
            bars.append(Bar(dim=int(q), birth=float(birth),
                            death=None if death is None else float(death),
                            birth_key=bkey, death_key=dkey))
    return Barcode(bars=tuple(sorted(bars, key=lambda b: (b.dim, b.birth))))


class _Handler(BaseHTTPRequestHandler):
    session: Session = None  # injected by serve()

    def log_message(self, *args):  # quiet
        pass

    def _send(self, code: int, body: str, ctype="application/json"):
        data = body.encode()
        self.send_response(code)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def do_GET(self):
        s = self.session
        if self.path == "/diagram":
            self._send(200, canonical_json(diagram_to_json(s.diagram)))
        elif self.path == "/arrangement":
            self._send(200, canonical_json(s.arr.to_json()))
        elif self.path == "/labeling":
            self._send(200, canonical_json(labeling_to_json(s.labeling)))
        elif self.path == "/rep-paths":
            fam = s.rep()
            self._send(200, canonical_json(
                {"paths": [p.to_json() for p in fam.paths],
                 "truncated": fam.truncated}))
        elif self.path == "/svg/arrangement":
            self._send(200, svg_arrangement(s.arr, s.labeling), ctype="image/svg+xml")
        elif self.path in ("/", "/index.html"):
            self._send(200, _INDEX_FALLBACK, ctype="text/html")
        else:
            self._send(404, canonical_json({"error": {"code": "not-found"}}))

    def do_POST(self):
        length = int(self.headers.get("Content-Length", "0"))
        raw = self.rfile.read(length)
        try:
            payload = json.loads(raw)
        except json.JSONDecodeError:
            self._send(400, canonical_json({"error": {"code": "bad-json"}}))
            return
        try:
            if self.path == "/path":
                self._send(200, canonical_json(self.session.post_path(payload)))
            elif self.path == "/equivalent":
                a = _barcode_from_json(payload["a"])
                b = _barcode_from_json(payload["b"])
                self._send(200, canonical_json(
                    {"equivalent": barcodes_equivalent(a, b)}))
            else:
                self._send(404, canonical_json({"error": {"code": "not-found"}}))
        except EngineError as exc:
            self._send(422, canonical_json(
                {"error": {"code": exc.code, "message": str(exc)}}))
        except (KeyError, TypeError, ValueError) as exc:
            self._send(400, canonical_json(
                {"error": {"code": "bad-request", "message": str(exc)}}))


_INDEX_FALLBACK = """<!doctype html>
<html><body><p>paretopaths session server. Endpoints: /diagram /arrangement
/labeling /rep-paths /svg/arrangement, POST /path, POST /equivalent.
The explorer UI is served separately (see frontend/).</p></body></html>
"""


def serve(diagram, port: int):
    session = Session(diagram)
    handler = type("BoundHandler", (_Handler,), {"session": session})
    httpd = ThreadingHTTPServer(("127.0.0.1", port), handler)
    sys.stderr.write(f"serving on http://127.0.0.1:{port}\n")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass


if __name__ == "__main__":
    sys.exit(main())
