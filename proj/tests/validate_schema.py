#!/usr/bin/env python3
#
# Copyright (c) 2026-present, aspwb contributors
#
# This file is part of aspwb, released under the MIT license; see LICENSE.
#
"""Checks CLI --json output and HTTP responses against schemas/.

usage: validate_schema.py ASPWB_BINARY SOURCE_DIR
"""

import json
import pathlib
import signal
import subprocess
import sys
import tempfile
import urllib.error
import urllib.request

import jsonschema
import referencing
from referencing.jsonschema import DRAFT202012

binary = pathlib.Path(sys.argv[1]).resolve()
source = pathlib.Path(sys.argv[2]).resolve()
samples = source / "samples"

schemas = {}
for path in sorted((source / "schemas").glob("*.schema.json")):
    schemas[path.name.removesuffix(".schema.json")] = json.loads(path.read_text())
registry = referencing.Registry().with_resources(
    (doc["$id"], DRAFT202012.create_resource(doc)) for doc in schemas.values())

failures = []
checked = 0


def validate(name, instance, what):
    global checked
    checked += 1
    validator = jsonschema.Draft202012Validator(schemas[name], registry=registry)
    errors = sorted(validator.iter_errors(instance), key=lambda e: list(e.path))
    for e in errors:
        failures.append(f"{what}: {'/'.join(map(str, e.path))}: {e.message}")


def cli(workspace, *args, expect=0):
    r = subprocess.run([binary, "--workspace", workspace, "--json", *map(str, args)],
                       capture_output=True, text=True, timeout=120)
    if r.returncode != expect:
        failures.append(f"aspwb {' '.join(map(str, args))}: exit {r.returncode}, expected {expect}: {r.stderr}")
        return None
    return json.loads(r.stdout) if r.stdout.strip() else None


def request(port, method, path, body=None):
    data = None if body is None else json.dumps(body).encode()
    req = urllib.request.Request(f"http://127.0.0.1:{port}{path}", data=data, method=method,
                                 headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req, timeout=120) as r:
            return r.status, json.loads(r.read())
    except urllib.error.HTTPError as e:
        return e.code, json.loads(e.read())


def check_cli(ws):
    d = pathlib.Path(ws)
    (d / "ok.lp").write_text("a(X) :- c(X). c(1).\n")
    (d / "unsafe.lp").write_text("a(X) :- not c(X).\n")
    (d / "ab.lp").write_text("a :- not b. b :- not a.\n")
    (d / "edits.json").write_text(json.dumps([{"op": "move", "id": "queen(2)", "row": 2, "col": 3}]))

    for cmd in ("parse", "lint", "outline"):
        validate("lint", cli(ws, cmd, d / "ok.lp"), f"cli {cmd}")
    validate("lint", cli(ws, "lint", d / "unsafe.lp", expect=1), "cli lint unsafe")
    validate("solve", cli(ws, "solve", d / "ab.lp", "--store", "ab"), "cli solve")
    validate("labels", cli(ws, "interp", "list"), "cli interp list")
    validate("interpretation", cli(ws, "interp", "show", "ab-1"), "cli interp show")
    validate("facts", cli(ws, "interp", "facts", "ab-1"), "cli interp facts")
    validate("diff", cli(ws, "interp", "diff", "ab-1", "ab-2", expect=1), "cli interp diff")
    validate("deleted", cli(ws, "interp", "rm", "ab-2"), "cli interp rm")
    validate("visualize", cli(ws, "viz", samples / "edge.lp", "--generic"), "cli viz generic")
    validate("visualize", cli(ws, "viz", samples / "queens8.lp", "--program", samples / "queens_vis.lp"),
             "cli viz queens")
    validate("abduce", cli(ws, "abduce", samples / "queens4.lp", "--program", samples / "queens_vis.lp",
                           "--abducible", "q/2", "--edits", d / "edits.json"), "cli abduce")
    cli(ws, "tools", "add-tool", "cat", "/bin/cat", "--input", "stdin")
    cli(ws, "tools", "add-launch", "show", "--tool", "cat", "--file", d / "ab.lp")
    validate("registry", cli(ws, "tools", "list"), "cli tools list")
    validate("error", cli(ws, "interp", "show", "missing", expect=2), "cli error")
    validate("error", cli(ws, "lint", d / "nothing.lp", expect=2), "cli io error")


def check_http(ws):
    server = subprocess.Popen([binary, "--workspace", ws, "serve", "--port", "0"],
                              stdout=subprocess.PIPE, text=True)
    try:
        line = server.stdout.readline()
        if not line.startswith("listening on http://"):
            failures.append(f"serve printed {line!r}")
            return
        port = int(line.rsplit(":", 1)[1])
        queens4 = (samples / "queens4.lp").read_text()
        vis = (samples / "queens_vis.lp").read_text()
        abduction = {"interpretation": queens4, "program": vis, "abducibles": ["q/2"],
                     "edits": [{"op": "move", "id": "queen(2)", "row": 2, "col": 3}]}
        validate("abduce-request", abduction, "abduce request")

        expected = [
            ("GET", "/api/health", None, 200, "health"),
            ("POST", "/api/parse", {"source": "a(X) :- not c(X)."}, 200, "lint"),
            ("POST", "/api/solve", {"source": "a :- not b. b :- not a.", "store": "s"}, 200, "solve"),
            ("POST", "/api/interpretations", {"label": "left", "facts": "a. b."}, 201, "interpretation"),
            ("POST", "/api/interpretations/right", {"literals": ["b", "c"]}, 201, "interpretation"),
            ("GET", "/api/interpretations", None, 200, "labels"),
            ("GET", "/api/interpretations/left", None, 200, "interpretation"),
            ("POST", "/api/diff", {"left": "left", "right": "right"}, 200, "diff"),
            ("DELETE", "/api/interpretations/right", None, 200, "deleted"),
            ("POST", "/api/visualize", {"label": "left"}, 200, "visualize"),
            ("POST", "/api/visualize", {"interpretation": queens4, "program": vis}, 200, "visualize"),
            ("POST", "/api/abduce", abduction, 200, "abduce"),
            ("GET", "/api/interpretations/right", None, 404, "error"),
            ("GET", "/api/nothing", None, 404, "error"),
            ("POST", "/api/solve", {"source": "a(."}, 400, "error"),
            ("POST", "/api/visualize", {"interpretation": queens4, "program": ":- q(1,2)."}, 422, "error"),
            ("POST", "/api/abduce", {**abduction, "edits": [{"op": "move", "id": "nope", "x": 1, "y": 1}]}, 422,
             "error"),
        ]
        scene_id = None
        for method, path, body, status, schema in expected:
            got, doc = request(port, method, path, body)
            if got != status:
                failures.append(f"{method} {path}: status {got}, expected {status}: {doc}")
            validate(schema, doc, f"{method} {path}")
            if schema == "visualize":
                scene_id = doc.get("id")
        got, doc = request(port, "GET", f"/api/scene/{scene_id}")
        validate("visualize", doc, "GET /api/scene")
    finally:
        server.send_signal(signal.SIGTERM)
        try:
            server.wait(timeout=10)
        except subprocess.TimeoutExpired:
            server.kill()
            failures.append("serve did not stop on SIGTERM")


with tempfile.TemporaryDirectory() as ws:
    check_cli(ws)
with tempfile.TemporaryDirectory() as ws:
    check_http(ws)

for f in failures:
    print("FAIL", f)
print(f"{checked} documents checked, {len(failures)} problems")
sys.exit(1 if failures else 0)
