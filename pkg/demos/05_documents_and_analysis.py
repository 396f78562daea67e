#!/usr/bin/env python3
"""Documents, underlying graphs, and the command line.

Decomposition scripts serialize to a small JSON schema; the underlying
graph forgets direction (one undirected edge per fresh cell) and its
(components, first Betti number) signature is stable under subdivision.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import globflow as gf
from globflow import documents, underlying

fork_doc = {
    "skeleton0": ["A", "m", "B", "C"],
    "steps": [
        {"cells": ["x"], "boundary": [], "endpoints": ["A", "m"], "boundary_map": {}},
        {"cells": ["y"], "boundary": [], "endpoints": ["m", "B"], "boundary_map": {}},
        {"cells": ["z"], "boundary": [], "endpoints": ["m", "C"], "boundary_map": {}},
    ],
}

script = documents.document_to_script(fork_doc)
flow = gf.build(script)
print("built:", flow)

print("\n== underlying graph and signature ==")
graph = gf.underlying_graph(script)
signature = gf.homotopy_signature(graph)
print("V =", len(graph.vertices), " E =", len(graph.edges))
print("components =", signature.components, " betti1 =", signature.betti1)

circle = gf.script(["0", "1"], [gf.step(["a", "b"], ("0", "1"))])
print("two parallel cells:", gf.homotopy_signature(gf.underlying_graph(circle)))

print("\n== DOT export ==")
print(underlying.to_dot(graph))

print("== flow dump round trip ==")
dumped = documents.flow_to_document(flow)
rebuilt = gf.build(documents.document_to_script(dumped))
print("isomorphic after round trip:", gf.is_isomorphic(flow, rebuilt) is not None)

print("\n== the same through the command line ==")
with tempfile.TemporaryDirectory() as tmp:
    doc_path = Path(tmp) / "fork.json"
    doc_path.write_text(json.dumps(fork_doc), encoding="utf-8")
    for argv in (
        ["build", str(doc_path)],
        ["analyze", str(doc_path), "--init", "A", "--final", "B"],
    ):
        run = subprocess.run(
            [sys.executable, "-m", "globflow.cli", *argv],
            capture_output=True,
            text=True,
        )
        print(f"$ globflow {' '.join(argv[:1])} ... -> exit {run.returncode}")
        print("\n".join("  " + line for line in run.stdout.splitlines()[:8]))
        print("  ...")
