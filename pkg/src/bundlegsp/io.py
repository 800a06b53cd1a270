"""JSON and CSV formats for graphs, signals, bundles, covers and dictionaries.

Floats are written with ``repr`` so files round-trip exactly and reruns are
byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .bundle import Cover, GraphBundle, PartitionOfUnity, VoltageAssignment, build_bundle
from .graphs import Graph, Signal


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_dict(d: dict) -> Graph:
    return Graph(int(d["n"]), tuple((int(i), int(j)) for i, j in d["edges"]))


def _edge_key(u: int, v: int) -> str:
    return f"{u}-{v}"


def bundle_to_dict(bundle: GraphBundle) -> dict:
    """Base, fiber and the voltage of every base edge ``u-v`` with ``u < v``."""
    if bundle.voltages is None:
        raise ValueError("only bundles built from voltages can be serialized")
    return {
        "base": graph_to_dict(bundle.base),
        "fiber": graph_to_dict(bundle.fiber),
        "voltages": {
            _edge_key(u, v): bundle.voltages(u, v).tolist() for u, v in bundle.base.edges
        },
    }


def bundle_from_dict(d: dict) -> GraphBundle:
    base = graph_from_dict(d["base"])
    fiber = graph_from_dict(d["fiber"])
    table = {}
    for key, perm in d.get("voltages", {}).items():
        u, v = (int(t) for t in key.split("-"))
        table[(u, v)] = np.asarray(perm, dtype=int)
    return build_bundle(base, fiber, VoltageAssignment(base, fiber, table))


def cover_to_dict(cover: Cover, partition: PartitionOfUnity | None = None) -> dict:
    out = {"sets": [list(s) for s in cover.sets], "cover_edges": cover.cover_edges}
    if partition is not None:
        out["partition"] = [[float(partition[k][v]) for v in s] for k, s in enumerate(cover.sets)]
    return out


def cover_from_dict(base: Graph, d: dict) -> tuple[Cover, PartitionOfUnity | None]:
    cover = Cover(base, tuple(tuple(s) for s in d["sets"]), bool(d.get("cover_edges", True)))
    if "partition" not in d:
        return cover, None
    w = np.zeros((len(cover), base.n))
    for k, (s, vals) in enumerate(zip(cover.sets, d["partition"])):
        w[k, list(s)] = vals
    return cover, PartitionOfUnity(cover, w)


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- CSV -------------------------------------------------------------------


def csv_text(header: list[str], rows, comments: list[str] = ()) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in r])
    return buf.getvalue()


def signal_csv(x: Signal, comments=()) -> str:
    return csv_text(["vertex_index", "value"], ((v, float(x.values[v])) for v in range(x.graph.n)), comments)


def read_signal_csv(path, g: Graph) -> Signal:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))
    vals = np.full(g.n, np.nan)
    for r in rows:
        vals[int(r["vertex_index"])] = float(r["value"])
    if len(rows) != g.n or np.isnan(vals).any():
        raise ValueError(f"{path}: expected one row per vertex of a {g.n}-vertex graph")
    return Signal(g, vals)


def basis_csv(d, comments=()) -> str:
    """One column per atom, tagged ``k:eigenvalue`` (or just ``k`` without eigenvalues)."""
    ev = getattr(d, "eigenvalues", None)
    header = ["vertex"] + [f"{k}:{float(ev[k])!r}" if ev is not None else str(k) for k in range(len(d))]
    return csv_text(header, ([v, *map(float, d.matrix[v])] for v in range(d.graph.n)), comments)


def dictionary_csv(d, comments=()) -> str:
    """Bundle dictionary matrix, header entries ``U:b:f`` per column."""
    header = ["vertex"] + [":".join(map(str, d.index(k))) for k in range(len(d))]
    return csv_text(header, ([v, *map(float, d.matrix[v])] for v in range(d.graph.n)), comments)


def coefficients_csv(c, comments=()) -> str:
    vals = c.values
    rows = (
        (u, b, f, float(vals[u, b, f]))
        for u in range(vals.shape[0]) for b in range(vals.shape[1]) for f in range(vals.shape[2])
    )
    return csv_text(["set_index", "base_atom_index", "fiber_atom_index", "value"], rows, comments)


def write_atomic(path, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
