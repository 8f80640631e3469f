"""graph6 and adjacency-list JSON encodings.

graph6 packs the upper triangle column by column (``x[0][1], x[0][2],
x[1][2], x[0][3], ...``) six bits per printable byte, each byte offset by 63,
after a size prefix.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ParseError
from .graph import Graph

HEADER = ">>graph6<<"


def _encode_size(n: int) -> bytes:
    if n < 0:
        raise ParseError("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return b"~" + bytes(63 + ((n >> s) & 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return b"~~" + bytes(63 + ((n >> s) & 63) for s in (30, 24, 18, 12, 6, 0))
    raise ParseError("graph too large for graph6")


def to_graph6(g: Graph, header: bool = False) -> str:
    n = g.n_vertices
    out = bytearray(_encode_size(n))
    acc, filled = 0, 0
    rows = g.rows
    for j in range(1, n):
        rj = rows[j]
        for i in range(j):
            acc = (acc << 1) | (rj >> i & 1)
            filled += 1
            if filled == 6:
                out.append(acc + 63)
                acc, filled = 0, 0
    if filled:
        out.append((acc << (6 - filled)) + 63)
    text = out.decode("ascii")
    return HEADER + text if header else text


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise ParseError("empty graph6 string")
    data = s.encode("ascii", errors="replace")
    if any(not 63 <= c <= 126 for c in data):
        raise ParseError("graph6 byte outside the printable range 63..126")
    vals = [c - 63 for c in data]
    if vals[0] != 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise ParseError("truncated graph6 size field")
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        body = vals[8:]
    else:
        if len(vals) < 4:
            raise ParseError("truncated graph6 size field")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, rows, check=False)


def to_json_dict(g: Graph) -> dict:
    doc = {"n_vertices": g.n_vertices, "adjacency": [g.neighbors(v) for v in range(g.n_vertices)]}
    if g.labels is not None:
        doc["labels"] = list(g.labels)
    return doc


def from_json_dict(doc: dict) -> Graph:
    try:
        n = int(doc["n_vertices"])
        adjacency = doc["adjacency"]
        if len(adjacency) != n:
            raise ParseError("adjacency list length does not match n_vertices")
        rows = []
        for nbrs in adjacency:
            row = 0
            for w in nbrs:
                if not isinstance(w, int) or not 0 <= w < n:
                    raise ParseError(f"bad neighbour index {w!r}")
                row |= 1 << w
            rows.append(row)
        labels = doc.get("labels")
        return Graph(n, rows, labels)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed adjacency JSON: {exc}") from exc


def write_graph(g: Graph, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or ("json" if path.suffix == ".json" else "graph6")
    if fmt == "json":
        path.write_text(json.dumps(to_json_dict(g)) + "\n")
    elif fmt == "graph6":
        path.write_text(to_graph6(g) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def read_graph(path: str | Path) -> Graph:
    """Load a graph6 or JSON file; format is sniffed from the content."""
    try:
        text = Path(path).read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from exc
        return from_json_dict(doc)
    lines = [ln for ln in stripped.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise ParseError(f"{path}: expected exactly one graph6 line, found {len(lines)}")
    return from_graph6(lines[0])
