"""graph6, DIMACS edge format and plain arc lists.

Writers emit canonical text (edges sorted) and every parser accepts what
the matching writer produces.
"""

from __future__ import annotations

import warnings

from .graph import Digraph, Graph, GraphError


class FormatError(GraphError):
    pass


# graph6 ---------------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return chr(126) * 2 + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def write_graph6(g: Graph, header: bool = False) -> str:
    bits = []
    for j in range(1, g.n):
        row = g.adjacency[j]
        for i in range(j):
            bits.append(1 if i in row else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return (">>graph6<<" if header else "") + _encode_n(g.n) + body


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise FormatError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= x <= 63 for x in data):
        raise FormatError("graph6 characters must lie in '?'..'~'")
    if data[0] < 63:
        n, pos = data[0], 1
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    elif len(data) >= 8:
        n = 0
        for x in data[2:8]:
            n = (n << 6) | x
        pos = 8
    else:
        raise FormatError("truncated graph6 size header")
    nbits = n * (n - 1) // 2
    body = data[pos:]
    if len(body) != (nbits + 5) // 6:
        raise FormatError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    if any((body[k // 6] >> (5 - k % 6)) & 1 for k in range(nbits, len(body) * 6)):
        raise FormatError("graph6 padding bits must be zero")
    return Graph.from_edges(n, edges)


# DIMACS ---------------------------------------------------------------------


def write_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def _split_lines(text: str) -> list[str]:
    # "/" is accepted as a line separator so one-line specimens parse too.
    out = []
    for raw in text.replace("/", "\n").splitlines():
        line = raw.strip()
        if line:
            out.append(line)
    return out


def _duplicate(msg: str, strict: bool) -> None:
    if strict:
        raise FormatError(msg)
    warnings.warn(msg, stacklevel=3)


def parse_dimacs(text: str, strict: bool = True) -> Graph:
    n = m = None
    edges: set[tuple[int, int]] = set()
    for line in _split_lines(text):
        tok = line.split()
        if tok[0] == "c":
            continue
        if tok[0] == "p":
            if n is not None:
                raise FormatError("second problem line")
            if len(tok) != 4 or tok[1] not in ("edge", "col"):
                raise FormatError(f"malformed problem line: {line!r}")
            n, m = int(tok[2]), int(tok[3])
        elif tok[0] == "e":
            if n is None:
                raise FormatError("edge line before problem line")
            if len(tok) != 3:
                raise FormatError(f"malformed edge line: {line!r}")
            u, v = int(tok[1]) - 1, int(tok[2]) - 1
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"edge {line!r} out of range 1..{n}")
            if u == v:
                raise FormatError(f"self-loop in {line!r}")
            key = (min(u, v), max(u, v))
            if key in edges:
                _duplicate(f"duplicate edge {line!r}", strict)
                continue
            edges.add(key)
        else:
            raise FormatError(f"unknown DIMACS line: {line!r}")
    if n is None:
        raise FormatError("missing problem line")
    if strict and m is not None and m != len(edges):
        raise FormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, sorted(edges))


# arc lists ------------------------------------------------------------------


def write_arcs(d: Digraph) -> str:
    lines = [str(d.n)] + [f"{u} {v}" for u, v in d.arcs()]
    return "\n".join(lines) + "\n"


def parse_digraph_arcs(text: str, strict: bool = True) -> Digraph:
    """First line: vertex count. Then one ``u v`` arc per line, 0-based."""
    lines = [ln for ln in _split_lines(text) if not ln.startswith("#")]
    if not lines:
        raise FormatError("empty arc list")
    head = lines[0].split()
    if len(head) != 1 or not head[0].isdigit():
        raise FormatError(f"malformed header: {lines[0]!r}")
    n = int(head[0])
    arcs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for line in lines[1:]:
        tok = line.split()
        if len(tok) != 2:
            raise FormatError(f"malformed arc line: {line!r}")
        u, v = int(tok[0]), int(tok[1])
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"arc {line!r} out of range 0..{n - 1}")
        if u == v:
            raise FormatError(f"self-loop in {line!r}")
        if (u, v) in seen:
            _duplicate(f"duplicate arc {line!r}", strict)
            continue
        seen.add((u, v))
        arcs.append((u, v))
    return Digraph.from_arcs(n, arcs)


def encode(g: Graph | Digraph) -> str:
    """Single-string encoding used in transcripts: graph6 or arc list."""
    return write_arcs(g) if g.directed else write_graph6(g)


def decode(text: str) -> Graph | Digraph:
    s = text.strip()
    if "\n" in s or s.isdigit():
        return parse_digraph_arcs(s)
    return parse_graph6(s)


def read_graph_file(path: str, strict: bool = True) -> Graph | Digraph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith((".g6", ".graph6")):
        return parse_graph6(text)
    if path.endswith((".dimacs", ".col", ".clq")):
        return parse_dimacs(text, strict=strict)
    if path.endswith((".arcs", ".txt")):
        return parse_digraph_arcs(text, strict=strict)
    stripped = text.lstrip()
    if stripped.startswith(("p ", "c ", "p\t")):
        return parse_dimacs(text, strict=strict)
    return decode(text)
