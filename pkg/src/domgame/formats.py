"""Text formats: edge-list graph files, verdict records and stored reports."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .bounds import BoundReport, Verdict, fmt_rational, graph_id
from .game import Player
from .graph import Graph, GraphError


class FormatError(ValueError):
    pass


def parse_graph(text: str) -> Graph:
    """'#' comments and blank lines are skipped; first data line is "n m",
    then m lines "u v"."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            rows.append((lineno, int(parts[0]), int(parts[1])))
        except ValueError:
            raise FormatError(f"line {lineno}: expected two integers, got {line!r}") from None
    if not rows:
        raise FormatError("missing 'n m' header")
    _, n, m = rows[0]
    if n < 1 or m < 0:
        raise FormatError(f"bad header: n={n} m={m}")
    if len(rows) - 1 != m:
        raise FormatError(f"header announces {m} edges, found {len(rows) - 1}")
    edges, seen = [], set()
    for lineno, u, v in rows[1:]:
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"line {lineno}: vertex out of range 0..{n - 1}")
        if u == v:
            raise FormatError(f"line {lineno}: loop at {u}")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise FormatError(f"line {lineno}: repeated edge {e[0]} {e[1]}")
        seen.add(e)
        edges.append(e)
    try:
        return Graph.from_edges(n, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def serialize_graph(g: Graph, comment: str | None = None) -> str:
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    edges = g.edges()
    lines.append(f"{g.n} {len(edges)}")
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad rational {s!r}") from None


def parse_verdict(line: str) -> Verdict:
    fields = line.rstrip("\n").split("\t")
    if len(fields) != 6:
        raise FormatError(f"verdict record needs 6 fields, got {len(fields)}")
    gid, bid, holds, lhs, rhs, sev = fields
    if holds not in ("0", "1"):
        raise FormatError(f"holds flag must be 0 or 1, got {holds!r}")
    if sev not in ("OK", "WARN", "FAIL"):
        raise FormatError(f"unknown severity {sev!r}")
    return Verdict(gid, bid, holds == "1", parse_rational(lhs), parse_rational(rhs), sev)


# Stored reports: JSON with the graph and whatever quantities are known.
# Keys of per-palette tables are "X,l" (e.g. "A,3"); edges are "u-v".

def report_to_dict(r: BoundReport) -> dict:
    def px(d):
        return {x.value: v for x, v in d.items()}

    return {
        "graph_id": r.graph_id, "n": r.n, "edges": [list(e) for e in r.graph.edges()],
        "ceiling": r.ceiling, "gamma": r.gamma, "dom": r.dom,
        "domg": px(r.domg),
        "wins": {f"{x.value},{k}": v for (x, k), v in r.wins.items()},
        "score": {f"{x.value},{k}": v for (x, k), v in r.score.items()},
        "r": {f"{x.value},{k}": v for (x, k), v in r.r.items()},
        "edge_domg": {f"{x.value},{e[0]}-{e[1]}": v for (x, e), v in r.edge_domg.items()},
        "edge_score": {f"{x.value},{k},{e[0]}-{e[1]}": v for (x, k, e), v in r.edge_score.items()},
        "vertex_score": {f"{k},{v}": s for (k, v), s in r.vertex_score.items()},
        "dombobgood": px(r.dombobgood),
        "gaps": list(r.gaps),
    }


def _edge(s: str) -> tuple[int, int]:
    u, v = s.split("-")
    return int(u), int(v)


def report_from_dict(d: dict) -> BoundReport:
    try:
        g = Graph.from_edges(int(d["n"]), (tuple(e) for e in d.get("edges", [])))
        r = BoundReport(d.get("graph_id") or graph_id(g), g, int(d.get("ceiling", g.n + 1)),
                        g.n, g.min_degree, g.max_degree, d.get("gamma"), d.get("dom"))
        px = Player.parse
        r.domg = {px(x): int(v) for x, v in d.get("domg", {}).items()}
        for key, v in d.get("wins", {}).items():
            x, k = key.split(",")
            r.wins[px(x), int(k)] = bool(v)
        for name in ("score", "r"):
            table = getattr(r, name)
            for key, v in d.get(name, {}).items():
                x, k = key.split(",")
                table[px(x), int(k)] = int(v)
        for key, v in d.get("edge_domg", {}).items():
            x, e = key.split(",")
            r.edge_domg[px(x), _edge(e)] = int(v)
        for key, v in d.get("edge_score", {}).items():
            x, k, e = key.split(",")
            r.edge_score[px(x), int(k), _edge(e)] = int(v)
        for key, v in d.get("vertex_score", {}).items():
            k, u = key.split(",")
            r.vertex_score[int(k), int(u)] = int(v)
        r.dombobgood = {px(x): bool(v) for x, v in d.get("dombobgood", {}).items()}
        r.gaps = list(d.get("gaps", []))
    except (KeyError, ValueError, TypeError, GraphError) as exc:
        raise FormatError(f"bad report: {exc}") from None
    return r


def read_report(path: str | Path) -> BoundReport:
    try:
        d = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not JSON ({exc.msg})") from None
    return report_from_dict(d)


def format_moves(moves: Iterable) -> str:
    return " ".join(f"{v}:{c}" for v, c in moves) or "-"


__all__ = ["FormatError", "parse_graph", "serialize_graph", "read_graph", "parse_verdict",
           "parse_rational", "report_to_dict", "report_from_dict", "read_report", "format_moves",
           "fmt_rational"]
