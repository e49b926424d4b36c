"""Text formats: graph JSON, provider spec strings, action files, Gamma
files, paths, move scripts and DOT export.

Relative file names are looked up in the working directory first, then in
the directory named by ``MEDIANLAB_FIXTURES``.
"""
from __future__ import annotations

import json
import os
import re
from pathlib import Path

from .action import ActionSpec, left_multiply, permutation, toggle, translate
from .errors import GraphFormatError, VertexNotFound
from .graphs import ExplicitGraph, FreeGroupTree, Graph, Lattice, SubsetCube, edge, parse_letter
from .raag import DefinitionGraph
from .rewriting import Flip, InsertBacktrack, RemoveBacktrack

FIXTURE_ENV = "MEDIANLAB_FIXTURES"

PALETTE = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan4",
           "goldenrod", "gray40", "navy", "olivedrab"]


def resolve(path: str) -> Path:
    p = Path(path)
    if p.exists() or p.is_absolute():
        return p
    base = os.environ.get(FIXTURE_ENV)
    if base and (Path(base) / p).exists():
        return Path(base) / p
    return p


def _read(path: str) -> tuple[str, str]:
    p = resolve(path)
    try:
        return p.read_text(encoding="utf-8"), str(path)
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc.strerror}") from None


def _locate(text: str, needle: str, nth: int = 1) -> str:
    i = -1
    for _ in range(nth):
        i = text.find(needle, i + 1)
        if i < 0:
            return ""
    line = text.count("\n", 0, i) + 1
    col = i - (text.rfind("\n", 0, i) + 1) + 1
    return f"{line}:{col}: "


def _load_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def parse_graph(text: str, source: str = "<graph>") -> ExplicitGraph:
    """``{"vertices": ["a", ...], "edges": [["a", "b"], ...]}``, strictly checked."""
    data = _load_json(text, source)
    if not isinstance(data, dict) or set(data) - {"vertices", "edges", "comment"}:
        raise GraphFormatError(f"{source}: expected an object with 'vertices' and 'edges'")
    verts = data.get("vertices")
    edges = data.get("edges")
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise GraphFormatError(f"{source}: 'vertices' must be a list of strings")
    if not isinstance(edges, list):
        raise GraphFormatError(f"{source}: 'edges' must be a list")
    seen = set()
    for v in verts:
        if v in seen:
            raise GraphFormatError(f"{source}:{_locate(text, json.dumps(v), 2)}duplicate vertex {v!r}")
        seen.add(v)
    pairs = []
    done = set()
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise GraphFormatError(f"{source}: edge {e!r} must be a pair of vertex names")
        u, v = e
        where = _locate(text, json.dumps(e).replace(", ", ",")) or _locate(text, json.dumps(e))
        if u == v:
            raise GraphFormatError(f"{source}:{where}loop at {u!r}")
        for x in (u, v):
            if x not in seen:
                raise GraphFormatError(f"{source}:{where}edge uses undeclared vertex {x!r}")
        if edge(u, v) in done:
            raise GraphFormatError(f"{source}:{where}duplicate edge {u!r}-{v!r}")
        done.add(edge(u, v))
        pairs.append((u, v))
    try:
        return ExplicitGraph(verts, pairs)
    except GraphFormatError as exc:
        raise GraphFormatError(f"{source}: {exc}") from None


def load_graph(path: str) -> ExplicitGraph:
    return parse_graph(*_read(path))


def dump_graph(g: ExplicitGraph) -> str:
    names = {v: g.format_vertex(v) for v in g.vertices}
    data = {
        "vertices": [names[v] for v in g.vertices],
        "edges": [[names[u], names[v]] for u, v in g.edges],
    }
    return json.dumps(data, indent=1) + "\n"


def open_graph(spec: str) -> Graph:
    """Build a graph from ``lattice:N``, ``tree:K``, ``cube:FILE`` or ``file:PATH``.

    ``tree:`` also accepts a comma-separated generator list and ``cube:`` an
    inline label list (used when no such file exists).
    """
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise GraphFormatError(f"graph spec {spec!r} must look like kind:argument")
    if kind == "lattice":
        if not arg.isdigit() or int(arg) < 1:
            raise GraphFormatError(f"lattice dimension must be a positive integer, got {arg!r}")
        return Lattice(int(arg))
    if kind == "tree":
        if arg.isdigit():
            return FreeGroupTree(int(arg))
        names = [x for x in arg.split(",") if x]
        if not names:
            raise GraphFormatError("tree needs a rank or generator names")
        return FreeGroupTree(names)
    if kind == "cube":
        p = resolve(arg)
        if p.is_file():
            labels = [ln.strip() for ln in p.read_text(encoding="utf-8").splitlines()]
            labels = [x for x in labels if x and not x.startswith("#")]
        else:
            labels = [x.strip() for x in arg.split(",") if x.strip()]
        if not labels:
            raise GraphFormatError(f"cube spec {spec!r} has no labels")
        return SubsetCube(labels)
    if kind == "file":
        return load_graph(arg)
    raise GraphFormatError(f"unknown graph kind {kind!r}")


def parse_vertex(g: Graph, text: str):
    try:
        v = g.parse_vertex(text)
    except VertexNotFound:
        raise GraphFormatError(f"{text!r} is not a vertex") from None
    if not g.has_vertex(v):
        raise GraphFormatError(f"{text!r} is not a vertex")
    return v


def split_top(text: str) -> list:
    """Split on ``,`` or ``;`` outside brackets, so ``(0,1),(1,1)`` is two items."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch in ",;" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_path(g: Graph, text: str) -> tuple:
    return tuple(parse_vertex(g, part) for part in split_top(text))


def format_path(g: Graph, path) -> str:
    return ",".join(g.format_vertex(v) for v in path)


def format_moves(g: Graph, moves) -> str:
    lines = []
    for m in moves:
        if isinstance(m, RemoveBacktrack):
            lines.append(f"remove-backtrack {m.index}")
        elif isinstance(m, InsertBacktrack):
            lines.append(f"insert-backtrack {m.index} {g.format_vertex(m.vertex)}")
        else:
            lines.append(f"flip {m.index} {g.format_vertex(m.vertex)}")
    return "".join(line + "\n" for line in lines)


def parse_moves(g: Graph, text: str, source: str = "<moves>") -> list:
    moves = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 2)
        try:
            if parts[0] == "remove-backtrack" and len(parts) == 2:
                moves.append(RemoveBacktrack(int(parts[1])))
            elif parts[0] in ("flip", "insert-backtrack") and len(parts) == 3:
                cls = Flip if parts[0] == "flip" else InsertBacktrack
                moves.append(cls(int(parts[1]), parse_vertex(g, parts[2])))
            else:
                raise GraphFormatError(f"unrecognised move {line!r}")
        except (ValueError, GraphFormatError) as exc:
            raise GraphFormatError(f"{source}:{n}:1: {exc}") from None
    return moves


def parse_gamma(spec: str) -> DefinitionGraph:
    """``complete:a,b,c``, ``edgeless:a,b`` or a JSON file with generators and edges."""
    kind, sep, arg = spec.partition(":")
    if sep and kind in ("complete", "edgeless"):
        gens = [x for x in arg.split(",") if x]
        return DefinitionGraph.complete(gens) if kind == "complete" else DefinitionGraph.edgeless(gens)
    text, source = _read(spec)
    data = _load_json(text, source)
    if not isinstance(data, dict) or "generators" not in data:
        raise GraphFormatError(f"{source}: expected {{generators, edges}} or a complete/edgeless keyword")
    gens = data["generators"]
    edges = data.get("edges", [])
    if edges in ("complete", "edgeless"):
        return DefinitionGraph.complete(gens) if edges == "complete" else DefinitionGraph.edgeless(gens)
    return DefinitionGraph(gens, [tuple(e) for e in edges])


_VEC = re.compile(r"^\(?\s*-?\d+(\s*,\s*-?\d+)*\s*\)?$")


def make_generator(host: Graph, rule, where: str = ""):
    """A generator from a rule string such as ``translate:(1,0)`` or a permutation table."""
    if isinstance(rule, dict):
        if not isinstance(host, ExplicitGraph):
            raise GraphFormatError(f"{where}permutation tables need an explicit host graph")
        table = {parse_vertex(host, k): parse_vertex(host, v) for k, v in rule.items()}
        return permutation(table)
    if not isinstance(rule, str):
        raise GraphFormatError(f"{where}generator rule must be a string or a table")
    kind, _, arg = rule.partition(":")
    if kind == "translate" and isinstance(host, Lattice):
        if not _VEC.match(arg):
            raise GraphFormatError(f"{where}bad translation vector {arg!r}")
        vec = tuple(int(x) for x in arg.strip().strip("()").split(","))
        if len(vec) != host.dim:
            raise GraphFormatError(f"{where}translation needs {host.dim} coordinates")
        return translate(vec)
    if kind == "left-multiply" and isinstance(host, FreeGroupTree):
        letter = parse_letter(arg.strip())
        if letter[0] not in host.generators:
            raise GraphFormatError(f"{where}unknown free generator {letter[0]!r}")
        return left_multiply(letter)
    if kind == "toggle" and isinstance(host, SubsetCube):
        if arg.strip() not in host.labels:
            raise GraphFormatError(f"{where}unknown label {arg!r}")
        return toggle(arg.strip())
    raise GraphFormatError(f"{where}rule {rule!r} does not apply to {host!r}")


def parse_action(text: str, source: str = "<action>") -> ActionSpec:
    """``{"host": spec, "basepoint": vertex, "generators": {name: rule}}``."""
    data = _load_json(text, source)
    if not isinstance(data, dict) or "host" not in data or "generators" not in data:
        raise GraphFormatError(f"{source}: expected an object with 'host' and 'generators'")
    extra = set(data) - {"host", "basepoint", "generators", "comment"}
    if extra:
        raise GraphFormatError(f"{source}: unknown keys {sorted(extra)}")
    host = open_graph(data["host"])
    gens = {}
    for name, rule in data["generators"].items():
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise GraphFormatError(f"{source}: bad generator name {name!r}")
        gens[name] = make_generator(host, rule, f"{source}:{_locate(text, json.dumps(name))}")
    base = data.get("basepoint")
    basepoint = None if base is None else parse_vertex(host, base)
    a = ActionSpec(host, gens, basepoint)
    a.host_spec = data["host"]
    return a


def load_action(path: str) -> ActionSpec:
    return parse_action(*_read(path))


def dump_action(a: ActionSpec) -> str:
    host = a.host
    if getattr(a, "host_spec", None) is None:
        raise GraphFormatError("action has no host spec string to write")
    gens = {}
    for name, gm in a.generators.items():
        if gm.rule.startswith("permutation:"):
            gens[name] = {host.format_vertex(v): host.format_vertex(gm(v)) for v in host.vertices}
        else:
            gens[name] = gm.rule
    data = {"host": a.host_spec, "basepoint": host.format_vertex(a.basepoint), "generators": gens}
    return json.dumps(data, indent=1) + "\n"


def to_dot(g: ExplicitGraph, classes: dict | None = None, name: str = "G", host: Graph | None = None) -> str:
    """Graphviz source; edges coloured by ``classes[edge]`` when given.

    ``host`` formats vertex names when ``g`` is a ball cut out of it.
    """
    fmt = (host or g).format_vertex
    colour = {}
    if classes:
        for i, c in enumerate(sorted(set(classes.values()), key=repr)):
            colour[c] = PALETTE[i % len(PALETTE)]
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        lines.append(f'  "{fmt(v)}";')
    for u, v in g.edges:
        attr = ""
        if classes:
            c = classes[(u, v)]
            attr = f' [color="{colour[c]}", label="{c}"]'
        lines.append(f'  "{fmt(u)}" -- "{fmt(v)}"{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"

