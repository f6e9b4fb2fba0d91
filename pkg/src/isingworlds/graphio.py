"""Reading and writing graph files.

Text format, one record per line, ``#`` starts a comment:

    param beta            # or: lambda, p  (how edge values are given)
    nodes 4               # optional; needed for isolated nodes
    field 0 2.0           # optional per-node field, value may be inf/-inf
    0 1 0.5               # edge lines: <i> <j> <value>
    1 2 inf               # "inf" is legal only when param is beta

Edge-line order defines the edge-index order used by configurations.
``lambda = 1`` and ``p = 1`` map to an infinite coupling.  A JSON
equivalent mirrors the same schema with infinite values spelled as the
strings "inf"/"-inf":

    {"param": "beta", "nodes": 4, "field": {"0": 2.0},
     "edges": [[0, 1, 0.5], [1, 2, "inf"]]}
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .errors import GraphFormatError, InvalidParameterError
from .graph import PARAM_NAMES, WeightedGraph, beta_to_param, coupling_to_beta


def _parse_value(token: str, line_no: int, allow_inf: bool, what: str) -> float:
    token = token.strip()
    lowered = token.lower()
    if lowered in ("inf", "+inf", "infinity"):
        if not allow_inf:
            raise GraphFormatError(f"line {line_no}: 'inf' {what} is only allowed with param beta")
        return math.inf
    if lowered == "-inf":
        if what != "field value":
            raise GraphFormatError(f"line {line_no}: negative {what} is not allowed")
        return -math.inf
    try:
        return float(token)
    except ValueError:
        raise GraphFormatError(f"line {line_no}: cannot parse {what} {token!r}") from None


def read_graph_text(text: str) -> WeightedGraph:
    param: str | None = None
    declared_nodes = 0
    max_ref = -1
    field: dict[int, float] = {}
    edges: list[tuple[int, int, float]] = []
    seen_pairs: set[tuple[int, int]] = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if param is None:
            if tokens[0] != "param" or len(tokens) != 2:
                raise GraphFormatError(f"line {line_no}: expected header 'param beta|lambda|p'")
            if tokens[1] not in PARAM_NAMES:
                raise GraphFormatError(f"line {line_no}: unknown parameterization {tokens[1]!r}")
            param = tokens[1]
            continue
        if tokens[0] == "nodes":
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise GraphFormatError(f"line {line_no}: expected 'nodes <count>'")
            declared_nodes = int(tokens[1])
            continue
        if tokens[0] == "field":
            if len(tokens) != 3:
                raise GraphFormatError(f"line {line_no}: expected 'field <node> <value>'")
            try:
                node = int(tokens[1])
            except ValueError:
                raise GraphFormatError(f"line {line_no}: bad node id {tokens[1]!r}") from None
            if node < 0:
                raise GraphFormatError(f"line {line_no}: node ids are nonnegative")
            value = _parse_value(tokens[2], line_no, allow_inf=True, what="field value")
            field[node] = value
            max_ref = max(max_ref, node)
            continue
        if len(tokens) != 3:
            raise GraphFormatError(f"line {line_no}: expected edge '<i> <j> <value>'")
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"line {line_no}: bad node ids {tokens[0]!r} {tokens[1]!r}") from None
        if i < 0 or j < 0:
            raise GraphFormatError(f"line {line_no}: node ids are nonnegative")
        if i == j:
            raise GraphFormatError(f"line {line_no}: self-loop at node {i}")
        value = _parse_value(tokens[2], line_no, allow_inf=(param == "beta"), what="edge value")
        pair = (min(i, j), max(i, j))
        if pair in seen_pairs:
            raise GraphFormatError(f"line {line_no}: duplicate edge {pair}")
        seen_pairs.add(pair)
        try:
            beta = coupling_to_beta(value, param)
        except InvalidParameterError as exc:
            raise GraphFormatError(f"line {line_no}: {exc}") from None
        edges.append((pair[0], pair[1], beta))
        max_ref = max(max_ref, pair[1])

    if param is None:
        raise GraphFormatError("empty graph file: missing 'param' header")
    num_nodes = max(declared_nodes, max_ref + 1)
    return WeightedGraph.from_edges(num_nodes, edges, field=field or None, param="beta")


def _json_value(value, what: str) -> float:
    if isinstance(value, str):
        lowered = value.strip().lower()
        if lowered in ("inf", "+inf", "infinity"):
            return math.inf
        if lowered == "-inf":
            return -math.inf
        raise GraphFormatError(f"cannot parse {what} {value!r}")
    return float(value)


def read_graph_json(text: str) -> WeightedGraph:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise GraphFormatError("graph JSON must be an object")
    param = payload.get("param")
    if param not in PARAM_NAMES:
        raise GraphFormatError(f"graph JSON needs 'param' of beta|lambda|p, got {param!r}")
    edges = []
    max_ref = -1
    for entry in payload.get("edges", []):
        if not isinstance(entry, (list, tuple)) or len(entry) != 3:
            raise GraphFormatError(f"edge entries are [i, j, value], got {entry!r}")
        i, j = int(entry[0]), int(entry[1])
        value = _json_value(entry[2], "edge value")
        if math.isinf(value) and param != "beta":
            raise GraphFormatError("'inf' edge value is only allowed with param beta")
        try:
            edges.append((i, j, coupling_to_beta(value, param)))
        except InvalidParameterError as exc:
            raise GraphFormatError(str(exc)) from None
        max_ref = max(max_ref, i, j)
    field = None
    if payload.get("field"):
        field = {}
        for key, value in payload["field"].items():
            node = int(key)
            field[node] = _json_value(value, "field value")
            max_ref = max(max_ref, node)
    num_nodes = max(int(payload.get("nodes", 0)), max_ref + 1)
    try:
        return WeightedGraph.from_edges(num_nodes, edges, field=field, param="beta")
    except InvalidParameterError as exc:
        raise GraphFormatError(str(exc)) from None


def _format_value(value: float) -> str:
    if value == math.inf:
        return "inf"
    if value == -math.inf:
        return "-inf"
    return repr(value)


def graph_to_text(g: WeightedGraph, param: str = "beta") -> str:
    if param not in PARAM_NAMES:
        raise InvalidParameterError(f"unknown parameterization {param!r}")
    lines = [f"param {param}", f"nodes {g.num_nodes}"]
    if g.field is not None:
        for node, value in enumerate(g.field):
            if value != 0.0:
                lines.append(f"field {node} {_format_value(value)}")
    for (i, j), beta in zip(g.edges, g.betas):
        lines.append(f"{i} {j} {_format_value(beta_to_param(beta, param))}")
    return "\n".join(lines) + "\n"


def graph_to_json_dict(g: WeightedGraph, param: str = "beta") -> dict:
    if param not in PARAM_NAMES:
        raise InvalidParameterError(f"unknown parameterization {param!r}")

    def encode(value: float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value

    payload: dict = {"param": param, "nodes": g.num_nodes}
    if g.field is not None and any(v != 0.0 for v in g.field):
        payload["field"] = {
            str(node): encode(value) for node, value in enumerate(g.field) if value != 0.0
        }
    payload["edges"] = [
        [i, j, encode(beta_to_param(beta, param))] for (i, j), beta in zip(g.edges, g.betas)
    ]
    return payload


def load_graph(path: str | Path) -> WeightedGraph:
    """Read a graph file; '.json' selects the JSON schema, anything else text."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from None
    if path.suffix == ".json":
        return read_graph_json(text)
    return read_graph_text(text)


def save_graph(g: WeightedGraph, path: str | Path, param: str = "beta") -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps(graph_to_json_dict(g, param), indent=2) + "\n", encoding="utf-8")
    else:
        path.write_text(graph_to_text(g, param), encoding="utf-8")
