"""JSON formats for gain graphs and partitions.

One self-describing graph format: the group spec is embedded, gains are
element labels, and files round-trip to semantically identical graphs.
Parse failures raise FormatError with a field-addressed message.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

from .graphs import GainGraph, build_gain_graph
from .groups import Group, make_group
from .switching import WQHPartition


class FormatError(ValueError):
    """A file failed to parse; the message names the offending location."""


def graph_to_obj(g: GainGraph, name: Optional[str] = None) -> dict:
    obj = {
        "group": g.group.spec_obj(),
        "n": g.n,
        "edges": [
            {"u": u, "v": v, "gain": gain.label} for (u, v, gain) in g.edges()
        ],
    }
    if name:
        obj["name"] = name
    return obj


def graph_from_obj(obj: dict) -> GainGraph:
    if not isinstance(obj, dict):
        raise FormatError("graph file must hold a JSON object")
    for field in ("group", "n", "edges"):
        if field not in obj:
            raise FormatError(f"graph object is missing the {field!r} field")
    try:
        group = make_group(obj["group"])
    except (ValueError, KeyError, TypeError) as exc:
        raise FormatError(f"group: {exc}") from exc
    try:
        n = int(obj["n"])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"n: not an integer ({obj['n']!r})") from exc
    edges = []
    if not isinstance(obj["edges"], list):
        raise FormatError("edges: must be a list")
    for pos, e in enumerate(obj["edges"]):
        if not isinstance(e, dict) or not {"u", "v", "gain"} <= set(e):
            raise FormatError(f"edges[{pos}]: need fields u, v, gain")
        edges.append((e["u"], e["v"], e["gain"]))
    try:
        return build_gain_graph(group, n, edges)
    except ValueError as exc:
        raise FormatError(f"edges: {exc}") from exc


def partition_to_obj(p: WQHPartition) -> dict:
    return {"cells": p.to_lists()}


def partition_from_obj(obj: dict) -> WQHPartition:
    if not isinstance(obj, dict) or "cells" not in obj:
        raise FormatError("partition file must hold an object with a 'cells' field")
    cells = obj["cells"]
    if not isinstance(cells, list) or not all(isinstance(c, list) for c in cells):
        raise FormatError("cells: must be a list of vertex lists")
    try:
        return WQHPartition.from_cells(cells)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"cells: {exc}") from exc


def load_graph(path: Union[str, Path]) -> GainGraph:
    return graph_from_obj(_load_json(path))


def load_partition(path: Union[str, Path]) -> WQHPartition:
    return partition_from_obj(_load_json(path))


def save_graph(g: GainGraph, path: Union[str, Path], name: Optional[str] = None):
    _dump_json(graph_to_obj(g, name), path)


def save_partition(p: WQHPartition, path: Union[str, Path]):
    _dump_json(partition_to_obj(p), path)


def _load_json(path: Union[str, Path]):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _dump_json(obj, path: Union[str, Path]):
    Path(path).write_text(
        json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
