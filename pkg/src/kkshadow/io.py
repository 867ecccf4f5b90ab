"""``.hg`` files and JSON reports.

A ``.hg`` file has a header line ``n r`` followed by one edge per line, each
``r`` strictly increasing vertex labels in ``1..n``.  Lines starting with ``#``
and blank lines are ignored.  Edges are written in antilex order, so a file
produced by :func:`serialize_hypergraph` round-trips byte for byte.

Reports are JSON objects with keys ``command``, ``params``, ``result`` and
``provenance`` in that order.  Exact rationals become ``{"num": p, "den": q}``
and floats are rounded to 12 significant digits.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import __version__
from .errors import HypergraphParseError
from .hypergraph import Parameters, UniformHypergraph, to_mask

REPORT_SCHEMA_VERSION = 1


def parse_hypergraph_text(text: str, path: str | None = None) -> UniformHypergraph:
    header = None
    masks: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise HypergraphParseError(f"non-integer token in {line!r}", lineno, path) from None
        if header is None:
            if len(nums) != 2 or nums[0] < 1 or nums[1] < 1:
                raise HypergraphParseError(f"header must be two positive integers 'n r', got {line!r}", lineno, path)
            header = (nums[0], nums[1])
            continue
        n, r = header
        if len(nums) != r:
            raise HypergraphParseError(f"edge has {len(nums)} vertices, expected {r}", lineno, path)
        if any(v < 1 or v > n for v in nums):
            raise HypergraphParseError(f"vertex out of range 1..{n} in {line!r}", lineno, path)
        if any(a >= b for a, b in zip(nums, nums[1:])):
            raise HypergraphParseError(f"edge vertices must be strictly increasing: {line!r}", lineno, path)
        m = to_mask(nums)
        if m in masks:
            raise HypergraphParseError(f"duplicate edge {line!r}", lineno, path)
        masks.add(m)
    if header is None:
        raise HypergraphParseError("missing 'n r' header", None, path)
    return UniformHypergraph(header[0], header[1], frozenset(masks))


def parse_hypergraph(path: str | os.PathLike) -> UniformHypergraph:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise HypergraphParseError(f"cannot read file: {exc.strerror}", None, str(p)) from None
    return parse_hypergraph_text(text, str(p))


def format_hypergraph(h: UniformHypergraph) -> str:
    lines = [f"{h.n} {h.r}"]
    lines.extend(" ".join(map(str, e)) for e in h.edges)
    return "\n".join(lines) + "\n"


def serialize_hypergraph(h: UniformHypergraph, path: str | os.PathLike) -> None:
    Path(path).write_text(format_hypergraph(h))


def rational(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def real(x: float) -> float:
    return float(f"{x:.12g}")


def graph_json(h: UniformHypergraph) -> dict:
    return {"n": h.n, "r": h.r, "num_edges": h.num_edges, "edges": [list(e) for e in h.edges]}


def to_jsonable(obj):
    """Recursively convert Fractions, floats, tuples and graphs for output."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, float):
        return real(obj)
    if isinstance(obj, UniformHypergraph):
        return graph_json(obj)
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return to_jsonable(obj.item())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def params_json(params: Parameters | None = None, **partial) -> dict:
    if params is not None:
        partial = {"n": params.n, "t": params.t, "k": params.k, "ell": params.ell}
    return {key: to_jsonable(partial.get(key)) for key in ("n", "t", "k", "ell")}


def build_report(command: str, params: dict, result: dict, elapsed: float | None, seed=None) -> dict:
    return {
        "command": command,
        "params": params,
        "result": to_jsonable(result),
        "provenance": {
            "tool_version": __version__,
            "schema_version": REPORT_SCHEMA_VERSION,
            "seed": seed,
            "elapsed_ms": None if elapsed is None else real(elapsed * 1000.0),
        },
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def load_schema() -> dict:
    return json.loads(resources.files("kkshadow").joinpath("report.schema.json").read_text())
