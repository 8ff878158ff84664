"""Plain-text instance files and result formatting.

Instance format, version 1 (whitespace separated, ``#`` starts a comment)::

    isoreg 1 <kind>          kind: dag | chain | points | boxes
    dag:    n m, then n lines "value weight", then m lines "u v"
    chain:  n,   then n lines "value weight" (file order is the order)
    points: n d, then n lines of d coordinates followed by "value weight"
    boxes:  n d, then n lines of d lower and d upper coordinates, "value weight"
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CycleDetected, ParseError
from .instances import BoxSet
from .order import Dag, WeightedFunction
from .violator import PointSet

KINDS = ("dag", "chain", "points", "boxes")


@dataclass(frozen=True)
class ParsedInstance:
    kind: str
    instance: object
    wf: WeightedFunction

    @property
    def n(self):
        return len(self.wf)


def _lines(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield number, body


def _int(tok, line, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", line) from None


def _coord(tok, line):
    try:
        return int(tok)
    except ValueError:
        pass
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"coordinate must be a number, got {tok!r}", line) from None


def _value_weight(fields, line):
    value = _int(fields[0], line, "value")
    weight = _int(fields[1], line, "weight")
    if weight < 0:
        raise ParseError(f"weight must be nonnegative, got {weight}", line)
    return value, weight


def parse_text(text) -> ParsedInstance:
    """Parse format-v1 text; errors carry the offending line number."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    number, head = lines[0]
    if len(head) != 3 or head[0] != "isoreg" or head[1] != "1" or head[2] not in KINDS:
        raise ParseError("header must be 'isoreg 1 <dag|chain|points|boxes>'", number)
    kind = head[2]
    body = lines[1:]
    if not body:
        raise ParseError("missing size line", number)
    number, sizes = body[0]
    want = 1 if kind == "chain" else 2
    if len(sizes) != want:
        raise ParseError(f"size line needs {want} integer(s)", number)
    sizes = [_int(t, number, "size") for t in sizes]
    if any(s < 0 for s in sizes):
        raise ParseError("sizes must be nonnegative", number)
    n = sizes[0]
    rows = body[1:]
    extra = sizes[1] if kind == "dag" else 0
    if len(rows) != n + extra:
        last = rows[-1][0] if rows else number
        raise ParseError(f"expected {n + extra} data lines after the size line, found {len(rows)}", last)
    width = {"dag": 0, "chain": 0, "points": sizes[-1], "boxes": 2 * sizes[-1]}[kind]
    values, weights, coords = [], [], []
    for line, fields in rows[:n]:
        if len(fields) != width + 2:
            raise ParseError(f"expected {width + 2} fields, found {len(fields)}", line)
        coords.append([_coord(t, line) for t in fields[:width]])
        v, w = _value_weight(fields[width:], line)
        values.append(v)
        weights.append(w)
    try:
        wf = WeightedFunction(values, weights)
    except (ValueError, OverflowError) as exc:
        raise ParseError(str(exc), number) from None
    if kind == "chain":
        return ParsedInstance(kind, Dag.chain(n), wf)
    if kind == "dag":
        edges = []
        seen = set()
        for line, fields in rows[n:]:
            if len(fields) != 2:
                raise ParseError("edge lines need two vertex ids", line)
            u, v = (_int(t, line, "vertex id") for t in fields)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u}, {v}) out of range", line)
            if u == v:
                raise ParseError(f"self-loop on vertex {u}", line)
            if (u, v) in seen:
                raise ParseError(f"duplicate edge ({u}, {v})", line)
            seen.add((u, v))
            edges.append((u, v))
        try:
            return ParsedInstance(kind, Dag(n, edges), wf)
        except CycleDetected as exc:
            raise ParseError(f"edges contain a cycle through {exc.cycle}", rows[n][0]) from None
    d = sizes[1]
    arr = np.array(coords, dtype=float if any(isinstance(x, float) for r in coords for x in r) else np.int64)
    arr = arr.reshape(n, width)
    if kind == "points":
        return ParsedInstance(kind, PointSet(arr), wf)
    lower, upper = arr[:, :d], arr[:, d:]
    bad = np.nonzero(np.any(lower > upper, axis=1))[0]
    if len(bad):
        raise ParseError("box lower corner exceeds upper corner", rows[int(bad[0])][0])
    return ParsedInstance(kind, BoxSet(lower, upper, wf), wf)


def parse_instance(path) -> ParsedInstance:
    """Read an instance file (see module docstring for the format)."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", 0) from None
    return parse_text(text)


def format_instance(kind, wf, edges=(), coords=None) -> str:
    """Format-v1 text for an instance (inverse of :func:`parse_text`)."""
    out = [f"isoreg 1 {kind}"]
    n = len(wf)
    if kind == "chain":
        out.append(str(n))
    elif kind == "dag":
        out.append(f"{n} {len(edges)}")
    else:
        coords = np.asarray(coords).reshape(n, -1)
        d = coords.shape[1] // (2 if kind == "boxes" else 1)
        out.append(f"{n} {d}")
    for i, (v, w) in enumerate(zip(wf.values, wf.weights)):
        lead = "" if coords is None else " ".join(str(x) for x in coords[i].tolist()) + " "
        out.append(f"{lead}{v} {w}")
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# results


def format_number(x) -> str:
    """Exact text for a result number: integers plainly, terminating
    rationals as decimals, other rationals as ``p/q``, floats via repr."""
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, (np.integer,)):
        return str(int(x))
    if isinstance(x, np.floating):
        return repr(float(x))
    q = Fraction(x)
    if q.denominator == 1:
        return str(q.numerator)
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{q.numerator}/{q.denominator}"
    k = max(twos, fives)
    digits = abs(q.numerator) * 10**k // q.denominator
    sign = "-" if q < 0 else ""
    whole, frac = divmod(digits, 10**k)
    return f"{sign}{whole}.{str(frac).rjust(k, '0').rstrip('0')}"


def _jsonable(x):
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, Fraction):
        return format_number(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    return str(x)


def format_result(result, metric_name, fmt="text") -> str:
    """Render a RegressionResult as the text or JSON output format."""
    if fmt == "json":
        obj = {
            "values": [float(v) for v in result.values],
            "values_exact": [format_number(v) for v in result.values],
            "error_p_sum": float(result.error),
            "error_exact": format_number(result.error),
            "metric": metric_name,
            "diagnostics": _jsonable(result.diagnostics),
        }
        return json.dumps(obj, sort_keys=False) + "\n"
    out = [f"v {i} {format_number(v)}" for i, v in enumerate(result.values)]
    out.append(f"error {metric_name} {format_number(result.error)}")
    out.extend(f"# diag {k}={format_number(v) if isinstance(v, (int, float, Fraction)) else v}"
               for k, v in result.diagnostics.items())
    return "\n".join(out) + "\n"
