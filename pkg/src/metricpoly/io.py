"""Text formats for vertices and vertex sets.

Vertex file::

    9
    2/9 2/9 1/3 ...

Vertex-set file::

    n 5 count 32
    0 0 0 0 0 0 0 0 0 0
    ...

Rationals are written ``p/q``, or ``p`` when q == 1.
"""
from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Iterable, TextIO

from .polytope import MetricVector, PairIndexer

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class FormatError(ValueError):
    pass


def parse_rational(token: str) -> Fraction:
    if not _RATIONAL.match(token):
        raise FormatError(f"not an exact rational: {token!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise FormatError(f"zero denominator in {token!r}") from None


def _parse_coords(n: int, line: str, where: str) -> MetricVector:
    tokens = line.split()
    dim = PairIndexer(n).dimension
    if len(tokens) != dim:
        raise FormatError(f"{where}: expected {dim} coordinates for n={n}, got {len(tokens)}")
    try:
        return MetricVector(n, tuple(parse_rational(t) for t in tokens))
    except FormatError as exc:
        raise FormatError(f"{where}: {exc}") from None


def _parse_n(token: str, where: str) -> int:
    try:
        n = int(token)
    except ValueError:
        raise FormatError(f"{where}: node count {token!r} is not an integer") from None
    if n < 3:
        raise FormatError(f"{where}: node count must be >= 3, got {n}")
    return n


def _content_lines(text: str) -> list[str]:
    return [ln for ln in (l.strip() for l in text.splitlines()) if ln and not ln.startswith("#")]


def parse_vertex(text: str) -> MetricVector:
    lines = _content_lines(text)
    if len(lines) < 2:
        raise FormatError("vertex file needs a node-count line and a coordinate line")
    n = _parse_n(lines[0], "line 1")
    # coordinates may wrap over several lines
    return _parse_coords(n, " ".join(lines[1:]), "coordinates")


def format_vertex(x: MetricVector) -> str:
    return f"{x.n}\n{x}\n"


def read_vertex(path: str | Path) -> MetricVector:
    return parse_vertex(Path(path).read_text())


def write_vertex(path: str | Path, x: MetricVector) -> None:
    Path(path).write_text(format_vertex(x))


_HEADER = re.compile(r"^n\s+(\S+)\s+count\s+(\S+)$")


def parse_vertex_set(text: str) -> tuple[int, list[MetricVector]]:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty vertex-set file")
    m = _HEADER.match(lines[0])
    if not m:
        raise FormatError(f"bad header {lines[0]!r}; expected 'n <n> count <k>'")
    n = _parse_n(m.group(1), "header")
    try:
        count = int(m.group(2))
    except ValueError:
        raise FormatError(f"bad count {m.group(2)!r}") from None
    body = lines[1:]
    if len(body) != count:
        raise FormatError(f"header announces {count} vertices, found {len(body)}")
    return n, [_parse_coords(n, ln, f"vertex {k + 1}") for k, ln in enumerate(body)]


def format_vertex_set(n: int, vertices: Iterable[MetricVector]) -> str:
    vertices = list(vertices)
    out = [f"n {n} count {len(vertices)}"]
    out.extend(str(v) for v in vertices)
    return "\n".join(out) + "\n"


def read_vertex_set(path: str | Path) -> tuple[int, list[MetricVector]]:
    return parse_vertex_set(Path(path).read_text())


def write_vertex_set(dest: str | Path | TextIO, n: int, vertices: Iterable[MetricVector]) -> None:
    text = format_vertex_set(n, vertices)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text)
