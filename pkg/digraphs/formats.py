"""
Arc-list text format and DOT export.

Arc-list: first line ``n m``, then ``m`` lines ``tail head`` with 0-indexed
vertices. Loops and repeated arcs are parse errors.
"""
from pathlib import Path

from django.core.exceptions import ValidationError
from django.template.loader import render_to_string

from .core import Digraph


def _ints(line: str, source: str, lineno: int) -> tuple[int, int]:
    fields = line.split()
    if len(fields) != 2:
        raise ValidationError(f"{source}: line {lineno}: expected two integers, got {line!r}.")
    try:
        return int(fields[0]), int(fields[1])
    except ValueError:
        raise ValidationError(f"{source}: line {lineno}: expected two integers, got {line!r}.")


def parse_arc_list(text: str, source: str = '<string>') -> Digraph:
    lines = text.split('\n')
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ValidationError(f"{source}: empty input, expected header 'n m'.")

    n, m = _ints(lines[0], source, 1)
    if n < 0 or m < 0:
        raise ValidationError(f"{source}: line 1: counts must be non-negative.")
    body = lines[1:]
    if len(body) != m:
        raise ValidationError(f"{source}: header announces {m} arcs, found {len(body)} lines.")

    arcs = []
    seen = set()
    for lineno, line in enumerate(body, start=2):
        tail, head = _ints(line, source, lineno)
        if tail == head:
            raise ValidationError(f"{source}: line {lineno}: loop ({tail}, {head}).")
        if (tail, head) in seen:
            raise ValidationError(f"{source}: line {lineno}: duplicate arc ({tail}, {head}).")
        if not (0 <= tail < n and 0 <= head < n):
            raise ValidationError(f"{source}: line {lineno}: vertex out of range 0..{n - 1}.")
        seen.add((tail, head))
        arcs.append((tail, head))
    return Digraph(n, arcs)


def format_arc_list(d: Digraph) -> str:
    lines = [f"{d.n} {d.arc_count}"]
    lines.extend(f"{tail} {head}" for tail, head in d.sorted_arcs())
    return '\n'.join(lines) + '\n'


def read_arc_list(path) -> Digraph:
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as exc:
        raise ValidationError(f"{path}: cannot read instance file ({exc.strerror}).")
    except UnicodeDecodeError as exc:
        raise ValidationError(f"{path}: instance file is not UTF-8 text (byte {exc.start}).")
    return parse_arc_list(text, source=str(path))


def write_arc_list(d: Digraph, path) -> None:
    Path(path).write_text(format_arc_list(d), encoding='utf-8', newline='\n')


def to_dot(d: Digraph, name: str = 'D') -> str:
    return render_to_string('digraphs/digraph.dot', {
        'name': name,
        'vertices': range(d.n),
        'arcs': d.sorted_arcs(),
    })
