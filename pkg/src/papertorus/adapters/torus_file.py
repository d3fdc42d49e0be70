"""Reader and writer for ``papertorus v1`` torus files.

Grammar::

    papertorus v1
    precision <digits>
    vertices <n>
    <idx> <x> <y> <z>        (n lines, idx = 0..n-1, decimal strings)
    faces <m>
    <a> <b> <c>              (m lines)

Blank lines and lines starting with ``#`` are ignored.
"""

from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple

import mpmath
from mpmath import mpf

from papertorus.core.errors import ParseError
from papertorus.core.models import Configuration, Triangulation

HEADER = "papertorus v1"

DATA_DIR = Path(__file__).parent.parent / "data"
BUNDLED_PUPTENT = DATA_DIR / "puptent.pt"


def format_decimal(x: mpf, digits: int, source: Optional[str] = None) -> str:
    """
    Decimal form of ``x`` at ``digits``.

    ``source`` (the string ``x`` was read from) is written back verbatim while it
    still parses to ``x``; otherwise the shortest string that reparses to ``x``.
    """
    if source is not None:
        with mpmath.workdps(digits):
            if mpf(source) == x:
                return source
    text = mpmath.nstr(x, digits)
    return text[:-2] if text.endswith(".0") else text


def _content_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line.split()


def _keyword(lines: Iterator[Tuple[int, List[str]]], key: str, last: int) -> Tuple[int, int]:
    try:
        number, tokens = next(lines)
    except StopIteration:
        raise ParseError(f"expected '{key} <count>', got end of file", line=last + 1) from None
    if len(tokens) != 2 or tokens[0] != key:
        raise ParseError(f"expected '{key} <count>', got {' '.join(tokens)!r}", line=number)
    try:
        value = int(tokens[1])
    except ValueError:
        raise ParseError(f"'{key}' needs an integer, got {tokens[1]!r}", line=number) from None
    if value <= 0:
        raise ParseError(f"'{key}' must be positive", line=number)
    return number, value


def parse_torus(text: str, name: str = "", precision: Optional[int] = None) -> Configuration:
    """
    Parse a torus file body.

    The decimal strings are read at ``precision`` digits when given, otherwise
    at the precision the file declares.

    Raises:
        ParseError: grammar violations, out-of-range indices, F != 2V or a
            face list that is not a torus
    """
    lines = _content_lines(text)
    try:
        number, tokens = next(lines)
    except StopIteration:
        raise ParseError("empty file", line=1) from None
    if " ".join(tokens) != HEADER:
        raise ParseError(f"expected header '{HEADER}'", line=number)

    number, declared = _keyword(lines, "precision", number)
    number, n = _keyword(lines, "vertices", number)
    values: List[Sequence[str]] = []
    for expected in range(n):
        try:
            number, tokens = next(lines)
        except StopIteration:
            raise ParseError(f"expected {n} vertex lines, got {expected}", line=number + 1) from None
        if len(tokens) != 4 or tokens[0] != str(expected):
            raise ParseError(f"expected '<{expected}> <x> <y> <z>'", line=number)
        for token in tokens[1:]:
            try:
                mpf(token)
            except (ValueError, TypeError):
                raise ParseError(f"not a decimal number: {token!r}", line=number) from None
        values.append(tokens[1:])

    number, m = _keyword(lines, "faces", number)
    if m != 2 * n:
        raise ParseError(
            f"Euler violation: a torus with {n} vertices has {2 * n} faces, file declares {m}",
            line=number,
        )
    faces = []
    for _ in range(m):
        try:
            number, tokens = next(lines)
        except StopIteration:
            raise ParseError(f"expected {m} face lines, got {len(faces)}", line=number + 1) from None
        try:
            face = tuple(int(t) for t in tokens)
        except ValueError:
            raise ParseError("face indices must be integers", line=number) from None
        if len(face) != 3 or not all(0 <= v < n for v in face):
            raise ParseError(f"face must be three vertex indices in 0..{n - 1}", line=number)
        faces.append(face)
    for number, tokens in lines:
        raise ParseError(f"unexpected trailing content {' '.join(tokens)!r}", line=number)

    t = Triangulation(n, tuple(faces), name)  # type: ignore[arg-type]
    problems = t.invariant_violations()
    if problems:
        raise ParseError(f"faces do not form a torus: {problems[0]}", line=number)
    return Configuration.from_values(t, values, precision or declared)


def read_torus(path: Path, precision: Optional[int] = None) -> Configuration:
    """Load a torus file; the triangulation is named after the file stem."""
    return parse_torus(path.read_text(encoding="utf-8"), name=path.stem, precision=precision)


def bundled_pup_tent(precision: Optional[int] = None) -> Configuration:
    """The shipped pup tent fixture."""
    return read_torus(BUNDLED_PUPTENT, precision)


def format_torus(c: Configuration) -> str:
    lines = [HEADER, f"precision {c.precision}", f"vertices {c.triangulation.vertex_count}"]
    sources = c.decimals or tuple((None, None, None) for _ in c.coordinates)
    for idx, (point, row) in enumerate(zip(c.coordinates, sources)):
        lines.append(f"{idx} " + " ".join(format_decimal(x, c.precision, s) for x, s in zip(point, row)))
    lines.append(f"faces {len(c.triangulation.faces)}")
    lines.extend(f"{a} {b} {c_}" for a, b, c_ in c.triangulation.faces)
    return "\n".join(lines) + "\n"


def write_torus(c: Configuration, path: Path) -> None:
    """Write a canonical torus file (atomic write via temp file)."""
    path.parent.mkdir(parents=True, exist_ok=True)
    temp_path = path.with_suffix(path.suffix + ".tmp")
    temp_path.write_text(format_torus(c), encoding="utf-8")
    temp_path.replace(path)
