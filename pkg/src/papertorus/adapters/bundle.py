"""Certificate bundle: separation certificates plus the existence chain footer.

Layout::

    papertorus-certificates v1
    scale <integer>
    grid <integer>
    margin <integer>
    pairs <count>
    <a>,<b> <kind> L=(<x>,<y>,<z>) <side> <margin>     (count lines)
    ift <key> <value>                                    (optional footer)
"""

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from papertorus.core.errors import ParseError
from papertorus.core.models import SeparationCertificate

HEADER = "papertorus-certificates v1"

_CERT_LINE = re.compile(
    r"^(?P<a>\d+),(?P<b>\d+) (?P<kind>disjoint|shared-vertex) "
    r"L=\((?P<x>-?\d+),(?P<y>-?\d+),(?P<z>-?\d+)\) (?P<side>[01]) (?P<margin>-?\d+)$"
)


@dataclass
class CertificateBundle:
    scale: int
    grid: int
    min_margin: int
    certificates: List[SeparationCertificate]
    footer: Dict[str, str] = field(default_factory=dict)


def format_bundle(bundle: CertificateBundle) -> str:
    lines = [
        HEADER,
        f"scale {bundle.scale}",
        f"grid {bundle.grid}",
        f"margin {bundle.min_margin}",
        f"pairs {len(bundle.certificates)}",
    ]
    lines.extend(cert.line() for cert in bundle.certificates)
    lines.extend(f"ift {key} {value}" for key, value in bundle.footer.items())
    return "\n".join(lines) + "\n"


def write_bundle(bundle: CertificateBundle, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    temp_path = path.with_suffix(path.suffix + ".tmp")
    temp_path.write_text(format_bundle(bundle), encoding="utf-8")
    temp_path.replace(path)


def _header_value(lines: List[str], index: int, key: str) -> int:
    if index >= len(lines):
        raise ParseError(f"expected '{key} <integer>', got end of file", line=index + 1)
    match = re.fullmatch(rf"{key} (-?\d+)", lines[index])
    if not match:
        raise ParseError(f"expected '{key} <integer>'", line=index + 1)
    return int(match.group(1))


def parse_bundle(text: str) -> CertificateBundle:
    """
    Parse bundle text; the shared vertex is not stored and is filled in on replay.

    Raises:
        ParseError: any line off the grammar
    """
    lines = text.splitlines()
    if not lines or lines[0] != HEADER:
        raise ParseError(f"expected header '{HEADER}'", line=1)
    scale = _header_value(lines, 1, "scale")
    grid = _header_value(lines, 2, "grid")
    min_margin = _header_value(lines, 3, "margin")
    count = _header_value(lines, 4, "pairs")

    certificates: List[SeparationCertificate] = []
    for offset in range(count):
        index = 5 + offset
        if index >= len(lines):
            raise ParseError(f"expected {count} certificates, got {offset}", line=index + 1)
        match = _CERT_LINE.match(lines[index])
        if not match:
            raise ParseError("malformed certificate line", line=index + 1)
        certificates.append(
            SeparationCertificate(
                pair=(int(match["a"]), int(match["b"])),
                kind=match["kind"],  # type: ignore[arg-type]
                direction=(int(match["x"]), int(match["y"]), int(match["z"])),
                side=int(match["side"]),  # type: ignore[arg-type]
                margin=int(match["margin"]),
            )
        )

    footer: Dict[str, str] = {}
    for index in range(5 + count, len(lines)):
        line = lines[index]
        if not line.strip():
            continue
        parts = line.split(" ")
        if len(parts) != 3 or parts[0] != "ift":
            raise ParseError("expected 'ift <key> <value>'", line=index + 1)
        footer[parts[1]] = parts[2]
    return CertificateBundle(scale, grid, min_margin, certificates, footer)


def read_bundle(path: Path) -> CertificateBundle:
    return parse_bundle(path.read_text(encoding="utf-8"))


def scale_exponent(scale: int) -> Optional[int]:
    """k with scale == 10**k, or None."""
    text = str(scale)
    if text[0] == "1" and set(text[1:]) <= {"0"}:
        return len(text) - 1
    return None
