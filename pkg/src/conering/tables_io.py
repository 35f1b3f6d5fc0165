"""Persistence of structure tables and scan reports.

Line format (UTF-8, LF)::

    version=1
    basis=rank
    max_degree=6
    engine=conering 0.1.0
    order=canonical
    P <i> <j> -> <c>*<k> <c>*<k> ...
    C <i> -> <c>*<j> ...
    checksum=sha256:<hex of every preceding byte>

The JSON form carries the same fields; its checksum is that of the line
form of the same table, so either file verifies against one canonical body.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .counting_basis import ScanReport, StructureTable
from .element import BASES, Key, ParseError, format_key, parse_key, sort_key

FORMAT_VERSION = 1


class TableFormatError(ValueError):
    pass


class ChecksumMismatch(TableFormatError):
    pass


class UnsupportedVersion(TableFormatError):
    pass


@dataclass(frozen=True)
class TableFile:
    path: Path
    checksum: str
    json: bool


def _terms_text(terms, basis: str) -> str:
    return " ".join(f"{c}*{format_key(k, basis)}" for k, c in terms)


def _ordered_products(table: StructureTable):
    return sorted(table.products.items(), key=lambda kv: (sort_key(kv[0][0]), sort_key(kv[0][1])))


def _ordered_cones(table: StructureTable):
    return sorted(table.cones.items(), key=lambda kv: sort_key(kv[0]))


def table_body(table: StructureTable) -> str:
    """Canonical line-form body, without the checksum line."""
    b = table.basis
    lines = [f"version={FORMAT_VERSION}", f"basis={b}", f"max_degree={table.max_degree}"]
    lines += [f"{k}={v}" for k, v in sorted(table.metadata.items())]
    for (i, j), terms in _ordered_products(table):
        tail = _terms_text(terms, b)
        lines.append(f"P {format_key(i, b)} {format_key(j, b)} ->" + (" " + tail if tail else ""))
    for i, terms in _ordered_cones(table):
        tail = _terms_text(terms, b)
        lines.append(f"C {format_key(i, b)} ->" + (" " + tail if tail else ""))
    return "\n".join(lines) + "\n"


def _digest(body: str) -> str:
    return "sha256:" + hashlib.sha256(body.encode("utf-8")).hexdigest()


def dumps_table(table: StructureTable, as_json: bool = False) -> str:
    body = table_body(table)
    checksum = _digest(body)
    if not as_json:
        return body + f"checksum={checksum}\n"
    b = table.basis
    payload = {
        "version": FORMAT_VERSION,
        "basis": b,
        "max_degree": table.max_degree,
        "metadata": dict(sorted(table.metadata.items())),
        "products": [
            [format_key(i, b), format_key(j, b), [[format_key(k, b), c] for k, c in terms]]
            for (i, j), terms in _ordered_products(table)
        ],
        "cones": [
            [format_key(i, b), [[format_key(k, b), c] for k, c in terms]]
            for i, terms in _ordered_cones(table)
        ],
        "checksum": checksum,
    }
    return json.dumps(payload, indent=1) + "\n"


def write_table(table: StructureTable, path, as_json: bool = False) -> TableFile:
    path = Path(path)
    text = dumps_table(table, as_json)
    path.write_bytes(text.encode("utf-8"))
    return TableFile(path, _digest(table_body(table)), as_json)


def _key(text: str, basis: str) -> Key:
    try:
        got, key = parse_key(text)
    except ParseError as exc:
        raise TableFormatError(f"bad key {text!r}: {exc}") from None
    if got != basis:
        raise TableFormatError(f"key {text!r} is not in the {basis} basis")
    return key


def _term(text: str, basis: str) -> tuple[Key, int]:
    coeff, sep, key = text.partition("*")
    if not sep:
        raise TableFormatError(f"bad term {text!r}")
    try:
        c = int(coeff)
    except ValueError:
        raise TableFormatError(f"bad coefficient in {text!r}") from None
    return _key(key, basis), c


def _check_version(value) -> None:
    try:
        v = int(value)
    except (TypeError, ValueError):
        raise TableFormatError(f"bad version marker {value!r}") from None
    if v != FORMAT_VERSION:
        raise UnsupportedVersion(f"table format version {v} is not supported (expected {FORMAT_VERSION})")


def loads_table(text: str) -> StructureTable:
    if text.lstrip().startswith("{"):
        return _loads_json(text)
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or not lines[0].startswith("version="):
        raise TableFormatError("missing version marker")
    _check_version(lines[0].split("=", 1)[1])
    if not lines[-1].startswith("checksum="):
        raise TableFormatError("missing checksum line")
    body = "\n".join(lines[:-1]) + "\n"
    if _digest(body) != lines[-1].split("=", 1)[1]:
        raise ChecksumMismatch("table checksum does not match its contents")
    header: dict[str, str] = {}
    rows = []
    for line in lines[1:-1]:
        if line.startswith(("P ", "C ")):
            rows.append(line)
        elif "=" in line and not rows:
            k, v = line.split("=", 1)
            header[k] = v
        else:
            raise TableFormatError(f"unexpected line {line!r}")
    basis = header.pop("basis", None)
    if basis not in BASES:
        raise TableFormatError(f"bad basis {basis!r}")
    try:
        max_degree = int(header.pop("max_degree"))
    except (KeyError, ValueError):
        raise TableFormatError("bad or missing max_degree") from None
    table = StructureTable(basis, max_degree, metadata=header)
    for line in rows:
        head, arrow, tail = line.partition(" ->")
        if not arrow:
            raise TableFormatError(f"missing '->' in {line!r}")
        fields = head.split(" ")
        terms = tuple(_term(t, basis) for t in tail.split())
        if fields[0] == "P" and len(fields) == 3:
            table.products[(_key(fields[1], basis), _key(fields[2], basis))] = terms
        elif fields[0] == "C" and len(fields) == 2:
            table.cones[_key(fields[1], basis)] = terms
        else:
            raise TableFormatError(f"malformed row {line!r}")
    return table


def _loads_json(text: str) -> StructureTable:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"bad JSON: {exc}") from None
    if "version" not in data:
        raise TableFormatError("missing version marker")
    _check_version(data["version"])
    basis = data.get("basis")
    if basis not in BASES:
        raise TableFormatError(f"bad basis {basis!r}")
    try:
        table = StructureTable(basis, int(data["max_degree"]), metadata=dict(data.get("metadata", {})))
        for i, j, terms in data["products"]:
            table.products[(_key(i, basis), _key(j, basis))] = tuple(
                (_key(k, basis), int(c)) for k, c in terms
            )
        for i, terms in data["cones"]:
            table.cones[_key(i, basis)] = tuple((_key(k, basis), int(c)) for k, c in terms)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, TableFormatError):
            raise
        raise TableFormatError(f"malformed JSON table: {exc}") from None
    if _digest(table_body(table)) != data.get("checksum"):
        raise ChecksumMismatch("table checksum does not match its contents")
    return table


def read_table(path) -> StructureTable:
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise TableFormatError("table is not valid UTF-8") from None
    return loads_table(text)


def write_report(report: ScanReport, path, as_json: bool = False) -> Path:
    path = Path(path)
    text = report.to_json() if as_json else report.to_text()
    path.write_bytes(text.encode("utf-8"))
    return path
