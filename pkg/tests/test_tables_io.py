import json

import pytest

from conering.counting_basis import negativity_scan, structure_table
from conering.tables_io import (
    ChecksumMismatch,
    TableFormatError,
    UnsupportedVersion,
    dumps_table,
    loads_table,
    read_table,
    table_body,
    write_report,
    write_table,
)


@pytest.fixture(scope="module", params=["cd", "rank", "counting"])
def table(request):
    return structure_table(request.param, 5)


def test_body_layout(table):
    lines = table_body(table).splitlines()
    assert lines[:3] == ["version=1", f"basis={table.basis}", "max_degree=5"]
    assert lines[3:5] == ["engine=conering 0.1.0", "order=canonical"]
    kinds = [l[0] for l in lines[5:]]
    assert kinds == sorted(kinds, key="PC".index)


def test_text_round_trip(table, tmp_path):
    out = write_table(table, tmp_path / "t.txt")
    assert out.checksum.startswith("sha256:")
    back = read_table(out.path)
    assert back == table
    assert dumps_table(back) == out.path.read_text()


def test_json_round_trip(table, tmp_path):
    out = write_table(table, tmp_path / "t.json", as_json=True)
    data = json.loads(out.path.read_text())
    assert data["checksum"] == out.checksum
    assert read_table(out.path) == table


def test_output_is_byte_stable(table):
    assert dumps_table(table) == dumps_table(structure_table(table.basis, 5))


def test_single_flipped_byte_is_detected(table):
    text = dumps_table(table)
    i = text.index("->") + 4
    flipped = text[:i] + ("7" if text[i] != "7" else "8") + text[i + 1 :]
    with pytest.raises(ChecksumMismatch):
        loads_table(flipped)


def test_json_tamper_is_detected(table):
    data = json.loads(dumps_table(table, as_json=True))
    data["max_degree"] = 6
    with pytest.raises(ChecksumMismatch):
        loads_table(json.dumps(data))


def test_unknown_version(table):
    text = dumps_table(table).replace("version=1", "version=0", 1)
    with pytest.raises(UnsupportedVersion):
        loads_table(text)
    data = json.loads(dumps_table(table, as_json=True))
    data["version"] = 2
    with pytest.raises(UnsupportedVersion):
        loads_table(json.dumps(data))


@pytest.mark.parametrize(
    "text",
    ["", "basis=cd\n", "version=x\n", "version=1\nbasis=cd\n", "{not json", '{"basis": "cd"}'],
)
def test_malformed(text):
    with pytest.raises(TableFormatError):
        loads_table(text)


def test_not_utf8(tmp_path):
    p = tmp_path / "bad"
    p.write_bytes(b"\xff\xfe")
    with pytest.raises(TableFormatError):
        read_table(p)


def test_report_written(tmp_path):
    report = negativity_scan(8)
    p = write_report(report, tmp_path / "scan.txt")
    assert p.read_text() == report.to_text()
    p = write_report(report, tmp_path / "scan.json", as_json=True)
    assert json.loads(p.read_text())["first_negative_degree"] == 8
