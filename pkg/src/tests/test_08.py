import hashlib
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cli import main
from errors import BadParams, GroupSpecError, UnknownBuiltin
from group_spec import build_group, builtin_spec, cycles_to_images, parse_group_spec, perm_spec, render_group_spec
from report import canonical_json

#group-spec grammar, reports and the command line


def test_parse_builtin():
    assert parse_group_spec("builtin:suzuki:8") == builtin_spec("suzuki", (8,))
    assert parse_group_spec(" builtin : thevenaz ") == builtin_spec("thevenaz")


def test_parse_perm():
    spec = parse_group_spec("perm:3:(1 2),(1 2 3)")
    assert spec == perm_spec(3, [((1, 2),), ((1, 2, 3),)])
    assert build_group(spec).order == 6
    assert build_group(parse_group_spec("perm:2:()")).order == 1
    assert build_group(parse_group_spec("perm:4:(1 2)(3 4), (1 3)(2 4)")).order == 4


def test_parse_semidirect():
    spec = parse_group_spec("semidirect:{builtin:cyclic:3}{builtin:cyclic:2}{(1 3 2)}")
    assert spec.kind == "semidirect"
    assert build_group(spec).order == 6


def test_repeated_point_is_located():
    with pytest.raises(GroupSpecError) as error:
        parse_group_spec("perm:3:(1 1 2)")
    assert (error.value.line, error.value.column) == (1, 11)


def test_errors_on_later_lines():
    with pytest.raises(GroupSpecError) as error:
        parse_group_spec("perm:3:\n(1 2),(1 4)")
    assert (error.value.line, error.value.column) == (2, 10)


def test_unknown_builtin_and_trailing_text():
    with pytest.raises(UnknownBuiltin) as error:
        parse_group_spec("builtin:nope")
    assert error.value.column == 9
    with pytest.raises(GroupSpecError):
        parse_group_spec("builtin:symmetric:4 extra")
    with pytest.raises(GroupSpecError):
        parse_group_spec("matrix:2")
    with pytest.raises(BadParams):
        build_group(parse_group_spec("builtin:cyclic:1:2"))


def test_points_are_one_based():
    with pytest.raises(GroupSpecError):
        parse_group_spec("semidirect:{builtin:cyclic:3}{builtin:cyclic:2}{(0 2)}")
    with pytest.raises(GroupSpecError) as error:
        parse_group_spec("perm:3:(0 1)")
    assert (error.value.line, error.value.column) == (1, 9)
    with pytest.raises(BadParams):
        cycles_to_images(((0, 2),), 3)
    with pytest.raises(BadParams):
        cycles_to_images(((1, 4),), 3)
    assert cycles_to_images(((1, 3, 2),), 3) == [2, 0, 1]


def test_semidirect_is_not_a_builtin_name():
    with pytest.raises(GroupSpecError):
        parse_group_spec("builtin:semidirect")


def test_render_is_canonical():
    text = "semidirect:{perm:3:(1 2 3)}{builtin:cyclic:2}{(1 3 2)}"
    assert render_group_spec(parse_group_spec(text)) == text
    assert render_group_spec(parse_group_spec("perm:3: ( 1 2 ) , ()")) == "perm:3:(1 2),()"


def _cycles(images):
    seen = set()
    cycles = []
    for start in range(len(images)):
        if start in seen or images[start] == start:
            continue
        cycle = []
        point = start
        while point not in seen:
            seen.add(point)
            cycle.append(point + 1)
            point = images[point]
        cycles.append(tuple(cycle))
    return tuple(cycles)


@st.composite
def perm_specs(draw):
    degree = draw(st.integers(min_value=1, max_value=7))
    generators = draw(st.lists(st.permutations(range(degree)), min_size=1, max_size=3))
    return perm_spec(degree, [_cycles(g) for g in generators])


@settings(derandomize=True, max_examples=20)
@given(perm_specs())
def test_perm_specs_round_trip(spec):
    assert parse_group_spec(render_group_spec(spec)) == spec


def test_cli_json_report(capsys):
    assert main(["--group", "builtin:symmetric:4", "--prime", "2"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["schema"] == "cellular-trichotomy/report-v1"
    assert report["verdict"] == {"branch": "torsion_free", "criterion": "A"}
    assert report["primes_q"] == [3]
    assert report["certified"] is True
    assert report["timings_ms"] is None
    assert report["input"] == {"spec": "builtin:symmetric:4", "prime": 2}


def test_cli_text_report(capsys):
    assert main(["--group", "builtin:thevenaz", "--prime", "2", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "torsion_free (criterion B)" in out
    assert "G [96]" in out


def test_cli_exit_codes(capsys):
    assert main(["--group", "perm:3:(1 1 2)", "--prime", "2"]) == 1
    error = json.loads(capsys.readouterr().out)["error"]
    assert (error["type"], error["line"], error["column"]) == ("GroupSpecError", 1, 11)

    assert main(["--group", "builtin:symmetric:3", "--prime", "4"]) == 1
    assert json.loads(capsys.readouterr().out)["error"]["type"] == "NotPrime"

    assert main(["--group", "builtin:symmetric:8", "--prime", "2", "--enum-limit", "100"]) == 2
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"]["branch"] == "unknown"
    assert report["certified"] is False


def test_cli_suzuki_torsion(capsys):
    assert main(["--group", "builtin:suzuki:8", "--prime", "2", "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"]["branch"] == "torsion"
    assert report["certified"] is True
    witness = report["certificate"]["witness"]
    expected = hashlib.sha256(canonical_json(witness).encode("ascii")).hexdigest()
    assert report["verdict"]["witness_digest"] == expected


def _write_batch(tmp_path):
    batch = tmp_path / "batch.txt"
    batch.write_text(
        "# comment line\n"
        "builtin:symmetric:3 2\n"
        "\n"
        "perm:3:(1 1 2) 2\n"
        "builtin:alternating:4 2\n"
        "builtin:thevenaz 2\n"
    )
    return batch


def test_batch_reports_every_line(tmp_path, capsys):
    batch = _write_batch(tmp_path)
    assert main(["--batch", str(batch)]) == 1
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4
    records = [json.loads(line) for line in lines]
    assert records[0]["verdict"]["branch"] == "torsion_free"
    assert records[1]["error"]["type"] == "GroupSpecError"
    assert records[2]["verdict"]["branch"] == "aspherical"
    assert records[3]["verdict"]["criterion"] == "B"


def test_batch_output_is_byte_identical(tmp_path, capsys):
    batch = _write_batch(tmp_path)
    main(["--batch", str(batch), "--seed", "3"])
    first = capsys.readouterr().out
    main(["--batch", str(batch), "--seed", "3"])
    assert capsys.readouterr().out == first


def test_reverify_flag(tmp_path, capsys):
    batch = tmp_path / "batch.txt"
    batch.write_text("builtin:symmetric:3 2\nbuiltin:thevenaz 2\nbuiltin:alternating:4 2\n")
    assert main(["--batch", str(batch)]) == 0
    reports = tmp_path / "reports.jsonl"
    reports.write_text(capsys.readouterr().out)
    assert main(["--reverify", str(reports)]) == 0
    assert capsys.readouterr().out.count("verified") == 3

    single = tmp_path / "single.json"
    main(["--group", "builtin:alternating:5", "--prime", "2"])
    single.write_text(capsys.readouterr().out)
    assert main(["--reverify", str(single)]) == 0


def test_list_builtins(capsys):
    assert main(["--list-builtins"]) == 0
    out = capsys.readouterr().out
    assert "builtin:suzuki:<q>" in out
    assert "builtin:thevenaz " in out
    assert "semidirect:{H}{K}{images}" in out
