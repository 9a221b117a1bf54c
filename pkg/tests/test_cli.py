from __future__ import annotations

import json

import pytest
from hypothesis import given

from complicial.anodyne import build_cert_suspension, build_cert_wedge, replay, suspension_setup, wedge_setup
from complicial.cat2 import WedgePresentation, interval, theta2, walking_iso
from complicial.cli import main
from complicial.cli.codec import (
    CodecError,
    decode_certificate,
    decode_complex,
    decode_map,
    encode_certificate,
    encode_complex,
    encode_map,
)
from complicial.msset import GeneratorShape, generator_inclusion, make_generator, validate, validate_map
from complicial.nerve import duskin_nerve, matrix_model

from conftest import small_complexes


# ---------------------------------------------------------------- codec


@given(small_complexes(truncation=4))
def test_complex_round_trip_is_byte_exact(X):
    text = encode_complex(X)
    Y = decode_complex(text)
    assert validate(Y) == []
    assert Y == X
    assert encode_complex(Y) == text


def test_labels_survive_round_trip():
    X = matrix_model(walking_iso(), 3)
    Y = decode_complex(encode_complex(X))
    assert Y.labels == X.labels


def test_map_round_trip():
    f = generator_inclusion(GeneratorShape.horn(3, 2), GeneratorShape.complicial(3, 2))
    text = encode_map(f)
    g = decode_map(text)
    assert validate_map(g) == [] and g.assignment == f.assignment
    assert encode_map(g) == text


@pytest.mark.parametrize("which", ["suspension", "wedge"])
def test_certificate_round_trip(which):
    if which == "suspension":
        inc, target = suspension_setup(interval(1), 3)
        cert = build_cert_suspension(interval(1), 3, target=target)
    else:
        w = WedgePresentation.canonical(theta2(1, [1]), theta2(1, [0]))
        nerve = wedge_setup(w, 3)
        inc, cert = nerve.comparison, build_cert_wedge(w, 3, nerve=nerve)
    text = encode_certificate(cert)
    back = decode_certificate(text, inc.target)
    assert back.steps == cert.steps
    assert encode_certificate(back) == text
    assert replay(back, inc)


def _lines(text):
    return [json.loads(line) for line in text.splitlines()]


def _join(records):
    return "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in records)


def test_decoder_rejects_dangling_face():
    records = _lines(encode_complex(make_generator(GeneratorShape.standard(2))))
    edge = next(r for r in records[1:] if r["dim"] == 1)
    edge["faces"][0][1] = 99
    with pytest.raises(CodecError):
        decode_complex(_join(records))


def test_decoder_rejects_wrong_format_and_version():
    records = _lines(encode_complex(make_generator(GeneratorShape.standard(1))))
    bad = dict(records[0], format="something/else")
    with pytest.raises(CodecError):
        decode_complex(_join([bad] + records[1:]))
    bad = dict(records[0], version=99)
    with pytest.raises(CodecError):
        decode_complex(_join([bad] + records[1:]))


def test_decoder_rejects_floats_and_garbage():
    text = encode_complex(make_generator(GeneratorShape.standard(1)))
    with pytest.raises(CodecError):
        decode_complex(text.replace('"truncation":1', '"truncation":1.0'))
    with pytest.raises(CodecError):
        decode_complex("not json\n")


def test_certificate_decoder_rejects_out_of_range_ids():
    inc, target = suspension_setup(interval(1), 3)
    records = _lines(encode_certificate(build_cert_suspension(interval(1), 3, target=target)))
    records[1]["filler_id"] = 10**6
    with pytest.raises(CodecError):
        decode_certificate(_join(records), inc.target)


# ---------------------------------------------------------------- commands


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_census_of_theta_matches_nerve(capsys):
    code, out = _run(capsys, "census", "theta", "2", "1,1", "--dim", "3", "--format", "json")
    assert code == 0
    rows = json.loads(out.out)["dims"]
    N = duskin_nerve(theta2(2, [1, 1]), "roberts_street", 3)
    assert [r["total"] for r in rows] == N.counts()
    assert [r["marked"] for r in rows] == N.marked_counts()


def test_census_text_of_standard_simplex(capsys):
    code, out = _run(capsys, "census", "standard", "2")
    assert code == 0
    assert out.out.splitlines()[2:] == ["0 3 0 3", "1 3 0 3", "2 1 0 1"]


def test_build_writes_a_decodable_complex(tmp_path, capsys):
    path = tmp_path / "x.jsonl"
    code, _ = _run(capsys, "build", "nerve-suspension", "walking_iso", "--dim", "3", "--out", str(path))
    assert code == 0
    X = decode_complex(path.read_text())
    assert X == matrix_model(walking_iso(), 3)


def test_verify_then_replay(tmp_path, capsys):
    path = tmp_path / "cert.jsonl"
    code, out = _run(capsys, "verify", "suspension", "--base", "interval:1", "--dim", "3", "--out", str(path))
    assert code == 0, out.out
    code, out = _run(capsys, "replay", str(path), "--format", "json")
    assert code == 0 and json.loads(out.out)["ok"] is True


def test_replay_rejects_tampered_file(tmp_path, capsys):
    path = tmp_path / "cert.jsonl"
    _run(capsys, "verify", "wedge", "--left", "theta:1,[1]", "--right", "theta:1,[0]", "--dim", "3", "--out", str(path))
    records = _lines(path.read_text())
    records[1]["filler_id"] = records[1]["face_id"]
    path.write_text(_join(records))
    code, out = _run(capsys, "replay", str(path))
    assert code == 1


def test_verify_output_is_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a", tmp_path / "b"]
    for p in paths:
        assert _run(capsys, "verify", "suspension", "--base", "walking_iso", "--dim", "3", "--out", str(p))[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "face-tables", "--base", "interval:1", "--dim", "4"],
        ["verify", "matrix-iso", "--base", "interval:1", "--dim", "3"],
        ["verify", "lambda-prime", "--horn", "3,1"],
        ["verify", "oriental-collapse", "--dim", "1"],
        ["verify", "wedge-pullback", "--left", "theta:1,[1]", "--right", "theta:1,[1]"],
        ["verify", "suspension", "--base", "[1]", "--dim", "3", "--unmarked"],
    ],
)
def test_verify_commands_succeed(capsys, argv):
    code, out = _run(capsys, *argv)
    assert code == 0, out.out


def test_rlp_exit_codes(capsys):
    assert _run(capsys, "rlp", "complicial", "2", "1", "--horn", "2,1")[0] == 0
    assert _run(capsys, "rlp", "standard", "2", "--horn", "2,1")[0] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["census", "theta", "2", "1"],
        ["census", "theta", "2", "1,-1"],
        ["census", "wedge", "walking_iso", "walking_iso"],
        ["census", "nerve", "bogus:3"],
        ["census", "standard", "-1"],
        ["census", "horn", "3", "7"],
        ["verify", "suspension", "--base", "interval:1", "--dim", "9"],
        ["rlp", "standard", "2", "--horn", "2,5"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, out = _run(capsys, *argv)
    assert code == 2 and out.err


def test_argparse_rejects_unknown_theorem(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2
