import hashlib

import numpy as np
import pytest

from erasureframes import catalog
from erasureframes.errors import BadCharacter, InvalidInput, NonZeroDiagonal, NotSymmetric, RaggedLines
from erasureframes.frames import SignatureMatrix, signature_parameters
from erasureframes.seidel import graph_from_signature, switching_certificate


def test_parse_small():
    Q = catalog.parse_signature_text("0+\n+0")
    assert Q.entries.tolist() == [[0, 1], [1, 0]]
    assert catalog.parse_signature_text(b"0-\r\n-0\r\n").entries.tolist() == [[0, -1], [-1, 0]]


@pytest.mark.parametrize(
    "text,exc,attrs",
    [
        ("0+\n-0", NotSymmetric, {"i": 1, "j": 2}),
        ("0++\n+0-\n++0\n", NotSymmetric, {"i": 2, "j": 3}),
        ("+0\n00", NonZeroDiagonal, {"i": 1}),
        ("0x\n+0", BadCharacter, {"row": 1, "col": 2}),
        ("0+ \n+0 ", BadCharacter, {"row": 1, "col": 3}),
        ("0+\n+0\n\n", RaggedLines, {}),
        ("00\n00", BadCharacter, {"row": 1, "col": 2, "char": "0"}),
        ("0+\n+0+", RaggedLines, {}),
        ("", RaggedLines, {}),
    ],
)
def test_parse_errors(text, exc, attrs):
    with pytest.raises(exc) as info:
        catalog.parse_signature_text(text)
    for name, value in attrs.items():
        assert getattr(info.value, name) == value


def test_emit():
    assert catalog.emit_signature_text(SignatureMatrix(np.array([[0, 1], [1, 0]]))) == "0+\n+0\n"
    J = np.ones((3, 3), dtype=int) - np.eye(3, dtype=int)
    assert catalog.emit_signature_text(SignatureMatrix(J)) == "0++\n+0+\n++0\n"


def test_file_round_trip(tmp_path, paley6):
    path = tmp_path / "c6.sig"
    data = catalog.write_signature_file(path, paley6)
    assert path.read_bytes() == data and data.count(b"\n") == 6
    assert catalog.read_signature_file(path) == paley6


def test_table2_golden_bytes(table2):
    assert len(table2) == 5
    for ident, Q in zip(catalog.TABLE2_IDS, table2):
        raw = catalog.table2_bytes(ident)
        assert hashlib.sha256(raw).hexdigest() == catalog.TABLE2_SHA256[ident]
        assert catalog.emit_signature_text(Q).encode("ascii") == raw
        par = signature_parameters(Q)
        assert (par.n, par.k, par.mu) == (36, 15, 2)
    with pytest.raises(KeyError):
        catalog.table2_bytes("table2-6")


def test_table2_classes_distinct(table2):
    certs = {switching_certificate(graph_from_signature(Q)) for Q in table2}
    assert len(certs) == 5


def test_negate(table2, paley6):
    neg = catalog.negate_signature(table2[0])
    par = signature_parameters(neg)
    assert (par.n, par.k, par.mu) == (36, 21, -2)
    assert signature_parameters(catalog.negate_signature(paley6)).k == 3
    with pytest.raises(InvalidInput):
        catalog.negate_signature(catalog.parse_signature_text("0+++\n+0++\n++0-\n++-0\n"))


def test_known_frames_records():
    recs = {(r.n, r.k): r for r in catalog.known_frames()}
    assert len(recs) == 20
    r = recs[(16, 6)]
    assert (r.class_label, r.type_tag, r.constructible) == ("1", "H", True)
    assert not recs[(26, 13)].constructible and recs[(26, 13)].class_count == 4
    assert not recs[(276, 23)].constructible
    assert recs[(36, 15)].count_is_lower_bound and recs[(36, 15)].class_count == 227
    assert not recs[(10, 5)].count_is_lower_bound
    constructible = {key for key, rec in recs.items() if rec.constructible}
    assert constructible == {(6, 3), (14, 7), (18, 9), (30, 15), (38, 19), (42, 21), (16, 6), (16, 10), (36, 15)}
    with pytest.raises(InvalidInput):
        recs[(50, 25)].build()


def test_constructible_records_build():
    for rec in catalog.known_frames():
        if not rec.constructible:
            continue
        built = rec.build()
        assert len(built) == (5 if (rec.n, rec.k) == (36, 15) else 1)
        for Q in built:
            par = signature_parameters(Q)
            assert (par.n, par.k) == (rec.n, rec.k)


@pytest.mark.parametrize("n", [3, 4, 7])
def test_trivial_lookup(n):
    for k, codim1 in ((1, False), (n - 1, True)):
        rec = catalog.lookup(n, k)
        assert rec == catalog.trivial_record(n, codim1)
        par = signature_parameters(rec.build()[0])
        assert (par.n, par.k) == (n, k)
    assert catalog.lookup(36, 15).type_tag == "H"
    assert catalog.lookup(7, 3) is None
