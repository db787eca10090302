import json
import math

from erasureframes import report


def test_float_format_round_trips():
    for x in (0.1, 1 / 3, 5 / 12, 1e-300, 12345678.9):
        s = report.format_float(x)
        assert float(s) == x
    assert report.format_float(7.0) == "7.0"
    assert report.format_float(math.inf) == '"inf"'


def test_dumps_is_valid_json_with_ints():
    doc = {"a": 1, "b": [1.5, 2], "c": {"d": None, "e": True}, "f": []}
    text = report.dumps(doc)
    back = json.loads(text)
    assert back == doc
    assert isinstance(back["a"], int)
    assert report.dumps(doc) == text


def test_fingerprint():
    assert report.fingerprint(b"").startswith("sha256:e3b0c442")
