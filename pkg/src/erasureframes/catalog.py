"""Text format for signature matrices, the embedded (36,15) matrices, and known frames.

A ``.sig`` file holds ``n`` lines of ``n`` ASCII characters: ``0`` on the
diagonal, ``+`` and ``-`` for the signs.  Lines end in LF (CRLF is accepted
on input); trailing whitespace is an error.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .constructions import ConstructionRecipe, Kind
from .errors import (
    BadCharacter,
    InvalidInput,
    NonZeroDiagonal,
    NotASignature,
    NotSymmetric,
    RaggedLines,
)
from .frames import SignatureMatrix, signature_parameters

_CHAR_VALUE = {"0": 0, "+": 1, "-": -1}
_VALUE_CHAR = {0: "0", 1: "+", -1: "-"}

TABLE2_IDS = tuple(f"table2-{i}" for i in range(1, 6))

# sha256 of the stored asset bytes; a change to any file is a hard error
TABLE2_SHA256 = {
    "table2-1": "6069238dfb5a293e0d7c31b5e411fcc408f08b82ed8367ca8dfb29d01e44f444",
    "table2-2": "86899ea2bd3a8f85539a35fc6bab559544b365ac9bb3c1cfb6794477d9fb6bfa",
    "table2-3": "5d7784005e9d27cda6fd43b1989a1e9694734c79d0106370498b573edfb1d5af",
    "table2-4": "f91640a04750accb9a122ff04e7bb953dc978e80ddcf5fcdf85ff038bc19275f",
    "table2-5": "411f1baee339d6d02383b95b2fb9832141083f1d91e00c8f3a7a267bf1ed75f3",
}


def parse_signature_text(text: str | bytes) -> SignatureMatrix:
    """Parse a ``.sig`` document.  Error positions are 1-based."""
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise RaggedLines(f"input is not ASCII (byte offset {exc.start})") from None
    text = text.replace("\r\n", "\n")
    if text.endswith("\n"):
        text = text[:-1]
    if not text:
        raise RaggedLines("empty input")
    lines = text.split("\n")
    n = len(lines)
    for r, line in enumerate(lines, 1):
        for c, ch in enumerate(line, 1):
            if ch not in _CHAR_VALUE:
                raise BadCharacter(r, c, ch)
        if len(line) != n:
            raise RaggedLines(f"line {r} has {len(line)} characters, expected {n}")
    Q = np.array([[_CHAR_VALUE[ch] for ch in line] for line in lines], dtype=np.int64)
    for i in range(n):
        if Q[i, i] != 0:
            raise NonZeroDiagonal(i + 1)
        off = np.flatnonzero(Q[i, i + 1:] == 0)
        if off.size:
            raise BadCharacter(i + 1, i + 2 + int(off[0]), "0")
    bad = np.argwhere(Q != Q.T)
    if bad.size:
        i, j = sorted(bad[0])
        raise NotSymmetric(int(i) + 1, int(j) + 1)
    return SignatureMatrix(Q)


def emit_signature_text(Q: SignatureMatrix) -> str:
    return "".join("".join(_VALUE_CHAR[int(x)] for x in row) + "\n" for row in Q.entries)


def read_signature_file(path) -> SignatureMatrix:
    with open(path, "rb") as fh:
        return parse_signature_text(fh.read())


def write_signature_file(path, Q: SignatureMatrix) -> bytes:
    data = emit_signature_text(Q).encode("ascii")
    with open(path, "wb") as fh:
        fh.write(data)
    return data


def table2_bytes(ident: str) -> bytes:
    if ident not in TABLE2_SHA256:
        raise KeyError(ident)
    data = resources.files(__package__).joinpath("data").joinpath(f"{ident}.sig").read_bytes()
    digest = hashlib.sha256(data).hexdigest()
    if digest != TABLE2_SHA256[ident]:
        raise RuntimeError(f"catalog asset {ident} is corrupted (sha256 {digest})")
    return data


@lru_cache(maxsize=None)
def _table2() -> tuple[SignatureMatrix, ...]:
    return tuple(parse_signature_text(table2_bytes(i)) for i in TABLE2_IDS)


def table2_matrices() -> list[SignatureMatrix]:
    """The five good (36,15) signature matrices, in their published order."""
    return list(_table2())


def negate_signature(Q: SignatureMatrix) -> SignatureMatrix:
    """``-Q``, which describes the complementary (n, n-k) frame when valid."""
    neg = -Q
    try:
        signature_parameters(neg)
    except NotASignature as exc:
        raise InvalidInput(f"-Q is not a signature matrix: {exc}") from None
    return neg


@dataclass(frozen=True)
class KnownFrameRecord:
    n: int
    k: int
    class_label: str
    type_tag: str
    constructible: bool
    construction: ConstructionRecipe | tuple[str, ...] | None = None

    @property
    def class_count(self) -> int:
        return int(self.class_label.rstrip("+"))

    @property
    def count_is_lower_bound(self) -> bool:
        return self.class_label.endswith("+")

    def build(self) -> list[SignatureMatrix]:
        """Signature matrices for this record (several for a catalog entry)."""
        if not self.constructible:
            raise InvalidInput(f"({self.n},{self.k}) has no available construction")
        if isinstance(self.construction, ConstructionRecipe):
            return [self.construction.build()]
        lookup = dict(zip(TABLE2_IDS, _table2()))
        return [lookup[i] for i in self.construction]


def _paley(p):
    return ConstructionRecipe(Kind.PALEY_CONFERENCE, p)


# (n, k, classes, type, construction); classes and types as tabulated for n <= 50
# plus the two sporadic graph examples
_TABLE1 = [
    (6, 3, "1", "C", _paley(5)),
    (10, 5, "1", "C", None),
    (14, 7, "1", "C", _paley(13)),
    (16, 6, "1", "H", ConstructionRecipe(Kind.GRAPH_HADAMARD_MINUS, 16)),
    (16, 10, "1", "H", ConstructionRecipe(Kind.GRAPH_HADAMARD_PLUS, 16)),
    (18, 9, "1", "C", _paley(17)),
    (26, 13, "4", "C", None),
    (28, 7, "1", "G", None),
    (28, 21, "1", "G", None),
    (30, 15, "6+", "C", _paley(29)),
    (36, 15, "227+", "H", TABLE2_IDS),
    (36, 21, "227+", "H", None),
    (38, 19, "11+", "C", _paley(37)),
    (42, 21, "18+", "C", _paley(41)),
    (46, 23, "80+", "C", None),
    (50, 25, "18+", "C", None),
    (176, 22, "1", "G", None),
    (176, 154, "1", "G", None),
    (276, 23, "1", "G", None),
    (276, 253, "1", "G", None),
]


def known_frames() -> list[KnownFrameRecord]:
    """Known real 2-uniform frames, one record per (n, k).

    Only the five printed (36,15) representatives are available; the census
    counts ("227+") are quoted, not reproduced.
    """
    return [
        KnownFrameRecord(n, k, label, tag, recipe is not None, recipe)
        for n, k, label, tag, recipe in _TABLE1
    ]


def trivial_record(n: int, codim1: bool = False) -> KnownFrameRecord:
    """The (n, 1) or (n, n-1) frame, which exists and is unique for every n >= 2."""
    kind = Kind.TRIVIAL_CODIM1 if codim1 else Kind.TRIVIAL_DIM1
    k = n - 1 if codim1 else 1
    return KnownFrameRecord(n, k, "1", "T", True, ConstructionRecipe(kind, n))


def lookup(n: int, k: int) -> KnownFrameRecord | None:
    if n >= 2 and k == 1:
        return trivial_record(n)
    if n >= 2 and k == n - 1:
        return trivial_record(n, codim1=True)
    for rec in known_frames():
        if (rec.n, rec.k) == (n, k):
            return rec
    return None
