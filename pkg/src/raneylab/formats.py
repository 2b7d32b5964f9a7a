"""Text and JSON formats for lattices, posets, spaces and derived objects.

LAT1::

    lat 3
    labels 0 a 1        (optional)
    0 < 1
    1 < 2

``poset n`` files use the same relation lines.  SPC1::

    space 2
    labels x y          (optional)
    {}
    {1}
    0b11                (bitmask, bit i = point i)

Blank lines and ``#`` comments are ignored.  A file whose first non-blank
character is ``{`` is read as the JSON mirror of these formats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import NotAFrame, ParseError
from .order import FinLattice, FinPoset, bits, lattice_fingerprint, validate_lattice
from .spaces import FinSpace


@dataclass(frozen=True)
class Parsed:
    kind: str  # "lattice" | "poset" | "space"
    value: object


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield lineno, raw, line


def _col(raw: str, token: str) -> int:
    pos = raw.find(token)
    return pos + 1 if pos >= 0 else 1


def _int(token: str, lineno: int, raw: str, limit: int | None = None) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno, _col(raw, token)) from None
    if value < 0 or (limit is not None and value >= limit):
        raise ParseError(f"index {value} out of range", lineno, _col(raw, token))
    return value


def _relations(n: int, body, what: str):
    pairs = []
    labels = None
    for lineno, raw, line in body:
        tokens = line.split()
        if tokens[0] == "labels":
            if len(tokens) - 1 != n:
                raise ParseError(f"expected {n} labels, got {len(tokens) - 1}", lineno, 1)
            labels = tokens[1:]
            continue
        if len(tokens) != 3 or tokens[1] != "<":
            raise ParseError(f"expected 'i < j' in a {what} file", lineno, _col(raw, tokens[0]))
        pairs.append((_int(tokens[0], lineno, raw, n), _int(tokens[2], lineno, raw, n)))
    return pairs, labels


def _poset(n: int, pairs, labels) -> FinPoset:
    rows = [1 << i for i in range(n)]
    for i, j in pairs:
        rows[i] |= 1 << j
    # transitive closure, then reject cycles
    for k in range(n):
        for i in range(n):
            if rows[i] >> k & 1:
                rows[i] |= rows[k]
    return FinPoset(rows, labels)


def _parse_space_body(n: int, body) -> tuple[list[int], list[str] | None]:
    opens = []
    labels = None
    for lineno, raw, line in body:
        text = line.strip()
        if text.startswith("labels"):
            tokens = text.split()[1:]
            if len(tokens) != n:
                raise ParseError(f"expected {n} labels, got {len(tokens)}", lineno, 1)
            labels = tokens
        elif text.startswith("0b"):
            try:
                mask = int(text, 2)
            except ValueError:
                raise ParseError(f"bad bitmask {text!r}", lineno, _col(raw, text)) from None
            if mask >> n:
                raise ParseError("bitmask mentions points beyond n", lineno, _col(raw, text))
            opens.append(mask)
        elif text.startswith("{") and text.endswith("}"):
            inner = text[1:-1].replace(",", " ").split()
            opens.append(sum(1 << _int(t, lineno, raw, n) for t in inner))
        else:
            raise ParseError("expected an open as {i,j,...} or 0b...", lineno, _col(raw, text))
    return opens, labels


def parse_text(text: str) -> Parsed:
    """Parse LAT1 / poset / SPC1 text or their JSON mirrors."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_json(text)
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty input", 1, 1)
    lineno, raw, header = lines[0]
    tokens = header.split()
    if len(tokens) != 2 or tokens[0] not in ("lat", "poset", "space"):
        raise ParseError("header must be 'lat N', 'poset N' or 'space N'", lineno, 1)
    n = _int(tokens[1], lineno, raw)
    body = lines[1:]
    try:
        if tokens[0] == "space":
            opens, labels = _parse_space_body(n, body)
            return Parsed("space", FinSpace(n, opens, labels))
        pairs, labels = _relations(n, body, tokens[0])
        P = _poset(n, pairs, labels)
        if tokens[0] == "poset":
            return Parsed("poset", P)
        return Parsed("lattice", validate_lattice(P))
    except ValueError as exc:
        raise ParseError(str(exc), lineno, 1) from exc


def parse_json(text: str) -> Parsed:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object", 1, 1)
    fmt = data.get("format")
    try:
        n = int(data["n"])
        labels = data.get("labels")
        if fmt == "SPC1":
            opens = [sum(1 << int(i) for i in U) for U in data["opens"]]
            return Parsed("space", FinSpace(n, opens, labels))
        pairs = [(int(i), int(j)) for i, j in data["order"]]
        P = _poset(n, pairs, labels)
        if fmt == "POSET":
            return Parsed("poset", P)
        if fmt == "LAT1":
            return Parsed("lattice", validate_lattice(P))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"malformed JSON document: {exc}", 1, 1) from None
    raise ParseError(f"unknown format {fmt!r}", 1, 1)


def read_file(path: str | Path) -> Parsed:
    return parse_text(Path(path).read_text(encoding="utf-8"))


def require_frame(L: FinLattice) -> FinLattice:
    if not L.is_distributive:
        raise NotAFrame("lattice is not distributive")
    return L


# --- writers -----------------------------------------------------------------------


def lattice_to_text(L: FinLattice) -> str:
    lines = [f"lat {L.n}", "labels " + " ".join(L.labels)]
    lines += [f"{i} < {j}" for i, j in L.covers()]
    return "\n".join(lines) + "\n"


def poset_to_text(P: FinPoset) -> str:
    lines = [f"poset {P.n}", "labels " + " ".join(P.labels)] if P.n else [f"poset {P.n}"]
    lines += [f"{i} < {j}" for i, j in P.covers()]
    return "\n".join(lines) + "\n"


def space_to_text(X: FinSpace) -> str:
    lines = [f"space {X.n}"]
    if X.n:
        lines.append("labels " + " ".join(X.labels))
    lines += ["{" + ",".join(str(i) for i in bits(U)) + "}" for U in X.opens]
    return "\n".join(lines) + "\n"


def lattice_to_json(L: FinLattice) -> dict:
    return {"format": "LAT1", "n": L.n, "labels": list(L.labels),
            "order": [list(c) for c in L.covers()]}


def poset_to_json(P: FinPoset) -> dict:
    return {"format": "POSET", "n": P.n, "labels": list(P.labels),
            "order": [list(c) for c in P.covers()]}


def space_to_json(X: FinSpace) -> dict:
    return {"format": "SPC1", "n": X.n, "labels": list(X.labels),
            "opens": [list(bits(U)) for U in X.opens]}


def sublocale_to_json(S) -> list[int]:
    return sorted(bits(S.carrier))


def filter_to_json(F) -> dict:
    return {"min": F.minimum, "host": lattice_fingerprint(F.host)}


def raney_to_json(R) -> dict:
    from .raney import axioms, spectrum

    L = R.base
    return {
        "base": lattice_fingerprint(L),
        "cstar": [L.meet_of(X) for X in R.cstar],
        "axioms": axioms(R),
        "spectrum": space_to_json(spectrum(R)),
    }


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, no spaces, UTF-8 characters kept."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
