"""Text formats for faces, involutions, complexes and result records.

Compact face notation writes each vertex as one character, 1-9 then
a=10, b=11, ... (up to z=35), with faces separated by commas or spaces.
Labels above 35 use bracketed integer lists such as ``[36,40,41]``; the
parser accepts both forms and mixed input.
"""

from __future__ import annotations

import json
import re

DIGITS = "123456789abcdefghijklmnopqrstuvwxyz"
MAX_COMPACT = len(DIGITS)


class ParseError(ValueError):
    """Malformed input; ``line`` is 1-based when known."""

    def __init__(self, msg, line=None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def label_char(v):
    if not 1 <= v <= MAX_COMPACT:
        raise ValueError(f"label {v} has no one-character form")
    return DIGITS[v - 1]


def char_label(ch):
    i = DIGITS.find(ch.lower())
    if i < 0:
        raise ValueError(f"bad vertex character {ch!r}")
    return i + 1


def format_face(face, compact=None):
    if compact is None:
        compact = max(face) <= MAX_COMPACT
    if compact:
        return "".join(label_char(v) for v in face)
    return "[" + ",".join(str(v) for v in face) + "]"


def format_faces(faces, compact=None):
    faces = list(faces)
    if compact is None:
        compact = all(max(f) <= MAX_COMPACT for f in faces) if faces else True
    sep = "," if compact else " "
    return sep.join(format_face(f, compact) for f in faces)


_TOKEN = re.compile(r"\[[^\]]*\]|[0-9a-zA-Z]+")


def parse_faces(text):
    """Parse a face list in compact or bracketed notation.

    Faces keep the order in which their vertices were written, so the
    same parser serves face cycles of maps.
    """
    out = []
    pos = 0
    text = text.strip()
    for m in _TOKEN.finditer(text):
        gap = text[pos:m.start()]
        if gap.strip(" ,;\t"):
            raise ValueError(f"unexpected {gap.strip()!r}")
        pos = m.end()
        tok = m.group()
        if tok.startswith("["):
            try:
                face = tuple(int(x) for x in tok[1:-1].split(",") if x.strip())
            except ValueError:
                raise ValueError(f"bad bracketed face {tok!r}") from None
        else:
            face = tuple(char_label(ch) for ch in tok)
        if not face:
            raise ValueError("empty face")
        out.append(face)
    if text[pos:].strip(" ,;\t"):
        raise ValueError(f"unexpected {text[pos:].strip()!r}")
    return out


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text):
    """Pairs from cycle notation ``(1,12)(2,11)...``."""
    text = text.strip()
    pairs = []
    rest = _CYCLE.sub("", text)
    if rest.strip():
        raise ValueError(f"unexpected {rest.strip()!r} in cycle notation")
    for m in _CYCLE.finditer(text):
        items = [x.strip() for x in m.group(1).split(",")]
        if len(items) != 2:
            raise ValueError(f"cycle ({m.group(1)}) is not a transposition")
        try:
            pairs.append((int(items[0]), int(items[1])))
        except ValueError:
            raise ValueError(f"bad label in ({m.group(1)})") from None
    return pairs


def format_cycles(inv):
    return inv.cycles()


# ---------------------------------------------------------------------------
# object files
# ---------------------------------------------------------------------------

class ParsedObject:
    """Contents of an object file: facets/orbits or map faces, and an
    optional involution."""

    def __init__(self):
        self.facets = None
        self.orbits = None
        self.faces = None
        self.involution = None
        self.n = None

    def build(self):
        """Return ``(obj, involution)`` with ``obj`` a Complex or map."""
        from .complex import Complex, PolyhedralMap
        from .symmetry import Involution, cycle_orbit_closure, orbit_closure
        inv = None
        if self.involution is not None:
            inv = Involution.from_pairs(self.involution, self.n)
        if self.orbits is not None:
            if inv is None:
                used = {v for f in self.orbits for v in f}
                n = self.n or 2 * ((max(used) + 1) // 2)
                inv = Involution.canonical(n)
            facets = orbit_closure(self.orbits, inv)
            return Complex(facets, n=self.n or inv.n), inv
        if self.facets is not None:
            return Complex(self.facets, n=self.n), inv
        if self.faces is not None:
            return PolyhedralMap(self.faces, n=self.n), inv
        raise ParseError("no facets, orbits or faces given")


def parse_object(text):
    """Parse an object file.

    Lines are ``key: value``; keys are ``n``, ``facets``, ``orbits``
    (representatives closed under the involution), ``faces`` (map face
    cycles) and ``involution`` (cycle notation).  A value may continue on
    following lines that have no key.  ``#`` starts a comment.  A file with
    no keys at all is read as a facet list.
    """
    obj = ParsedObject()
    key = None
    chunks = {}
    first_line = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"^([A-Za-z_]+)\s*:(.*)$", line)
        if m:
            key = m.group(1).lower()
            if key not in ("n", "facets", "orbits", "faces", "involution"):
                raise ParseError(f"unknown key {key!r}", lineno)
            if key in chunks:
                raise ParseError(f"key {key!r} repeated", lineno)
            chunks[key] = [(lineno, m.group(2))]
            first_line[key] = lineno
        else:
            if key is None:
                key = "facets"
                chunks[key] = []
                first_line[key] = lineno
            chunks[key].append((lineno, line))
    for k, parts in chunks.items():
        if k == "n":
            try:
                obj.n = int("".join(p for _, p in parts).strip())
            except ValueError:
                raise ParseError("n must be an integer", first_line[k]) from None
        elif k == "involution":
            try:
                obj.involution = parse_cycles("".join(p for _, p in parts))
            except ValueError as e:
                raise ParseError(str(e), first_line[k]) from None
        else:
            faces = []
            for lineno, p in parts:
                try:
                    faces.extend(parse_faces(p))
                except ValueError as e:
                    raise ParseError(str(e), lineno) from None
            setattr(obj, k, faces)
    return obj


def format_object(obj, inv=None, orbits=None):
    """Text for a complex or map, re-readable by :func:`parse_object`."""
    from .complex import PolyhedralMap
    lines = [f"n: {obj.n}"]
    if isinstance(obj, PolyhedralMap):
        lines.append("faces: " + format_faces(obj.faces))
    elif orbits is not None:
        lines.append("orbits: " + format_faces(orbits))
    else:
        lines.append("facets: " + format_faces(obj.facets))
    if inv is not None:
        lines.append("involution: " + inv.cycles())
    return "\n".join(lines) + "\n"


def read_object(path):
    with open(path) as fh:
        return parse_object(fh.read()).build()


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------

def record_to_json(rec):
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def record_from_json(line):
    return json.loads(line)
