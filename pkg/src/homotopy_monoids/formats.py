"""
Line-oriented text formats: monoid, semigroup, category and diagram
blocks, chain complexes, W-tuples, Moore paths and points of |EM|.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Hashable, List, Optional, Sequence, Tuple, Union

from .barcat import Diagram, SimplicialMap, make_diagram
from .core import FormatParseError, HomotopyError, Mode, RangeError
from .exactalg import ChainComplex, IntMatrix, format_rat, parse_rat
from .moorezeta import EMPoint, MoorePath, QVector, Segment
from .simplicial import (
    FinCategory,
    FinMonoid,
    FinSemigroup,
    Simplex,
    SimplicialSet,
    category_from_arrows,
    nerve,
    point,
    sphere,
)
from .wconstruct import WTuple, normalize

HEADERS = ("monoid", "semigroup", "category", "diagram")


@dataclass
class Line:
    number: int
    text: str

    @property
    def words(self) -> List[str]:
        return self.text.split()

    def column(self, token: str) -> int:
        """1-based column of the first occurrence of token"""
        return self.text.find(token) + 1 if token in self.text else 1


def _lines(text: str) -> List[Line]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].rstrip()
        if stripped.strip():
            out.append(Line(i, stripped))
    return out


def _fail(source: str, line: Line, message: str, token: Optional[str] = None) -> FormatParseError:
    return FormatParseError(message, source, line.number, line.column(token) if token else 1)


def format_label(g: Hashable) -> str:
    """Printable form of a generator label"""
    if isinstance(g, str):
        return g
    if isinstance(g, tuple) and all(isinstance(x, str) for x in g):
        return "(" + " ".join(g) + ")"
    return repr(g)


# ---------------------------------------------------------------------------
# Algebraic objects and diagrams


@dataclass
class DiagramSpec:
    """A parsed diagram block, built once the truncation degree is known"""

    name: str
    shape: str
    values: Dict[str, Tuple[Line, List[str]]]
    arrows: Dict[str, Tuple[Line, str]]
    source: str
    header: Line


@dataclass
class Corpus:
    monoids: Dict[str, FinMonoid] = field(default_factory=dict)
    semigroups: Dict[str, FinSemigroup] = field(default_factory=dict)
    categories: Dict[str, FinCategory] = field(default_factory=dict)
    diagrams: Dict[str, DiagramSpec] = field(default_factory=dict)

    def merge(self, other: "Corpus") -> "Corpus":
        return Corpus(
            {**self.monoids, **other.monoids},
            {**self.semigroups, **other.semigroups},
            {**self.categories, **other.categories},
            {**self.diagrams, **other.diagrams},
        )

    def monoid(self, name: str) -> FinMonoid:
        if name not in self.monoids:
            raise HomotopyError(f"unknown monoid {name!r}")
        return self.monoids[name]

    def semigroup(self, name: str) -> FinSemigroup:
        """Semigroups, or monoids viewed as semigroups"""
        if name in self.semigroups:
            return self.semigroups[name]
        if name in self.monoids:
            return self.monoids[name]
        raise HomotopyError(f"unknown semigroup {name!r}")

    def category(self, name: str) -> FinCategory:
        if name in self.categories:
            return self.categories[name]
        if name in self.monoids:
            return self.monoids[name].as_category()
        raise HomotopyError(f"unknown category {name!r}")

    def diagram(self, name: str, maxdim: int) -> Diagram:
        if name not in self.diagrams:
            raise HomotopyError(f"unknown diagram {name!r}")
        return build_diagram(self.diagrams[name], self, maxdim)


def _split_blocks(lines: List[Line], source: str) -> List[List[Line]]:
    blocks: List[List[Line]] = []
    for line in lines:
        head = line.words[0]
        if head in HEADERS:
            blocks.append([line])
        elif not blocks:
            raise _fail(source, line, f"expected one of {', '.join(HEADERS)}", head)
        else:
            blocks[-1].append(line)
    return blocks


def _parse_table(block: List[Line], source: str, with_unit: bool) -> FinSemigroup:
    header = block[0]
    if len(header.words) != 2:
        raise _fail(source, header, f"expected '{header.words[0]} <name>'")
    name = header.words[1]
    elements: Optional[List[str]] = None
    unit: Optional[str] = None
    rows: Dict[str, List[str]] = {}
    for line in block[1:]:
        words = line.words
        if words[0] == "elements":
            elements = words[1:]
            if not elements:
                raise _fail(source, line, "empty element list")
        elif words[0] == "unit":
            if not with_unit:
                raise _fail(source, line, "semigroups have no unit", "unit")
            if len(words) != 2:
                raise _fail(source, line, "expected 'unit <element>'")
            unit = words[1]
        elif words[0] == "row":
            if len(words) < 2 or not words[1].endswith(":"):
                raise _fail(source, line, "expected 'row <element>: <products>'")
            rows[words[1][:-1]] = words[2:]
        else:
            raise _fail(source, line, f"unknown directive {words[0]!r}", words[0])
    if elements is None:
        raise _fail(source, header, "missing 'elements' line")
    known = set(elements)
    table = []
    for x in elements:
        if x not in rows:
            raise _fail(source, header, f"missing row for {x}")
        row = rows[x]
        line = next(ln for ln in block if ln.words[:2] == ["row", f"{x}:"])
        if len(row) != len(elements):
            raise _fail(source, line, f"row {x} has {len(row)} entries, expected {len(elements)}")
        for v in row:
            if v not in known:
                raise _fail(source, line, f"{v!r} is not an element", v)
        table.append(tuple(elements.index(v) for v in row))
    extra = set(rows) - known
    if extra:
        raise _fail(source, header, f"rows for unknown elements {sorted(extra)}")
    if not with_unit:
        return FinSemigroup(name, tuple(elements), tuple(table))
    if unit is None:
        raise _fail(source, header, "missing 'unit' line")
    if unit not in known:
        line = next(ln for ln in block if ln.words[0] == "unit")
        raise _fail(source, line, f"{unit!r} is not an element", unit)
    return FinMonoid(name, tuple(elements), tuple(table), elements.index(unit))


def _parse_category(block: List[Line], source: str) -> FinCategory:
    header = block[0]
    if len(header.words) != 2:
        raise _fail(source, header, "expected 'category <name>'")
    name = header.words[1]
    objects: Optional[List[str]] = None
    arrows: Dict[str, Tuple[str, str]] = {}
    composites: Dict[Tuple[str, str], str] = {}
    for line in block[1:]:
        words = line.words
        if words[0] == "objects":
            objects = words[1:]
        elif words[0] == "hom":
            if len(words) < 4 or not words[2].endswith(":"):
                raise _fail(source, line, "expected 'hom <a> <b>: <morphisms>'")
            a, b = words[1], words[2][:-1]
            for f in words[3:]:
                if "," in f or f in arrows:
                    raise _fail(source, line, f"bad or repeated morphism name {f!r}", f)
                arrows[f] = (a, b)
        elif words[0] == "comp":
            if len(words) != 5 or words[3] != "=":
                raise _fail(source, line, "expected 'comp <g> <f> = <h>'")
            composites[(words[1], words[2])] = words[4]
        else:
            raise _fail(source, line, f"unknown directive {words[0]!r}", words[0])
    if objects is None:
        raise _fail(source, header, "missing 'objects' line")
    for f, (a, b) in arrows.items():
        if a not in objects or b not in objects:
            line = next(ln for ln in block if f in ln.words and ln.words[0] == "hom")
            raise _fail(source, line, f"{f} has an unknown end", f)
    return category_from_arrows(name, objects, arrows, composites)


def _parse_diagram(block: List[Line], source: str) -> DiagramSpec:
    header = block[0]
    words = header.words
    if len(words) != 4 or words[2] != "over":
        raise _fail(source, header, "expected 'diagram <name> over <category>'")
    values: Dict[str, Tuple[Line, List[str]]] = {}
    arrows: Dict[str, Tuple[Line, str]] = {}
    for line in block[1:]:
        w = line.words
        if w[0] == "at" and len(w) >= 4 and w[2] == "=":
            values[w[1]] = (line, w[3:])
        elif w[0] == "arrow" and len(w) >= 3 and w[1].endswith(":"):
            arrows[w[1][:-1]] = (line, line.text.split(":", 1)[1].strip())
        else:
            raise _fail(source, line, "expected 'at <object> = <value>' or 'arrow <f>: <map>'", w[0])
    return DiagramSpec(words[1], words[3], values, arrows, source, header)


def parse_text(text: str, source: str = "<input>") -> Corpus:
    """Parse every block of a fixture file"""
    corpus = Corpus()
    for block in _split_blocks(_lines(text), source):
        kind = block[0].words[0]
        if kind == "monoid":
            M = _parse_table(block, source, with_unit=True)
            corpus.monoids[M.name] = M  # type: ignore[assignment]
        elif kind == "semigroup":
            G = _parse_table(block, source, with_unit=False)
            corpus.semigroups[G.name] = G
        elif kind == "category":
            C = _parse_category(block, source)
            corpus.categories[C.name] = C
        else:
            D = _parse_diagram(block, source)
            corpus.diagrams[D.name] = D
    return corpus


def parse_file(path: Union[str, Path]) -> Corpus:
    path = Path(path)
    return parse_text(path.read_text(), str(path))


def _value(spec: DiagramSpec, line: Line, words: List[str], corpus: Corpus, maxdim: int) -> SimplicialSet:
    kind = words[0]
    try:
        if kind == "point" and len(words) == 1:
            return point(maxdim)
        if kind == "sphere" and len(words) == 2 and words[1].isdigit():
            return sphere(int(words[1]), maxdim)
        if kind == "nerve" and len(words) == 2:
            return nerve(corpus.monoid(words[1]), maxdim)
    except HomotopyError as exc:
        raise _fail(spec.source, line, str(exc), words[-1]) from exc
    raise _fail(spec.source, line, "value must be 'point', 'sphere <n>' or 'nerve <monoid>'", kind)


def _parse_image(text: str) -> Tuple[Tuple[int, ...], str]:
    """``s1 s0 : label`` or ``label``"""
    if ":" in text:
        word, label = text.split(":", 1)
        return tuple(int(s[1:]) for s in word.split()), label.strip()
    return (), text.strip()


def build_diagram(spec: DiagramSpec, corpus: Corpus, maxdim: int) -> Diagram:
    """
    Resolve a diagram block. Arrow lines are either ``basepoint`` (the
    constant map to the basepoint) or ``<gen> -> <image>, ...``.
    """
    header_line = spec.header
    try:
        C = corpus.category(spec.shape)
    except HomotopyError as exc:
        raise _fail(spec.source, header_line, str(exc), spec.shape) from exc
    values = {}
    for a in C.objects:
        if a not in spec.values:
            raise _fail(spec.source, header_line, f"no value at object {a}")
        line, words = spec.values[a]
        values[a] = _value(spec, line, words, corpus, maxdim)
    arrows: Dict[str, SimplicialMap] = {}
    for f, (line, body) in spec.arrows.items():
        if f not in C.morphisms:
            raise _fail(spec.source, line, f"{f} is not a morphism of {C.name}", f)
        src, tgt = values[C.source[f]], values[C.target[f]]
        images: Dict[Hashable, Simplex] = {}
        if body == "basepoint":
            if tgt.basepoint is None:
                raise _fail(spec.source, line, f"{tgt.name} has no basepoint", "basepoint")
            for n in range(src.maxdim + 1):
                for g in src.gens(n):
                    images[g] = (tuple(range(n - 1, -1, -1)), tgt.basepoint)
        else:
            by_label = {format_label(g): g for n in range(src.maxdim + 1) for g in src.gens(n)}
            target_labels = {format_label(g): g for n in range(tgt.maxdim + 1) for g in tgt.gens(n)}
            for pair in body.split(","):
                if "->" not in pair:
                    raise _fail(spec.source, line, "expected '<generator> -> <image>'", pair.strip() or None)
                left, right = (s.strip() for s in pair.split("->", 1))
                if left not in by_label:
                    raise _fail(spec.source, line, f"unknown generator {left!r}", left)
                word, label = _parse_image(right)
                if label not in target_labels:
                    raise _fail(spec.source, line, f"unknown image generator {label!r}", label)
                images[by_label[left]] = (word, target_labels[label])
        arrows[f] = SimplicialMap(src, tgt, images)
    return make_diagram(C, values, arrows, name=spec.name)


def dump_monoid(M: FinSemigroup) -> str:
    kind = "monoid" if isinstance(M, FinMonoid) else "semigroup"
    lines = [f"{kind} {M.name}", "elements " + " ".join(M.elements)]
    if isinstance(M, FinMonoid):
        lines.append(f"unit {M.elements[M.unit]}")
    for x, row in zip(M.elements, M.table):
        lines.append(f"row {x}: " + " ".join(M.elements[v] for v in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Chain complexes


def dump_chain(C: ChainComplex) -> str:
    lines = [f"chain {C.maxdim}"]
    lines += [f"dim {n} {d}" for n, d in enumerate(C.dims)]
    for n, bd in enumerate(C.boundaries, start=1):
        lines += [f"bd {n} {r} {c} {v}" for (r, c), v in bd.items()]
    return "\n".join(lines) + "\n"


def parse_chain(text: str, source: str = "<input>") -> ChainComplex:
    """Inverse of dump_chain; validates d d = 0"""
    lines = _lines(text)
    if not lines or lines[0].words[0] != "chain" or len(lines[0].words) != 2 or not lines[0].words[1].isdigit():
        raise FormatParseError("expected 'chain <D>'", source, lines[0].number if lines else 1, 1)
    top = int(lines[0].words[1])
    dims: Dict[int, int] = {}
    entries: Dict[int, Dict[Tuple[int, int], int]] = {n: {} for n in range(1, top + 1)}
    for line in lines[1:]:
        w = line.words
        try:
            if w[0] == "dim" and len(w) == 3:
                n, rank = int(w[1]), int(w[2])
                if not 0 <= n <= top or rank < 0:
                    raise _fail(source, line, f"bad degree or rank in {line.text!r}", w[1])
                dims[n] = rank
            elif w[0] == "bd" and len(w) == 5:
                n, r, c, v = (int(x) for x in w[1:])
                if not 1 <= n <= top:
                    raise _fail(source, line, f"boundary degree {n} outside 1..{top}", w[1])
                entries[n][(r, c)] = v
            else:
                raise _fail(source, line, f"unknown line {line.text!r}", w[0])
        except ValueError as exc:
            raise _fail(source, line, "expected integers") from exc
    missing = [n for n in range(top + 1) if n not in dims]
    if missing:
        raise FormatParseError(f"missing dim line for degree {missing[0]}", source, lines[0].number, 1)
    ranks = tuple(dims[n] for n in range(top + 1))
    try:
        boundaries = tuple(IntMatrix(ranks[n - 1], ranks[n], entries[n]) for n in range(1, top + 1))
    except RangeError as exc:
        raise FormatParseError(str(exc), source, lines[0].number, 1) from exc
    return ChainComplex(ranks, boundaries)


# ---------------------------------------------------------------------------
# W-tuples, paths and points


def dump_wtuple(a: WTuple) -> str:
    """``(x 1/2 y)``; the unit of W prints as ``()``"""
    parts: List[str] = []
    for i, x in enumerate(a.entries):
        if i:
            parts.append(format_rat(a.params[i - 1]))
        parts.append(a.ground.elements[x])
    return "(" + " ".join(parts) + ")"


def parse_wtuple(text: str, ground: FinSemigroup, mode: Mode = Mode.SEMIGROUP, source: str = "<input>") -> WTuple:
    """Accepts ``(x0 t1 x1 ...)`` and ``w: x0 t1 x1 ...``; normalizes the result"""
    body = text.strip()
    if body.startswith("w:"):
        body = body[2:]
    elif body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    else:
        raise FormatParseError("expected '(x0 t1 x1 ...)' or 'w: x0 t1 x1 ...'", source, 1, 1)
    tokens = body.split()
    if not tokens:
        if mode is Mode.MONOID and isinstance(ground, FinMonoid):
            return normalize(ground, [], [], mode)
        raise FormatParseError("empty tuple", source, 1, 1)
    if len(tokens) % 2 == 0:
        raise FormatParseError("a tuple alternates elements and parameters", source, 1, text.find(tokens[-1]) + 1)
    entries, params = [], []
    for k, tok in enumerate(tokens):
        if k % 2 == 0:
            if tok not in ground.elements:
                raise FormatParseError(f"{tok!r} is not an element of {ground.name}", source, 1, text.find(tok) + 1)
            entries.append(ground.elements.index(tok))
        else:
            try:
                t = parse_rat(tok)
            except (ValueError, ZeroDivisionError) as exc:
                raise FormatParseError(f"bad rational {tok!r}", source, 1, text.find(tok) + 1) from exc
            if not 0 <= t <= 1:
                raise FormatParseError(f"parameter {tok} outside [0, 1]", source, 1, text.find(tok) + 1)
            params.append(t)
    return normalize(ground, entries, params, mode)


def dump_empoint(p: EMPoint) -> str:
    """``em (x0;x1,...)@(u0,...)`` or ``bm (x1,...)@(u0,...)``"""
    names = [p.monoid.elements[x] for x in p.simplex]
    coords = ",".join(format_rat(u) for u in p.coords)
    if p.bm:
        return f"bm ({','.join(names)})@({coords})"
    return f"em ({names[0]};{','.join(names[1:])})@({coords})"


_POINT = re.compile(r"^(em|bm) \(([^)]*)\)@\(([^)]*)\)$")


def parse_empoint(text: str, M: FinMonoid, source: str = "<input>") -> EMPoint:
    m = _POINT.match(text.strip())
    if not m:
        raise FormatParseError("expected 'em (x0;x1,...)@(u0,...)'", source, 1, 1)
    kind, simplex, coords = m.groups()
    bm = kind == "bm"
    if not bm:
        if ";" not in simplex:
            raise FormatParseError("EM points need a leading slot 'x0;'", source, 1, text.find("(") + 2)
        head, rest = simplex.split(";", 1)
        names = [head] + [x for x in rest.split(",") if x]
    else:
        names = [x for x in simplex.split(",") if x]
    for x in names:
        if x not in M.elements:
            raise FormatParseError(f"{x!r} is not an element of {M.name}", source, 1, text.find(x) + 1)
    try:
        us = tuple(parse_rat(u) for u in coords.split(","))
        return EMPoint(tuple(M.elements.index(x) for x in names), us, M, bm)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatParseError(str(exc), source, 1, text.find("@") + 1) from exc


def dump_value(v: object) -> str:
    if isinstance(v, EMPoint):
        return dump_empoint(v)
    if isinstance(v, QVector):
        return " ".join(format_rat(x) for x in v.coords)
    return str(v)


def dump_path(p: MoorePath) -> str:
    lines = [f"path r={format_rat(p.length)}"]
    lines += [f"bp {format_rat(t)} {dump_value(v)}" for t, v in p.breakpoints()]
    return "\n".join(lines) + "\n"


def parse_path(text: str, source: str = "<input>") -> MoorePath[QVector]:
    """Read a path in Q^d, linear between consecutive breakpoints"""
    lines = _lines(text)
    if not lines or not lines[0].text.startswith("path r="):
        raise FormatParseError("expected 'path r=<rat>'", source, lines[0].number if lines else 1, 1)
    try:
        length = parse_rat(lines[0].text[len("path r=") :].strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise _fail(source, lines[0], "bad path length") from exc
    points: List[Tuple[Fraction, QVector]] = []
    for line in lines[1:]:
        w = line.words
        if w[0] != "bp" or len(w) < 2:
            raise _fail(source, line, "expected 'bp <time> <value...>'", w[0])
        try:
            t = parse_rat(w[1])
            v = QVector(tuple(parse_rat(x) for x in w[2:]))
        except (ValueError, ZeroDivisionError) as exc:
            raise _fail(source, line, "bad rational") from exc
        if points and t <= points[-1][0]:
            raise _fail(source, line, "breakpoint times must increase", w[1])
        points.append((t, v))
    if not points or points[0][0] != 0 or points[-1][0] != length:
        raise FormatParseError("breakpoints must run from 0 to r", source, lines[0].number, 1)
    segs = tuple(Segment(t1 - t0, v0, v1) for (t0, v0), (t1, v1) in zip(points, points[1:]))
    return MoorePath(points[0][1], segs)


def parse_rats(tokens: Sequence[str]) -> List[Fraction]:
    return [parse_rat(t) for t in tokens]
