from fractions import Fraction

import pytest

from homotopy_monoids.core import FormatParseError, HomotopyError, Mode, TableError
from homotopy_monoids.exactalg import homology_all
from homotopy_monoids.formats import (
    dump_chain,
    dump_empoint,
    dump_monoid,
    dump_path,
    dump_wtuple,
    format_label,
    parse_chain,
    parse_empoint,
    parse_file,
    parse_path,
    parse_text,
    parse_wtuple,
)
from homotopy_monoids.moorezeta import EMPoint, bm_base, zeta
from homotopy_monoids.simplicial import chains, nerve
from homotopy_monoids.wconstruct import iota, make_wtuple

HALF = Fraction(1, 2)


def test_shipped_corpus(corpus):
    """Every fixture block parses"""
    assert {"trivial", "z2", "z3", "z4", "klein", "idem", "max3", "lzu"} <= set(corpus.monoids)
    assert {"lz", "null2", "free2"} <= set(corpus.semigroups)
    assert {"point", "arrow", "span", "parallel", "iso"} <= set(corpus.categories)
    assert {"circles", "suspension", "cone", "bz2vbz3"} <= set(corpus.diagrams)
    assert corpus.monoid("z2").elements == ("e", "a")
    assert corpus.category("parallel").hom("0", "1") == ("f", "g")


def test_corpus_lookups(corpus):
    """Monoids double as semigroups and one-object categories"""
    assert corpus.semigroup("z2") is corpus.monoid("z2")
    assert corpus.category("z2").objects == ("*",)
    with pytest.raises(HomotopyError):
        corpus.monoid("nope")
    with pytest.raises(HomotopyError):
        corpus.diagram("nope", 2)


def test_extra_fixture_file(fixtures_dir):
    extra = parse_file(fixtures_dir / "extra.txt")
    flip = extra.monoid("flip")
    assert not flip.is_commutative()
    assert flip.elements[flip.unit] == "e"


def test_malformed_input_is_positioned(fixtures_dir):
    """The unknown element q is reported at its line and column"""
    with pytest.raises(FormatParseError) as exc:
        parse_file(fixtures_dir / "malformed.txt")
    err = exc.value
    assert (err.line, err.column) == (5, 10)
    assert err.source.endswith("malformed.txt")
    assert "'q'" in err.message


def test_non_associative_table_is_a_table_error(fixtures_dir):
    """Well-formed text with a bad table is not a format error"""
    with pytest.raises(TableError):
        parse_file(fixtures_dir / "nonassoc.txt")


@pytest.mark.parametrize(
    "text, line",
    [
        ("row e: e\n", 1),
        ("monoid m\nelements e\nrow e: e\n", 1),
        ("semigroup s\nelements x\nunit x\nrow x: x\n", 3),
        ("monoid m\nelements e\nunit e\nrow e: e e\n", 4),
        ("category c\nobjects a\nhom a b: f\n", 3),
        ("diagram d over span\nat a is point\n", 2),
    ],
)
def test_syntax_errors(text, line):
    with pytest.raises(FormatParseError) as exc:
        parse_text(text, "<test>")
    assert exc.value.line == line
    assert exc.value.source == "<test>"


def test_comments_and_blank_lines_are_ignored():
    corpus = parse_text("# header\n\nmonoid m   # trailing\nelements e\nunit e\nrow e: e\n")
    assert list(corpus.monoids) == ["m"]


def test_dump_monoid_parses_back(corpus):
    for name in ("klein", "lzu"):
        M = corpus.monoid(name)
        assert parse_text(dump_monoid(M)).monoid(name) == M
    assert dump_monoid(corpus.semigroup("lz")).startswith("semigroup lz\n")


def test_diagrams_are_built_at_a_degree(corpus):
    D = corpus.diagram("suspension", 2)
    assert D.shape.name == "span"
    assert D.at("m").name == "S1"
    assert D.arrow("f")(1, ((), "s1")) == ((0,), "*")


def test_diagram_errors():
    base = "category arrow\nobjects 0 1\nhom 0 1: f\n\ndiagram d over arrow\nat 0 = sphere 1\nat 1 = point\n"
    corpus = parse_text(base + "arrow f: s1 -> s7\n", "<d>")
    with pytest.raises(FormatParseError) as exc:
        corpus.diagram("d", 2)
    assert exc.value.line == 8
    corpus = parse_text("diagram d over nowhere\nat 0 = point\n", "<d>")
    with pytest.raises(FormatParseError) as exc:
        corpus.diagram("d", 2)
    assert exc.value.line == 1
    corpus = parse_text(base.replace("sphere 1", "sphere x") + "arrow f: basepoint\n", "<d>")
    with pytest.raises(FormatParseError):
        corpus.diagram("d", 2)


def test_chain_complex_text(rp2_chain_path):
    C = parse_chain(rp2_chain_path.read_text(), str(rp2_chain_path))
    assert [str(h) for h in homology_all(C)] == ["Z", "Z/2", "0"]
    again = parse_chain(dump_chain(C))
    assert again.dims == C.dims
    assert again.boundaries == C.boundaries


def test_chain_dump_of_a_nerve(z2):
    C = chains(nerve(z2, 3))
    text = dump_chain(C)
    assert text.startswith("chain 3\ndim 0 1\n")
    assert [str(h) for h in homology_all(parse_chain(text))] == [str(h) for h in homology_all(C)]


@pytest.mark.parametrize(
    "text, exc_type",
    [
        ("chain 1\ndim 0 1\n", FormatParseError),
        ("chain 1\ndim 0 1\ndim 1 1\nbd 1 0 0 x\n", FormatParseError),
        ("chain 1\ndim 0 1\ndim 1 1\nbd 1 3 0 1\n", FormatParseError),
        ("cochain 1\n", FormatParseError),
        ("chain 2\ndim 0 1\ndim 1 1\ndim 2 1\nbd 1 0 0 1\nbd 2 0 0 1\n", TableError),
    ],
)
def test_bad_chain_text(text, exc_type):
    with pytest.raises(exc_type):
        parse_chain(text)


def test_wtuple_text(z2, free2):
    """Rationals always carry a denominator and the unit of W is ()"""
    a = make_wtuple(free2, ["x", "y"], [HALF])
    assert dump_wtuple(a) == "(x 1/2 y)"
    assert parse_wtuple("(x 1/2 y)", free2) == a
    assert parse_wtuple("w: x 0 y", free2).names() == ["xy"]
    assert dump_wtuple(parse_wtuple("()", z2, Mode.MONOID)) == "()"
    assert dump_wtuple(parse_wtuple("(e 1/3 a)", z2, Mode.MONOID)) == "(a)"


@pytest.mark.parametrize("text", ["x 1/2 y", "(x 1/2)", "(x 3/2 y)", "(x q y)", "(z)", "()"])
def test_bad_wtuple_text(free2, text):
    with pytest.raises(FormatParseError):
        parse_wtuple(text, free2)


def test_empoint_text(z2):
    p = EMPoint((0, 1), (HALF, HALF), z2)
    assert dump_empoint(p) == "em (e;a)@(1/2,1/2)"
    assert parse_empoint("em (e;a)@(1/2,1/2)", z2) == p
    assert dump_empoint(bm_base(z2)) == "bm ()@(1/1)"
    assert parse_empoint("bm ()@(1)", z2) == bm_base(z2)
    for bad in ("em (e,a)@(1/2,1/2)", "em (e;q)@(1/2,1/2)", "pt (e)@(1)", "em (e;a)@(1/2,x)"):
        with pytest.raises(FormatParseError):
            parse_empoint(bad, z2)


def test_path_text(z2):
    text = "path r=3/2\nbp 0 0 0\nbp 1 1 1/2\nbp 3/2 0 0\n"
    p = parse_path(text)
    assert p.length == Fraction(3, 2)
    assert p.is_loop()
    assert dump_path(p) == "path r=3/2\nbp 0/1 0/1 0/1\nbp 1/1 1/1 1/2\nbp 3/2 0/1 0/1\n"
    assert parse_path(dump_path(p)) == p
    w = dump_path(zeta(iota(z2, 1)).path)
    assert w.splitlines()[-1] == "bp 1/1 em (a;)@(1/1)"


@pytest.mark.parametrize(
    "text",
    [
        "r=1\nbp 0 0\n",
        "path r=1\nbp 0 0\nbp 1/2 1\n",
        "path r=1\nbp 0 0\nbp 0 1\nbp 1 0\n",
        "path r=1\npoint 0 0\n",
    ],
)
def test_bad_path_text(text):
    with pytest.raises(FormatParseError):
        parse_path(text)


def test_generator_labels():
    assert format_label("s1") == "s1"
    assert format_label(("a", "a")) == "(a a)"
    assert format_label(()) == "()"
