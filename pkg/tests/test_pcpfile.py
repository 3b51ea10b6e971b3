"""The .pcp interchange format: golden text, round-trips, error reporting."""

import pytest

from noninner.errors import InconsistentPresentationError, PcpSyntaxError
from noninner.pcgroup import PcPresentation
from noninner.pcpfile import parse_pcp, parse_pcp_file, serialize_pcp

HEIS_TEXT = """\
# id: heisenberg_3
pcp 1
prime 3
ngens 3
comm 2 1 = 3^1
"""


def test_golden_serialization():
    pres = PcPresentation(3, 3, commutators={(2, 1): [(3, 1)]})
    assert serialize_pcp(pres, "heisenberg_3") == HEIS_TEXT


def test_parse_golden():
    doc = parse_pcp(HEIS_TEXT)
    assert doc.group_id == "heisenberg_3"
    assert doc.presentation.p == 3
    assert doc.presentation.ngens == 3
    assert doc.presentation.commutator(2, 1) == ((3, 1),)
    assert doc.presentation.power(1) == ()


def test_round_trip_every_corpus_file(corpus_dir):
    for path in sorted(corpus_dir.glob("*.pcp")):
        doc = parse_pcp_file(path)
        assert doc.group_id == path.stem
        text = serialize_pcp(doc.presentation, doc.group_id)
        again = parse_pcp(text)
        assert again.presentation == doc.presentation
        assert again.group_id == doc.group_id


def test_comments_blank_lines_and_id_override():
    text = (
        "# a comment\n\npcp 1\n  # another\nprime 3\nngens 2\n"
        "pow 1 = 2^1   # inline comment\n"
    )
    doc = parse_pcp(text, group_id="fallback")
    assert doc.group_id == "fallback"
    assert doc.presentation.power(1) == ((2, 1),)
    named = parse_pcp("# id: my-group_1\n" + text[text.index("pcp") :])
    assert named.group_id == "my-group_1"
    # explicit id comment wins over the caller's fallback
    named2 = parse_pcp("# id: inner\n" + text[text.index("pcp") :], group_id="outer")
    assert named2.group_id == "inner"


def test_trivial_word_spelled_as_1():
    doc = parse_pcp("pcp 1\nprime 5\nngens 2\npow 1 = 1\n")
    assert doc.presentation.power(1) == ()
    assert doc.presentation.order == 25


CASES = [
    ("", 1, "missing header line 'pcp 1'"),
    ("pcp 2\n", 1, "first line must be 'pcp 1'"),
    ("pcp 1\nngens 3\n", 2, "second line must be 'prime <p>'"),
    ("pcp 1\nprime 3\n", 3, "missing header line 'ngens <m>'"),
    ("pcp 1\nprime 3\nprime 3\n", 3, "third line must be 'ngens <m>'"),
    ("pcp 1\nprime x\nngens 3\n", 2, "expected a prime"),
    ("pcp 1\nprime 4\nngens 2\n", 1, "p must be prime"),
    ("pcp 1\nprime 3\nngens 2\nfrob 1 = 2^1\n", 4, "unknown directive"),
    ("pcp 1\nprime 3\nngens 2\npow 1\n", 4, "expected 'pow <i> = <word>'"),
    ("pcp 1\nprime 3\nngens 2\npow 0 = 2^1\n", 4, "out of range"),
    ("pcp 1\nprime 3\nngens 2\npow 3 = 1\n", 4, "out of range"),
    ("pcp 1\nprime 3\nngens 2\npow 1 = 2^1\npow 1 = 1\n", 5, "duplicate power"),
    ("pcp 1\nprime 3\nngens 2\ncomm 2 = 1\n", 4, "expected 'comm <j> <i> = <word>'"),
    ("pcp 1\nprime 3\nngens 2\ncomm 1 2 = 1\n", 4, "j > i"),
    ("pcp 1\nprime 3\nngens 2\ncomm 2 2 = 1\n", 4, "j > i"),
    ("pcp 1\nprime 3\nngens 3\ncomm 2 1 = 3^1\ncomm 2 1 = 1\n", 5, "duplicate commutator"),
    ("pcp 1\nprime 3\nngens 3\ncomm 3 1 = 4^1\n", 4, "out of range"),
    ("pcp 1\nprime 3\nngens 3\ncomm 2 1 = 2^1\n", 4, "not above 2"),
    ("pcp 1\nprime 3\nngens 3\npow 2 = 2^1\n", 4, "not above 2"),
    ("pcp 1\nprime 3\nngens 3\ncomm 2 1 = 3\n", 4, "form k^e"),
    ("pcp 1\nprime 3\nngens 3\ncomm 2 1 = 3^0\n", 4, "outside [1, 2]"),
    ("pcp 1\nprime 3\nngens 3\ncomm 2 1 = 3^3\n", 4, "outside [1, 2]"),
    ("pcp 1\nprime 3\nngens 5\npow 1 = 4^1 3^1\n", 4, "ascending"),
    ("pcp 1\nprime 3\nngens 5\npow 1 = 3^1 3^1\n", 4, "ascending"),
    ("pcp 1\nprime 3\nngens 2\npow 1 =\n", 4, "missing word"),
    ("# id: bad!id\npcp 1\nprime 3\nngens 2\n", 1, "bad group id"),
]


@pytest.mark.parametrize("text,line,fragment", CASES, ids=range(len(CASES)))
def test_syntax_errors_carry_line_and_reason(text, line, fragment):
    with pytest.raises(PcpSyntaxError) as exc:
        parse_pcp(text)
    err = exc.value
    assert err.line == line
    assert fragment in err.reason
    assert f"line {line}" in str(err)


def test_missing_header_points_past_end():
    with pytest.raises(PcpSyntaxError) as exc:
        parse_pcp("# only a comment\n")
    assert exc.value.line == 2
    assert "pcp 1" in exc.value.reason


def test_inconsistent_raises_with_witness_and_validate_flag():
    # g1^3 = g2, g2^3 = g3 puts g2 in <g1>, so [g2, g1] = g3 collapses
    text = (
        "pcp 1\nprime 3\nngens 3\n"
        "pow 1 = 2^1\npow 2 = 3^1\ncomm 2 1 = 3^1\n"
    )
    with pytest.raises(InconsistentPresentationError) as exc:
        parse_pcp(text)
    assert exc.value.witness is not None
    doc = parse_pcp(text, validate=False)
    assert doc.presentation.ngens == 3


def test_parse_pcp_file_uses_stem_as_id(tmp_path):
    path = tmp_path / "tiny_c9.pcp"
    path.write_text("pcp 1\nprime 3\nngens 2\npow 1 = 2^1\n")
    doc = parse_pcp_file(path)
    assert doc.group_id == "tiny_c9"
    assert doc.presentation.order == 9
