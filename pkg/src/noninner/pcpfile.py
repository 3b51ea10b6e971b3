"""Reading and writing the `.pcp` presentation interchange format.

A file is line-oriented; `#` starts a comment (a comment of the exact
form `# id: NAME` names the group).  The first three significant lines
must be, in order:

    pcp 1
    prime <p>
    ngens <m>

followed by any number of relation lines:

    pow <i> = <word>
    comm <j> <i> = <word>        (j > i)

where <word> is the literal `1` or space-separated letters `k^e` with
strictly ascending k and 1 <= e <= p-1.  Indices must satisfy the
weighting rules: a `pow i` word uses indices above i, a `comm j i` word
uses indices above j.  Violations raise PcpSyntaxError carrying the
line and column; semantic inconsistency (relations that collapse the
group below p^m) raises InconsistentPresentationError with a witness.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import InconsistentPresentationError, PcpSyntaxError
from .pcgroup import PcGroup, PcPresentation, Word

_TOKEN = re.compile(r"\S+")
_ID_COMMENT = re.compile(r"^#\s*id:\s*(\S+)\s*$")
_NAME_OK = re.compile(r"^[A-Za-z0-9_.-]+$")


@dataclass(frozen=True)
class PcpDocument:
    presentation: PcPresentation
    group_id: Optional[str]


def _tokens(line: str):
    """Significant tokens of a line with their 1-based columns."""
    text = line.split("#", 1)[0]
    return [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(text)]


def _parse_int(tok: str, lineno: int, col: int, what: str) -> int:
    if not tok.isdigit():
        raise PcpSyntaxError(lineno, col, f"expected {what}, got {tok!r}")
    return int(tok)


def _parse_word(
    toks, lineno: int, p: int, ngens: int, floor: int
) -> Word:
    """Word tokens after the `=`; `1` for the empty word."""
    if not toks:
        raise PcpSyntaxError(lineno, len(toks) + 1, "missing word after '='")
    if len(toks) == 1 and toks[0][0] == "1":
        return []
    word: list[tuple[int, int]] = []
    prev = floor
    for tok, col in toks:
        m = re.fullmatch(r"(\d+)\^(\d+)", tok)
        if not m:
            raise PcpSyntaxError(
                lineno, col, f"expected letter of the form k^e, got {tok!r}"
            )
        k, e = int(m.group(1)), int(m.group(2))
        if not 1 <= k <= ngens:
            raise PcpSyntaxError(lineno, col, f"generator index {k} out of range")
        if k <= floor:
            raise PcpSyntaxError(
                lineno, col, f"generator index {k} not above {floor}"
            )
        if k <= prev:
            raise PcpSyntaxError(
                lineno, col, f"generator indices must be strictly ascending"
            )
        if not 1 <= e <= p - 1:
            raise PcpSyntaxError(
                lineno, col, f"exponent {e} outside [1, {p - 1}]"
            )
        word.append((k, e))
        prev = k
    return word


def parse_pcp(
    text: str, group_id: Optional[str] = None, validate: bool = True
) -> PcpDocument:
    """Parse `.pcp` text.  A `# id:` comment overrides `group_id`.
    With validate=True the presentation is consistency-checked and an
    InconsistentPresentationError (with witness) raised on failure."""
    lines = text.splitlines()
    header_stage = 0  # 0: expect "pcp 1", 1: expect prime, 2: expect ngens, 3: body
    p = 0
    ngens = 0
    powers: dict[int, Word] = {}
    commutators: dict[tuple[int, int], Word] = {}
    file_id: Optional[str] = None

    for lineno, line in enumerate(lines, start=1):
        m = _ID_COMMENT.match(line.strip())
        if m:
            if not _NAME_OK.match(m.group(1)):
                raise PcpSyntaxError(lineno, 1, f"bad group id {m.group(1)!r}")
            file_id = m.group(1)
            continue
        toks = _tokens(line)
        if not toks:
            continue
        if header_stage == 0:
            if [t for t, _ in toks] != ["pcp", "1"]:
                raise PcpSyntaxError(
                    lineno, toks[0][1], "first line must be 'pcp 1'"
                )
            header_stage = 1
            continue
        if header_stage == 1:
            if toks[0][0] != "prime" or len(toks) != 2:
                raise PcpSyntaxError(
                    lineno, toks[0][1], "second line must be 'prime <p>'"
                )
            p = _parse_int(toks[1][0], lineno, toks[1][1], "a prime")
            header_stage = 2
            continue
        if header_stage == 2:
            if toks[0][0] != "ngens" or len(toks) != 2:
                raise PcpSyntaxError(
                    lineno, toks[0][1], "third line must be 'ngens <m>'"
                )
            ngens = _parse_int(toks[1][0], lineno, toks[1][1], "a generator count")
            header_stage = 3
            continue

        kind, col0 = toks[0]
        if kind == "pow":
            if len(toks) < 3 or toks[2][0] != "=":
                raise PcpSyntaxError(lineno, col0, "expected 'pow <i> = <word>'")
            i = _parse_int(toks[1][0], lineno, toks[1][1], "a generator index")
            if not 1 <= i <= ngens:
                raise PcpSyntaxError(
                    lineno, toks[1][1], f"generator index {i} out of range"
                )
            if i in powers:
                raise PcpSyntaxError(
                    lineno, toks[1][1], f"duplicate power relation for {i}"
                )
            powers[i] = _parse_word(toks[3:], lineno, p, ngens, floor=i)
        elif kind == "comm":
            if len(toks) < 4 or toks[3][0] != "=":
                raise PcpSyntaxError(lineno, col0, "expected 'comm <j> <i> = <word>'")
            j = _parse_int(toks[1][0], lineno, toks[1][1], "a generator index")
            i = _parse_int(toks[2][0], lineno, toks[2][1], "a generator index")
            if not 1 <= j <= ngens or not 1 <= i <= ngens:
                raise PcpSyntaxError(
                    lineno, toks[1][1], f"generator index out of range"
                )
            if j <= i:
                raise PcpSyntaxError(
                    lineno, toks[1][1], f"comm indices need j > i, got {j} {i}"
                )
            if (j, i) in commutators:
                raise PcpSyntaxError(
                    lineno, toks[1][1], f"duplicate commutator relation for {j} {i}"
                )
            commutators[(j, i)] = _parse_word(toks[4:], lineno, p, ngens, floor=j)
        else:
            raise PcpSyntaxError(
                lineno, col0, f"unknown directive {kind!r}"
            )

    if header_stage != 3:
        missing = ["pcp 1", "prime <p>", "ngens <m>"][header_stage]
        raise PcpSyntaxError(len(lines) + 1, 1, f"missing header line '{missing}'")

    try:
        pres = PcPresentation(p, ngens, powers=powers, commutators=commutators)
    except ValueError as exc:
        raise PcpSyntaxError(1, 1, str(exc)) from exc
    if validate:
        group = PcGroup(pres, validate=False)
        witness = group.consistency_witness()
        if witness is not None:
            raise InconsistentPresentationError(witness.describe(), witness)
    return PcpDocument(pres, file_id or group_id)


def parse_pcp_file(path, validate: bool = True) -> PcpDocument:
    path = Path(path)
    doc = parse_pcp(path.read_text(), group_id=path.stem, validate=validate)
    return doc


def serialize_pcp(pres: PcPresentation, group_id: Optional[str] = None) -> str:
    """Canonical text form: id comment, header, power relations by
    generator, commutator relations by (j, i), nontrivial words only."""
    out = []
    if group_id is not None:
        out.append(f"# id: {group_id}")
    out.append("pcp 1")
    out.append(f"prime {pres.p}")
    out.append(f"ngens {pres.ngens}")
    for i in sorted(pres.powers):
        word = " ".join(f"{k}^{e}" for k, e in pres.powers[i])
        out.append(f"pow {i} = {word}")
    for j, i in sorted(pres.commutators):
        word = " ".join(f"{k}^{e}" for k, e in pres.commutators[(j, i)])
        out.append(f"comm {j} {i} = {word}")
    return "\n".join(out) + "\n"
