"""CoNLL-U data model, parser, serializer and structural tree checks.

The parser is strict about the line format (so that everything it accepts
round-trips byte-for-byte) and lenient about annotation content: anything
that is merely against the annotation guidelines is reported later as a
diagnostic, never as a parse failure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

COLUMN_COUNT = 10

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"
SEVERITY_REVIEW = "review"
SEVERITY_RANK = {SEVERITY_REVIEW: 0, SEVERITY_WARNING: 1, SEVERITY_ERROR: 2}

_TOKEN_ID_RE = re.compile(r"^[1-9]\d*$")
_MWT_ID_RE = re.compile(r"^([1-9]\d*)-([1-9]\d*)$")
_EMPTY_NODE_ID_RE = re.compile(r"^(\d+)\.[1-9]\d*$")
_METADATA_RE = re.compile(r"^# ([A-Za-z_][A-Za-z0-9_.-]*) = (.*)$")


class ParseError(Exception):
    """Raised for input that is not well-formed CoNLL-U."""

    def __init__(self, code: str, message: str, file: str, line: int):
        super().__init__(f"{file}:{line}: {code}: {message}")
        self.code = code
        self.file = file
        self.line = line


def parse_misc(value: str) -> list[tuple[str, str | None]]:
    """Parse a MISC column into an ordered list of (key, value) attributes.

    Entries without "=" are kept as (entry, None) so that serialization can
    reproduce the original column exactly.
    """
    if value == "_":
        return []
    items: list[tuple[str, str | None]] = []
    for part in value.split("|"):
        if "=" in part:
            key, val = part.split("=", 1)
            items.append((key, val))
        else:
            items.append((part, None))
    return items


def misc_to_string(items: list[tuple[str, str | None]]) -> str:
    if not items:
        return "_"
    return "|".join(k if v is None else f"{k}={v}" for k, v in items)


@dataclass
class Token:
    """One syntactic word (a regular CoNLL-U node line)."""

    id: int
    form: str
    upos: str
    head: int
    deprel: str
    misc: list[tuple[str, str | None]] = field(default_factory=list)
    lemma_col: str = "_"
    xpos_col: str = "_"
    feats_col: str = "_"
    deps_col: str = "_"
    line: int = 0

    def __post_init__(self):
        if self.id < 1:
            raise ValueError(f"token id must be >= 1, got {self.id}")
        if self.head < 0:
            raise ValueError(f"token head must be >= 0, got {self.head}")
        if not self.form or "\t" in self.form or "\n" in self.form:
            raise ValueError(f"bad token form: {self.form!r}")

    def misc_value(self, key: str) -> str | None:
        for k, v in self.misc:
            if k == key:
                return v
        return None

    def has_misc(self, key: str) -> bool:
        return any(k == key for k, _ in self.misc)

    @property
    def german_lemma(self) -> str | None:
        return self.misc_value("GermanLemma")

    def feats_value(self, key: str) -> str | None:
        if self.feats_col == "_":
            return None
        for pair in self.feats_col.split("|"):
            if "=" in pair:
                k, v = pair.split("=", 1)
                if k == key:
                    return v
        return None


@dataclass
class MwtSpan:
    """A multi-word token: one surface range covering consecutive token ids."""

    first_id: int
    last_id: int
    surface_form: str
    misc: list[tuple[str, str | None]] = field(default_factory=list)
    other_cols: tuple[str, ...] = ("_",) * 7
    line: int = 0

    def __post_init__(self):
        if self.first_id < 1 or self.last_id < self.first_id:
            raise ValueError(f"bad mwt range {self.first_id}-{self.last_id}")

    def misc_value(self, key: str) -> str | None:
        for k, v in self.misc:
            if k == key:
                return v
        return None


@dataclass
class EmptyNodeLine:
    """An enhanced-dependency empty node, kept verbatim for round-tripping."""

    anchor: int  # integer part of the decimal id; 0 sorts before token 1
    raw: str
    line: int = 0


@dataclass
class Sentence:
    """Ordered tokens plus MWT spans and sentence-level metadata."""

    tokens: list[Token] = field(default_factory=list)
    mwt_spans: list[MwtSpan] = field(default_factory=list)
    metadata: list[tuple[str, str]] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)
    empty_nodes: list[EmptyNodeLine] = field(default_factory=list)
    file: str = "<string>"
    line: int = 0

    def metadata_value(self, key: str) -> str | None:
        for k, v in self.metadata:
            if k == key:
                return v
        return None

    @property
    def sent_id(self) -> str:
        return self.metadata_value("sent_id") or ""

    def token_by_id(self, token_id: int) -> Token | None:
        if 1 <= token_id <= len(self.tokens):
            return self.tokens[token_id - 1]
        return None


@dataclass
class Document:
    """A parsed CoNLL-U file; serialization reproduces the input exactly."""

    sentences: list[Sentence] = field(default_factory=list)
    trailing_comments: list[str] = field(default_factory=list)
    file: str = "<string>"
    bom: bool = False
    final_newline: bool = True


@dataclass(frozen=True)
class Diagnostic:
    """One finding, totally ordered by (line, token_id, rule_id) per file."""

    rule_id: str
    severity: str
    file: str
    line: int
    sentence_id: str
    token_id: int | None
    message: str
    guideline_ref: str | None = None

    @property
    def sort_key(self) -> tuple:
        return (self.line, self.token_id or 0, self.rule_id, self.message)

    @property
    def file_sort_key(self) -> tuple:
        return (self.file,) + self.sort_key


def sort_diagnostics(diags: list[Diagnostic]) -> list[Diagnostic]:
    return sorted(diags, key=lambda d: d.file_sort_key)


def make_sentence(metadata: list[tuple[str, str]],
                  tokens: list[Token],
                  mwt_spans: list[MwtSpan] | None = None,
                  file: str = "<string>",
                  line: int = 0) -> Sentence:
    """Build a sentence programmatically, synthesizing its comment lines."""
    return Sentence(
        tokens=tokens,
        mwt_spans=list(mwt_spans or []),
        metadata=list(metadata),
        comments=[f"# {k} = {v}" for k, v in metadata],
        file=file,
        line=line,
    )


def parse_document(source, file_name: str = "<string>") -> Document:
    """Parse CoNLL-U text (a string or a text stream) into a Document.

    Raises ParseError on malformed input: WRONG_COLUMN_COUNT, BAD_ID,
    UNTERMINATED_SENTENCE and a few stricter shape errors (EMPTY_FIELD,
    BAD_HEAD, ID_SEQUENCE, EMPTY_SENTENCE, EXTRA_BLANK_LINE,
    MISPLACED_COMMENT), each carrying file and line number. Content that is
    merely non-conformant (enhanced dependencies, empty nodes) is kept and
    reported later as lint diagnostics.
    """
    text = source.read() if hasattr(source, "read") else source
    bom = text.startswith("﻿")
    if bom:
        text = text[1:]

    lines = text.split("\n")
    final_newline = bool(lines) and lines[-1] == "" and text != ""
    if final_newline:
        lines.pop()

    doc = Document(file=file_name, bom=bom, final_newline=final_newline)
    comments: list[str] = []
    tokens: list[Token] = []
    spans: list[MwtSpan] = []
    empties: list[EmptyNodeLine] = []
    start_line = 0
    pending_last = 0  # highest token id promised by an open MWT span

    def finalize(line_no: int):
        nonlocal comments, tokens, spans, empties, start_line, pending_last
        if pending_last > len(tokens):
            raise ParseError("BAD_ID", "multiword range exceeds sentence length",
                             file_name, spans[-1].line)
        metadata = []
        for c in comments:
            m = _METADATA_RE.match(c)
            if m:
                metadata.append((m.group(1), m.group(2)))
        doc.sentences.append(Sentence(
            tokens=tokens, mwt_spans=spans, metadata=metadata,
            comments=comments, empty_nodes=empties,
            file=file_name, line=start_line,
        ))
        comments, tokens, spans, empties = [], [], [], []
        start_line = 0
        pending_last = 0

    for line_no, line in enumerate(lines, start=1):
        if line == "":
            if tokens:
                finalize(line_no)
            elif comments:
                raise ParseError("EMPTY_SENTENCE",
                                 "comment block without token lines",
                                 file_name, line_no)
            else:
                raise ParseError("EXTRA_BLANK_LINE", "stray blank line",
                                 file_name, line_no)
            continue

        if start_line == 0:
            start_line = line_no

        if line.startswith("#"):
            if tokens:
                raise ParseError("MISPLACED_COMMENT",
                                 "comment after token lines", file_name, line_no)
            comments.append(line)
            continue

        cols = line.split("\t")
        if len(cols) != COLUMN_COUNT:
            raise ParseError("WRONG_COLUMN_COUNT",
                             f"expected {COLUMN_COUNT} tab-separated fields, got {len(cols)}",
                             file_name, line_no)
        for i, col in enumerate(cols):
            if col == "":
                raise ParseError("EMPTY_FIELD", f"field {i + 1} is empty (use '_')",
                                 file_name, line_no)

        id_field = cols[0]
        if _TOKEN_ID_RE.match(id_field):
            token_id = int(id_field)
            if token_id != len(tokens) + 1:
                raise ParseError("ID_SEQUENCE",
                                 f"expected token id {len(tokens) + 1}, got {token_id}",
                                 file_name, line_no)
            try:
                head = int(cols[6])
            except ValueError:
                head = -1
            if head < 0:
                raise ParseError("BAD_HEAD", f"bad HEAD value {cols[6]!r}",
                                 file_name, line_no)
            tokens.append(Token(
                id=token_id, form=cols[1], upos=cols[3], head=head,
                deprel=cols[7], misc=parse_misc(cols[9]),
                lemma_col=cols[2], xpos_col=cols[4], feats_col=cols[5],
                deps_col=cols[8], line=line_no,
            ))
        elif m := _MWT_ID_RE.match(id_field):
            first, last = int(m.group(1)), int(m.group(2))
            if last < first:
                raise ParseError("BAD_ID", f"reversed multiword range {id_field}",
                                 file_name, line_no)
            if first != len(tokens) + 1:
                raise ParseError("ID_SEQUENCE",
                                 f"multiword range must start at token {len(tokens) + 1}",
                                 file_name, line_no)
            spans.append(MwtSpan(
                first_id=first, last_id=last, surface_form=cols[1],
                misc=parse_misc(cols[9]), other_cols=tuple(cols[2:9]),
                line=line_no,
            ))
            pending_last = max(pending_last, last)
        elif m := _EMPTY_NODE_ID_RE.match(id_field):
            empties.append(EmptyNodeLine(anchor=int(m.group(1)), raw=line,
                                         line=line_no))
        else:
            raise ParseError("BAD_ID", f"bad ID field {id_field!r}",
                             file_name, line_no)

    if tokens:
        raise ParseError("UNTERMINATED_SENTENCE",
                         "end of input without sentence-final blank line",
                         file_name, len(lines))
    if comments:
        doc.trailing_comments = comments

    return doc


def _sentence_lines(s: Sentence) -> list[str]:
    lines: list[str] = []
    if s.comments:
        lines.extend(s.comments)
    else:
        lines.extend(f"# {k} = {v}" for k, v in s.metadata)

    spans_by_first: dict[int, list[MwtSpan]] = {}
    for span in s.mwt_spans:
        spans_by_first.setdefault(span.first_id, []).append(span)
    empties_by_anchor: dict[int, list[EmptyNodeLine]] = {}
    for node in s.empty_nodes:
        empties_by_anchor.setdefault(node.anchor, []).append(node)

    lines.extend(node.raw for node in empties_by_anchor.get(0, []))
    for t in s.tokens:
        for span in spans_by_first.get(t.id, []):
            cols = [f"{span.first_id}-{span.last_id}", span.surface_form,
                    *span.other_cols, misc_to_string(span.misc)]
            lines.append("\t".join(cols))
        lines.append("\t".join([
            str(t.id), t.form, t.lemma_col, t.upos, t.xpos_col, t.feats_col,
            str(t.head), t.deprel, t.deps_col, misc_to_string(t.misc),
        ]))
        lines.extend(node.raw for node in empties_by_anchor.get(t.id, []))
    return lines


def serialize_document(doc: Document) -> str:
    """Render a Document back to CoNLL-U text.

    For documents produced by parse_document the output is byte-identical
    to the original input.
    """
    lines: list[str] = []
    for s in doc.sentences:
        lines.extend(_sentence_lines(s))
        lines.append("")
    lines.extend(doc.trailing_comments)
    if not lines:
        return "﻿" if doc.bom else ""
    body = "\n".join(lines) + ("\n" if doc.final_newline else "")
    return ("﻿" + body) if doc.bom else body


def reconstruct_text(s: Sentence) -> str:
    """Rebuild the sentence surface from token forms and SpaceAfter=No.

    MWT spans contribute their surface form once in place of the covered
    tokens; every other unit contributes its form. A single space follows
    each unit unless its MISC carries SpaceAfter=No; the last unit never
    takes a trailing space.
    """
    spans_by_first = {span.first_id: span for span in s.mwt_spans}
    units: list[tuple[str, bool]] = []  # (text, glue-to-next)
    i = 1
    while i <= len(s.tokens):
        span = spans_by_first.get(i)
        if span is not None and span.last_id <= len(s.tokens):
            units.append((span.surface_form, span.misc_value("SpaceAfter") == "No"))
            i = span.last_id + 1
        else:
            t = s.tokens[i - 1]
            units.append((t.form, t.misc_value("SpaceAfter") == "No"))
            i += 1
    out: list[str] = []
    for idx, (text, glue) in enumerate(units):
        out.append(text)
        if idx != len(units) - 1 and not glue:
            out.append(" ")
    return "".join(out)


def _diag(s: Sentence, rule_id: str, message: str, token: Token | None = None,
          severity: str = SEVERITY_ERROR, guideline_ref: str | None = None,
          line: int | None = None) -> Diagnostic:
    return Diagnostic(
        rule_id=rule_id, severity=severity, file=s.file,
        line=line if line is not None else (token.line if token else s.line),
        sentence_id=s.sent_id, token_id=token.id if token else None,
        message=message, guideline_ref=guideline_ref,
    )


def validate_structure(s: Sentence) -> list[Diagnostic]:
    """Check tree well-formedness: one root, no cycles, heads in range,
    root deprel pairing, no tokens headed by punctuation, no overlapping
    MWT spans. Crossing arcs are deliberately not flagged.
    """
    diags: list[Diagnostic] = []
    n = len(s.tokens)

    roots = [t for t in s.tokens if t.head == 0]
    if n and not roots:
        diags.append(_diag(s, "STRUCT.NO_ROOT", "no token has head 0"))
    elif len(roots) > 1:
        ids = ", ".join(str(t.id) for t in roots)
        diags.append(_diag(s, "STRUCT.MULTI_ROOT",
                           f"{len(roots)} tokens have head 0 (ids {ids})"))

    for t in s.tokens:
        if t.head > n:
            diags.append(_diag(s, "STRUCT.HEAD_RANGE",
                               f"head {t.head} exceeds sentence length {n}", t))
        if t.head == 0 and t.deprel != "root":
            diags.append(_diag(s, "STRUCT.ROOT_DEPREL",
                               f'head 0 requires deprel "root", got "{t.deprel}"', t))
        if 1 <= t.head <= n and s.tokens[t.head - 1].upos == "PUNCT":
            diags.append(_diag(s, "STRUCT.PUNCT_CHILD",
                               f"token headed by punctuation token {t.head}", t))

    # Cycle detection over the head map; heads out of range end their chain.
    state = [0] * (n + 1)  # 0 unvisited, 1 on stack, 2 done
    cycle_starts: list[int] = []
    for start in range(1, n + 1):
        if state[start]:
            continue
        path = []
        node = start
        while node and 1 <= node <= n and state[node] == 0:
            state[node] = 1
            path.append(node)
            node = s.tokens[node - 1].head
        if node and 1 <= node <= n and state[node] == 1:
            cycle = path[path.index(node):]
            cycle_starts.append(min(cycle))
        for visited in path:
            state[visited] = 2
    for anchor in sorted(cycle_starts):
        diags.append(_diag(s, "STRUCT.CYCLE",
                           f"head chain through token {anchor} revisits itself",
                           s.tokens[anchor - 1]))

    covered: list[tuple[int, int, MwtSpan]] = sorted(
        (span.first_id, span.last_id, span) for span in s.mwt_spans)
    for (f1, l1, _), (f2, l2, span2) in zip(covered, covered[1:]):
        if f2 <= l1:
            diags.append(_diag(s, "STRUCT.MWT_OVERLAP",
                               f"multiword ranges {f1}-{l1} and {f2}-{l2} overlap",
                               line=span2.line or s.line))

    diags.sort(key=lambda d: d.sort_key)
    return diags
