"""Tolerant Java lexer.

Produces a flat token stream with line/column positions. The lexer accepts
anything the statement parser downstream can work with; it only rejects
constructs that make positions meaningless (unterminated strings, comments,
text blocks). Comments and whitespace are skipped entirely: every emitted
token is a code token.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError

KEYWORDS = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package
    private protected public return short static strictfp super switch
    synchronized this throw throws transient try void volatile while
    true false null
    """.split()
)

PRIMITIVE_TYPES = frozenset("boolean byte char short int long float double void".split())

MODIFIER_WORDS = frozenset(
    "public protected private static final abstract synchronized native strictfp transient volatile default".split()
)

# Longest-match first. >> and >>> are single tokens; angle-depth bookkeeping
# downstream weighs them as 2 and 3 closes.
_OPERATORS = [
    ">>>=",
    ">>>", "<<=", ">>=", "...",
    "->", "::", "++", "--", "==", "!=", "<=", ">=", "&&", "||",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>",
]

ASSIGN_OPS = frozenset(["=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="])

_NUMBER_BODY = set("0123456789abcdefABCDEF_.xXlLdDpP")
_IDENT_EXTRA = {"_", "$"}


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # ident | keyword | number | string | char | punct
    text: str
    line: int
    col: int
    end_line: int
    end_col: int
    start: int  # char offset into the source
    end: int  # exclusive char offset

    def is_ident(self) -> bool:
        return self.kind == "ident"


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch in _IDENT_EXTRA


def _is_ident_part(ch: str) -> bool:
    return ch.isalnum() or ch in _IDENT_EXTRA


def tokenize(text: str) -> list[Token]:
    """Lex Java source into code tokens, skipping comments and whitespace."""
    tokens: list[Token] = []
    i = 0
    n = len(text)
    line = 1
    line_start = 0

    def pos(offset: int, at_line: int, at_line_start: int) -> tuple[int, int]:
        return at_line, offset - at_line_start + 1

    def advance_lines(lo: int, hi: int) -> None:
        nonlocal line, line_start
        j = text.rfind("\n", lo, hi)
        if j >= 0:
            line += text.count("\n", lo, hi)
            line_start = j + 1

    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
            line_start = i
            continue
        if ch in " \t\r\f\x0b":
            i += 1
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            j = text.find("\n", i)
            i = n if j < 0 else j
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "*":
            j = text.find("*/", i + 2)
            if j < 0:
                raise ParseError("unterminated block comment", *pos(i, line, line_start))
            advance_lines(i, j + 2)
            i = j + 2
            continue

        start = i
        start_line, start_col = pos(i, line, line_start)

        if text.startswith('"""', i):
            j = i + 3
            while j < n:
                if text[j] == "\\":
                    j += 2
                    continue
                if text.startswith('"""', j):
                    j += 3
                    break
                j += 1
            else:
                raise ParseError("unterminated text block", start_line, start_col)
            if j > n:
                raise ParseError("unterminated text block", start_line, start_col)
            advance_lines(i, j)
            end_line, end_col = pos(j - 1, line, line_start)
            tokens.append(Token("string", text[start:j], start_line, start_col, end_line, end_col, start, j))
            i = j
            continue

        if ch == '"' or ch == "'":
            quote = ch
            j = i + 1
            while j < n:
                c = text[j]
                if c == "\\":
                    j += 2
                    continue
                if c == quote:
                    j += 1
                    break
                if c == "\n":
                    raise ParseError(f"unterminated {'string' if quote == chr(34) else 'char'} literal", start_line, start_col)
                j += 1
            else:
                raise ParseError(f"unterminated {'string' if quote == chr(34) else 'char'} literal", start_line, start_col)
            if j > n:
                raise ParseError("unterminated literal", start_line, start_col)
            end_line, end_col = pos(j - 1, line, line_start)
            tokens.append(Token("string" if quote == '"' else "char", text[start:j], start_line, start_col, end_line, end_col, start, j))
            i = j
            continue

        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n:
                c = text[j]
                if c in _NUMBER_BODY:
                    # A dot that starts a qualified call like `1).` never reaches
                    # here; a dot after a digit is always part of the literal in
                    # valid Java, except the `..`/ident boundary below.
                    if c == "." and j + 1 < n and text[j + 1] == ".":
                        break
                    j += 1
                    continue
                if c in "+-" and text[j - 1] in "eEpP":
                    j += 1
                    continue
                break
            end_line, end_col = pos(j - 1, line, line_start)
            tokens.append(Token("number", text[start:j], start_line, start_col, end_line, end_col, start, j))
            i = j
            continue

        if _is_ident_start(ch):
            j = i + 1
            while j < n and _is_ident_part(text[j]):
                j += 1
            word = text[start:j]
            kind = "keyword" if word in KEYWORDS else "ident"
            end_line, end_col = pos(j - 1, line, line_start)
            tokens.append(Token(kind, word, start_line, start_col, end_line, end_col, start, j))
            i = j
            continue

        matched = None
        for op in _OPERATORS:
            if text.startswith(op, i):
                matched = op
                break
        if matched is None:
            matched = ch
        j = i + len(matched)
        end_line, end_col = pos(j - 1, line, line_start)
        tokens.append(Token("punct", matched, start_line, start_col, end_line, end_col, start, j))
        i = j

    return tokens


def angle_weight(tok: Token) -> int:
    """Contribution of a token to generic-bracket depth (< opens, > closes)."""
    if tok.kind != "punct":
        return 0
    if tok.text == "<":
        return 1
    if tok.text == ">":
        return -1
    if tok.text == ">>":
        return -2
    if tok.text == ">>>":
        return -3
    return 0
