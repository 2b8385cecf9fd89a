"""Statement-level model of a Java method.

parse_unit lexes a compilation unit and indexes its type/method structure.
locate_method builds a MethodModel: an ordered statement tree with line/column
spans, per-statement def/use/declare facts for locals, and jump descriptors.
statements_in_range resolves a line range to an aligned sequence of sibling
statements, or reports the smallest enclosing aligned range.

Only local variables and parameters enter the def/use facts; fields, array
elements, and heap state are not modeled. Identifiers inside lambda bodies,
anonymous class bodies, and array initializers are recorded as uses of the
enclosing statement (conservative capture).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .errors import AmbiguousMethodError, EmptyRangeError, MethodNotFoundError, ParseError
from .lexer import ASSIGN_OPS, PRIMITIVE_TYPES, Token, angle_weight, tokenize

_OPEN = {"(": ")", "[": "]", "{": "}"}
_CLOSE = {")": "(", "]": "[", "}": "{"}

STATEMENT_KINDS = frozenset(
    ["declaration", "expression", "if", "loop", "switch", "try", "return", "break", "continue", "throw", "block", "other"]
)


@dataclass(frozen=True, slots=True)
class Span:
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    @property
    def lines(self) -> tuple[int, int]:
        return (self.start_line, self.end_line)


@dataclass(frozen=True, slots=True)
class VarDecl:
    name: str
    type_text: str
    stmt_id: int


@dataclass(frozen=True, slots=True)
class Jump:
    kind: str  # break | continue | return | throw
    target: int | None  # loop/switch statement id for break/continue
    to_exit: bool
    unresolved: bool = False


@dataclass(frozen=True, slots=True)
class Occurrence:
    tok_index: int
    name: str
    is_def: bool
    is_use: bool


@dataclass(slots=True)
class Statement:
    """One node of the statement tree. Treated as immutable once the model is built."""

    id: int
    kind: str
    span: Span
    parent: int | None
    children: tuple[int, ...] = ()
    defs: frozenset[str] = frozenset()
    uses: frozenset[str] = frozenset()
    declared: tuple[VarDecl, ...] = ()
    jump: Jump | None = None
    label: str | None = None
    loop_style: str | None = None  # while | do | for | foreach
    role: str | None = None  # tryblock | catch | finally
    tok_lo: int = 0
    tok_hi: int = 0
    occurrences: tuple[Occurrence, ...] = ()
    then_id: int | None = None
    else_id: int | None = None
    body_id: int | None = None
    try_block_id: int | None = None
    catch_ids: tuple[int, ...] = ()
    finally_id: int | None = None
    switch_groups: tuple[tuple[int, ...], ...] = ()
    switch_has_default: bool = False
    switch_arrow: bool = False


@dataclass(frozen=True)
class SourceUnit:
    path: str
    text: str
    line_index: tuple[int, ...]  # char offset of each line start; line i starts at line_index[i-1]
    tokens: tuple[Token, ...] = field(repr=False, default=())

    @property
    def line_count(self) -> int:
        return len(self.line_index)

    def digest(self) -> str:
        return hashlib.sha256(self.text.encode("utf-8")).hexdigest()

    def line_text(self, line: int) -> str:
        lo = self.line_index[line - 1]
        hi = self.line_index[line] - 1 if line < len(self.line_index) else len(self.text)
        return self.text[lo:hi].rstrip("\r")

    def line_start_offset(self, line: int) -> int:
        return self.line_index[line - 1]

    def line_end_offset(self, line: int) -> int:
        """Offset one past the line's newline (or end of text for the last line)."""
        return self.line_index[line] if line < len(self.line_index) else len(self.text)


@dataclass(frozen=True)
class Param:
    name: str
    type_text: str


@dataclass(frozen=True)
class RawMethod:
    name: str
    type_name: str
    is_constructor: bool
    is_static: bool
    return_type: str
    throws_text: str
    params: tuple[Param, ...]
    decl_line: int
    open_tok: int  # index of the body '{'
    close_tok: int  # index of the matching '}'
    sibling_names: frozenset[str] = frozenset()
    sibling_arities: frozenset[tuple[str, int]] = frozenset()

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class RangeResolution:
    """Outcome of resolving a line range against the statement tree.

    aligned=True: ids is the sibling run exactly covering the range's
    statement-bearing lines; span is its canonical line extent.
    aligned=False with span set: NotAligned; span/ids describe the smallest
    enclosing aligned run.
    aligned=False with span None: no aligned enclosure exists (statement
    tokens share lines with non-statement text).
    """

    aligned: bool
    ids: tuple[int, ...]
    span: tuple[int, int] | None


class MethodModel:
    def __init__(
        self,
        unit: SourceUnit,
        raw: RawMethod,
        statements: list[Statement],
        root_ids: tuple[int, ...],
        locals_map: dict[str, tuple[VarDecl, ...]],
        unsupported_jumps: tuple[int, ...],
    ) -> None:
        self.unit = unit
        self.name = raw.name
        self.arity = raw.arity
        self.is_static = raw.is_static
        self.is_constructor = raw.is_constructor
        self.return_type = raw.return_type
        self.throws_text = raw.throws_text
        self.type_name = raw.type_name
        self.sibling_method_names = raw.sibling_names
        self.sibling_method_arities = raw.sibling_arities
        self.params = raw.params
        self.statements = tuple(statements)
        self.root_ids = root_ids
        self.locals = locals_map
        self.unsupported_jumps = unsupported_jumps
        self.decl_line = raw.decl_line
        self.open_tok = raw.open_tok
        self.close_tok = raw.close_tok
        toks = unit.tokens
        self.open_line = toks[raw.open_tok].line
        self.close_line = toks[raw.close_tok].line
        self.signature_span = (raw.decl_line, self.open_line)
        if statements:
            self.body_span = (
                min(s.span.start_line for s in statements if s.parent is None),
                max(s.span.end_line for s in statements if s.parent is None),
            )
        else:
            self.body_span = (self.open_line + 1, self.close_line - 1)
        # deepest statement first, so fill-if-absent leaves each token with its
        # innermost owner; header and brace tokens fall to the enclosing node
        def depth(s: Statement) -> int:
            d = 0
            cur = s.parent
            while cur is not None:
                d += 1
                cur = statements[cur].parent
            return d

        self._owner: dict[int, int] = {}
        for s in sorted(statements, key=depth, reverse=True):
            for t in range(s.tok_lo, s.tok_hi + 1):
                self._owner.setdefault(t, s.id)
        self._line_tokens: dict[int, list[int]] = {}
        for idx, tok in enumerate(toks):
            for ln in range(tok.line, tok.end_line + 1):
                self._line_tokens.setdefault(ln, []).append(idx)

    # -- tree helpers ------------------------------------------------------

    def stmt(self, sid: int) -> Statement:
        return self.statements[sid]

    def descendants(self, sid: int) -> set[int]:
        out: set[int] = set()
        stack = [sid]
        while stack:
            cur = stack.pop()
            out.add(cur)
            stack.extend(self.statements[cur].children)
        return out

    def subtree(self, ids: tuple[int, ...] | list[int]) -> set[int]:
        out: set[int] = set()
        for sid in ids:
            out |= self.descendants(sid)
        return out

    def siblings_of(self, sid: int) -> tuple[int, ...]:
        parent = self.statements[sid].parent
        if parent is None:
            return self.root_ids
        return self.statements[parent].children

    def token_owner(self, tok_index: int) -> int | None:
        return self._owner.get(tok_index)

    def statement_lines(self, ids: tuple[int, ...] | list[int] | set[int]) -> frozenset[int]:
        """Lines carrying at least one token of the given statements' subtrees."""
        sub = self.subtree(tuple(ids))
        lines: set[int] = set()
        for sid in sub:
            s = self.statements[sid]
            for t in range(s.tok_lo, s.tok_hi + 1):
                if self._owner.get(t) in sub:
                    tok = self.unit.tokens[t]
                    lines.update(range(tok.line, tok.end_line + 1))
        return frozenset(lines)

    def body_statement_lines(self) -> frozenset[int]:
        return self.statement_lines(self.root_ids)

    def all_locals_and_params(self) -> frozenset[str]:
        return frozenset(self.locals) | frozenset(p.name for p in self.params)

    def host_loc(self) -> int:
        return self.close_line - self.decl_line + 1

    def method_text(self) -> str:
        lo = self.unit.line_start_offset(self.decl_line)
        hi = self.unit.line_end_offset(self.close_line)
        return self.unit.text[lo:hi]


# ---------------------------------------------------------------------------
# parse_unit


def parse_unit(text: str, path: str = "<memory>") -> SourceUnit:
    """Lex the unit, verify bracket nesting, and build the line index."""
    tokens = tuple(tokenize(text))
    stack: list[Token] = []
    for tok in tokens:
        if tok.kind != "punct":
            continue
        if tok.text in _OPEN:
            stack.append(tok)
        elif tok.text in _CLOSE:
            if not stack or stack[-1].text != _CLOSE[tok.text]:
                raise ParseError(f"unbalanced '{tok.text}'", tok.line, tok.col)
            stack.pop()
    if stack:
        tok = stack[-1]
        raise ParseError(f"unclosed '{tok.text}'", tok.line, tok.col)

    line_index = [0]
    for i, ch in enumerate(text):
        if ch == "\n":
            line_index.append(i + 1)
    return SourceUnit(path=path, text=text, line_index=tuple(line_index), tokens=tokens)


# ---------------------------------------------------------------------------
# structure scan: types and method declarations


def join_type(texts: list[str]) -> str:
    no_space_before = {".", "<", ">", ">>", ">>>", "[", "]", ",", "...", ")"}
    no_space_after = {".", "<", "[", "(", "@"}
    parts: list[str] = []
    prev: str | None = None
    for s in texts:
        if prev is not None and s not in no_space_before and prev not in no_space_after:
            parts.append(" ")
        parts.append(s)
        prev = s
    return "".join(parts).replace("...", "[]")


def _match_forward(tokens: tuple[Token, ...], i: int) -> int:
    """Index of the bracket matching tokens[i] (which must be an opener)."""
    depth = 0
    opener = tokens[i].text
    closer = _OPEN[opener]
    j = i
    while j < len(tokens):
        t = tokens[j].text
        if tokens[j].kind == "punct":
            if t == opener:
                depth += 1
            elif t == closer:
                depth -= 1
                if depth == 0:
                    return j
        j += 1
    raise ParseError(f"unclosed '{opener}'", tokens[i].line, tokens[i].col)


def _split_params(tokens: tuple[Token, ...], lo: int, hi: int) -> list[Param]:
    """Parse a parameter list between '(' at lo and ')' at hi (exclusive bounds)."""
    if lo >= hi:
        return []
    groups: list[list[Token]] = [[]]
    depth = 0
    angle = 0
    for idx in range(lo, hi):
        tok = tokens[idx]
        if tok.kind == "punct":
            if tok.text in _OPEN:
                depth += 1
            elif tok.text in _CLOSE:
                depth -= 1
            angle = max(0, angle + angle_weight(tok))
            if tok.text == "," and depth == 0 and angle == 0:
                groups.append([])
                continue
        groups[-1].append(tok)
    params: list[Param] = []
    for group in groups:
        toks = list(group)
        # strip annotations and final
        out: list[Token] = []
        k = 0
        while k < len(toks):
            t = toks[k]
            if t.text == "@":
                k += 1
                while k < len(toks) and (toks[k].is_ident() or toks[k].text == "."):
                    k += 1
                if k < len(toks) and toks[k].text == "(":
                    dep = 0
                    while k < len(toks):
                        if toks[k].text == "(":
                            dep += 1
                        elif toks[k].text == ")":
                            dep -= 1
                            if dep == 0:
                                k += 1
                                break
                        k += 1
                continue
            if t.text == "final":
                k += 1
                continue
            out.append(t)
            k += 1
        if not out:
            continue
        # name is the last identifier; trailing C-style dims move to the type
        name_idx = max(i for i, t in enumerate(out) if t.is_ident())
        name = out[name_idx].text
        type_toks = [t.text for t in out[:name_idx]]
        type_toks += [t.text for t in out[name_idx + 1 :] if t.text in ("[", "]")]
        params.append(Param(name=name, type_text=join_type(type_toks)))
    return params


_TYPE_KEYWORDS = {"class", "interface", "enum"}


def _scan_structure(unit: SourceUnit) -> list[RawMethod]:
    tokens = unit.tokens
    methods: list[RawMethod] = []

    def scan_type_body(i: int, type_name: str, is_enum: bool) -> int:
        """i points just past the type's '{'. Returns index past the matching '}'."""
        local_methods: list[RawMethod] = []
        if is_enum:
            depth = 0
            while i < len(tokens):
                t = tokens[i].text
                if tokens[i].kind == "punct":
                    if t in _OPEN:
                        depth += 1
                    elif t in _CLOSE:
                        if t == "}" and depth == 0:
                            _finish(local_methods)
                            return i + 1
                        depth -= 1
                    elif t == ";" and depth == 0:
                        i += 1
                        break
                i += 1

        buf_start: int | None = None
        while i < len(tokens):
            tok = tokens[i]
            t = tok.text
            if tok.kind == "punct" and t == "}":
                _finish(local_methods)
                return i + 1
            if tok.kind == "punct" and t == ";":
                buf_start = None
                i += 1
                continue
            if tok.kind == "punct" and t == "@":
                if i + 1 < len(tokens) and tokens[i + 1].text == "interface":
                    i = _enter_type(i + 1, local_methods)
                    buf_start = None
                    continue
                # member annotation: skip name and optional argument group
                i += 1
                while i < len(tokens) and (tokens[i].is_ident() or tokens[i].text == "."):
                    i += 1
                if i < len(tokens) and tokens[i].text == "(":
                    i = _match_forward(tokens, i) + 1
                continue
            if (tok.kind == "keyword" and t in _TYPE_KEYWORDS) or (
                tok.is_ident() and t == "record" and i + 1 < len(tokens) and tokens[i + 1].is_ident()
            ):
                i = _enter_type(i, local_methods)
                buf_start = None
                continue
            if tok.kind == "punct" and t == "=":
                # field initializer: skip to the member-terminating ';'
                depth = 0
                j = i + 1
                while j < len(tokens):
                    tj = tokens[j].text
                    if tokens[j].kind == "punct":
                        if tj in _OPEN:
                            depth += 1
                        elif tj in _CLOSE:
                            depth -= 1
                        elif tj == ";" and depth == 0:
                            break
                    j += 1
                i = j + 1
                buf_start = None
                continue
            if tok.kind == "punct" and t == "{":
                close = _match_forward(tokens, i)
                raw = _classify_member(buf_start, i) if buf_start is not None else None
                if raw is not None:
                    local_methods.append(_build_raw(raw, i, close, type_name))
                i = close + 1
                buf_start = None
                continue
            if buf_start is None:
                buf_start = i
            if tok.kind == "punct" and t == "(":
                i = _match_forward(tokens, i) + 1
                continue
            i += 1
        _finish(local_methods)
        return i

    def _finish(local_methods: list[RawMethod]) -> None:
        names = frozenset(m.name for m in local_methods)
        arities = frozenset((m.name, m.arity) for m in local_methods)
        for m in local_methods:
            methods.append(
                RawMethod(
                    name=m.name,
                    type_name=m.type_name,
                    is_constructor=m.is_constructor,
                    is_static=m.is_static,
                    return_type=m.return_type,
                    throws_text=m.throws_text,
                    params=m.params,
                    decl_line=m.decl_line,
                    open_tok=m.open_tok,
                    close_tok=m.close_tok,
                    sibling_names=names,
                    sibling_arities=arities,
                )
            )

    def _enter_type(i: int, local_methods: list[RawMethod]) -> int:
        kw = tokens[i]
        is_enum = kw.text == "enum"
        j = i + 1
        name = "?"
        if j < len(tokens) and tokens[j].is_ident():
            name = tokens[j].text
        depth = 0
        while j < len(tokens):
            tj = tokens[j].text
            if tokens[j].kind == "punct":
                if tj == "(":
                    j = _match_forward(tokens, j)
                elif tj == "{" and depth == 0:
                    return scan_type_body(j + 1, name, is_enum)
                elif tj == ";" and depth == 0:
                    return j + 1  # record/interface without body
            j += 1
        return j

    def _classify_member(buf_start: int, open_idx: int) -> tuple[int, int, int] | None:
        """Return (prefix_end, lparen, rparen) when tokens[buf_start:open_idx] is a method header."""
        j = open_idx - 1
        # cut an optional throws clause
        k = j
        while k > buf_start:
            if tokens[k].kind == "keyword" and tokens[k].text == "throws":
                j = k - 1
                break
            if tokens[k].kind == "punct" and tokens[k].text == ")":
                break
            k -= 1
        if j < buf_start or tokens[j].text != ")":
            return None
        depth = 0
        lparen = None
        m = j
        while m >= buf_start:
            if tokens[m].kind == "punct":
                if tokens[m].text == ")":
                    depth += 1
                elif tokens[m].text == "(":
                    depth -= 1
                    if depth == 0:
                        lparen = m
                        break
            m -= 1
        if lparen is None or lparen - 1 < buf_start:
            return None
        if not tokens[lparen - 1].is_ident():
            return None
        return (buf_start, lparen, j)

    def _build_raw(shape: tuple[int, int, int], open_idx: int, close_idx: int, type_name: str) -> RawMethod:
        buf_start, lparen, rparen = shape
        name_tok = tokens[lparen - 1]
        prefix = list(range(buf_start, lparen - 1))
        words = [tokens[p].text for p in prefix]
        is_static = "static" in words
        # strip modifiers, then an optional generic type-parameter group
        p = buf_start
        while p < lparen - 1 and tokens[p].text in (
            "public", "protected", "private", "static", "final", "abstract", "synchronized", "native", "strictfp", "default",
        ):
            p += 1
        if p < lparen - 1 and tokens[p].text == "<":
            angle = 0
            while p < lparen - 1:
                angle += angle_weight(tokens[p])
                p += 1
                if angle <= 0:
                    break
        ret_toks = [tokens[q].text for q in range(p, lparen - 1)]
        is_ctor = not ret_toks and name_tok.text == type_name
        throws_text = ""
        j = rparen + 1
        if j < open_idx and tokens[j].kind == "keyword" and tokens[j].text == "throws":
            throws_text = join_type([tokens[q].text for q in range(j + 1, open_idx)])
        return RawMethod(
            name=name_tok.text,
            type_name=type_name,
            is_constructor=is_ctor,
            is_static=is_static,
            return_type=join_type(ret_toks) if ret_toks else ("" if is_ctor else "void"),
            throws_text=throws_text,
            params=tuple(_split_params(tokens, lparen + 1, rparen)),
            decl_line=tokens[buf_start].line,
            open_tok=open_idx,
            close_tok=close_idx,
        )

    i = 0
    while i < len(unit.tokens):
        tok = unit.tokens[i]
        if (tok.kind == "keyword" and tok.text in _TYPE_KEYWORDS) or (
            tok.is_ident() and tok.text == "record" and i + 1 < len(unit.tokens) and unit.tokens[i + 1].is_ident()
        ):
            i = _enter_type_top(unit, i, scan_type_body)
            continue
        if tok.text == "@" and i + 1 < len(unit.tokens) and unit.tokens[i + 1].text == "interface":
            i = _enter_type_top(unit, i + 1, scan_type_body)
            continue
        i += 1
    return methods


def _enter_type_top(unit: SourceUnit, i: int, scan_type_body) -> int:
    tokens = unit.tokens
    j = i + 1
    name = "?"
    if j < len(tokens) and tokens[j].is_ident():
        name = tokens[j].text
    is_enum = tokens[i].text == "enum"
    while j < len(tokens):
        tj = tokens[j].text
        if tokens[j].kind == "punct":
            if tj == "(":
                j = _match_forward(tokens, j)
            elif tj == "{":
                return scan_type_body(j + 1, name, is_enum)
            elif tj == ";":
                return j + 1
        j += 1
    return j


# ---------------------------------------------------------------------------
# locate_method


def unit_methods(unit: SourceUnit) -> list[RawMethod]:
    return _scan_structure(unit)


def locate_method(unit: SourceUnit, locator: str | int) -> MethodModel:
    methods = _scan_structure(unit)
    if isinstance(locator, str) and not locator.isdigit():
        hits = [m for m in methods if m.name == locator]
        if not hits:
            raise MethodNotFoundError(f"no method named {locator!r} in {unit.path}")
        if len(hits) > 1:
            raise AmbiguousMethodError(locator, len(hits))
        raw = hits[0]
    else:
        line = int(locator)
        containing = [m for m in methods if m.decl_line <= line <= unit.tokens[m.close_tok].line]
        if not containing:
            raise MethodNotFoundError(f"line {line} is not inside any method of {unit.path}")
        raw = min(containing, key=lambda m: unit.tokens[m.close_tok].line - m.decl_line)
    return _build_model(unit, raw)


# ---------------------------------------------------------------------------
# method-body statement parser


class _BodyParser:
    def __init__(self, unit: SourceUnit, raw: RawMethod) -> None:
        self.unit = unit
        self.tokens = unit.tokens
        self.raw = raw
        self.stmts: list[Statement] = []
        self.locals: dict[str, list[VarDecl]] = {}
        self.ctx: list[dict] = []  # {"id", "is_loop", "is_switch", "labels"}
        self.unsupported: list[int] = []

    # -- token helpers

    def tk(self, i: int) -> Token:
        return self.tokens[i]

    def text(self, i: int) -> str:
        return self.tokens[i].text

    def new_stmt(self, kind: str, parent: int | None, tok_lo: int) -> Statement:
        s = Statement(id=len(self.stmts), kind=kind, span=Span(0, 0, 0, 0), parent=parent, tok_lo=tok_lo)
        self.stmts.append(s)
        return s

    def close_stmt(self, s: Statement, tok_hi: int) -> None:
        s.tok_hi = tok_hi
        first, last = self.tk(s.tok_lo), self.tk(tok_hi)
        s.span = Span(first.line, first.col, last.end_line, last.end_col)

    def skip_parens(self, i: int) -> int:
        """i at '('; return index just past the matching ')'."""
        return _match_forward(self.tokens, i) + 1

    # -- expression classification

    def scan_expr(self, lo: int, hi: int, uses_only: bool = False) -> tuple[set[str], set[str], list[Occurrence]]:
        """Classify identifier reads/writes in tokens[lo:hi] (hi exclusive)."""
        defs: set[str] = set()
        uses: set[str] = set()
        occ: list[Occurrence] = []
        brace_depth = 0
        for i in range(lo, hi):
            tok = self.tokens[i]
            if tok.kind == "punct":
                if tok.text == "{":
                    brace_depth += 1
                elif tok.text == "}":
                    brace_depth -= 1
                continue
            if not tok.is_ident():
                continue
            prev = self.tokens[i - 1] if i - 1 >= lo else None
            nxt = self.tokens[i + 1] if i + 1 < hi else None
            if prev is not None and prev.text in (".", "::"):
                continue
            if nxt is not None and nxt.text == "(":
                continue
            name = tok.text
            is_def = False
            is_use = True
            if nxt is not None and nxt.kind == "punct" and nxt.text in ASSIGN_OPS:
                is_def = True
                is_use = nxt.text != "="
            elif (nxt is not None and nxt.text in ("++", "--")) or (prev is not None and prev.text in ("++", "--")):
                is_def = True
                is_use = True
            if uses_only or brace_depth > 0:
                is_use = is_use or is_def
                is_def = False
            if is_def:
                defs.add(name)
            if is_use:
                uses.add(name)
            if is_def or is_use:
                occ.append(Occurrence(i, name, is_def, is_use))
        return defs, uses, occ

    def attach_expr(self, s: Statement, lo: int, hi: int, uses_only: bool = False) -> None:
        d, u, o = self.scan_expr(lo, hi, uses_only)
        s.defs = frozenset(set(s.defs) | d)
        s.uses = frozenset(set(s.uses) | u)
        s.occurrences = tuple(list(s.occurrences) + o)

    # -- statement terminator scan

    def find_semicolon(self, i: int) -> int:
        """Index of the ';' terminating a simple statement starting at i."""
        depth = 0
        j = i
        while j < len(self.tokens):
            tok = self.tokens[j]
            if tok.kind == "punct":
                if tok.text in _OPEN:
                    depth += 1
                elif tok.text in _CLOSE:
                    if depth == 0:
                        raise ParseError("expected ';'", tok.line, tok.col)
                    depth -= 1
                elif tok.text == ";" and depth == 0:
                    return j
            j += 1
        last = self.tokens[-1]
        raise ParseError("expected ';'", last.line, last.col)

    # -- declaration detection

    def looks_like_declaration(self, i: int, end: int) -> bool:
        j = i
        while j < end and (self.text(j) == "final" or self.text(j) == "@"):
            if self.text(j) == "@":
                j += 1
                while j < end and (self.tk(j).is_ident() or self.text(j) == "."):
                    j += 1
                if j < end and self.text(j) == "(":
                    j = self.skip_parens(j)
            else:
                j += 1
        if j >= end:
            return False
        tok = self.tk(j)
        if tok.kind == "keyword" and tok.text in PRIMITIVE_TYPES:
            return True
        if not tok.is_ident():
            return False
        if tok.text == "var" and j + 1 < end and self.tk(j + 1).is_ident():
            return True
        j = self._skip_type_shape(j, end)
        if j is None or j >= end or not self.tk(j).is_ident():
            return False
        after = j + 1
        while after < end and self.text(after) == "[" and after + 1 < end and self.text(after + 1) == "]":
            after += 2
        return after >= end or self.text(after) in ("=", ",", ";")

    def _skip_type_shape(self, j: int, end: int) -> int | None:
        """Skip a type: Qualified.Name<Args>[][]. Returns index after, or None."""
        if self.tk(j).kind == "keyword" and self.text(j) in PRIMITIVE_TYPES:
            j += 1
        elif self.tk(j).is_ident():
            j += 1
            while j + 1 < end and self.text(j) == "." and self.tk(j + 1).is_ident():
                j += 2
        else:
            return None
        if j < end and self.text(j) == "<":
            angle = 0
            k = j
            while k < end:
                w = angle_weight(self.tk(k))
                if w == 0 and self.tk(k).kind == "punct" and self.text(k) in (";", "(", ")", "{", "}", "=", "&&", "||"):
                    return None
                angle += w
                k += 1
                if angle <= 0:
                    break
            if angle > 0:
                return None
            j = k
        while j + 1 < end and self.text(j) == "[" and self.text(j + 1) == "]":
            j += 2
        return j

    # -- declarator parsing (shared by declarations, for-init, resources)

    def parse_declarators(self, s: Statement, i: int, end: int) -> None:
        j = i
        while j < end and (self.text(j) == "final" or self.text(j) == "@"):
            if self.text(j) == "@":
                j += 1
                while j < end and (self.tk(j).is_ident() or self.text(j) == "."):
                    j += 1
                if j < end and self.text(j) == "(":
                    j = self.skip_parens(j)
            else:
                j += 1
        type_start = j
        if self.tk(j).kind == "keyword" and self.text(j) in PRIMITIVE_TYPES:
            j += 1
        elif self.tk(j).is_ident():
            j += 1
            while j + 1 < end and self.text(j) == "." and self.tk(j + 1).is_ident():
                j += 2
            if j < end and self.text(j) == "<":
                angle = 0
                while j < end:
                    angle += angle_weight(self.tk(j))
                    j += 1
                    if angle <= 0:
                        break
        while j + 1 < end and self.text(j) == "[" and self.text(j + 1) == "]":
            j += 2
        base_type = join_type([self.text(q) for q in range(type_start, j)])

        declared: list[VarDecl] = []
        defs: set[str] = set()
        while j < end:
            if not self.tk(j).is_ident():
                break
            name = self.text(j)
            j += 1
            dims = 0
            while j + 1 < end and self.text(j) == "[" and self.text(j + 1) == "]":
                dims += 1
                j += 2
            vtype = base_type + "[]" * dims
            declared.append(VarDecl(name, vtype, s.id))
            if j < end and self.text(j) == "=":
                init_lo = j + 1
                j = self._end_of_initializer(init_lo, end)
                self.attach_expr(s, init_lo, j)
                defs.add(name)
            if j < end and self.text(j) == ",":
                j += 1
                continue
            break
        s.declared = tuple(list(s.declared) + declared)
        s.defs = frozenset(set(s.defs) | defs)
        for v in declared:
            self.locals.setdefault(v.name, []).append(v)

    def _end_of_initializer(self, i: int, end: int) -> int:
        """Scan an initializer expression; stop at a declarator ',' or at end."""
        depth = 0
        j = i
        while j < end:
            tok = self.tk(j)
            if tok.kind == "punct":
                if tok.text in _OPEN:
                    depth += 1
                elif tok.text in _CLOSE:
                    depth -= 1
                elif tok.text == "," and depth == 0 and self._declarator_follows(j + 1, end):
                    return j
            j += 1
        return end

    def _declarator_follows(self, j: int, end: int) -> bool:
        if j >= end or not self.tk(j).is_ident():
            return False
        k = j + 1
        while k + 1 < end and self.text(k) == "[" and self.text(k + 1) == "]":
            k += 2
        return k >= end or self.text(k) in ("=", ",")

    # -- main statement parser

    def parse_block_children(self, i: int, end: int, parent: int | None) -> tuple[list[int], int]:
        ids: list[int] = []
        while i < end:
            sid, i = self.parse_statement(i, parent)
            ids.append(sid)
        return ids, i

    def parse_statement(self, i: int, parent: int | None) -> tuple[int, int]:
        labels: list[str] = []
        while (
            self.tk(i).is_ident()
            and i + 1 < len(self.tokens)
            and self.text(i + 1) == ":"
            and self.tk(i).text not in ("default",)
        ):
            labels.append(self.text(i))
            i += 2
        sid, nxt = self.parse_core(i, parent, labels)
        if labels:
            s = self.stmts[sid]
            s.label = labels[0]
            first = self.tk(s.tok_lo)
            # widen the span/token range to include the label prefix
            s.tok_lo = s.tok_lo - 2 * len(labels)
            lab = self.tk(s.tok_lo)
            s.span = Span(lab.line, lab.col, s.span.end_line, s.span.end_col)
        return sid, nxt

    def parse_core(self, i: int, parent: int | None, labels: list[str]) -> tuple[int, int]:
        tok = self.tk(i)
        t = tok.text

        if tok.kind == "punct" and t == "{":
            close = _match_forward(self.tokens, i)
            s = self.new_stmt("block", parent, i)
            self._push_ctx(s, labels, is_loop=False, is_switch=False)
            children, _ = self.parse_block_children(i + 1, close, s.id)
            self._pop_ctx()
            s.children = tuple(children)
            self.close_stmt(s, close)
            return s.id, close + 1

        if tok.kind == "punct" and t == ";":
            s = self.new_stmt("other", parent, i)
            self.close_stmt(s, i)
            return s.id, i + 1

        if tok.kind == "keyword":
            if t == "if":
                return self._parse_if(i, parent, labels)
            if t == "while":
                return self._parse_while(i, parent, labels)
            if t == "do":
                return self._parse_do(i, parent, labels)
            if t == "for":
                return self._parse_for(i, parent, labels)
            if t == "switch":
                return self._parse_switch(i, parent, labels)
            if t == "try":
                return self._parse_try(i, parent, labels)
            if t == "return":
                semi = self.find_semicolon(i + 1)
                s = self.new_stmt("return", parent, i)
                self.attach_expr(s, i + 1, semi)
                s.jump = Jump("return", None, to_exit=True)
                self.close_stmt(s, semi)
                return s.id, semi + 1
            if t == "throw":
                semi = self.find_semicolon(i + 1)
                s = self.new_stmt("throw", parent, i)
                self.attach_expr(s, i + 1, semi)
                s.jump = Jump("throw", None, to_exit=True)
                self.close_stmt(s, semi)
                return s.id, semi + 1
            if t in ("break", "continue"):
                semi = self.find_semicolon(i + 1)
                label = self.text(i + 1) if semi > i + 1 and self.tk(i + 1).is_ident() else None
                s = self.new_stmt(t, parent, i)
                s.jump = self._resolve_jump(s, t, label)
                self.close_stmt(s, semi)
                return s.id, semi + 1
            if t == "synchronized":
                s = self.new_stmt("other", parent, i)
                j = i + 1
                if j < len(self.tokens) and self.text(j) == "(":
                    rp = _match_forward(self.tokens, j)
                    self.attach_expr(s, j + 1, rp)
                    j = rp + 1
                self._push_ctx(s, labels, is_loop=False, is_switch=False)
                child, j = self.parse_statement(j, s.id)
                self._pop_ctx()
                s.children = (child,)
                s.body_id = child
                self.close_stmt(s, self.stmts[child].tok_hi)
                return s.id, j
            if t in _TYPE_KEYWORDS:
                return self._parse_local_type(i, parent)
            if t in ("assert",):
                semi = self.find_semicolon(i + 1)
                s = self.new_stmt("other", parent, i)
                self.attach_expr(s, i + 1, semi)
                self.close_stmt(s, semi)
                return s.id, semi + 1

        if tok.is_ident() and t == "record" and i + 1 < len(self.tokens) and self.tk(i + 1).is_ident():
            nxt2 = self.text(i + 2) if i + 2 < len(self.tokens) else ""
            if nxt2 == "(":
                return self._parse_local_type(i, parent)

        # declaration or expression statement
        semi = self.find_semicolon(i)
        if self.looks_like_declaration(i, semi):
            s = self.new_stmt("declaration", parent, i)
            self.parse_declarators(s, i, semi)
            self.close_stmt(s, semi)
            return s.id, semi + 1
        s = self.new_stmt("expression", parent, i)
        self.attach_expr(s, i, semi)
        self.close_stmt(s, semi)
        return s.id, semi + 1

    # -- compound statement parsers

    def _push_ctx(self, s: Statement, labels: list[str], is_loop: bool, is_switch: bool) -> None:
        self.ctx.append({"id": s.id, "is_loop": is_loop, "is_switch": is_switch, "labels": tuple(labels)})

    def _pop_ctx(self) -> None:
        self.ctx.pop()

    def _resolve_jump(self, s: Statement, kind: str, label: str | None) -> Jump:
        for entry in reversed(self.ctx):
            if label is not None:
                if label in entry["labels"] and (kind == "break" or entry["is_loop"]):
                    return Jump(kind, entry["id"], to_exit=False)
            else:
                if entry["is_loop"] or (kind == "break" and entry["is_switch"]):
                    return Jump(kind, entry["id"], to_exit=False)
        self.unsupported.append(s.id)
        return Jump(kind, None, to_exit=True, unresolved=True)

    def _parse_if(self, i: int, parent: int | None, labels: list[str]) -> tuple[int, int]:
        s = self.new_stmt("if", parent, i)
        rp = _match_forward(self.tokens, i + 1)
        self.attach_expr(s, i + 2, rp)
        self._push_ctx(s, labels, is_loop=False, is_switch=False)
        then_id, j = self.parse_statement(rp + 1, s.id)
        children = [then_id]
        else_id = None
        if j < len(self.tokens) and self.tk(j).kind == "keyword" and self.text(j) == "else":
            else_id, j = self.parse_statement(j + 1, s.id)
            children.append(else_id)
        self._pop_ctx()
        s.children = tuple(children)
        s.then_id = then_id
        s.else_id = else_id
        self.close_stmt(s, self.stmts[children[-1]].tok_hi)
        return s.id, j

    def _parse_while(self, i: int, parent: int | None, labels: list[str]) -> tuple[int, int]:
        s = self.new_stmt("loop", parent, i)
        s.loop_style = "while"
        rp = _match_forward(self.tokens, i + 1)
        self.attach_expr(s, i + 2, rp)
        self._push_ctx(s, labels, is_loop=True, is_switch=False)
        body_id, j = self.parse_statement(rp + 1, s.id)
        self._pop_ctx()
        s.children = (body_id,)
        s.body_id = body_id
        self.close_stmt(s, self.stmts[body_id].tok_hi)
        return s.id, j

    def _parse_do(self, i: int, parent: int | None, labels: list[str]) -> tuple[int, int]:
        s = self.new_stmt("loop", parent, i)
        s.loop_style = "do"
        self._push_ctx(s, labels, is_loop=True, is_switch=False)
        body_id, j = self.parse_statement(i + 1, s.id)
        self._pop_ctx()
        s.children = (body_id,)
        s.body_id = body_id
        if j >= len(self.tokens) or self.text(j) != "while":
            raise ParseError("expected 'while' after do-body", self.tk(j - 1).end_line, self.tk(j - 1).end_col)
        rp = _match_forward(self.tokens, j + 1)
        self.attach_expr(s, j + 2, rp)
        semi = self.find_semicolon(rp + 1)
        self.close_stmt(s, semi)
        return s.id, semi + 1

    def _parse_for(self, i: int, parent: int | None, labels: list[str]) -> tuple[int, int]:
        s = self.new_stmt("loop", parent, i)
        rp = _match_forward(self.tokens, i + 1)
        lo = i + 2
        semis = [k for k in range(lo, rp) if self.text(k) == ";" and self._depth_zero(lo, k)]
        if semis:
            s.loop_style = "for"
            init_lo, init_hi = lo, semis[0]
            cond_lo, cond_hi = semis[0] + 1, semis[1] if len(semis) > 1 else rp
            upd_lo, upd_hi = (semis[1] + 1, rp) if len(semis) > 1 else (rp, rp)
            init_defs: set[str] = set()
            if init_hi > init_lo and self.looks_like_declaration(init_lo, init_hi):
                self.parse_declarators(s, init_lo, init_hi)
                init_defs = set(s.defs) | {v.name for v in s.declared}
            elif init_hi > init_lo:
                d, u, o = self.scan_expr(init_lo, init_hi)
                init_defs = set(d)
                s.defs = frozenset(set(s.defs) | d)
                s.uses = frozenset(set(s.uses) | u)
                s.occurrences = tuple(list(s.occurrences) + o)
            # condition/update reads of init-declared names are not live-in
            for seg_lo, seg_hi in ((cond_lo, cond_hi), (upd_lo, upd_hi)):
                if seg_hi > seg_lo:
                    d, u, o = self.scan_expr(seg_lo, seg_hi)
                    s.defs = frozenset(set(s.defs) | d)
                    s.uses = frozenset(set(s.uses) | (u - init_defs))
                    s.occurrences = tuple(list(s.occurrences) + o)
        else:
            s.loop_style = "foreach"
            colon = next(k for k in range(lo, rp) if self.text(k) == ":" and self._depth_zero(lo, k))
            decl_toks = list(range(lo, colon))
            name_idx = max(k for k in decl_toks if self.tk(k).is_ident())
            var_name = self.text(name_idx)
            type_toks = [self.text(k) for k in decl_toks[: decl_toks.index(name_idx)] if self.text(k) not in ("final",)]
            v = VarDecl(var_name, join_type(type_toks), s.id)
            s.declared = (v,)
            s.defs = frozenset({var_name})
            self.locals.setdefault(var_name, []).append(v)
            self.attach_expr(s, colon + 1, rp)
        self._push_ctx(s, labels, is_loop=True, is_switch=False)
        body_id, j = self.parse_statement(rp + 1, s.id)
        self._pop_ctx()
        s.children = (body_id,)
        s.body_id = body_id
        self.close_stmt(s, self.stmts[body_id].tok_hi)
        return s.id, j

    def _depth_zero(self, lo: int, k: int) -> bool:
        depth = 0
        for q in range(lo, k):
            tq = self.text(q)
            if self.tk(q).kind == "punct":
                if tq in _OPEN:
                    depth += 1
                elif tq in _CLOSE:
                    depth -= 1
        return depth == 0

    def _parse_switch(self, i: int, parent: int | None, labels: list[str]) -> tuple[int, int]:
        s = self.new_stmt("switch", parent, i)
        rp = _match_forward(self.tokens, i + 1)
        self.attach_expr(s, i + 2, rp)
        open_b = rp + 1
        if self.text(open_b) != "{":
            raise ParseError("expected '{' after switch selector", self.tk(open_b).line, self.tk(open_b).col)
        close_b = _match_forward(self.tokens, open_b)
        self._push_ctx(s, labels, is_loop=False, is_switch=True)
        groups: list[tuple[int, ...]] = []
        has_default = False
        arrow = False
        children: list[int] = []
        j = open_b + 1
        while j < close_b:
            t = self.text(j)
            if t not in ("case", "default"):
                raise ParseError("expected case/default label", self.tk(j).line, self.tk(j).col)
            group_stmts: list[int] = []
            # consume consecutive labels
            while j < close_b and self.text(j) in ("case", "default"):
                if self.text(j) == "default":
                    has_default = True
                lab_lo = j + 1
                k = lab_lo
                depth = 0
                while k < close_b:
                    tk = self.text(k)
                    if self.tk(k).kind == "punct":
                        if tk in _OPEN:
                            depth += 1
                        elif tk in _CLOSE:
                            depth -= 1
                        elif depth == 0 and tk in (":", "->"):
                            break
                    k += 1
                if k >= close_b:
                    raise ParseError("unterminated switch label", self.tk(j).line, self.tk(j).col)
                if self.text(k) == "->":
                    arrow = True
                self.attach_expr(s, lab_lo, k, uses_only=True)
                j = k + 1
                if arrow:
                    break
            if arrow:
                sid, j = self.parse_statement(j, s.id)
                group_stmts.append(sid)
                children.append(sid)
            else:
                while j < close_b and self.text(j) not in ("case", "default"):
                    sid, j = self.parse_statement(j, s.id)
                    group_stmts.append(sid)
                    children.append(sid)
            groups.append(tuple(group_stmts))
        self._pop_ctx()
        s.children = tuple(children)
        s.switch_groups = tuple(groups)
        s.switch_has_default = has_default
        s.switch_arrow = arrow
        self.close_stmt(s, close_b)
        return s.id, close_b + 1

    def _parse_try(self, i: int, parent: int | None, labels: list[str]) -> tuple[int, int]:
        s = self.new_stmt("try", parent, i)
        j = i + 1
        if self.text(j) == "(":
            rp = _match_forward(self.tokens, j)
            seg_lo = j + 1
            k = seg_lo
            while k <= rp:
                if k == rp or (self.text(k) == ";" and self._depth_zero(seg_lo, k)):
                    if k > seg_lo:
                        if self.looks_like_declaration(seg_lo, k):
                            self.parse_declarators(s, seg_lo, k)
                        else:
                            self.attach_expr(s, seg_lo, k)
                    seg_lo = k + 1
                k += 1
            j = rp + 1
        self._push_ctx(s, labels, is_loop=False, is_switch=False)
        if self.text(j) != "{":
            raise ParseError("expected '{' after try", self.tk(j).line, self.tk(j).col)
        close = _match_forward(self.tokens, j)
        block = self.new_stmt("block", s.id, j)
        block.role = "tryblock"
        kids, _ = self.parse_block_children(j + 1, close, block.id)
        block.children = tuple(kids)
        self.close_stmt(block, close)
        j = close + 1
        children = [block.id]
        s.try_block_id = block.id
        catch_ids: list[int] = []
        while j < len(self.tokens) and self.tk(j).kind == "keyword" and self.text(j) == "catch":
            rp = _match_forward(self.tokens, j + 1)
            cb = self.new_stmt("block", s.id, j)
            cb.role = "catch"
            param_toks = list(range(j + 2, rp))
            name_idx = max(k for k in param_toks if self.tk(k).is_ident())
            exc_name = self.text(name_idx)
            type_toks = [self.text(k) for k in param_toks[: param_toks.index(name_idx)] if self.text(k) != "final"]
            v = VarDecl(exc_name, join_type(type_toks), cb.id)
            cb.declared = (v,)
            cb.defs = frozenset({exc_name})
            self.locals.setdefault(exc_name, []).append(v)
            bo = rp + 1
            if self.text(bo) != "{":
                raise ParseError("expected '{' after catch", self.tk(bo).line, self.tk(bo).col)
            bc = _match_forward(self.tokens, bo)
            kids, _ = self.parse_block_children(bo + 1, bc, cb.id)
            cb.children = tuple(kids)
            self.close_stmt(cb, bc)
            catch_ids.append(cb.id)
            children.append(cb.id)
            j = bc + 1
        finally_id = None
        if j < len(self.tokens) and self.tk(j).kind == "keyword" and self.text(j) == "finally":
            bo = j + 1
            if self.text(bo) != "{":
                raise ParseError("expected '{' after finally", self.tk(bo).line, self.tk(bo).col)
            bc = _match_forward(self.tokens, bo)
            fb = self.new_stmt("block", s.id, j)
            fb.role = "finally"
            kids, _ = self.parse_block_children(bo + 1, bc, fb.id)
            fb.children = tuple(kids)
            self.close_stmt(fb, bc)
            finally_id = fb.id
            children.append(fb.id)
            j = bc + 1
        self._pop_ctx()
        s.children = tuple(children)
        s.catch_ids = tuple(catch_ids)
        s.finally_id = finally_id
        self.close_stmt(s, self.stmts[children[-1]].tok_hi)
        return s.id, j

    def _parse_local_type(self, i: int, parent: int | None) -> tuple[int, int]:
        s = self.new_stmt("other", parent, i)
        j = i
        depth = 0
        while j < len(self.tokens):
            t = self.text(j)
            if self.tk(j).kind == "punct":
                if t == "(":
                    j = _match_forward(self.tokens, j)
                elif t == "{":
                    j = _match_forward(self.tokens, j)
                    break
            j += 1
        self.attach_expr(s, i + 1, j + 1, uses_only=True)
        self.close_stmt(s, j)
        return s.id, j + 1


def _build_model(unit: SourceUnit, raw: RawMethod) -> MethodModel:
    parser = _BodyParser(unit, raw)
    root_ids, _ = parser.parse_block_children(raw.open_tok + 1, raw.close_tok, None)
    stmts = parser.stmts
    visible = frozenset(parser.locals) | frozenset(p.name for p in raw.params)
    for s in stmts:
        s.defs = frozenset(s.defs & visible)
        s.uses = frozenset(s.uses & visible)
        s.occurrences = tuple(o for o in s.occurrences if o.name in visible)
    locals_map = {name: tuple(decls) for name, decls in parser.locals.items()}
    return MethodModel(unit, raw, stmts, tuple(root_ids), locals_map, tuple(parser.unsupported))


# ---------------------------------------------------------------------------
# statements_in_range


def statements_in_range(model: MethodModel, start: int, end: int) -> RangeResolution:
    """Resolve [start, end] to an aligned sibling run (see RangeResolution)."""
    if start > end:
        raise EmptyRangeError(f"line range {start}..{end} is inverted")
    body_lo, body_hi = model.body_span
    lo = max(start, body_lo)
    hi = min(end, body_hi)
    if lo > hi:
        raise EmptyRangeError(f"range {start}..{end} lies outside the method body {body_lo}..{body_hi}")

    bearing = model.body_statement_lines()
    if not any(lo <= ln <= hi for ln in bearing):
        raise EmptyRangeError(f"range {start}..{end} contains no statement-bearing line")

    stmts = model.statements
    expanded = False
    for _ in range(len(stmts) * 2 + 8):
        changed = True
        while changed:
            changed = False
            for s in stmts:
                a, b = s.span.start_line, s.span.end_line
                if (a < lo <= b <= hi) or (lo <= a <= hi < b):
                    lo, hi = min(lo, a), max(hi, b)
                    changed = True
                    expanded = True
        contained = [s for s in stmts if lo <= s.span.start_line and s.span.end_line <= hi]
        contained_ids = {s.id for s in contained}
        maximal = [s for s in contained if s.parent not in contained_ids]
        if not maximal:
            # the range sits strictly inside one statement's interior
            hosts = [s for s in stmts if s.span.start_line <= lo and hi <= s.span.end_line]
            if not hosts:
                return RangeResolution(False, (), None)
            host = min(hosts, key=lambda s: (s.span.end_line - s.span.start_line, -s.id))
            lo, hi = host.span.start_line, host.span.end_line
            expanded = True
            continue
        parents = {s.parent for s in maximal}
        if len(parents) != 1:
            # heterogeneous levels: widen to the union and retry
            lo = min(lo, min(s.span.start_line for s in maximal))
            hi = max(hi, max(s.span.end_line for s in maximal))
            first = min(maximal, key=lambda s: s.id)
            anc = first.parent
            if anc is None:
                return RangeResolution(False, (), None)
            lo = min(lo, stmts[anc].span.start_line)
            hi = max(hi, stmts[anc].span.end_line)
            expanded = True
            continue
        parent = parents.pop()
        sibs = model.root_ids if parent is None else stmts[parent].children
        idxs = [sibs.index(s.id) for s in maximal]
        run = tuple(sibs[min(idxs) : max(idxs) + 1])
        run_lo = min(stmts[r].span.start_line for r in run)
        run_hi = max(stmts[r].span.end_line for r in run)
        sub = model.subtree(run)
        foreign_stmts: set[int] = set()
        foreign_free = True
        for ln in range(run_lo, run_hi + 1):
            for tok_idx in model._line_tokens.get(ln, ()):
                owner = model._owner.get(tok_idx)
                if owner is None:
                    return RangeResolution(False, (), None)
                if owner not in sub:
                    foreign_stmts.add(owner)
                    foreign_free = False
        if foreign_free:
            if not expanded:
                return RangeResolution(True, run, (run_lo, run_hi))
            return RangeResolution(False, run, (run_lo, run_hi))
        for fid in foreign_stmts:
            fs = stmts[fid]
            lo = min(lo, fs.span.start_line)
            hi = max(hi, fs.span.end_line)
        expanded = True
    raise RuntimeError("statement range resolution failed to converge")
