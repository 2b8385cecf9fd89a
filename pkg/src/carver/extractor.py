"""Turn a chosen fragment into an ExtractPlan and apply it to the source.

Edits are line-granular: the fragment's lines are replaced by one call line,
and the new method is inserted immediately after the host method with the
host's indentation. Everything outside the two edit sites stays byte-for-byte
identical. apply() re-parses its own output and checks the moved statements
survived verbatim; any discrepancy is raised as RenderError rather than
returned.
"""

from __future__ import annotations

import difflib
from dataclasses import dataclass

from .dataflow import Cfg, LivenessResult, fragment_flow, fragment_io
from .errors import PlanConflictError, RenderError, StaleUnitError
from .ranking import RankedGroup
from .source_model import MethodModel, SourceUnit, locate_method, parse_unit


@dataclass(frozen=True)
class ExtractPlan:
    fragment: tuple[int, ...]
    new_name: str
    parameters: tuple[tuple[str, str], ...]  # (name, declared type text), ordered by first use
    return_variable: tuple[str, str] | None  # (name, declared type text)
    return_declared_inside: bool
    all_paths_return: bool
    return_type: str  # of the synthesized method
    visibility_and_modifiers: str
    exceptions_clause: str  # host's throws list, may be empty
    fragment_span: tuple[int, int]
    host_name: str
    host_return_type: str
    unit_digest: str

    def signature_preview(self) -> str:
        params = ", ".join(f"{t} {n}" for n, t in self.parameters)
        throws = f" throws {self.exceptions_clause}" if self.exceptions_clause else ""
        return f"{self.visibility_and_modifiers} {self.return_type} {self.new_name}({params}){throws}"


@dataclass(frozen=True)
class EditScript:
    replacements: tuple[tuple[int, int, str], ...]  # (start, end, text), disjoint, sorted
    diff: str

    def apply_to(self, text: str) -> str:
        prev_end = 0
        parts: list[str] = []
        for start, end, repl in self.replacements:
            if start < prev_end:
                raise ValueError("overlapping replacements")
            parts.append(text[prev_end:start])
            parts.append(repl)
            prev_end = end
        parts.append(text[prev_end:])
        return "".join(parts)


def _indent_of(line_text: str) -> str:
    return line_text[: len(line_text) - len(line_text.lstrip())] if line_text.strip() else ""


def _declaration_position(model: MethodModel, decl_stmt_id: int) -> tuple[int, int]:
    span = model.stmt(decl_stmt_id).span
    return (span.start_line, span.start_col)


def _declared_type(model: MethodModel, name: str, limit: tuple[int, int]) -> tuple[str, int] | None:
    """Latest declaration of `name` at or before `limit` -> (type text, stmt id)."""
    best: tuple[tuple[int, int], str, int] | None = None
    for decl in model.locals.get(name, ()):
        pos = _declaration_position(model, decl.stmt_id)
        if pos <= limit and (best is None or pos > best[0]):
            best = (pos, decl.type_text, decl.stmt_id)
    if best is None:
        return None
    return best[1], best[2]


def plan(model: MethodModel, cfg: Cfg, live: LivenessResult, group: RankedGroup) -> ExtractPlan:
    """Deterministic plan for a validated, useful group."""
    fragment = tuple(group.fragment)
    name = group.representative_name
    flow = fragment_flow(model, cfg, fragment)
    inputs, outputs = fragment_io(model, cfg, live, fragment)

    first_stmt = model.stmt(fragment[0])
    frag_start = (first_stmt.span.start_line, first_stmt.span.start_col)
    last_stmt = model.stmt(fragment[-1])
    frag_end = (last_stmt.span.end_line, last_stmt.span.end_col)

    # order parameters by first read position inside the fragment
    first_seen: dict[str, int] = {}
    for sid in sorted(flow.subtree):
        for occ in model.stmt(sid).occurrences:
            if occ.name in inputs and occ.is_use and occ.name not in first_seen:
                first_seen.setdefault(occ.name, occ.tok_index)
    for v in inputs:
        first_seen.setdefault(v, 10**9)
    ordered_inputs = sorted(inputs, key=lambda v: (first_seen[v], v))

    params: list[tuple[str, str]] = []
    for v in ordered_inputs:
        found = _declared_type(model, v, frag_start)
        if found is not None:
            params.append((v, found[0]))
        else:
            ptype = next((p.type_text for p in model.params if p.name == v), None)
            params.append((v, ptype if ptype is not None else "Object"))

    return_variable = None
    return_declared_inside = False
    host_ret = model.return_type if not model.is_constructor else "void"
    if flow.all_paths_return:
        ret_type = host_ret
    elif outputs:
        out = next(iter(outputs))
        found = _declared_type(model, out, frag_end)
        if found is not None:
            out_type, decl_sid = found
            return_declared_inside = decl_sid in flow.subtree
        else:
            out_type = next((p.type_text for p in model.params if p.name == out), "Object")
        return_variable = (out, out_type)
        ret_type = out_type
    else:
        ret_type = "void"

    arity = len(params)
    if (name, arity) in model.sibling_method_arities:
        raise PlanConflictError(f"{name}({arity} args) collides with an existing method of {model.type_name}")

    mods = "private static" if model.is_static else "private"
    return ExtractPlan(
        fragment=fragment,
        new_name=name,
        parameters=tuple(params),
        return_variable=return_variable,
        return_declared_inside=return_declared_inside,
        all_paths_return=flow.all_paths_return,
        return_type=ret_type,
        visibility_and_modifiers=mods,
        exceptions_clause=model.throws_text,
        fragment_span=(first_stmt.span.start_line, last_stmt.span.end_line),
        host_name=model.name,
        host_return_type=host_ret,
        unit_digest=model.unit.digest(),
    )


def _call_line(plan_: ExtractPlan) -> str:
    args = ", ".join(n for n, _ in plan_.parameters)
    call = f"{plan_.new_name}({args})"
    if plan_.all_paths_return:
        if plan_.host_return_type == "void":
            return f"{call}; return;"
        return f"return {call};"
    if plan_.return_variable is not None:
        rname, rtype = plan_.return_variable
        if plan_.return_declared_inside:
            return f"{rtype} {rname} = {call};"
        return f"{rname} = {call};"
    return f"{call};"


def apply(unit: SourceUnit, model: MethodModel, plan_: ExtractPlan) -> tuple[str, EditScript]:
    """Perform the extraction. Returns the new text and the edit script."""
    if unit.digest() != plan_.unit_digest:
        raise StaleUnitError(f"{unit.path} changed since the plan was computed")

    span_lo, span_hi = plan_.fragment_span
    host_indent = _indent_of(unit.line_text(model.decl_line))
    first_root = model.stmt(model.root_ids[0])
    body_probe = _indent_of(unit.line_text(first_root.span.start_line))
    unit_indent = body_probe[len(host_indent) :] if body_probe.startswith(host_indent) and len(body_probe) > len(host_indent) else "    "
    call_indent = _indent_of(unit.line_text(span_lo)) or host_indent + unit_indent

    frag_lines = [unit.line_text(ln) for ln in range(span_lo, span_hi + 1)]
    nonblank = [ln for ln in frag_lines if ln.strip()]
    strip_width = min(len(_indent_of(ln)) for ln in nonblank) if nonblank else 0
    new_body_indent = host_indent + unit_indent
    body_lines = [new_body_indent + ln[strip_width:] if ln.strip() else "" for ln in frag_lines]
    if plan_.return_variable is not None:
        body_lines.append(f"{new_body_indent}return {plan_.return_variable[0]};")

    sig = f"{host_indent}{plan_.signature_preview()} {{"
    method_block = "\n" + sig + "\n" + "".join(ln + "\n" for ln in body_lines) + host_indent + "}" + "\n"

    call_text = call_indent + _call_line(plan_) + "\n"
    r1 = (unit.line_start_offset(span_lo), unit.line_end_offset(span_hi), call_text)
    insert_at = unit.line_end_offset(model.close_line)
    prefix = "" if insert_at == 0 or unit.text[insert_at - 1] == "\n" else "\n"
    r2 = (insert_at, insert_at, prefix + method_block)

    script = EditScript(replacements=(r1, r2), diff="")
    new_text = script.apply_to(unit.text)
    label = unit.path.lstrip("/")
    diff = "".join(
        difflib.unified_diff(
            unit.text.splitlines(keepends=True),
            new_text.splitlines(keepends=True),
            fromfile=f"a/{label}",
            tofile=f"b/{label}",
            n=3,
        )
    )
    script = EditScript(replacements=(r1, r2), diff=diff)

    _check_render(unit, model, plan_, new_text, span_lo, span_hi, frag_lines)
    return new_text, script


def _check_render(
    unit: SourceUnit,
    model: MethodModel,
    plan_: ExtractPlan,
    new_text: str,
    span_lo: int,
    span_hi: int,
    frag_lines: list[str],
) -> None:
    try:
        new_unit = parse_unit(new_text, unit.path)
    except Exception as exc:
        raise RenderError(f"refactored source failed to parse: {exc}") from exc

    removed = span_hi - span_lo  # fragment lines replaced by one call line
    new_decl_line = model.close_line - removed + 2
    try:
        new_model = locate_method(new_unit, new_decl_line)
    except Exception as exc:
        raise RenderError(f"cannot locate the synthesized method: {exc}") from exc
    if new_model.name != plan_.new_name:
        raise RenderError(f"expected {plan_.new_name!r} at line {new_decl_line}, found {new_model.name!r}")

    expected = [ln.strip() for ln in frag_lines if ln.strip()]
    if plan_.return_variable is not None:
        expected.append(f"return {plan_.return_variable[0]};")
    got = [
        new_unit.line_text(ln).strip()
        for ln in range(new_model.open_line + 1, new_model.close_line)
        if new_unit.line_text(ln).strip()
    ]
    if got != expected:
        raise RenderError("synthesized method body does not match the fragment verbatim")


def roundtrip_io(new_text: str, path: str, new_name: str, decl_line: int) -> tuple[frozenset[str], frozenset[str]]:
    """fragment_io of the synthesized method's whole body against its own model
    (used by the round-trip analysis invariant)."""
    from .dataflow import build_cfg, liveness

    new_unit = parse_unit(new_text, path)
    new_model = locate_method(new_unit, decl_line)
    if new_model.name != new_name:
        raise RenderError(f"expected {new_name!r} at line {decl_line}")
    cfg = build_cfg(new_model)
    live = liveness(cfg, new_model)
    if not new_model.root_ids:
        return frozenset(), frozenset()
    return fragment_io(new_model, cfg, live, new_model.root_ids)
