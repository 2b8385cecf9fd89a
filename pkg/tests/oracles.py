"""Independent reference implementations used to cross-check the package.

Everything here recomputes a result by a deliberately different route than
the production code: liveness by simple-path enumeration instead of a
fixed point, fragment verdicts by walking the statement tree directly, and
t-distribution tail areas by numeric integration instead of scipy. Agreement
between the two routes is what the tests assert.
"""

from __future__ import annotations

import math

ENTRY = -1
EXIT = -2


# ---------------------------------------------------------------------------
# liveness by simple-path enumeration
#
# v is live entering n iff some path from n reaches a use of v with no
# intervening definition. Any such path can be trimmed to a simple path
# (removing a cycle removes only potential definitions), so a visited-set
# DFS is exact, not an approximation.


def _live_here(node: int, var: str, succ: dict[int, tuple[int, ...]],
               uses: dict[int, frozenset[str]], defs: dict[int, frozenset[str]],
               visited: frozenset[int]) -> bool:
    if var in uses.get(node, frozenset()):
        return True
    if var in defs.get(node, frozenset()):
        return False
    if node in visited:
        return False
    nxt = visited | {node}
    return any(_live_here(s, var, succ, uses, defs, nxt) for s in succ.get(node, ()))


def path_liveness(nodes, succ, uses, defs):
    """(live_in, live_out) per node, by path enumeration."""
    vocab = set()
    for n in nodes:
        vocab |= uses.get(n, frozenset()) | defs.get(n, frozenset())
    live_in = {}
    live_out = {}
    for n in nodes:
        live_in[n] = frozenset(v for v in vocab if _live_here(n, v, succ, uses, defs, frozenset()))
    for n in nodes:
        live_out[n] = frozenset().union(*(live_in[s] for s in succ.get(n, ()))) if succ.get(n) else frozenset()
    return live_in, live_out


def model_path_liveness(cfg, model):
    uses = {s.id: s.uses for s in model.statements}
    defs = {s.id: s.defs for s in model.statements}
    for synthetic in (ENTRY, EXIT):
        uses[synthetic] = frozenset()
        defs[synthetic] = frozenset()
    return path_liveness(list(cfg.nodes), cfg.succ, uses, defs)


# ---------------------------------------------------------------------------
# exhaustive fragment enumeration and an independent verdict


def aligned_runs(model):
    """Every contiguous sibling run, as (ids, lo_line, hi_line)."""
    parents = {s.parent for s in model.statements}
    out = []
    for parent in sorted(parents, key=lambda p: -1 if p is None else p):
        sibs = model.root_ids if parent is None else model.stmt(parent).children
        for i in range(len(sibs)):
            for j in range(i, len(sibs)):
                run = sibs[i : j + 1]
                lo = model.stmt(run[0]).span.start_line
                hi = max(model.stmt(r).span.end_line for r in run)
                out.append((run, lo, hi))
    return out


def line_denotable(model, ids, lo, hi):
    """True when the line range [lo, hi] denotes exactly this run: every
    token on those lines belongs to a statement of the run's subtree. A run
    sharing lines with siblings or enclosing syntax has no denoting range."""
    windows = [(model.stmt(i).tok_lo, model.stmt(i).tok_hi) for i in ids]
    for idx, tok in enumerate(model.unit.tokens):
        if tok.end_line < lo or tok.line > hi:
            continue
        if not any(a <= idx <= b for a, b in windows):
            return False
    return True


def _own_subtree(model, ids):
    out = set()
    stack = list(ids)
    while stack:
        sid = stack.pop()
        out.add(sid)
        stack.extend(model.stmt(sid).children)
    return out


def _jump_target_by_walk(model, sid, kind, label):
    """Resolve a break/continue target by climbing the parent chain."""
    cur = model.stmt(sid).parent
    while cur is not None:
        s = model.stmt(cur)
        if label is not None:
            if s.label == label:
                return cur
        elif kind == "continue" and s.kind == "loop":
            return cur
        elif kind == "break" and s.kind in ("loop", "switch"):
            return cur
        cur = s.parent
    return None


def _entry_of(model, sid):
    s = model.stmt(sid)
    if s.kind == "loop" and s.loop_style == "do":
        return _entry_of(model, s.body_id)
    return sid


def _reachable_normal_leak(model, cfg, sub, node, visited):
    """Does any simple path from node cross a fragment edge not explained by
    return/throw straight to the method exit?"""
    if node in visited:
        return False
    nxt = visited | {node}
    for succ in cfg.successors(node):
        if succ in sub:
            if _reachable_normal_leak(model, cfg, sub, succ, nxt):
                return True
        else:
            if not (succ == EXIT and model.stmt(node).kind in ("return", "throw")):
                return True
    return False


def _unassigned_leak_path(model, cfg, sub, node, name, assigned, visited):
    """Can execution reach a non-return fragment exit without assigning name?
    Exceptional edges fire before the source statement's writes, so the def
    only counts on non-exceptional edges."""
    if node in visited:
        return False
    nxt = visited | {node}
    defs_here = name in model.stmt(node).defs
    for succ in cfg.successors(node):
        exceptional = (node, succ) in cfg.exceptional_edges
        now_assigned = assigned or (defs_here and not exceptional)
        if succ in sub:
            if _unassigned_leak_path(model, cfg, sub, succ, name, now_assigned, nxt):
                return True
        else:
            is_return_exit = succ == EXIT and model.stmt(node).kind in ("return", "throw")
            if not is_return_exit and not now_assigned:
                return True
    return False


def independent_verdict(model, cfg, run, live_in=None):
    """Verdict for an aligned sibling run: a rejection category or 'valid'.

    Recomputes every control-flow and data-flow precondition from scratch:
    jump targets by parent-chain walk, return coverage and definite
    assignment by simple-path search, and liveness by path enumeration.
    Pass live_in to reuse one path-liveness computation across many runs.
    """
    sub = _own_subtree(model, run)
    for sid in sorted(sub):
        s = model.stmt(sid)
        if s.jump is None or s.jump.kind not in ("break", "continue"):
            continue
        target = _jump_target_by_walk(model, sid, s.jump.kind, _label_text(model, sid))
        if target is None or target not in sub:
            return "jump_crosses_boundary"

    entry = _entry_of(model, run[0])
    has_return = any(model.stmt(n).kind == "return" for n in sub)
    leaks_normally = _reachable_normal_leak(model, cfg, sub, entry, frozenset())
    all_paths_return = has_return and not leaks_normally
    if has_return and not all_paths_return:
        return "conditional_return"

    if live_in is None:
        live_in, _ = model_path_liveness(cfg, model)
    used_inside = frozenset().union(*(model.stmt(n).uses for n in sub))
    defined_inside = frozenset().union(
        *(model.stmt(n).defs | {d.name for d in model.stmt(n).declared} for n in sub)
    )
    inputs = frozenset(
        v
        for v in live_in[entry] & used_inside
        if _declared_before_walk(model, v, run[0])
    )
    leak_targets = {
        v
        for u in sub
        for v in cfg.successors(u)
        if v not in sub and v != EXIT
    }
    outputs = defined_inside & frozenset().union(*(live_in[t] for t in leak_targets)) if leak_targets else frozenset()

    if len(outputs) > 1:
        return "multiple_outputs"
    if len(outputs) == 1:
        out = next(iter(outputs))
        if all_paths_return:
            return "multiple_outputs"
        if out not in inputs and _unassigned_leak_path(model, cfg, sub, entry, out, False, frozenset()):
            return "multiple_outputs"
    return "valid"


def _label_text(model, sid):
    """The label written on the jump itself, read back from the tokens."""
    s = model.stmt(sid)
    toks = model.unit.tokens[s.tok_lo : s.tok_hi + 1]
    words = [t.text for t in toks if t.kind == "ident"]
    return words[0] if words else None


def _declared_before_walk(model, name, first_sid):
    if any(p.name == name for p in model.params):
        return True
    first = model.stmt(first_sid).span
    for s in model.statements:
        for d in s.declared:
            if d.name == name and (s.span.start_line, s.span.start_col) < (first.start_line, first.start_col):
                return True
    return False


# ---------------------------------------------------------------------------
# two-sided t-distribution p-value by adaptive Simpson integration


def _t_pdf(x: float, dof: int) -> float:
    log_num = math.lgamma((dof + 1) / 2.0)
    log_den = math.lgamma(dof / 2.0) + 0.5 * math.log(dof * math.pi)
    log_kernel = -((dof + 1) / 2.0) * math.log1p(x * x / dof)
    return math.exp(log_num - log_den + log_kernel)


def _simpson(f, a: float, b: float, fa: float, fm: float, fb: float, eps: float, depth: int) -> float:
    m = (a + b) / 2.0
    lm = (a + m) / 2.0
    rm = (m + b) / 2.0
    flm = f(lm)
    frm = f(rm)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    if depth <= 0 or abs(left + right - whole) < 15.0 * eps:
        return left + right + (left + right - whole) / 15.0
    return _simpson(f, a, m, fa, flm, fm, eps / 2.0, depth - 1) + _simpson(
        f, m, b, fm, frm, fb, eps / 2.0, depth - 1
    )


def t_two_sided_p(t: float, dof: int) -> float:
    """P(|T| >= |t|) for T ~ t(dof), via 1 - 2*integral(pdf, 0, |t|)."""
    if math.isinf(t):
        return 0.0
    hi = abs(t)
    if hi == 0.0:
        return 1.0
    f = lambda x: _t_pdf(x, dof)
    area = _simpson(f, 0.0, hi, f(0.0), f(hi / 2.0), f(hi), 1e-14, 40)
    return max(0.0, min(1.0, 1.0 - 2.0 * area))
