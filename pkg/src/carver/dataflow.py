"""Statement-level control-flow graph and live-variable analysis.

Nodes are statement ids plus synthetic ENTRY/EXIT. Compound statements are
nodes of their own: an if/loop/switch node represents its header evaluation
(carrying the header's def/use facts), a block node is a pass-through.

Exception modeling is conservative: every node in a try block's subtree may
transfer to each catch entry, and everything in the protected region (plus the
catch bodies) may transfer to the finally entry. Such edges are marked
exceptional; liveness treats them like any edge, definite-assignment treats
them as firing before the source statement's writes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .source_model import MethodModel, Statement

ENTRY = -1
EXIT = -2


@dataclass(frozen=True)
class Cfg:
    nodes: tuple[int, ...]
    succ: dict[int, tuple[int, ...]]
    pred: dict[int, tuple[int, ...]]
    loop_back_edges: frozenset[tuple[int, int]]
    exceptional_edges: frozenset[tuple[int, int]]
    unsupported: tuple[int, ...]  # statements with unresolvable labeled jumps

    def successors(self, n: int) -> tuple[int, ...]:
        return self.succ.get(n, ())

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, vs in self.succ.items() for v in vs]


@dataclass(frozen=True)
class LivenessResult:
    live_in: dict[int, frozenset[str]]
    live_out: dict[int, frozenset[str]]


def entry_node(model: MethodModel, sid: int) -> int:
    """The CFG node where control first lands when executing statement sid.

    A do-loop is entered at its body; every other statement at itself.
    """
    s = model.stmt(sid)
    if s.kind == "loop" and s.loop_style == "do":
        return entry_node(model, s.body_id)
    return sid


class _Builder:
    def __init__(self, model: MethodModel) -> None:
        self.model = model
        self.edges: set[tuple[int, int]] = set()
        self.exceptional: set[tuple[int, int]] = set()

    def add(self, u: int, v: int, exceptional: bool = False) -> None:
        self.edges.add((u, v))
        if exceptional:
            self.exceptional.add((u, v))

    def next_node(self, sid: int) -> int:
        """Node receiving control when statement sid completes normally."""
        model = self.model
        s = model.stmt(sid)
        p = s.parent
        if p is None:
            sibs = model.root_ids
            i = sibs.index(sid)
            if i + 1 < len(sibs):
                return entry_node(model, sibs[i + 1])
            return EXIT
        parent = model.stmt(p)
        sibs = parent.children
        i = sibs.index(sid)
        if parent.kind == "switch" and not parent.switch_arrow:
            group_idx = next(g for g, grp in enumerate(parent.switch_groups) if sid in grp)
            grp = parent.switch_groups[group_idx]
            if sid != grp[-1]:
                return entry_node(model, grp[grp.index(sid) + 1])
            for later in parent.switch_groups[group_idx + 1 :]:
                if later:
                    return entry_node(model, later[0])
            return self.next_node(p)
        if i + 1 < len(sibs) and parent.kind not in ("switch", "try", "if"):
            return entry_node(model, sibs[i + 1])
        if parent.kind == "if":
            return self.next_node(p)
        if parent.kind == "loop":
            return p  # back to the header/condition
        if parent.kind == "switch":  # arrow arm completion
            return self.next_node(p)
        if parent.kind == "try":
            # children of try are its block/catch/finally wrappers
            raise AssertionError("try children are wrapper blocks")
        if parent.kind == "block":
            if i + 1 < len(sibs):
                return entry_node(model, sibs[i + 1])
            return self._block_continuation(parent)
        if parent.kind == "other":  # synchronized body
            return self.next_node(p)
        return self.next_node(p)

    def _block_continuation(self, block: Statement) -> int:
        model = self.model
        if block.role in ("tryblock", "catch"):
            tr = model.stmt(block.parent)
            if tr.finally_id is not None:
                return entry_node(model, tr.finally_id)
            return self.next_node(tr.id)
        if block.role == "finally":
            return self.next_node(block.parent)
        return self.next_node(block.id)

    def wire(self, sid: int) -> None:
        model = self.model
        s = model.stmt(sid)
        kind = s.kind
        if kind == "block":
            if s.children:
                self.add(sid, entry_node(model, s.children[0]))
            else:
                self.add(sid, self._block_continuation(s))
            return
        if kind == "if":
            self.add(sid, entry_node(model, s.then_id))
            if s.else_id is not None:
                self.add(sid, entry_node(model, s.else_id))
            else:
                self.add(sid, self.next_node(sid))
            return
        if kind == "loop":
            self.add(sid, entry_node(model, s.body_id))
            if _loop_exits_normally(model, s):
                self.add(sid, self.next_node(sid))
            return
        if kind == "switch":
            entries = [entry_node(model, grp[0]) for grp in s.switch_groups if grp]
            for e in entries:
                self.add(sid, e)
            if not s.switch_has_default or not entries:
                self.add(sid, self.next_node(sid))
            # empty colon groups fall through into the next non-empty group,
            # which the group-entry edges above already cover
            return
        if kind == "try":
            block = model.stmt(s.try_block_id)
            if block.children:
                self.add(sid, entry_node(model, block.children[0]))
            else:
                self.add(sid, self._block_continuation(block))
            protected = sorted(model.descendants(s.try_block_id)) + [sid]
            for cid in s.catch_ids:
                for n in protected:
                    self.add(n, cid, exceptional=True)
            if s.finally_id is not None:
                fin = entry_node(model, s.finally_id)
                sources = set(protected)
                for cid in s.catch_ids:
                    sources |= model.descendants(cid)
                for n in sorted(sources):
                    if n != s.finally_id:
                        self.add(n, fin, exceptional=True)
            return
        if kind in ("return", "throw"):
            self.add(sid, EXIT)
            return
        if kind in ("break", "continue"):
            j = s.jump
            if j is None or j.unresolved or j.target is None:
                self.add(sid, EXIT)
                return
            if j.kind == "break":
                self.add(sid, self.next_node(j.target))
            else:
                self.add(sid, j.target)
            return
        if kind == "other" and s.body_id is not None:  # synchronized
            self.add(sid, entry_node(model, s.body_id))
            return
        # declaration / expression / plain other
        self.add(sid, self.next_node(sid))


def _loop_exits_normally(model: MethodModel, s: Statement) -> bool:
    """False only when the loop condition can never be false: an empty for
    condition or a literal true. Such loops leave only through jumps, so the
    header gets no fall-through edge and code after an always-true loop is
    modeled as unreachable."""
    if s.loop_style == "foreach":
        return True
    toks = model.unit.tokens
    if s.loop_style == "do":
        # condition parens sit at the back: } while ( cond ) ;
        hi = s.tok_hi
        while hi > s.tok_lo and toks[hi].text != ")":
            hi -= 1
        depth = 0
        lo = hi
        while lo > s.tok_lo:
            if toks[lo].text == ")":
                depth += 1
            elif toks[lo].text == "(":
                depth -= 1
                if depth == 0:
                    break
            lo -= 1
        cond = [t.text for t in toks[lo + 1 : hi]]
        return cond != ["true"]
    lo = s.tok_lo
    while lo <= s.tok_hi and toks[lo].text != "(":
        lo += 1
    depth = 0
    hi = lo
    while hi <= s.tok_hi:
        if toks[hi].text == "(":
            depth += 1
        elif toks[hi].text == ")":
            depth -= 1
            if depth == 0:
                break
        hi += 1
    inner = toks[lo + 1 : hi]
    if s.loop_style == "while":
        return [t.text for t in inner] != ["true"]
    # for: the condition is the middle of the two top-level semicolons
    sections: list[list[str]] = [[]]
    depth = 0
    for t in inner:
        if t.text in ("(", "["):
            depth += 1
        elif t.text in (")", "]"):
            depth -= 1
        if t.text == ";" and depth == 0:
            sections.append([])
        else:
            sections[-1].append(t.text)
    cond = sections[1] if len(sections) >= 2 else ["missing"]
    return bool(cond) and cond != ["true"]


def build_cfg(model: MethodModel) -> Cfg:
    b = _Builder(model)
    if model.root_ids:
        b.add(ENTRY, entry_node(model, model.root_ids[0]))
    else:
        b.add(ENTRY, EXIT)
    for s in model.statements:
        b.wire(s.id)

    back: set[tuple[int, int]] = set()
    for s in model.statements:
        if s.kind != "loop":
            continue
        if s.loop_style == "do":
            e = (s.id, entry_node(model, s.body_id))
            if e in b.edges:
                back.add(e)
        else:
            sub = model.descendants(s.id)
            for u, v in b.edges:
                if v == s.id and u in sub:
                    back.add((u, v))

    succ: dict[int, list[int]] = {}
    pred: dict[int, list[int]] = {}
    for u, v in sorted(b.edges):
        succ.setdefault(u, []).append(v)
        pred.setdefault(v, []).append(u)
    nodes = tuple([ENTRY, EXIT] + [s.id for s in model.statements])
    return Cfg(
        nodes=nodes,
        succ={k: tuple(v) for k, v in succ.items()},
        pred={k: tuple(v) for k, v in pred.items()},
        loop_back_edges=frozenset(back),
        exceptional_edges=frozenset(b.exceptional),
        unsupported=model.unsupported_jumps,
    )


# ---------------------------------------------------------------------------
# liveness


def solve_backward(
    nodes: list[int],
    succ: dict[int, tuple[int, ...]],
    uses: dict[int, frozenset[str]],
    defs: dict[int, frozenset[str]],
) -> tuple[dict[int, frozenset[str]], dict[int, frozenset[str]]]:
    """Generic backward may-analysis fixed point over an explicit graph."""
    live_in: dict[int, frozenset[str]] = {n: frozenset() for n in nodes}
    live_out: dict[int, frozenset[str]] = {n: frozenset() for n in nodes}
    work = list(nodes)
    pred: dict[int, list[int]] = {n: [] for n in nodes}
    for u, vs in succ.items():
        for v in vs:
            if v in pred:
                pred[v].append(u)
    in_work = set(work)
    while work:
        n = work.pop()
        in_work.discard(n)
        out = frozenset().union(*(live_in[v] for v in succ.get(n, ()) if v in live_in)) if succ.get(n) else frozenset()
        inn = uses.get(n, frozenset()) | (out - defs.get(n, frozenset()))
        live_out[n] = out
        if inn != live_in[n]:
            live_in[n] = inn
            for p in pred[n]:
                if p not in in_work:
                    work.append(p)
                    in_work.add(p)
    return live_in, live_out


def liveness(cfg: Cfg, model: MethodModel) -> LivenessResult:
    nodes = list(cfg.nodes)
    uses = {s.id: s.uses for s in model.statements}
    defs = {s.id: s.defs for s in model.statements}
    uses[ENTRY] = frozenset()
    uses[EXIT] = frozenset()
    defs[ENTRY] = frozenset()
    defs[EXIT] = frozenset()
    live_in, live_out = solve_backward(nodes, cfg.succ, uses, defs)
    return LivenessResult(live_in=live_in, live_out=live_out)


# ---------------------------------------------------------------------------
# fragment analysis


@dataclass(frozen=True)
class FragmentFlow:
    """Control-flow facts about an aligned fragment, shared by the validator
    and the extractor."""

    subtree: frozenset[int]
    entry: int
    reachable: frozenset[int]  # nodes reachable from entry staying inside the fragment
    leaks: tuple[tuple[int, int], ...]  # edges (u, v) with u in fragment, v outside
    normal_leaks: tuple[tuple[int, int], ...]  # leaks not explained by return/throw
    has_return: bool
    all_paths_return: bool


def fragment_flow(model: MethodModel, cfg: Cfg, fragment: tuple[int, ...]) -> FragmentFlow:
    if not fragment:
        raise ValueError("empty fragment")
    parent = model.stmt(fragment[0]).parent
    sibs = model.root_ids if parent is None else model.stmt(parent).children
    idx = [sibs.index(f) for f in fragment]
    if any(model.stmt(f).parent != parent for f in fragment) or idx != list(range(idx[0], idx[0] + len(idx))):
        raise ValueError("fragment is not a contiguous sibling sequence")

    sub = frozenset(model.subtree(fragment))
    entry = entry_node(model, fragment[0])
    reachable: set[int] = set()
    stack = [entry]
    while stack:
        n = stack.pop()
        if n in reachable or n not in sub:
            continue
        reachable.add(n)
        for v in cfg.successors(n):
            if v in sub and v not in reachable:
                stack.append(v)

    leaks: list[tuple[int, int]] = []
    normal_leaks: list[tuple[int, int]] = []
    for u in sorted(sub):
        for v in cfg.successors(u):
            if v in sub:
                continue
            leaks.append((u, v))
            s = model.stmt(u)
            if v == EXIT and s.kind in ("return", "throw"):
                continue
            normal_leaks.append((u, v))

    has_return = any(model.stmt(n).kind == "return" for n in sub)
    reachable_normal = [e for e in normal_leaks if e[0] in reachable]
    all_paths_return = has_return and not reachable_normal
    return FragmentFlow(
        subtree=sub,
        entry=entry,
        reachable=frozenset(reachable),
        leaks=tuple(leaks),
        normal_leaks=tuple(normal_leaks),
        has_return=has_return,
        all_paths_return=all_paths_return,
    )


def declared_before(model: MethodModel, name: str, fragment_first: int) -> bool:
    """True when `name` is a parameter or has a declaration preceding the fragment."""
    if any(p.name == name for p in model.params):
        return True
    first = model.stmt(fragment_first).span
    for decl in model.locals.get(name, ()):
        dspan = model.stmt(decl.stmt_id).span
        if (dspan.start_line, dspan.start_col) < (first.start_line, first.start_col):
            return True
    return False


def fragment_io(
    model: MethodModel,
    cfg: Cfg,
    live: LivenessResult,
    fragment: tuple[int, ...] | list[int],
) -> tuple[frozenset[str], frozenset[str]]:
    """(inputs, outputs) for an aligned sibling fragment.

    inputs: live at fragment entry, used inside, declared before (or params).
    outputs: defined or declared inside, live on some edge leaving the
    fragment. Every leak edge counts, reachable or not: the validator's
    decisions about unreachable trailing code depend on this being the
    pessimistic set.
    """
    fragment = tuple(fragment)
    flow = fragment_flow(model, cfg, fragment)
    used_inside: set[str] = set()
    defined_inside: set[str] = set()
    for sid in flow.subtree:
        s = model.stmt(sid)
        used_inside |= s.uses
        defined_inside |= s.defs
        defined_inside |= {v.name for v in s.declared}

    live_at_entry = live.live_in.get(flow.entry, frozenset())
    inputs = frozenset(
        v for v in live_at_entry & used_inside if declared_before(model, v, fragment[0])
    )

    live_after: set[str] = set()
    for _, v in flow.leaks:
        if v != EXIT:
            live_after |= live.live_in.get(v, frozenset())
    outputs = frozenset(defined_inside & live_after)
    return inputs, outputs


def must_assign_at_leaks(
    model: MethodModel,
    cfg: Cfg,
    flow: FragmentFlow,
    name: str,
) -> bool:
    """True when `name` is definitely assigned on every reachable normal exit
    of the fragment. Exceptional edges count as firing before the source
    statement's writes."""
    # forward must-analysis, greatest fixed point: start optimistic (True)
    # everywhere but the entry and shrink until stable. in(n) = AND over
    # reachable preds of the per-edge out value.
    assigned: dict[int, bool] = {n: n != flow.entry for n in flow.reachable}
    changed = True
    while changed:
        changed = False
        for n in sorted(flow.reachable):
            if n == flow.entry:
                continue
            preds_in = [
                assigned[p] or (name in model.stmt(p).defs and (p, n) not in cfg.exceptional_edges)
                for p in cfg.pred.get(n, ())
                if p in flow.reachable
            ]
            inn = all(preds_in) if preds_in else False
            if inn != assigned[n]:
                assigned[n] = inn
                changed = True
    for u, v in flow.normal_leaks:
        if u not in flow.reachable:
            continue
        if (u, v) in cfg.exceptional_edges:
            ok = assigned[u]
        else:
            ok = assigned[u] or name in model.stmt(u).defs
        if not ok:
            return False
    return True
