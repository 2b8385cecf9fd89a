"""Statement tree construction, method location, and line-range resolution."""

from __future__ import annotations

import pytest

from carver.errors import AmbiguousMethodError, EmptyRangeError, MethodNotFoundError, ParseError
from carver.source_model import locate_method, parse_unit, statements_in_range, unit_methods

from conftest import analyzed, snippet_model, unit_for


def test_every_zoo_method_parses(zoo_dir):
    names = []
    for path in sorted(zoo_dir.glob("*.java")):
        unit = unit_for(str(path))
        for raw in unit_methods(unit):
            model = locate_method(unit, raw.decl_line)
            assert model.statements, f"{path.name}:{raw.name} produced an empty body model"
            names.append(raw.name)
    assert len(names) >= 20


def test_method_counts_per_zoo_file(zoo_dir):
    # one constructor in SyntaxZoo plus the named methods
    counts = {
        "ControlFlowZoo.java": 13,
        "ExceptionZoo.java": 8,
        "SyntaxZoo.java": 18,
    }
    for name, expected in counts.items():
        unit = unit_for(str(zoo_dir / name))
        assert len(unit_methods(unit)) == expected, name


def test_locate_by_name_line_and_failures(zoo_dir):
    unit = unit_for(str(zoo_dir / "ControlFlowZoo.java"))
    by_name = locate_method(unit, "firstIndexOf")
    by_line = locate_method(unit, by_name.decl_line)
    assert by_line.name == "firstIndexOf"
    inner_line = by_name.decl_line + 2
    assert locate_method(unit, inner_line).name == "firstIndexOf"
    with pytest.raises(MethodNotFoundError):
        locate_method(unit, "noSuchMethod")
    with pytest.raises(MethodNotFoundError):
        locate_method(unit, 100000)


def test_overloads_are_ambiguous_by_name(zoo_dir):
    unit = unit_for(str(zoo_dir / "SyntaxZoo.java"))
    with pytest.raises(AmbiguousMethodError):
        locate_method(unit, "clamp")


def test_unbalanced_source_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_unit("class X { void f() { if (a) { } }", "bad")


def test_statement_tree_spans_nest(zoo_dir):
    for path in sorted(zoo_dir.glob("*.java")):
        unit = unit_for(str(path))
        for raw in unit_methods(unit):
            model = locate_method(unit, raw.decl_line)
            for s in model.statements:
                if s.parent is not None:
                    p = model.stmt(s.parent)
                    assert p.span.start_line <= s.span.start_line
                    assert s.span.end_line <= p.span.end_line
                for c in s.children:
                    assert model.stmt(c).parent == s.id


def test_token_owner_is_innermost_statement(zoo_dir):
    """Regression: tokens inside nested statements must belong to the nested
    statement, not to the enclosing loop or if that was built first."""
    for path in sorted(zoo_dir.glob("*.java")):
        unit = unit_for(str(path))
        for raw in unit_methods(unit):
            model = locate_method(unit, raw.decl_line)
            for s in model.statements:
                for t in range(s.tok_lo, s.tok_hi + 1):
                    owner = model.token_owner(t)
                    assert owner is not None
                    containing = [
                        c.id
                        for c in model.statements
                        if c.tok_lo <= t <= c.tok_hi
                    ]
                    # statements containing a token form a nesting chain, so
                    # the one with the narrowest token window is innermost
                    innermost = min(containing, key=lambda sid: model.stmt(sid).tok_hi - model.stmt(sid).tok_lo)
                    assert owner == innermost, (path.name, raw.name, t, owner, containing)


# ---------------------------------------------------------------------------
# statements_in_range on a small worked example
#
#   line 3: int total = 0;
#   line 4: int i = 0;
#   line 5: for (int k = 0; k < a; k++) {
#   line 6:     if (k == b) {
#   line 7:         continue;
#   line 8:     }
#   line 9:     total += k;
#   line 10:    i++;
#   line 11: }
#   line 12: return total + i;

TALLY = [
    "int total = 0;",
    "int i = 0;",
    "for (int k = 0; k < a; k++) {",
    "    if (k == b) {",
    "        continue;",
    "    }",
    "    total += k;",
    "    i++;",
    "}",
    "return total + i;",
]


@pytest.fixture(scope="module")
def tally():
    return snippet_model(TALLY)


def test_exact_statement_is_resolved(tally):
    model, _, _ = tally
    res = statements_in_range(model, 7, 7)
    assert res.aligned
    assert res.span == (7, 7)
    assert [model.stmt(i).kind for i in res.ids] == ["continue"]


def test_range_straddling_one_boundary_expands(tally):
    model, _, _ = tally
    # 6..8 covers the if exactly; 6..9 straddles the if's lower neighbor
    res = statements_in_range(model, 6, 8)
    assert res.aligned and res.span == (6, 8)
    res = statements_in_range(model, 6, 9)
    assert res.aligned
    assert res.span == (6, 9)
    assert [model.stmt(i).span.start_line for i in res.ids] == [6, 9]


def test_range_cutting_into_loop_reports_enclosing_run(tally):
    model, _, _ = tally
    # 4..6 ends inside the loop, so the exact run does not exist; the
    # resolution carries the smallest enclosing run (decl + whole loop)
    # and flags that expansion happened
    res = statements_in_range(model, 4, 6)
    assert not res.aligned
    assert res.span == (4, 11)
    assert [model.stmt(i).span.start_line for i in res.ids] == [4, 5]


def test_sibling_run_inside_loop_body(tally):
    model, _, _ = tally
    res = statements_in_range(model, 9, 10)
    assert res.aligned and res.span == (9, 10)
    assert len(res.ids) == 2


def test_range_outside_body_is_empty(tally):
    model, _, _ = tally
    with pytest.raises(EmptyRangeError):
        statements_in_range(model, 100, 120)


def test_range_covering_blank_free_body_lines_only(tally):
    model, _, _ = tally
    res = statements_in_range(model, 3, 12)
    assert res.aligned
    assert res.span == (3, 12)
    assert list(res.ids) == list(model.root_ids)


def test_packed_statements_share_a_line(zoo_dir):
    """Two statements on one physical line resolve to the two-statement run."""
    unit = unit_for(str(zoo_dir / "SyntaxZoo.java"))
    model = locate_method(unit, "packed")
    packed_line = next(
        s.span.start_line
        for s in model.statements
        if sum(1 for t in model.statements if t.span.start_line == s.span.start_line and t.parent == s.parent) > 1
    )
    res = statements_in_range(model, packed_line, packed_line)
    assert res.aligned
    assert len(res.ids) >= 2


def test_body_statement_lines_excludes_signature(tally):
    model, _, _ = tally
    lines = model.body_statement_lines()
    assert 2 not in lines  # signature
    assert 3 in lines and 12 in lines


def test_unit_digest_is_stable_and_content_sensitive(zoo_dir):
    a = unit_for(str(zoo_dir / "SyntaxZoo.java"))
    b = parse_unit(a.text, a.path)
    assert a.digest() == b.digest()
    c = parse_unit(a.text + "\n// tail\n", a.path)
    assert c.digest() != a.digest()
