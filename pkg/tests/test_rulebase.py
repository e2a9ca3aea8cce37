import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from parafuzz.membership import LABELS, CurveKind, Label, make_partition
from parafuzz.rulebase import (RuleParseError, RuleTable, default_rule_table, format_rule_table,
                               fuzzify, infer, load_rule_table, parse_rule_table)

import oracles

L = Label
TABLE1 = {
    (L.NS, L.NS): L.NS, (L.NS, L.PS): L.ZE,
    (L.ZE, L.NM): L.NM, (L.ZE, L.ZE): L.ZE, (L.ZE, L.PB): L.PM,
    (L.PS, L.NS): L.ZE, (L.PS, L.PS): L.PS,
}

EMPTY_GRID = "NB NM NS ZE PS PM PB\n" + "".join(
    f"{label.name} . . . . . . .\n" for label in LABELS)

degrees = st.fixed_dictionaries({label: st.floats(0, 1) for label in LABELS})


def test_default_table_is_table1():
    table = default_rule_table()
    assert len(table) == 7
    assert table.entries == TABLE1
    assert table[(L.ZE, L.ZE)] is L.ZE


def test_round_trip():
    table = default_rule_table()
    text = format_rule_table(table)
    assert parse_rule_table(text) == table
    assert format_rule_table(parse_rule_table(text)) == text


def test_empty_grid_is_valid():
    assert len(parse_rule_table(EMPTY_GRID)) == 0


def test_comments_and_blank_lines_ignored():
    text = "# header comment\n\n" + EMPTY_GRID.replace("ZE . . . . . . .", "ZE . . . ZE . . .  # centre")
    table = parse_rule_table(text)
    assert table.entries == {(L.ZE, L.ZE): L.ZE}


def test_column_order_is_honoured():
    header = "PB PM PS ZE NS NM NB\n"
    rows = "".join(f"{label.name} . . . . . . .\n" for label in LABELS)
    rows = rows.replace("NB . . . . . . .", "NB PS . . . . . .")
    assert parse_rule_table(header + rows).entries == {(L.NB, L.PB): L.PS}


def test_unknown_token_is_positioned():
    text = EMPTY_GRID.replace("PS . . . . . . .", "PS . . XX . . . .")
    with pytest.raises(RuleParseError) as err:
        parse_rule_table(text)
    assert "XX" in str(err.value)
    assert err.value.line == 6
    assert err.value.column == 8


def test_duplicate_row_rejected():
    text = EMPTY_GRID.replace("PM . . . . . . .", "PS . . . . . . .")
    with pytest.raises(RuleParseError, match="duplicate row"):
        parse_rule_table(text)


def test_duplicate_column_rejected():
    with pytest.raises(RuleParseError, match="duplicate column"):
        parse_rule_table(EMPTY_GRID.replace("NB NM", "NM NM", 1))


@pytest.mark.parametrize("mutate, line", [
    (lambda t: t.replace(" PB\n", "\n", 1), 1),
    (lambda t: t.replace("NS . . . . . . .", "NS . . . . . ."), 4),
    (lambda t: t.replace("NS . . . . . . .", "NS . . . . . . . ."), 4),
    (lambda t: t.rsplit("PB", 1)[0], 8),  # reported at end of input
])
def test_wrong_shape_rejected(mutate, line):
    with pytest.raises(RuleParseError) as err:
        parse_rule_table(mutate(EMPTY_GRID))
    assert err.value.line == line


def test_empty_text_rejected():
    with pytest.raises(RuleParseError):
        parse_rule_table("# nothing here\n")


def test_transpose():
    table = load_rule_table(transpose=True)
    assert table[(L.NM, L.ZE)] is L.NM
    assert table[(L.PB, L.ZE)] is L.PM
    assert table.transposed() == default_rule_table()


def test_fuzzify_examples():
    tri = make_partition(CurveKind.TRIANGULAR)
    d = fuzzify(tri, 0.0)
    assert d[L.ZE] == 1.0 and sum(d.values()) == 1.0

    d = fuzzify(tri, -0.5)
    assert d[L.NM] == pytest.approx(0.5, abs=1e-12)
    assert d[L.NS] == pytest.approx(0.5, abs=1e-12)
    assert sum(v for k, v in d.items() if k not in (L.NM, L.NS)) == 0.0

    par = make_partition(CurveKind.PARABOLIC_II)
    assert fuzzify(par, 1.7) == fuzzify(par, 1.0)
    assert fuzzify(par, 1.7)[L.PB] == 1.0


@given(st.sampled_from(list(CurveKind)), st.floats(-1, 1))
def test_at_most_two_sets_active(kind, x):
    d = fuzzify(make_partition(kind), x)
    assert len(d) == 7
    assert all(0.0 <= v <= 1.0 for v in d.values())
    assert sum(v > 0 for v in d.values()) <= 2


def test_infer_center_cell():
    tri = make_partition(CurveKind.TRIANGULAR)
    fired = infer(default_rule_table(), fuzzify(tri, 0.0), fuzzify(tri, 0.0))
    assert fired.strengths[L.ZE] == 1.0
    assert sum(fired.strengths.values()) == 1.0
    assert fired.fired_rules == 1


def test_infer_hand_fired():
    angle = {label: 0.0 for label in LABELS} | {L.ZE: 1.0}
    vel = {label: 0.0 for label in LABELS} | {L.NM: 0.4, L.NS: 0.6}
    fired = infer(default_rule_table(), angle, vel)
    assert fired.strengths[L.NM] == 0.4
    assert fired.strengths[L.NS] == 0.0


def test_infer_max_aggregation():
    table = RuleTable({(L.NS, L.PS): L.ZE, (L.PS, L.NS): L.ZE})
    zero = {label: 0.0 for label in LABELS}
    angle = zero | {L.NS: 0.3, L.PS: 0.9}
    vel = zero | {L.PS: 1.0, L.NS: 0.7}
    assert infer(table, angle, vel).strengths[L.ZE] == 0.7


def test_empty_table_is_silent():
    d = {label: 1.0 for label in LABELS}
    assert all(v == 0 for v in infer(RuleTable(), d, d).strengths.values())


@given(degrees, degrees)
def test_infer_matches_brute_force(angle, vel):
    assert infer(default_rule_table(), angle, vel).strengths == oracles.brute_force_infer(
        TABLE1, angle, vel)


@given(degrees, degrees, st.sampled_from(LABELS), st.floats(0, 1))
def test_infer_monotone(angle, vel, which, bump):
    table = default_rule_table()
    before = infer(table, angle, vel).strengths
    raised = dict(angle)
    raised[which] = max(raised[which], bump)
    after = infer(table, raised, vel).strengths
    assert all(after[k] >= before[k] for k in LABELS)


@given(degrees, degrees)
def test_infer_bounded_by_inputs(angle, vel):
    top = max(max(angle.values()), max(vel.values()))
    assert all(v <= top for v in infer(default_rule_table(), angle, vel).strengths.values())


def random_table(rng: random.Random) -> RuleTable:
    cells = [(r, c) for r in LABELS for c in LABELS]
    chosen = rng.sample(cells, rng.randint(0, 49))
    return RuleTable({cell: rng.choice(LABELS) for cell in chosen})


def test_random_tables_round_trip():
    rng = random.Random(7)
    for _ in range(20):
        table = random_table(rng)
        assert parse_rule_table(format_rule_table(table)) == table
