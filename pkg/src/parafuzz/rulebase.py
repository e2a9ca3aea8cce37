"""Rule grid parsing, fuzzification and MAX-MIN inference.

Grid file layout (whitespace separated, ``#`` starts a comment)::

        NB NM NS ZE PS PM PB      <- column labels (angular velocity)
    NB  .  .  .  .  .  .  .       <- row label (angle), then 7 cells
    ...

A cell is either an output label or ``.`` for no rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .membership import LABELS, Label, Partition, evaluate

DEFAULT_RULES_RESOURCE = "table1.rules"


class RuleParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class RuleTable:
    """Sparse map ``(angle label, velocity label) -> output label``."""

    entries: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, key):
        return self.entries[key]

    def get(self, row: Label, col: Label):
        return self.entries.get((row, col))

    def transposed(self) -> "RuleTable":
        return RuleTable({(col, row): out for (row, col), out in self.entries.items()})

    def items(self):
        return sorted(self.entries.items())


def _tokens(line: str):
    """Split a line into ``(column, token)`` pairs, 1-based columns, comments stripped."""
    body = line.split("#", 1)[0]
    out = []
    i = 0
    while i < len(body):
        if body[i].isspace():
            i += 1
            continue
        j = i
        while j < len(body) and not body[j].isspace():
            j += 1
        out.append((i + 1, body[i:j]))
        i = j
    return out


def _label_at(token: str, lineno: int, col: int) -> Label:
    try:
        return Label.parse(token)
    except ValueError:
        raise RuleParseError(f"unknown label token {token!r}", lineno, col) from None


def parse_rule_table(text: str) -> RuleTable:
    lines = [(n, _tokens(raw)) for n, raw in enumerate(text.splitlines(), start=1)]
    lines = [(n, toks) for n, toks in lines if toks]
    if not lines:
        raise RuleParseError("empty rule grid", 1, 1)

    header_line, header = lines[0]
    if len(header) != 7:
        col = header[7][0] if len(header) > 7 else header[-1][0]
        raise RuleParseError(f"expected 7 column labels, got {len(header)}", header_line, col)
    columns = []
    for col, tok in header:
        label = _label_at(tok, header_line, col)
        if label in columns:
            raise RuleParseError(f"duplicate column label {tok}", header_line, col)
        columns.append(label)

    body = lines[1:]
    if len(body) > 7:
        n, toks = body[7]
        raise RuleParseError(f"expected 7 rule rows, got {len(body)}", n, toks[0][0])

    entries = {}
    seen_rows = []
    for lineno, toks in body:
        if len(toks) != 8:
            col = toks[8][0] if len(toks) > 8 else toks[-1][0]
            raise RuleParseError(
                f"expected row label plus 7 cells, got {len(toks)} tokens", lineno, col)
        row_col, row_tok = toks[0]
        row = _label_at(row_tok, lineno, row_col)
        if row in seen_rows:
            raise RuleParseError(f"duplicate row label {row_tok}", lineno, row_col)
        seen_rows.append(row)
        for column_label, (col, tok) in zip(columns, toks[1:]):
            if tok == ".":
                continue
            key = (row, column_label)
            if key in entries:
                raise RuleParseError(f"duplicate cell {row.name}/{column_label.name}", lineno, col)
            entries[key] = _label_at(tok, lineno, col)
    if len(body) < 7:
        raise RuleParseError(f"expected 7 rule rows, got {len(body)}", lines[-1][0] + 1, 1)
    return RuleTable(entries)


def format_rule_table(table: RuleTable) -> str:
    lines = ["   " + " ".join(f"{label.name:>2}" for label in LABELS)]
    for row in LABELS:
        cells = []
        for col in LABELS:
            out = table.get(row, col)
            cells.append(f"{out.name:>2}" if out is not None else " .")
        lines.append(f"{row.name:<2} " + " ".join(cells))
    return "\n".join(lines) + "\n"


def load_rule_table(path: str | Path | None = None, transpose: bool = False) -> RuleTable:
    if path is None:
        text = resources.files("parafuzz.data").joinpath(DEFAULT_RULES_RESOURCE).read_text()
    else:
        text = Path(path).read_text()
    table = parse_rule_table(text)
    return table.transposed() if transpose else table


def default_rule_table() -> RuleTable:
    return load_rule_table()


@dataclass(frozen=True)
class FiredOutput:
    strengths: dict
    fired_rules: int = 0

    def active(self):
        return [(label, s) for label, s in sorted(self.strengths.items()) if s > 0]


def fuzzify(partition: Partition, x: float) -> dict:
    """Degrees of membership of the clamped input in each of the seven sets."""
    x = partition.clamp(x)
    return {label: evaluate(curve, x) for label, curve in partition.curves.items()}


def infer(table: RuleTable, angle: dict, velocity: dict) -> FiredOutput:
    strengths = dict.fromkeys(LABELS, 0.0)
    fired = 0
    for (row, col), out in table.entries.items():
        s = min(angle[row], velocity[col])
        if s > 0:
            fired += 1
            if s > strengths[out]:
                strengths[out] = s
    return FiredOutput(strengths, fired)
