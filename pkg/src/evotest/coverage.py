"""Test requirements, coverage measurement, and coverage archives.

Targets are enumerated from an Ast under a criterion:

* ``statement``: one target per statement id
* ``decision``: a True and a False target per decision id
* ``condition``: a True and a False target per atomic condition id

A condition outcome counts as covered only when the condition was
actually evaluated (short-circuited operands do not count).

Reports are immutable; :func:`merge` returns a new report, so traces can
be produced concurrently and folded in any order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .minilang import Ast, ExecutionTrace, execute
from .minilang.interpreter import DEFAULT_LOOP_CAP


class CoverageError(Exception):
    pass


class NoTargetsError(CoverageError):
    """The program has no targets under the chosen criterion."""


class CriterionMismatchError(CoverageError):
    pass


class CoverageCriterion(Enum):
    STATEMENT = "statement"
    DECISION = "decision"
    CONDITION = "condition"

    @classmethod
    def from_name(cls, name: str) -> "CoverageCriterion":
        try:
            return cls(name.lower())
        except ValueError:
            raise CoverageError(f"unknown coverage criterion {name!r}") from None


@dataclass(frozen=True)
class Target:
    """One test requirement: a statement, or a decision/condition outcome."""

    kind: str  # "statement" | "decision" | "condition"
    id: int
    outcome: bool | None  # None for statements
    line: int = 0

    def sort_key(self) -> tuple[int, int]:
        # True-outcome orders before False-outcome at the same id.
        return (self.id, 0 if self.outcome in (True, None) else 1)

    @property
    def key(self) -> str:
        if self.kind == "statement":
            return f"s{self.id}"
        prefix = "d" if self.kind == "decision" else "c"
        return f"{prefix}{self.id}:{'T' if self.outcome else 'F'}"

    def describe(self, ast: Ast | None = None) -> str:
        if self.kind == "statement":
            text = f"statement {self.id}"
        else:
            text = f"{self.kind} {self.id} -> {'true' if self.outcome else 'false'}"
        if ast is not None and self.kind == "decision":
            text += f" [{ast.decisions[self.id].text()}]"
        elif ast is not None and self.kind == "condition":
            text += f" [{ast.conditions[self.id].text()}]"
        return text


@dataclass(frozen=True)
class TestCase:
    """An input vector for a program, optionally named for reports."""

    values: tuple[int, ...]
    name: str | None = None

    def label(self) -> str:
        return self.name if self.name is not None else "(" + ",".join(map(str, self.values)) + ")"


TestSuite = Sequence[TestCase]


def enumerate_targets(ast: Ast, criterion: CoverageCriterion) -> tuple[Target, ...]:
    """All targets under a criterion, ordered by id, True before False."""
    if criterion is CoverageCriterion.STATEMENT:
        return tuple(
            Target("statement", s.stmt_id, None, s.line) for s in ast.statements
        )
    if criterion is CoverageCriterion.DECISION:
        out = []
        for d in ast.decisions:
            out.append(Target("decision", d.id, True, d.line))
            out.append(Target("decision", d.id, False, d.line))
        return tuple(out)
    out = []
    for c in ast.conditions:
        out.append(Target("condition", c.id, True, c.line))
        out.append(Target("condition", c.id, False, c.line))
    return tuple(out)


def trace_covers(trace: ExecutionTrace, target: Target) -> bool:
    if target.kind == "statement":
        return target.id in trace.executed_statements
    if target.kind == "decision":
        return (target.id, target.outcome) in trace.decision_outcome_set
    return (target.id, target.outcome) in trace.condition_outcome_set


def covered_by_trace(trace: ExecutionTrace, targets: Iterable[Target]) -> frozenset[Target]:
    return frozenset(t for t in targets if trace_covers(trace, t))


@dataclass(frozen=True)
class CoverageReport:
    """Covered / uncovered target sets plus first-coverer attribution."""

    criterion: CoverageCriterion
    targets: tuple[Target, ...]
    covered: frozenset[Target]
    attribution: Mapping[Target, TestCase]

    @classmethod
    def empty(cls, criterion: CoverageCriterion, targets: Sequence[Target]) -> "CoverageReport":
        if not targets:
            raise NoTargetsError(f"no targets under criterion {criterion.value!r}")
        return cls(criterion=criterion, targets=tuple(targets), covered=frozenset(), attribution={})

    @property
    def total_targets(self) -> int:
        return len(self.targets)

    @property
    def uncovered(self) -> tuple[Target, ...]:
        return tuple(
            sorted((t for t in self.targets if t not in self.covered), key=Target.sort_key)
        )

    @property
    def covered_ordered(self) -> tuple[Target, ...]:
        return tuple(sorted(self.covered, key=Target.sort_key))

    @property
    def percent(self) -> float:
        return 100.0 * len(self.covered) / len(self.targets)

    def percent_of(self, feasible: frozenset[Target]) -> float | None:
        """Coverage relative to a known-feasible subset; None when empty."""
        if not feasible:
            return None
        return 100.0 * len(self.covered & feasible) / len(feasible)

    def is_full(self) -> bool:
        return len(self.covered) == len(self.targets)

    def merge(self, trace: ExecutionTrace, test: TestCase) -> "CoverageReport":
        report, _ = self.merge_with_news(trace, test)
        return report

    def merge_with_news(
        self, trace: ExecutionTrace, test: TestCase
    ) -> tuple["CoverageReport", tuple[Target, ...]]:
        """Merge one trace; also report which targets it covered first."""
        news = tuple(
            t for t in self.targets if t not in self.covered and trace_covers(trace, t)
        )
        if not news:
            return self, ()
        attribution = dict(self.attribution)
        for t in news:
            attribution[t] = test
        return (
            CoverageReport(
                criterion=self.criterion,
                targets=self.targets,
                covered=self.covered | frozenset(news),
                attribution=attribution,
            ),
            news,
        )


def measure(
    ast: Ast,
    suite: TestSuite,
    criterion: CoverageCriterion,
    loop_cap: int = DEFAULT_LOOP_CAP,
) -> CoverageReport:
    """Execute a suite and report which targets it covers."""
    targets = enumerate_targets(ast, criterion)
    report = CoverageReport.empty(criterion, targets)
    for test in suite:
        trace = execute(ast, test.values, loop_cap)
        report = report.merge(trace, test)
    return report


def merge(report: CoverageReport, trace: ExecutionTrace, test: TestCase) -> CoverageReport:
    return report.merge(trace, test)


def uncovered_targets(report: CoverageReport) -> tuple[Target, ...]:
    return report.uncovered


# ---------------------------------------------------------------------------
# Serialization (schema documented in the README)
# ---------------------------------------------------------------------------


def report_to_dict(report: CoverageReport, feasible: frozenset[Target] | None = None) -> dict:
    out = {
        "schema": "evotest-coverage/1",
        "criterion": report.criterion.value,
        "total_targets": report.total_targets,
        "covered": [t.key for t in report.covered_ordered],
        "uncovered": [t.key for t in report.uncovered],
        "percent": report.percent,
        "attribution": {
            t.key: report.attribution[t].label()
            for t in sorted(report.attribution, key=Target.sort_key)
        },
    }
    if feasible is not None:
        out["feasible"] = sorted(t.key for t in feasible)
        out["percent_feasible"] = report.percent_of(feasible)
    return out


def report_to_json(report: CoverageReport, feasible: frozenset[Target] | None = None) -> str:
    return json.dumps(report_to_dict(report, feasible), indent=2, sort_keys=True) + "\n"


def report_to_text(report: CoverageReport, ast: Ast | None = None) -> str:
    """Aligned-column, human-oriented rendering."""
    lines = [
        f"criterion: {report.criterion.value}",
        f"coverage:  {len(report.covered)}/{report.total_targets} ({report.percent:.2f}%)",
    ]
    width = max((len(t.key) for t in report.targets), default=4)
    for t in sorted(report.targets, key=Target.sort_key):
        status = "covered" if t in report.covered else "UNCOVERED"
        by = ""
        if t in report.attribution:
            by = f" by {report.attribution[t].label()}"
        lines.append(f"  {t.key:<{width}}  line {t.line:>4}  {status}{by}")
    return "\n".join(lines) + "\n"
