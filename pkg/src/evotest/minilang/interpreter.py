"""Instrumenting tree-walking interpreter for MiniC.

Every run produces an :class:`ExecutionTrace` recording executed
statements, each condition evaluation (operands and outcome), and each
decision outcome, in execution order.

Semantics notes:

* Arithmetic is 64-bit signed; overflow aborts the run (termination
  ``runtime-error``) instead of wrapping. Division and modulo truncate
  toward zero as in C; a zero divisor aborts the run.
* ``&&`` / ``||`` short-circuit. A short-circuited condition leaves no
  entry in ``condition_events``. Its operand values are still captured
  as a shadow observation on the decision evaluation when they can be
  computed without a fault (guard expressions are side-effect free, so
  this never perturbs program state); a faulting shadow evaluation is
  recorded as unknown.
* Loop iterations are counted per loop statement, cumulatively over the
  whole run; crossing the cap terminates with ``loop-cap-exceeded``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .nodes import (
    Assignment,
    Ast,
    Binary,
    Block,
    BoolAnd,
    BoolLeaf,
    BoolNot,
    BoolOr,
    Break,
    Condition,
    Declaration,
    Decision,
    DoWhile,
    If,
    IndexRef,
    IntLiteral,
    Return,
    Switch,
    Unary,
    VarRef,
    While,
)
from .source import MiniCError

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

DEFAULT_LOOP_CAP = 10_000

NORMAL = "normal"
RUNTIME_ERROR = "runtime-error"
LOOP_CAP_EXCEEDED = "loop-cap-exceeded"


class InputError(MiniCError):
    """Input vector has the wrong arity or a value outside its range."""


class ConditionEvent(NamedTuple):
    condition_id: int
    op: str
    lhs: int
    rhs: int
    outcome: bool


class LeafObservation(NamedTuple):
    """Operand snapshot for one condition at one decision evaluation."""

    lhs: int
    rhs: int
    outcome: bool
    evaluated: bool  # False for shadow observations of skipped operands


class DecisionEvaluation(NamedTuple):
    decision_id: int
    outcome: bool
    # One slot per condition position; None when even shadow evaluation
    # faulted and the operand values are unknown.
    leaves: tuple


@dataclass(frozen=True)
class ExecutionTrace:
    """Immutable record of one program run."""

    executed_statements: frozenset[int]
    condition_events: tuple[ConditionEvent, ...]
    decision_outcomes: tuple[tuple[int, bool], ...]
    termination: str
    return_value: int | None
    error: str | None
    decision_evaluations: dict[int, tuple[DecisionEvaluation, ...]]
    decision_outcome_set: frozenset[tuple[int, bool]]
    condition_outcome_set: frozenset[tuple[int, bool]]

    @property
    def path_signature(self) -> tuple[tuple[int, bool], ...]:
        return self.decision_outcomes


class _Return(Exception):
    def __init__(self, value: int):
        self.value = value


class _Break(Exception):
    pass


class _Fault(Exception):
    def __init__(self, termination: str, message: str):
        self.termination = termination
        self.message = message


def execute(ast: Ast, values: Sequence[int], loop_cap: int = DEFAULT_LOOP_CAP) -> ExecutionTrace:
    """Run the program's first function on an input vector.

    The vector must match the declared inputs in arity and per-gene
    range; violations raise :class:`InputError` before anything runs.
    """
    genes = tuple(int(v) for v in values)
    ranges = ast.gene_ranges
    if len(genes) != len(ranges):
        raise InputError(
            f"program {ast.program_name!r} expects {len(ranges)} input values, got {len(genes)}"
        )
    for pos, (value, (low, high)) in enumerate(zip(genes, ranges)):
        if not low <= value <= high:
            raise InputError(
                f"input value {value} at position {pos} outside declared range [{low}, {high}]"
            )
    return _Execution(ast, genes, loop_cap).run()


def _check64(value: int) -> int:
    if INT64_MIN <= value <= INT64_MAX:
        return value
    raise _Fault(RUNTIME_ERROR, "integer overflow")


def _c_div(a: int, b: int) -> int:
    if b == 0:
        raise _Fault(RUNTIME_ERROR, "division by zero")
    q = abs(a) // abs(b)
    if (a < 0) != (b < 0):
        q = -q
    return _check64(q)


def _c_mod(a: int, b: int) -> int:
    if b == 0:
        raise _Fault(RUNTIME_ERROR, "modulo by zero")
    return _check64(a - _c_div(a, b) * b)


def _compare(op: str, lhs: int, rhs: int) -> bool:
    if op == "==":
        return lhs == rhs
    if op == "!=":
        return lhs != rhs
    if op == "<":
        return lhs < rhs
    if op == "<=":
        return lhs <= rhs
    if op == ">":
        return lhs > rhs
    if op == ">=":
        return lhs >= rhs
    # truthy
    return lhs != 0


class _Execution:
    """Per-call activation state; one instance per execute() call."""

    def __init__(self, ast: Ast, genes: tuple[int, ...], loop_cap: int):
        self.ast = ast
        self.loop_cap = loop_cap
        self.env: dict[str, object] = {}
        pos = 0
        for spec in ast.inputs:
            if spec.size is None:
                self.env[spec.name] = genes[pos]
                pos += 1
            else:
                self.env[spec.name] = list(genes[pos : pos + spec.size])
                pos += spec.size
        self.executed: set[int] = set()
        self.condition_events: list[ConditionEvent] = []
        self.decision_outcomes: list[tuple[int, bool]] = []
        self.decision_evaluations: dict[int, list[DecisionEvaluation]] = {}
        self.loop_counts: dict[int, int] = {}

    def run(self) -> ExecutionTrace:
        termination = NORMAL
        return_value: int | None = None
        error: str | None = None
        try:
            self._exec_stmt(self.ast.entry.body)
            # Falling off the end leaves no return event; treat it as a
            # runtime fault so "normal" always implies a return.
            termination = RUNTIME_ERROR
            error = "function ended without a return"
        except _Return as ret:
            return_value = ret.value
        except _Break:
            termination = RUNTIME_ERROR
            error = "break outside loop or switch"
        except _Fault as fault:
            termination = fault.termination
            error = fault.message
        return ExecutionTrace(
            executed_statements=frozenset(self.executed),
            condition_events=tuple(self.condition_events),
            decision_outcomes=tuple(self.decision_outcomes),
            termination=termination,
            return_value=return_value,
            error=error,
            decision_evaluations={
                k: tuple(v) for k, v in self.decision_evaluations.items()
            },
            decision_outcome_set=frozenset(self.decision_outcomes),
            condition_outcome_set=frozenset(
                (ev.condition_id, ev.outcome) for ev in self.condition_events
            ),
        )

    # -- expressions ---------------------------------------------------

    def _eval(self, e) -> int:
        t = type(e)
        if t is IntLiteral:
            return _check64(e.value)
        if t is VarRef:
            value = self.env.get(e.name)
            if value is None:
                raise _Fault(RUNTIME_ERROR, f"undefined variable {e.name!r}")
            if isinstance(value, list):
                raise _Fault(RUNTIME_ERROR, f"array {e.name!r} used as a scalar")
            return value
        if t is Binary:
            op = e.op
            if op == "&&":
                if self._eval(e.lhs) == 0:
                    return 0
                return 1 if self._eval(e.rhs) != 0 else 0
            if op == "||":
                if self._eval(e.lhs) != 0:
                    return 1
                return 1 if self._eval(e.rhs) != 0 else 0
            lhs = self._eval(e.lhs)
            rhs = self._eval(e.rhs)
            if op == "+":
                return _check64(lhs + rhs)
            if op == "-":
                return _check64(lhs - rhs)
            if op == "*":
                return _check64(lhs * rhs)
            if op == "/":
                return _c_div(lhs, rhs)
            if op == "%":
                return _c_mod(lhs, rhs)
            return 1 if _compare(op, lhs, rhs) else 0
        if t is IndexRef:
            return self._load_element(e)
        if t is Unary:
            value = self._eval(e.operand)
            if e.op == "-":
                return _check64(-value)
            if e.op == "!":
                return 1 if value == 0 else 0
            return value
        raise _Fault(RUNTIME_ERROR, f"cannot evaluate node {type(e).__name__}")

    def _load_element(self, e: IndexRef) -> int:
        array = self.env.get(e.name)
        if not isinstance(array, list):
            raise _Fault(RUNTIME_ERROR, f"{e.name!r} is not an array")
        index = self._eval(e.index)
        if not 0 <= index < len(array):
            raise _Fault(RUNTIME_ERROR, f"index {index} out of range for {e.name!r}")
        return array[index]

    # -- decisions -------------------------------------------------------

    def _decide(self, decision: Decision) -> bool:
        observations: list = [None] * len(decision.conditions)
        outcome = self._eval_skeleton(decision.skeleton, observations)
        for cond in decision.conditions:
            if observations[cond.position] is None:
                observations[cond.position] = self._shadow_leaf(cond)
        self._record_decision(decision, outcome, observations)
        return outcome

    def _eval_skeleton(self, node, observations: list) -> bool:
        t = type(node)
        if t is BoolLeaf:
            return self._eval_leaf(node.condition, observations)
        if t is BoolAnd:
            for child in node.children:
                if not self._eval_skeleton(child, observations):
                    return False
            return True
        if t is BoolOr:
            for child in node.children:
                if self._eval_skeleton(child, observations):
                    return True
            return False
        return not self._eval_skeleton(node.child, observations)

    def _eval_leaf(self, cond: Condition, observations: list) -> bool:
        lhs = self._eval(cond.lhs)
        rhs = 0 if cond.rhs is None else self._eval(cond.rhs)
        outcome = _compare(cond.op, lhs, rhs)
        observations[cond.position] = LeafObservation(lhs, rhs, outcome, True)
        self.condition_events.append(ConditionEvent(cond.id, cond.op, lhs, rhs, outcome))
        return outcome

    def _shadow_leaf(self, cond: Condition):
        # Guard expressions cannot assign; only faults can differ from a
        # real evaluation, and those leave the operand unknown.
        try:
            lhs = self._eval(cond.lhs)
            rhs = 0 if cond.rhs is None else self._eval(cond.rhs)
        except _Fault:
            return None
        return LeafObservation(lhs, rhs, _compare(cond.op, lhs, rhs), False)

    def _record_decision(self, decision: Decision, outcome: bool, observations: list) -> None:
        record = DecisionEvaluation(decision.id, outcome, tuple(observations))
        self.decision_evaluations.setdefault(decision.id, []).append(record)
        self.decision_outcomes.append((decision.id, outcome))

    # -- statements -------------------------------------------------------

    def _exec_stmt(self, s) -> None:
        t = type(s)
        if t is Block:
            for inner in s.body:
                self._exec_stmt(inner)
            return
        self.executed.add(s.stmt_id)
        if t is Assignment:
            value = self._eval(s.value)
            if s.index is None:
                current = self.env.get(s.name)
                if current is None:
                    raise _Fault(RUNTIME_ERROR, f"assignment to undeclared {s.name!r}")
                if isinstance(current, list):
                    raise _Fault(RUNTIME_ERROR, f"array {s.name!r} assigned as a scalar")
                self.env[s.name] = value
            else:
                array = self.env.get(s.name)
                if not isinstance(array, list):
                    raise _Fault(RUNTIME_ERROR, f"{s.name!r} is not an array")
                index = self._eval(s.index)
                if not 0 <= index < len(array):
                    raise _Fault(RUNTIME_ERROR, f"index {index} out of range for {s.name!r}")
                array[index] = value
        elif t is Declaration:
            for item in s.items:
                if item.size is not None:
                    self.env[item.name] = [0] * item.size
                else:
                    self.env[item.name] = self._eval(item.init) if item.init is not None else 0
        elif t is If:
            if self._decide(s.decision):
                if s.then is not None:
                    self._exec_stmt(s.then)
            elif s.orelse is not None:
                self._exec_stmt(s.orelse)
        elif t is While:
            counts = self.loop_counts
            try:
                while self._decide(s.decision):
                    counts[s.stmt_id] = counts.get(s.stmt_id, 0) + 1
                    if counts[s.stmt_id] > self.loop_cap:
                        raise _Fault(LOOP_CAP_EXCEEDED, "loop iteration cap exceeded")
                    if s.body is not None:
                        self._exec_stmt(s.body)
            except _Break:
                pass
        elif t is DoWhile:
            counts = self.loop_counts
            try:
                while True:
                    counts[s.stmt_id] = counts.get(s.stmt_id, 0) + 1
                    if counts[s.stmt_id] > self.loop_cap:
                        raise _Fault(LOOP_CAP_EXCEEDED, "loop iteration cap exceeded")
                    if s.body is not None:
                        self._exec_stmt(s.body)
                    if not self._decide(s.decision):
                        break
            except _Break:
                pass
        elif t is Return:
            value = self._eval(s.value) if s.value is not None else 0
            raise _Return(value)
        elif t is Switch:
            self._exec_switch(s)
        elif t is Break:
            raise _Break()
        else:
            raise _Fault(RUNTIME_ERROR, f"cannot execute node {type(s).__name__}")

    def _exec_switch(self, s: Switch) -> None:
        scrutinee = self._eval(s.scrutinee)
        match_index: int | None = None
        for i, case in enumerate(s.cases):
            cond = case.decision.conditions[0]
            outcome = scrutinee == case.value
            self.condition_events.append(
                ConditionEvent(cond.id, "==", scrutinee, case.value, outcome)
            )
            self._record_decision(
                case.decision,
                outcome,
                [LeafObservation(scrutinee, case.value, outcome, True)],
            )
            if outcome:
                match_index = i
                break
        try:
            if match_index is not None:
                # C fall-through: run from the matching case to the end.
                for case in s.cases[match_index:]:
                    for stmt in case.body:
                        self._exec_stmt(stmt)
                if s.default_body is not None:
                    for stmt in s.default_body:
                        self._exec_stmt(stmt)
            elif s.default_body is not None:
                for stmt in s.default_body:
                    self._exec_stmt(stmt)
        except _Break:
            pass
