"""Cost functions that turn a coverage target plus a trace into a
minimizable value.

The composite cost of a target is ``approach_level + normalized
branch distance``: the approach level counts control-dependence
ancestors that execution never penetrated, and the branch distance at
the divergence decision says how close its guard came to taking the
required outcome. Distances normalize to [0, 1), so approach levels
never interleave.

Distance rules (K = 1 unless overridden), for a desired-true outcome::

    a >  b   ->  0 if true, else b - a + K
    a >= b   ->  0 if true, else b - a + K
    a <  b   ->  0 if true, else a - b + K
    a <= b   ->  0 if true, else a - b + K
    a == b   ->  |a - b|
    a != b   ->  0 if true, else K
    truthy v ->  0 if v != 0, else K

Desired-false distances evaluate the negated predicate (for a bare
truth value that is the distance to zero, |v|). Inside one guard,
AND combines by sum, OR by min, NOT by negating the desired outcome.
A short-circuited operand usually still has a shadow observation in the
trace and contributes its real distance; if even that is unknown (the
shadow evaluation faulted) it contributes K.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coverage import Target, trace_covers
from .minilang import Ast, Decision, DependenceMap, ExecutionTrace
from .minilang.interpreter import NORMAL, DecisionEvaluation
from .minilang.nodes import BoolAnd, BoolExpr, BoolLeaf, BoolNot, BoolOr

DISTANCE_OPS = ("==", "!=", "<", "<=", ">", ">=", "truthy")

DEFAULT_K = 1.0


class FitnessError(Exception):
    pass


class DecisionNotReached(FitnessError):
    """The decision was never evaluated in the trace."""


@dataclass(frozen=True)
class BranchDistance:
    raw: float
    k: float = DEFAULT_K

    @property
    def satisfied(self) -> bool:
        return self.raw == 0.0


@dataclass(frozen=True)
class TargetCost:
    approach_level: int
    normalized_distance: float

    @property
    def total(self) -> float:
        return self.approach_level + self.normalized_distance


def branch_distance(
    op: str, lhs: int, rhs: int, desired: bool, k: float = DEFAULT_K
) -> BranchDistance:
    """Distance of one comparison from yielding the desired outcome."""
    if op not in DISTANCE_OPS:
        raise FitnessError(f"unsupported operator {op!r}")
    return BranchDistance(raw=_distance(op, lhs, rhs, desired, k), k=k)


def _distance(op: str, lhs: int, rhs: int, desired: bool, k: float) -> float:
    if desired:
        if op == ">":
            return 0.0 if lhs > rhs else float(rhs - lhs) + k
        if op == ">=":
            return 0.0 if lhs >= rhs else float(rhs - lhs) + k
        if op == "<":
            return 0.0 if lhs < rhs else float(lhs - rhs) + k
        if op == "<=":
            return 0.0 if lhs <= rhs else float(lhs - rhs) + k
        if op == "==":
            return float(abs(lhs - rhs))
        if op == "!=":
            return 0.0 if lhs != rhs else k
        return 0.0 if lhs != 0 else k  # truthy
    # Desired false: distance of the negated predicate.
    if op == ">":
        return _distance("<=", lhs, rhs, True, k)
    if op == ">=":
        return _distance("<", lhs, rhs, True, k)
    if op == "<":
        return _distance(">=", lhs, rhs, True, k)
    if op == "<=":
        return _distance(">", lhs, rhs, True, k)
    if op == "==":
        return _distance("!=", lhs, rhs, True, k)
    if op == "!=":
        return _distance("==", lhs, rhs, True, k)
    return float(abs(lhs))  # truthy desired false: distance to zero


def normalize(d: float) -> float:
    """Map [0, inf) strictly monotonically into [0, 1)."""
    if d < 0:
        raise FitnessError(f"distance must be non-negative, got {d}")
    return d / (d + 1.0)


# ---------------------------------------------------------------------------
# Guard-level distance
# ---------------------------------------------------------------------------


def _skeleton_distance(node: BoolExpr, leaves: tuple, desired: bool, k: float) -> float:
    t = type(node)
    if t is BoolLeaf:
        obs = leaves[node.condition.position]
        if obs is None:
            return k  # operand value unknowable: flat penalty
        return _distance(node.condition.op, obs.lhs, obs.rhs, desired, k)
    if t is BoolAnd:
        if desired:
            return sum(_skeleton_distance(c, leaves, True, k) for c in node.children)
        return min(_skeleton_distance(c, leaves, False, k) for c in node.children)
    if t is BoolOr:
        if desired:
            return min(_skeleton_distance(c, leaves, True, k) for c in node.children)
        return sum(_skeleton_distance(c, leaves, False, k) for c in node.children)
    return _skeleton_distance(node.child, leaves, not desired, k)


def decision_distance(
    decision: Decision, trace: ExecutionTrace, desired: bool, k: float = DEFAULT_K
) -> BranchDistance:
    """Best (minimum) guard distance over all evaluations of a decision.

    Raises :class:`DecisionNotReached` when the decision never executed;
    callers fall back to the approach level.
    """
    evaluations = trace.decision_evaluations.get(decision.id)
    if not evaluations:
        raise DecisionNotReached(f"decision {decision.id} not reached")
    best = min(
        _skeleton_distance(decision.skeleton, ev.leaves, desired, k) for ev in evaluations
    )
    return BranchDistance(raw=best, k=k)


def _condition_evaluation_distance(
    decision: Decision, evaluation: DecisionEvaluation, position: int, desired: bool, k: float
) -> float:
    """Distance to get the condition at ``position`` evaluated with the
    desired outcome: the cost of steering every short-circuit controller
    ahead of it, plus the condition's own distance."""
    cost = _eval_path(decision.skeleton, evaluation.leaves, position, desired, k)
    if cost is None:
        raise FitnessError(f"condition position {position} not in decision {decision.id}")
    return cost


def _eval_path(
    node: BoolExpr, leaves: tuple, position: int, desired: bool, k: float
) -> float | None:
    t = type(node)
    if t is BoolLeaf:
        if node.condition.position != position:
            return None
        obs = leaves[position]
        if obs is None:
            return k
        return _distance(node.condition.op, obs.lhs, obs.rhs, desired, k)
    if t is BoolNot:
        # Negation changes the decision's outcome, not which conditions
        # get evaluated or what outcome the condition target wants.
        return _eval_path(node.child, leaves, position, desired, k)
    if t in (BoolAnd, BoolOr):
        # Earlier siblings control whether evaluation proceeds: an AND
        # keeps evaluating while children are true, an OR while false.
        keep_going = t is BoolAnd
        acc = 0.0
        for child in node.children:
            sub = _eval_path(child, leaves, position, desired, k)
            if sub is not None:
                return acc + sub
            acc += _skeleton_distance(child, leaves, keep_going, k)
        return None
    raise FitnessError(f"not a guard skeleton node: {node!r}")


# ---------------------------------------------------------------------------
# Composite target cost
# ---------------------------------------------------------------------------


def target_cost(
    trace: ExecutionTrace, target: Target, dependence: DependenceMap, k: float = DEFAULT_K
) -> TargetCost:
    """Approach level plus normalized branch distance for one target.

    Zero exactly when the trace covers the target. Abnormal traces and
    traces that never reached any decision on the target's dependence
    chain cost ``chain length + 1``, dominating every reachable cost.
    """
    ast = dependence.ast
    if trace_covers(trace, target):
        return TargetCost(0, 0.0)

    if target.kind == "statement":
        chain = dependence.statement_chain(target.id)
        levels: list[tuple[int, object]] = list(chain)
    elif target.kind == "decision":
        chain = dependence.chain(target.id)
        levels = [(target.id, target.outcome)] + list(chain)
    else:
        parent = ast.conditions[target.id].decision_id
        chain = dependence.chain(parent)
        levels = [(parent, ("evaluate", target.id, target.outcome))] + list(chain)

    worst = TargetCost(len(chain) + 1, 0.0)
    if trace.termination != NORMAL:
        return worst

    for approach, (decision_id, requirement) in enumerate(levels):
        evaluations = trace.decision_evaluations.get(decision_id)
        if not evaluations:
            continue
        decision = ast.decisions[decision_id]
        if isinstance(requirement, tuple) and requirement[0] == "evaluate":
            _, condition_id, desired = requirement
            position = ast.conditions[condition_id].position
            raw = min(
                _condition_evaluation_distance(decision, ev, position, desired, k)
                for ev in evaluations
            )
        else:
            raw = min(
                _skeleton_distance(decision.skeleton, ev.leaves, requirement, k)
                for ev in evaluations
            )
        if raw == 0.0 and approach == 0:
            # Uncovered target behind a satisfied guard (dead code or an
            # early exit inside the taken branch): keep the cost positive.
            raw = k
        return TargetCost(approach, normalize(raw))
    return worst


# ---------------------------------------------------------------------------
# Path-similarity mode
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathTarget:
    """A desired sequence of decision outcomes."""

    path: tuple[tuple[int, bool], ...]

    def __post_init__(self) -> None:
        if not self.path:
            raise FitnessError("path target must be non-empty")


def path_target(ast: Ast, pairs) -> PathTarget:
    pairs = tuple((int(d), bool(o)) for d, o in pairs)
    for decision_id, _ in pairs:
        if not 0 <= decision_id < len(ast.decisions):
            raise FitnessError(f"unknown decision id {decision_id}")
    return PathTarget(path=pairs)


def path_hamming_cost(trace: ExecutionTrace, target: PathTarget) -> float:
    """Fraction of desired path positions the trace misses or contradicts."""
    signature = trace.path_signature
    mismatches = 0
    for i, pair in enumerate(target.path):
        if i >= len(signature) or signature[i] != pair:
            mismatches += 1
    return mismatches / len(target.path)
