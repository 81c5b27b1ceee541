"""Control-dependence chains derived from the nesting structure.

In this structured language the control-dependence tree falls out of
nesting: a node's chain is the sequence of (decision id, required
outcome) pairs that must hold for control to reach it, innermost first,
ending implicitly at the entry node. An empty chain means the node is
reachable straight from entry.

Details of the derivation:

* ``if``: the then-branch needs (d, True), the else-branch (d, False).
* ``while``: the body needs (d, True).
* ``do-while``: the body runs unconditionally the first time, so it
  inherits the statement's own chain, not (d, True).
* ``switch``: evaluating case ``i`` requires every earlier case to be
  False (the match scan stops at the first hit), so the chain of case
  ``i`` prefixes (case[i-1], False) .. (case[0], False). A case body is
  charged to (case[i], True); with fall-through this overconstrains
  bodies reached from an earlier match, which only weakens guidance,
  never correctness (coverage itself is trace-based).
"""

from __future__ import annotations

from dataclasses import dataclass

from .nodes import Ast, Block, DoWhile, If, Switch, While

Chain = tuple[tuple[int, bool], ...]


@dataclass(frozen=True)
class DependenceMap:
    ast: Ast
    decision_chains: dict[int, Chain]
    statement_chains: dict[int, Chain]

    def chain(self, decision_id: int) -> Chain:
        """Enclosing (decision, outcome) requirements, innermost first."""
        return self.decision_chains[decision_id]

    def statement_chain(self, stmt_id: int) -> Chain:
        return self.statement_chains[stmt_id]

    def depth(self, decision_id: int) -> int:
        """Chain length counting the entry node as the final link."""
        return len(self.decision_chains[decision_id]) + 1


def control_dependence(ast: Ast) -> DependenceMap:
    decision_chains: dict[int, Chain] = {}
    statement_chains: dict[int, Chain] = {}

    def visit(stmt, context: Chain) -> None:
        if stmt is None:
            return
        if isinstance(stmt, Block):
            for inner in stmt.body:
                visit(inner, context)
            return
        statement_chains[stmt.stmt_id] = context
        if isinstance(stmt, If):
            decision_chains[stmt.decision.id] = context
            visit(stmt.then, ((stmt.decision.id, True),) + context)
            if stmt.orelse is not None:
                visit(stmt.orelse, ((stmt.decision.id, False),) + context)
        elif isinstance(stmt, While):
            decision_chains[stmt.decision.id] = context
            visit(stmt.body, ((stmt.decision.id, True),) + context)
        elif isinstance(stmt, DoWhile):
            decision_chains[stmt.decision.id] = context
            visit(stmt.body, context)
        elif isinstance(stmt, Switch):
            prior: Chain = ()
            for case in stmt.cases:
                decision_chains[case.decision.id] = prior + context
                body_context = ((case.decision.id, True),) + prior + context
                for inner in case.body:
                    visit(inner, body_context)
                prior = ((case.decision.id, False),) + prior
            if stmt.default_body is not None:
                for inner in stmt.default_body:
                    visit(inner, prior + context)

    for function in ast.functions:
        visit(function.body, ())
    return DependenceMap(
        ast=ast, decision_chains=decision_chains, statement_chains=statement_chains
    )
