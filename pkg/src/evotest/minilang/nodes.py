"""AST node types for MiniC.

Identifier spaces are dense and assigned in source order during parsing:

* statement ids index ``Ast.statements``
* decision ids index ``Ast.decisions`` (if / while / do-while guards and
  one decision per switch case label)
* condition ids index ``Ast.conditions`` (the atomic comparisons and
  truth-value leaves inside decision guards)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .source import InputSpec

COMPARISON_OPS = frozenset({"==", "!=", "<", "<=", ">", ">="})
TRUTHY = "truthy"


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class IntLiteral:
    value: int
    line: int = 0


@dataclass(frozen=True, slots=True)
class VarRef:
    name: str
    line: int = 0


@dataclass(frozen=True, slots=True)
class IndexRef:
    name: str
    index: "Expr"
    line: int = 0


@dataclass(frozen=True, slots=True)
class Unary:
    op: str  # "-", "!", "+"
    operand: "Expr"
    line: int = 0


@dataclass(frozen=True, slots=True)
class Binary:
    op: str  # arithmetic, comparison, "&&", "||"
    lhs: "Expr"
    rhs: "Expr"
    line: int = 0


Expr = Union[IntLiteral, VarRef, IndexRef, Unary, Binary]


def expr_text(e: Expr) -> str:
    """Compact single-line rendering, used in target listings."""
    if isinstance(e, IntLiteral):
        return str(e.value)
    if isinstance(e, VarRef):
        return e.name
    if isinstance(e, IndexRef):
        return f"{e.name}[{expr_text(e.index)}]"
    if isinstance(e, Unary):
        return f"{e.op}{expr_text(e.operand)}"
    if isinstance(e, Binary):
        return f"({expr_text(e.lhs)} {e.op} {expr_text(e.rhs)})"
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# Decision guards
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Condition:
    """An atomic condition inside a decision guard.

    Comparisons keep their operator and both operand expressions; any
    other guard leaf is a truth-value test (``op == "truthy"``) whose
    recorded rhs is always 0.
    """

    id: int
    decision_id: int
    position: int  # index into the owning decision's condition tuple
    op: str
    lhs: Expr
    rhs: Expr | None
    line: int = 0

    def text(self) -> str:
        if self.op == TRUTHY:
            return expr_text(self.lhs)
        return f"{expr_text(self.lhs)} {self.op} {expr_text(self.rhs)}"


@dataclass(frozen=True, slots=True)
class BoolLeaf:
    condition: Condition


@dataclass(frozen=True, slots=True)
class BoolAnd:
    children: tuple["BoolExpr", ...]


@dataclass(frozen=True, slots=True)
class BoolOr:
    children: tuple["BoolExpr", ...]


@dataclass(frozen=True, slots=True)
class BoolNot:
    child: "BoolExpr"


BoolExpr = Union[BoolLeaf, BoolAnd, BoolOr, BoolNot]


def skeleton_text(b: BoolExpr) -> str:
    if isinstance(b, BoolLeaf):
        return b.condition.text()
    if isinstance(b, BoolAnd):
        return "(" + " && ".join(skeleton_text(c) for c in b.children) + ")"
    if isinstance(b, BoolOr):
        return "(" + " || ".join(skeleton_text(c) for c in b.children) + ")"
    if isinstance(b, BoolNot):
        return f"!{skeleton_text(b.child)}"
    raise TypeError(f"not a guard skeleton: {b!r}")


@dataclass(frozen=True, slots=True)
class Decision:
    id: int
    kind: str  # "if", "while", "do", "case"
    skeleton: BoolExpr
    conditions: tuple[Condition, ...]
    line: int = 0

    def text(self) -> str:
        return skeleton_text(self.skeleton)


# ---------------------------------------------------------------------------
# Statements
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Declarator:
    name: str
    size: int | None  # None for scalars
    init: Expr | None


@dataclass(frozen=True, slots=True)
class Declaration:
    stmt_id: int
    items: tuple[Declarator, ...]
    line: int = 0


@dataclass(frozen=True, slots=True)
class Assignment:
    stmt_id: int
    name: str
    index: Expr | None  # array element assignment when set
    value: Expr
    line: int = 0


@dataclass(frozen=True, slots=True)
class Block:
    body: tuple["Stmt", ...]


@dataclass(frozen=True, slots=True)
class If:
    stmt_id: int
    decision: Decision
    then: "Stmt"
    orelse: "Stmt | None"
    line: int = 0


@dataclass(frozen=True, slots=True)
class While:
    stmt_id: int
    decision: Decision
    body: "Stmt"
    line: int = 0


@dataclass(frozen=True, slots=True)
class DoWhile:
    stmt_id: int
    body: "Stmt"
    decision: Decision
    line: int = 0


@dataclass(frozen=True, slots=True)
class SwitchCase:
    decision: Decision
    value: int
    body: tuple["Stmt", ...]


@dataclass(frozen=True, slots=True)
class Switch:
    stmt_id: int
    scrutinee: Expr
    cases: tuple[SwitchCase, ...]
    default_body: tuple["Stmt", ...] | None
    line: int = 0


@dataclass(frozen=True, slots=True)
class Return:
    stmt_id: int
    value: Expr | None
    line: int = 0


@dataclass(frozen=True, slots=True)
class Break:
    stmt_id: int
    line: int = 0


Stmt = Union[Declaration, Assignment, Block, If, While, DoWhile, Switch, Return, Break]


@dataclass(frozen=True, slots=True)
class Function:
    name: str
    body: Block
    line: int = 0


@dataclass(frozen=True)
class Ast:
    """A parsed program with dense statement / decision / condition ids.

    Immutable after construction; safe to share across concurrent runs.
    """

    program_name: str
    inputs: tuple[InputSpec, ...]
    functions: tuple[Function, ...]
    statements: tuple[Stmt, ...]
    decisions: tuple[Decision, ...]
    conditions: tuple[Condition, ...]
    statement_lines: tuple[int, ...] = field(default=())

    @property
    def entry(self) -> Function:
        return self.functions[0]

    @property
    def gene_ranges(self) -> tuple[tuple[int, int], ...]:
        out: list[tuple[int, int]] = []
        for spec in self.inputs:
            out.extend([(spec.low, spec.high)] * spec.gene_count)
        return tuple(out)

    @property
    def dimension(self) -> int:
        return sum(spec.gene_count for spec in self.inputs)


def dump(ast: Ast) -> str:
    """Canonical text form of an Ast, usable for structural comparison."""
    lines = [f"program {ast.program_name}"]
    for spec in ast.inputs:
        size = "" if spec.size is None else f"[{spec.size}]"
        lines.append(f"  input {spec.name}{size} in [{spec.low}, {spec.high}]")
    for d in ast.decisions:
        lines.append(f"  decision {d.id} {d.kind} line={d.line} {d.text()}")
    for c in ast.conditions:
        lines.append(f"  condition {c.id} of d{c.decision_id} pos={c.position} {c.text()}")
    lines.append(f"  statements {len(ast.statements)}")
    for s in ast.statements:
        lines.append(f"    s{s.stmt_id} {type(s).__name__} line={s.line}")
    return "\n".join(lines)
