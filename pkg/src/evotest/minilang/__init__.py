"""MiniC front end: sources, parsing, and the instrumenting interpreter."""

from .dependence import Chain, DependenceMap, control_dependence
from .interpreter import (
    DEFAULT_LOOP_CAP,
    INT64_MAX,
    INT64_MIN,
    LOOP_CAP_EXCEEDED,
    NORMAL,
    RUNTIME_ERROR,
    ConditionEvent,
    DecisionEvaluation,
    ExecutionTrace,
    InputError,
    LeafObservation,
    execute,
)
from .lexer import MiniCSyntaxError
from .nodes import Ast, Condition, Decision, dump, expr_text
from .parser import parse
from .source import (
    InputDeclarationError,
    InputSpec,
    MiniCError,
    SourceProgram,
    load_program,
    parse_input_declarations,
    program_from_text,
)

__all__ = [
    "Ast",
    "Chain",
    "Condition",
    "ConditionEvent",
    "DEFAULT_LOOP_CAP",
    "Decision",
    "DecisionEvaluation",
    "DependenceMap",
    "ExecutionTrace",
    "INT64_MAX",
    "INT64_MIN",
    "InputDeclarationError",
    "InputError",
    "InputSpec",
    "LOOP_CAP_EXCEEDED",
    "LeafObservation",
    "MiniCError",
    "MiniCSyntaxError",
    "NORMAL",
    "RUNTIME_ERROR",
    "SourceProgram",
    "control_dependence",
    "dump",
    "execute",
    "expr_text",
    "load_program",
    "parse",
    "parse_input_declarations",
    "program_from_text",
]
