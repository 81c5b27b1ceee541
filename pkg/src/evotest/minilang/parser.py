"""Recursive-descent parser for MiniC.

Grammar (documented for users in the README)::

    program     := function+
    function    := "int" IDENT "(" ")" block
    block       := "{" statement* "}"
    statement   := declaration | assignment | if | while | dowhile
                 | switch | return | break | block | ";"
    declaration := "int" declarator ("," declarator)* ";"
    declarator  := IDENT ("[" INT "]")? ("=" expr)?
    assignment  := IDENT ("[" expr "]")? "=" expr ";"
    if          := "if" "(" expr ")" statement ("else" statement)?
    while       := "while" "(" expr ")" statement
    dowhile     := "do" statement "while" "(" expr ")" ";"
    switch      := "switch" "(" expr ")" "{" case* default? "}"
    case        := "case" ("-")? INT ":" statement*
    default     := "default" ":" statement*
    return      := "return" expr? ";"
    break       := "break" ";"

Expressions use C precedence: ``||`` < ``&&`` < equality < relational
< additive < multiplicative < unary. Parsing identical text always
yields structurally identical trees with identical ids.
"""

from __future__ import annotations

from .lexer import MiniCSyntaxError, Token, tokenize
from .nodes import (
    COMPARISON_OPS,
    TRUTHY,
    Assignment,
    Ast,
    Binary,
    Block,
    BoolAnd,
    BoolExpr,
    BoolLeaf,
    BoolNot,
    BoolOr,
    Break,
    Condition,
    Declaration,
    Declarator,
    Decision,
    DoWhile,
    Expr,
    Function,
    If,
    IndexRef,
    IntLiteral,
    Return,
    Switch,
    SwitchCase,
    Unary,
    VarRef,
    While,
)
from .source import SourceProgram


def parse(source: SourceProgram) -> Ast:
    """Parse a source program into an Ast with dense, stable ids."""
    return _Parser(source).parse_program()


class _Parser:
    def __init__(self, source: SourceProgram):
        self.source = source
        self.tokens = tokenize(source.text)
        self.pos = 0
        self.statements: list = []
        self.decisions: list[Decision] = []
        self.conditions: list[Condition] = []

    # -- token helpers ------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        if not self.at(kind, text):
            want = text if text is not None else kind
            raise MiniCSyntaxError(f"expected {want!r}, found {tok.text!r}", tok.line, tok.col)
        return self.next()

    def error(self, message: str) -> MiniCSyntaxError:
        tok = self.peek()
        return MiniCSyntaxError(message, tok.line, tok.col)

    # -- program structure --------------------------------------------

    def parse_program(self) -> Ast:
        functions: list[Function] = []
        while not self.at("eof"):
            functions.append(self.parse_function())
        if not functions:
            raise MiniCSyntaxError("program has no functions", 1, 1)
        return Ast(
            program_name=self.source.name,
            inputs=self.source.inputs,
            functions=tuple(functions),
            statements=tuple(self.statements),
            decisions=tuple(self.decisions),
            conditions=tuple(self.conditions),
            statement_lines=tuple(s.line for s in self.statements),
        )

    def parse_function(self) -> Function:
        start = self.expect("kw", "int")
        name = self.expect("ident").text
        self.expect("punct", "(")
        self.expect("punct", ")")
        body = self.parse_block()
        return Function(name=name, body=body, line=start.line)

    def parse_block(self) -> Block:
        self.expect("punct", "{")
        body: list = []
        while not self.at("punct", "}"):
            if self.at("eof"):
                raise self.error("unterminated block")
            stmt = self.parse_statement()
            if stmt is not None:
                body.append(stmt)
        self.expect("punct", "}")
        return Block(body=tuple(body))

    # -- statements ----------------------------------------------------

    def _new_stmt_id(self) -> int:
        return len(self.statements)

    def _register(self, stmt):
        self.statements.append(stmt)
        return stmt

    def parse_statement(self):
        tok = self.peek()
        if tok.kind == "punct" and tok.text == ";":
            self.next()  # empty statement carries no id
            return None
        if tok.kind == "punct" and tok.text == "{":
            return self.parse_block()
        if tok.kind == "kw":
            if tok.text == "int":
                return self.parse_declaration()
            if tok.text == "if":
                return self.parse_if()
            if tok.text == "while":
                return self.parse_while()
            if tok.text == "do":
                return self.parse_dowhile()
            if tok.text == "switch":
                return self.parse_switch()
            if tok.text == "return":
                return self.parse_return()
            if tok.text == "break":
                self.next()
                self.expect("punct", ";")
                return self._register(Break(stmt_id=self._new_stmt_id(), line=tok.line))
        if tok.kind == "ident":
            return self.parse_assignment()
        raise self.error(f"unexpected token {tok.text!r}")

    def parse_declaration(self):
        start = self.expect("kw", "int")
        items: list[Declarator] = []
        while True:
            name = self.expect("ident").text
            size = None
            if self.at("punct", "["):
                self.next()
                size_tok = self.expect("int")
                size = int(size_tok.text)
                if size < 1:
                    raise MiniCSyntaxError("array size must be >= 1", size_tok.line, size_tok.col)
                self.expect("punct", "]")
            init = None
            if self.at("punct", "="):
                eq = self.next()
                if size is not None:
                    raise MiniCSyntaxError("array declarations take no initializer", eq.line, eq.col)
                init = self.parse_expr()
            items.append(Declarator(name=name, size=size, init=init))
            if self.at("punct", ","):
                self.next()
                continue
            break
        self.expect("punct", ";")
        return self._register(
            Declaration(stmt_id=self._new_stmt_id(), items=tuple(items), line=start.line)
        )

    def parse_assignment(self):
        name_tok = self.expect("ident")
        index = None
        if self.at("punct", "["):
            self.next()
            index = self.parse_expr()
            self.expect("punct", "]")
        self.expect("punct", "=")
        value = self.parse_expr()
        self.expect("punct", ";")
        return self._register(
            Assignment(
                stmt_id=self._new_stmt_id(),
                name=name_tok.text,
                index=index,
                value=value,
                line=name_tok.line,
            )
        )

    def parse_if(self):
        start = self.expect("kw", "if")
        self.expect("punct", "(")
        guard = self.parse_expr()
        self.expect("punct", ")")
        # Reserve the statement slot before descending into branches so
        # ids stay in source order.
        stmt_id = self._new_stmt_id()
        self.statements.append(None)
        decision = self._make_decision("if", guard, start.line)
        then = self.parse_statement()
        orelse = None
        if self.at("kw", "else"):
            self.next()
            orelse = self.parse_statement()
        stmt = If(stmt_id=stmt_id, decision=decision, then=then, orelse=orelse, line=start.line)
        self.statements[stmt_id] = stmt
        return stmt

    def parse_while(self):
        start = self.expect("kw", "while")
        self.expect("punct", "(")
        guard = self.parse_expr()
        self.expect("punct", ")")
        stmt_id = self._new_stmt_id()
        self.statements.append(None)
        decision = self._make_decision("while", guard, start.line)
        body = self.parse_statement()
        stmt = While(stmt_id=stmt_id, decision=decision, body=body, line=start.line)
        self.statements[stmt_id] = stmt
        return stmt

    def parse_dowhile(self):
        start = self.expect("kw", "do")
        stmt_id = self._new_stmt_id()
        self.statements.append(None)
        body = self.parse_statement()
        self.expect("kw", "while")
        self.expect("punct", "(")
        guard_tok = self.peek()
        guard = self.parse_expr()
        self.expect("punct", ")")
        self.expect("punct", ";")
        decision = self._make_decision("do", guard, guard_tok.line)
        stmt = DoWhile(stmt_id=stmt_id, body=body, decision=decision, line=start.line)
        self.statements[stmt_id] = stmt
        return stmt

    def parse_switch(self):
        start = self.expect("kw", "switch")
        self.expect("punct", "(")
        scrutinee = self.parse_expr()
        self.expect("punct", ")")
        self.expect("punct", "{")
        stmt_id = self._new_stmt_id()
        self.statements.append(None)
        cases: list[SwitchCase] = []
        default_body = None
        while not self.at("punct", "}"):
            if self.at("kw", "case"):
                if default_body is not None:
                    raise self.error("'default' must be the last switch clause")
                case_tok = self.next()
                value = self._parse_case_constant()
                self.expect("punct", ":")
                body = self._parse_clause_body()
                decision = self._make_case_decision(scrutinee, value, case_tok.line)
                cases.append(SwitchCase(decision=decision, value=value, body=body))
            elif self.at("kw", "default"):
                if default_body is not None:
                    raise self.error("duplicate 'default' clause")
                self.next()
                self.expect("punct", ":")
                default_body = self._parse_clause_body()
            else:
                raise self.error("expected 'case' or 'default'")
        self.expect("punct", "}")
        if not cases:
            raise self.error("switch needs at least one case")
        stmt = Switch(
            stmt_id=stmt_id,
            scrutinee=scrutinee,
            cases=tuple(cases),
            default_body=default_body,
            line=start.line,
        )
        self.statements[stmt_id] = stmt
        return stmt

    def _parse_case_constant(self) -> int:
        negative = False
        if self.at("punct", "-"):
            self.next()
            negative = True
        tok = self.expect("int")
        value = int(tok.text)
        return -value if negative else value

    def _parse_clause_body(self) -> tuple:
        body: list = []
        while not (
            self.at("kw", "case") or self.at("kw", "default") or self.at("punct", "}")
        ):
            if self.at("eof"):
                raise self.error("unterminated switch")
            stmt = self.parse_statement()
            if stmt is not None:
                body.append(stmt)
        return tuple(body)

    def parse_return(self):
        start = self.expect("kw", "return")
        value = None
        if not self.at("punct", ";"):
            value = self.parse_expr()
        self.expect("punct", ";")
        return self._register(Return(stmt_id=self._new_stmt_id(), value=value, line=start.line))

    # -- decisions -----------------------------------------------------

    def _make_decision(self, kind: str, guard: Expr, line: int) -> Decision:
        decision_id = len(self.decisions)
        conditions: list[Condition] = []
        skeleton = self._skeleton(guard, decision_id, conditions, line)
        decision = Decision(
            id=decision_id,
            kind=kind,
            skeleton=skeleton,
            conditions=tuple(conditions),
            line=line,
        )
        self.decisions.append(decision)
        self.conditions.extend(conditions)
        return decision

    def _make_case_decision(self, scrutinee: Expr, value: int, line: int) -> Decision:
        decision_id = len(self.decisions)
        cond = Condition(
            id=len(self.conditions),
            decision_id=decision_id,
            position=0,
            op="==",
            lhs=scrutinee,
            rhs=IntLiteral(value=value, line=line),
            line=line,
        )
        decision = Decision(
            id=decision_id,
            kind="case",
            skeleton=BoolLeaf(condition=cond),
            conditions=(cond,),
            line=line,
        )
        self.decisions.append(decision)
        self.conditions.append(cond)
        return decision

    def _skeleton(
        self, e: Expr, decision_id: int, conditions: list[Condition], line: int
    ) -> BoolExpr:
        """Extract the boolean structure of a guard.

        ``&&`` / ``||`` / ``!`` form the skeleton; everything below them
        is an atomic condition: a comparison keeps its operator, any
        other expression becomes a truth-value test.
        """
        if isinstance(e, Binary) and e.op in ("&&", "||"):
            ctor = BoolAnd if e.op == "&&" else BoolOr
            children: list[BoolExpr] = []
            for side in (e.lhs, e.rhs):
                child = self._skeleton(side, decision_id, conditions, line)
                # Flatten same-operator chains: a && b && c has one node.
                if isinstance(child, ctor):
                    children.extend(child.children)
                else:
                    children.append(child)
            return ctor(children=tuple(children))
        if isinstance(e, Unary) and e.op == "!":
            return BoolNot(child=self._skeleton(e.operand, decision_id, conditions, line))
        if isinstance(e, Binary) and e.op in COMPARISON_OPS:
            cond = Condition(
                id=len(self.conditions) + len(conditions),
                decision_id=decision_id,
                position=len(conditions),
                op=e.op,
                lhs=e.lhs,
                rhs=e.rhs,
                line=e.line or line,
            )
        else:
            cond = Condition(
                id=len(self.conditions) + len(conditions),
                decision_id=decision_id,
                position=len(conditions),
                op=TRUTHY,
                lhs=e,
                rhs=None,
                line=getattr(e, "line", 0) or line,
            )
        conditions.append(cond)
        return BoolLeaf(condition=cond)

    # -- expressions ----------------------------------------------------

    def parse_expr(self) -> Expr:
        return self.parse_or()

    def parse_or(self) -> Expr:
        left = self.parse_and()
        while self.at("punct", "||"):
            tok = self.next()
            right = self.parse_and()
            left = Binary(op="||", lhs=left, rhs=right, line=tok.line)
        return left

    def parse_and(self) -> Expr:
        left = self.parse_equality()
        while self.at("punct", "&&"):
            tok = self.next()
            right = self.parse_equality()
            left = Binary(op="&&", lhs=left, rhs=right, line=tok.line)
        return left

    def parse_equality(self) -> Expr:
        left = self.parse_relational()
        while self.at("punct", "==") or self.at("punct", "!="):
            tok = self.next()
            right = self.parse_relational()
            left = Binary(op=tok.text, lhs=left, rhs=right, line=tok.line)
        return left

    def parse_relational(self) -> Expr:
        left = self.parse_additive()
        while any(self.at("punct", op) for op in ("<", "<=", ">", ">=")):
            tok = self.next()
            right = self.parse_additive()
            left = Binary(op=tok.text, lhs=left, rhs=right, line=tok.line)
        return left

    def parse_additive(self) -> Expr:
        left = self.parse_multiplicative()
        while self.at("punct", "+") or self.at("punct", "-"):
            tok = self.next()
            right = self.parse_multiplicative()
            left = Binary(op=tok.text, lhs=left, rhs=right, line=tok.line)
        return left

    def parse_multiplicative(self) -> Expr:
        left = self.parse_unary()
        while any(self.at("punct", op) for op in ("*", "/", "%")):
            tok = self.next()
            right = self.parse_unary()
            left = Binary(op=tok.text, lhs=left, rhs=right, line=tok.line)
        return left

    def parse_unary(self) -> Expr:
        if any(self.at("punct", op) for op in ("!", "-", "+")):
            tok = self.next()
            operand = self.parse_unary()
            return Unary(op=tok.text, operand=operand, line=tok.line)
        return self.parse_primary()

    def parse_primary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            return IntLiteral(value=int(tok.text), line=tok.line)
        if tok.kind == "ident":
            self.next()
            if self.at("punct", "["):
                self.next()
                index = self.parse_expr()
                self.expect("punct", "]")
                return IndexRef(name=tok.text, index=index, line=tok.line)
            return VarRef(name=tok.text, line=tok.line)
        if tok.kind == "punct" and tok.text == "(":
            self.next()
            inner = self.parse_expr()
            self.expect("punct", ")")
            return inner
        raise self.error(f"expected an expression, found {tok.text!r}")
