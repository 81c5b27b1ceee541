"""Hand-written lexer for the MiniC subset."""

from __future__ import annotations

from dataclasses import dataclass

from .source import MiniCError

KEYWORDS = frozenset(
    {"int", "if", "else", "while", "do", "switch", "case", "default", "break", "return"}
)

# Longest match first.
_TWO_CHAR = ("&&", "||", "==", "!=", "<=", ">=")
_ONE_CHAR = "<>=!+-*/%(){}[];:,"


class MiniCSyntaxError(MiniCError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, col {col})")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "kw", "punct", "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(text)

    def advance(k: int) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            advance(1)
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                advance(1)
            continue
        if text.startswith("/*", i):
            start_line, start_col = line, col
            advance(2)
            while i < n and not text.startswith("*/", i):
                advance(1)
            if i >= n:
                raise MiniCSyntaxError("unterminated block comment", start_line, start_col)
            advance(2)
            continue
        if ch.isdigit():
            start_line, start_col = line, col
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], start_line, start_col))
            advance(j - i)
            continue
        if ch.isalpha() or ch == "_":
            start_line, start_col = line, col
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "kw" if word in KEYWORDS else "ident"
            tokens.append(Token(kind, word, start_line, start_col))
            advance(j - i)
            continue
        two = text[i : i + 2]
        if two in _TWO_CHAR:
            tokens.append(Token("punct", two, line, col))
            advance(2)
            continue
        if ch in _ONE_CHAR:
            tokens.append(Token("punct", ch, line, col))
            advance(1)
            continue
        raise MiniCSyntaxError(f"unexpected character {ch!r}", line, col)

    tokens.append(Token("eof", "", line, col))
    return tokens
