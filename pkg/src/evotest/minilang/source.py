"""Source containers and input-range declarations for MiniC programs.

A MiniC file declares its inputs in a header comment block, one line per
input, before any code::

    // input x in [1, 100]
    // input a[6] in [1, 40]

Scalar inputs contribute one gene to the input vector; array inputs of
size N contribute N genes (``a[0] .. a[N-1]``), in declaration order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path


class MiniCError(Exception):
    """Base class for all MiniC front-end errors."""


class InputDeclarationError(MiniCError):
    """Raised for duplicate input names or invalid ranges."""


_INPUT_RE = re.compile(
    r"^\s*//\s*input\s+([A-Za-z_]\w*)\s*(?:\[\s*(\d+)\s*\])?\s+in\s+"
    r"\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*$"
)


@dataclass(frozen=True)
class InputSpec:
    """One declared input: a scalar or a fixed-size integer array."""

    name: str
    low: int
    high: int
    size: int | None = None  # None for scalars

    @property
    def gene_count(self) -> int:
        return 1 if self.size is None else self.size

    def gene_labels(self) -> list[str]:
        if self.size is None:
            return [self.name]
        return [f"{self.name}[{i}]" for i in range(self.size)]


@dataclass(frozen=True)
class SourceProgram:
    """An immutable MiniC program plus its declared input vector."""

    name: str
    text: str
    inputs: tuple[InputSpec, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for spec in self.inputs:
            if spec.name in seen:
                raise InputDeclarationError(f"duplicate input declaration: {spec.name!r}")
            seen.add(spec.name)
            if spec.low > spec.high:
                raise InputDeclarationError(
                    f"input {spec.name!r} has empty range [{spec.low}, {spec.high}]"
                )
            if spec.size is not None and spec.size < 1:
                raise InputDeclarationError(f"input {spec.name!r} has size {spec.size} < 1")

    @property
    def gene_ranges(self) -> tuple[tuple[int, int], ...]:
        """Per-gene inclusive bounds, arrays expanded in place."""
        out: list[tuple[int, int]] = []
        for spec in self.inputs:
            out.extend([(spec.low, spec.high)] * spec.gene_count)
        return tuple(out)

    @property
    def gene_labels(self) -> tuple[str, ...]:
        out: list[str] = []
        for spec in self.inputs:
            out.extend(spec.gene_labels())
        return tuple(out)

    @property
    def dimension(self) -> int:
        return sum(spec.gene_count for spec in self.inputs)

    def ranges_text(self) -> str:
        """Compact human-readable rendering of the declared ranges."""
        parts = []
        for spec in self.inputs:
            label = spec.name if spec.size is None else f"{spec.name}[{spec.size}]"
            parts.append(f"{label} in [{spec.low}, {spec.high}]")
        return "; ".join(parts)


def parse_input_declarations(text: str) -> tuple[InputSpec, ...]:
    """Extract ``// input`` declarations from a program's comment lines."""
    specs: list[InputSpec] = []
    for line in text.splitlines():
        m = _INPUT_RE.match(line)
        if m:
            name, size, low, high = m.groups()
            specs.append(
                InputSpec(
                    name=name,
                    low=int(low),
                    high=int(high),
                    size=int(size) if size is not None else None,
                )
            )
    return tuple(specs)


def program_from_text(name: str, text: str) -> SourceProgram:
    if not text.strip():
        raise MiniCError("empty source text")
    return SourceProgram(name=name, text=text, inputs=parse_input_declarations(text))


def load_program(path: str | Path) -> SourceProgram:
    """Read a ``.minic`` file; the file stem becomes the program name."""
    p = Path(path)
    return program_from_text(p.stem, p.read_text(encoding="utf-8"))
