"""A step-by-step tracing interpreter for a lazy functional language."""

from .core import (
    CoreProgram, desugar_expr, desugar_program, merge_bindings,
)
from .errors import (
    EvalError, LexError, ParseError, Span, StepwiseError, TypecheckError,
)
from .machine import Machine, run
from .parser import parse_expr, parse_program
from .prelude import load_prelude, prelude_source
from .trace import (
    Step, Trace, render_expr, render_trace_plain, render_trace_structured,
)
from .typecheck import infer_expr, infer_program
from .types import render_type

__all__ = [
    "CoreProgram", "EvalError", "LexError", "Machine", "ParseError", "Span",
    "Step", "StepwiseError", "Trace", "TypecheckError", "desugar_expr",
    "desugar_program", "infer_expr", "infer_program", "load_prelude",
    "merge_bindings", "parse_expr", "parse_program", "prelude_source",
    "render_expr", "render_trace_plain", "render_trace_structured",
    "render_type", "run",
]
