"""veredit: an ed-style line editor over a small verified buffer core."""
from veredit.buffer import (
    Buffer, Line, check_line, delete_line, first_n, insert_line, make_buffer,
    read_line, skip_n,
)
from veredit.dsl import (
    Command, DeleteLine, EvalResult, InsertLine, ReadLine, editor_eval, eval_trace,
)

__version__ = "0.1.0"

__all__ = [
    "Buffer", "Line", "check_line", "make_buffer", "first_n", "skip_n",
    "read_line", "insert_line", "delete_line",
    "Command", "InsertLine", "ReadLine", "DeleteLine", "EvalResult",
    "editor_eval", "eval_trace",
]
