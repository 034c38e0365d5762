"""Command-line front end: expression parser, printer and subcommands."""

from .parser import parse, parse_ratfunc
from .printer import format_op

__all__ = ["parse", "parse_ratfunc", "format_op"]
