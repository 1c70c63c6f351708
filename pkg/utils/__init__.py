"""Logging setup and text-table helpers shared by the command-line tools."""

from .logging_utils import init_logging
from .table_utils import format_table

__all__ = ["init_logging", "format_table"]
