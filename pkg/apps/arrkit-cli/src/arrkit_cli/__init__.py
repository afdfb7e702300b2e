"""
arrkit command line front end.

Arrangement files (pydantic models), braid words (lark grammar), an
on-disk result cache, full reports and the bundled example corpus.
"""

from arrkit_cli.braid_grammar import BraidSyntaxError, format_braid, parse_braid
from arrkit_cli.models import ArrangementFile, ErrorRecord, Expected, ReportDocument

__version__ = "0.1.0"

__all__ = [
    "ArrangementFile",
    "BraidSyntaxError",
    "ErrorRecord",
    "Expected",
    "ReportDocument",
    "format_braid",
    "parse_braid",
]
