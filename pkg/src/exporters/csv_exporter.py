"""
Table and Report Export Module
Writes scan tables as CSV and result objects as JSON reports.
"""
import io
import json
import os
import sys
from typing import Any, Optional, TextIO

import pandas as pd

FLOAT_FORMAT = "%.12g"


class CSVExporter:
    """
    Exports scan tables to CSV.

    Floats are written with 12 significant digits; an empty table still
    gets its header line.
    """

    def __init__(self, float_format: str = FLOAT_FORMAT):
        self.float_format = float_format

    def render(self, table: pd.DataFrame) -> str:
        buffer = io.StringIO()
        table.to_csv(buffer, index=False, float_format=self.float_format, lineterminator="\n")
        return buffer.getvalue()

    def export(self, table: pd.DataFrame, output_path: Optional[str] = None, stream: Optional[TextIO] = None) -> Optional[str]:
        """
        Write the table to `output_path`, or to `stream` (stdout by default).

        Returns:
            str: Absolute path of the written file, or None for a stream
        """
        text = self.render(table)
        if output_path is None:
            (stream or sys.stdout).write(text)
            return None
        directory = os.path.dirname(output_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(output_path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        return os.path.abspath(output_path)


class JSONReportExporter:
    """Exports objects with a `to_dict()` method (or plain dicts) as JSON."""

    def __init__(self, indent: int = 2):
        self.indent = indent

    @staticmethod
    def _plain(item: Any) -> Any:
        if isinstance(item, pd.DataFrame):
            return item.to_dict(orient="records")
        if hasattr(item, "to_dict"):
            return item.to_dict()
        return item

    def render(self, payload: Any) -> str:
        if isinstance(payload, (list, tuple)):
            data: Any = [self._plain(item) for item in payload]
        else:
            data = self._plain(payload)
        return json.dumps(data, indent=self.indent, default=str)

    def export(self, payload: Any, output_path: Optional[str] = None, stream: Optional[TextIO] = None) -> Optional[str]:
        text = self.render(payload) + "\n"
        if output_path is None:
            (stream or sys.stdout).write(text)
            return None
        directory = os.path.dirname(output_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(output_path, "w", encoding="utf-8") as f:
            f.write(text)
        return os.path.abspath(output_path)
