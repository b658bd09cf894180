"""
Exporters for scan tables and reports.
"""

from .csv_exporter import CSVExporter, JSONReportExporter

__all__ = ['CSVExporter', 'JSONReportExporter']
