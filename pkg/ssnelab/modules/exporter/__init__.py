from .ReportExporter import ReportExporter
