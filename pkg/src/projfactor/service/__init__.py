"""HTTP service wrapping the core package."""

from .app import app, create_app
from .models import InputDocument, ReportDocument

__all__ = ["app", "create_app", "InputDocument", "ReportDocument"]
