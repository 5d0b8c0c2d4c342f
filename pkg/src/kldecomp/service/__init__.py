"""FastAPI service exposing the table engine."""

from .app import create_app

__all__ = ["create_app"]
