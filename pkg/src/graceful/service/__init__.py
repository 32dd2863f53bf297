"""FastAPI service wrapping the numerical core."""

from .app import app

__all__ = ["app"]
