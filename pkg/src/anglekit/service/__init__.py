"""FastAPI service wrapping the verification core."""

from .app import app, create_app

__all__ = ["app", "create_app"]
