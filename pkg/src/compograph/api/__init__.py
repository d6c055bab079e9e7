"""FastAPI facade; see :mod:`compograph.api.app`."""

from .app import app, create_app

__all__ = ["app", "create_app"]
