"""HTTP service exposing the time-scale calculus operations.

The ASGI application lives at ``tscalc.service.app:app``; use
:func:`create_app` to construct a fresh instance.
"""

from .app import create_app

__all__ = ["create_app"]
