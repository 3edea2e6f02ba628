"""HTTP service exposing the verification suites and matrix dumps."""

from .app import create_app

__all__ = ["create_app"]
