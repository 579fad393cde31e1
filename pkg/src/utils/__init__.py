"""Utility modules: configuration constants and the exception hierarchy."""
