"""Unit tests for loggas package."""
