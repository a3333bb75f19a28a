"""Tests for diffrealize."""
