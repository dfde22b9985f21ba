"""Tests for galerkin_filter.models."""
