"""Tests for galerkin_filter.reports."""
