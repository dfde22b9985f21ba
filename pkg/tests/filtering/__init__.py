"""Tests for galerkin_filter.filtering."""
