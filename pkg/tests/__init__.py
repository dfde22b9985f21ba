"""Tests module for galerkin_filter."""
