"""Tests for zerobench."""
