"""Test suite for papertorus."""
