"""
Integration tests for descentlink.

This package contains tests that run the planner end to end, from a
configuration document to the written result files.
"""
