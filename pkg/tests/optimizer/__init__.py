"""
Per-slot optimizer tests for descentlink.
"""
