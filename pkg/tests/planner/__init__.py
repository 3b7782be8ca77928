"""
Configuration, run-loop and output tests for descentlink.
"""
