"""
Channel tests for descentlink.
"""
