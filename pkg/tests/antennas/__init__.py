"""
Antenna tests for descentlink.
"""
