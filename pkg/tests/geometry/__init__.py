"""
Geometry tests for descentlink.

This package contains tests for the trajectory, slot grid, angles and layout.
"""
