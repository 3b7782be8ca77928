"""
Central test package for descentlink.

This package contains the unit and integration suites; long studies live in
tests/acceptance_study.py.
"""
