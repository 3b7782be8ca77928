"""
Link-rate tests for descentlink.
"""
