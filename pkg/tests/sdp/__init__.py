"""
SDP solver tests for descentlink.
"""
