"""
Test suite for Fidelity API
"""

