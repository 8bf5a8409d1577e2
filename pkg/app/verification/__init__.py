"""
Identity catalogue, suite runner, certificates and compute commands
"""
