"""
Scan drivers behind the command-line interface.
"""
