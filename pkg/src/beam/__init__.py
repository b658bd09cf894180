"""
Far-field beam profile of the emitted single-particle wave function.
"""
