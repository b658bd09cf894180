"""
Occupation numbers, form factors and the effective momentum spectrum.
"""
