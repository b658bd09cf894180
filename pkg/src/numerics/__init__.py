"""
Quadrature rules, special functions and the angular saddle point.
"""
