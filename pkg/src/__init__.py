"""
antibunch

Two-particle correlations of fermion and boson beams emitted by a thermal
Gaussian source: antibunching dip, off-axis correlations, beam profile and
experiment visibility estimates.
"""

__version__ = "0.1.0"
