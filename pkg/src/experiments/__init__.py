"""
Experiment presets and dip visibility estimates.
"""
