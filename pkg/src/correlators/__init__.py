"""
Correlator modules: collinear detectors and off-axis closed forms.
"""
