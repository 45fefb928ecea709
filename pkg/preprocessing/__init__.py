"""
Pretraitement : reduction des instances avant resolution.
"""
