"""
Modele nul, mesures scalaires et bipartivite spectrale.
"""
