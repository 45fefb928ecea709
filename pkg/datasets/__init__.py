"""
Chargement des fichiers de reseaux.
"""
