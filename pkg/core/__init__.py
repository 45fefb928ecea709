"""
Noyau Frustra : graphe signe, enregistrements, erreurs, configuration.
"""

TOOL_VERSION = "1.0.0"
