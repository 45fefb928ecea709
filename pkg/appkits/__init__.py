"""
Adaptateurs applicatifs : series temporelles, portefeuilles, fullerenes, Ising.
"""
