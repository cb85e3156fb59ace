"""Exact linking numbers of PL curves in R^3, canonical weakly linked
embeddings of complete-graph pairs, and classification of triangle-linking
data into the weakly linked pattern families."""

__version__ = "0.1.0"
