"""Exact homotopy colimits of coherent diagrams over finite posets.

Everything in here is finite and exact: categories and posets are
enumerated, simplicial sets are stored by their nondegenerate cells,
homology runs over arbitrary-precision integers, and every comparison
map carries a machine-checkable certificate.
"""

__version__ = "0.1.0"
