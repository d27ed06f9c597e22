"""drwkz: exact-arithmetic de Rham-Witt forms, Orlik-Solomon algebras,
Milnor K symbol rewriting and sl2 KZ hypergeometric cocycles.

Every computation is exact: p-adic residues, Fractions, or multivariate
rational functions.  No floating point.
"""

__version__ = "0.1.0"
