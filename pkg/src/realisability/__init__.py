"""Classical number realisability over first-order arithmetic.

A library and command line tool for checking Hilbert-style arithmetic
proofs, extracting executable realisers from them, validating realisers
dynamically against pole semantics, building well-ordering realisers
over an ordinal notation system, and working with ramified
truth/realisability languages and their translations.
"""

__version__ = "0.1.0"
