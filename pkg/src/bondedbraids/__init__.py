"""Exact algebra for bonded braid words.

Subpackages cover the localized polynomial ring, matrices over it, braid
words with bond/kink generators, Burau-type representations and their
reduction, closure combinatorics, Markov moves with equivalence search,
and polynomial invariants.
"""

__version__ = "0.1.0"
