"""Presentations of monoidal categories by generators, relations and rewriting.

Modules:

- ``sigcat``: signatures, terms, the term DSL and slice decomposition
- ``rewriting``: canonical-form letters and the rewriting systems B, R and G
- ``theories``: built-in equational theories and the model checker
- ``multirel``: multirelations, relations and their canonical forms
- ``games`` / ``gamespres``: filiform games, strategies and their presentation
- ``logic``: the quantifier sequent calculus and its game interpretation
- ``cli``: the ``causal-games`` command
"""

__version__ = "0.1.0"
