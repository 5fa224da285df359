"""The quantifier-only sequent calculus and its game interpretation."""

from causal_games.logic.axioms import AxiomSet, EqualityAxioms, LatticeAxioms, default_axiom_set
from causal_games.logic.proofs import (
    Proof,
    ProofError,
    Sequent,
    check_proof,
    definability_witness,
    formula_to_game,
    interp_proof,
    parse_proof,
    proof_to_strategy,
    show_proof,
)
from causal_games.logic.syntax import LogicSyntaxError, parse_expr, parse_formula, show_formula

__all__ = [
    "AxiomSet", "EqualityAxioms", "LatticeAxioms", "LogicSyntaxError", "Proof", "ProofError",
    "Sequent", "check_proof", "default_axiom_set", "definability_witness", "formula_to_game",
    "interp_proof", "parse_expr", "parse_formula", "parse_proof", "proof_to_strategy",
    "show_formula", "show_proof",
]
