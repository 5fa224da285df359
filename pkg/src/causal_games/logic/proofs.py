"""Proof trees of the quantifier-only sequent calculus and their strategies.

Sequents have one formula on each side.  The rules, read bottom-up::

    forall-L t :  ∀x A ⊢ B   from  A[t/x] ⊢ B
    forall-R x :  A ⊢ ∀y B   from  A ⊢ B[x/y]     x not free in the conclusion
    exists-L x :  ∃y A ⊢ B   from  A[x/y] ⊢ B     x not free in the conclusion
    exists-R t :  A ⊢ ∃x B   from  A ⊢ B[t/x]
    ax         :  P ⊢ Q      when (P, Q) is an axiom
    cut C      :  A ⊢ B      from  A ⊢ C  and  C ⊢ B

Proof files are s-expressions::

    file  ::= (proof (|- A B) tree)
    tree  ::= (forall-L expr tree) | (forall-R x tree)
            | (exists-L x tree)    | (exists-R expr tree)
            | (ax) | (ax P Q) | (cut formula tree tree)

Only the root sequent is written; every other conclusion is computed from it.
"""

from __future__ import annotations

from dataclasses import dataclass

from causal_games.games import (
    CyclicStrategy,
    Game,
    Strategy,
    compose_strategies,
    filiform,
    is_strategy,
)
from causal_games.logic.axioms import AxiomSet, default_axiom_set
from causal_games.logic.syntax import (
    Atomic,
    Exists,
    Expr,
    Forall,
    Formula,
    LogicSyntaxError,
    Var,
    as_formula,
    expr_fv,
    fv,
    instantiate,
    parse_sexp,
    sexp_to_expr,
    sexp_to_formula,
    show_expr,
    show_formula,
)

RULES = ("forall-L", "forall-R", "exists-L", "exists-R", "ax", "cut")


class ProofError(ValueError):
    """A rule-schema, freshness or axiom violation, located by a node path."""

    def __init__(self, message: str, path: tuple[int, ...] = ()):
        self.path = path
        where = "root" + "".join(f".{i}" for i in path)
        super().__init__(f"at {where}: {message}")


@dataclass(frozen=True)
class Sequent:
    left: Formula
    right: Formula

    def __post_init__(self):
        # bare expressions are atomic propositions
        object.__setattr__(self, "left", as_formula(self.left))
        object.__setattr__(self, "right", as_formula(self.right))

    def __str__(self):
        return f"{show_formula(self.left)} |- {show_formula(self.right)}"


@dataclass(frozen=True)
class Proof:
    rule: str
    conclusion: Sequent
    premises: tuple["Proof", ...] = ()
    term: Expr | None = None  # witness of forall-L / exists-R
    var: str | None = None  # eigenvariable of forall-R / exists-L
    cut: Formula | None = None

    def has_cut(self) -> bool:
        return self.rule == "cut" or any(p.has_cut() for p in self.premises)


def cut(left: Proof, right: Proof) -> Proof:
    """Join ``A ⊢ C`` and ``C ⊢ B`` into ``A ⊢ B``."""
    if left.conclusion.right != right.conclusion.left:
        raise ProofError(f"cannot cut {left.conclusion} against {right.conclusion}")
    seq = Sequent(left.conclusion.left, right.conclusion.right)
    return Proof("cut", seq, (left, right), cut=left.conclusion.right)


# -- building from a skeleton ------------------------------------------------------


def _premise(rule: str, seq: Sequent, arg, path) -> Sequent:
    """The premise sequent of a one-premise rule, or a ProofError on shape mismatch."""
    a, b = seq.left, seq.right
    if rule in ("forall-L", "exists-L"):
        want = Forall if rule == "forall-L" else Exists
        if not isinstance(a, want):
            raise ProofError(f"{rule} needs a left formula {want.__name__.lower()}, got {show_formula(a)}", path)
        t = arg if rule == "forall-L" else Var(arg)
        return Sequent(instantiate(a, t), b)
    want = Forall if rule == "forall-R" else Exists
    if not isinstance(b, want):
        raise ProofError(f"{rule} needs a right formula {want.__name__.lower()}, got {show_formula(b)}", path)
    t = Var(arg) if rule == "forall-R" else arg
    return Sequent(a, instantiate(b, t))


def build_proof(seq: Sequent, tree, path: tuple[int, ...] = ()) -> Proof:
    """Attach conclusions to a parsed skeleton, starting from the root sequent."""
    if not isinstance(tree, list) or not tree or not isinstance(tree[0], str):
        raise ProofError(f"expected a rule application, got {tree!r}", path)
    rule, args = tree[0], tree[1:]
    try:
        if rule in ("forall-R", "exists-L"):
            if len(args) != 2 or not isinstance(args[0], str):
                raise ProofError(f"{rule} takes a variable and a subproof", path)
            sexp_to_expr(args[0])  # validates the identifier
            sub = build_proof(_premise(rule, seq, args[0], path), args[1], path + (0,))
            return Proof(rule, seq, (sub,), var=args[0])
        if rule in ("forall-L", "exists-R"):
            if len(args) != 2:
                raise ProofError(f"{rule} takes a witness term and a subproof", path)
            t = sexp_to_expr(args[0])
            sub = build_proof(_premise(rule, seq, t, path), args[1], path + (0,))
            return Proof(rule, seq, (sub,), term=t)
        if rule == "ax":
            if args:
                if len(args) != 2:
                    raise ProofError("ax takes no arguments or the two propositions", path)
                stated = Sequent(Atomic(sexp_to_expr(args[0])), Atomic(sexp_to_expr(args[1])))
                if stated != seq:
                    raise ProofError(f"ax states {stated} but the sequent is {seq}", path)
            return Proof("ax", seq)
        if rule == "cut":
            if len(args) != 3:
                raise ProofError("cut takes a formula and two subproofs", path)
            c = sexp_to_formula(args[0])
            left = build_proof(Sequent(seq.left, c), args[1], path + (0,))
            right = build_proof(Sequent(c, seq.right), args[2], path + (1,))
            return Proof("cut", seq, (left, right), cut=c)
    except LogicSyntaxError as e:
        raise ProofError(str(e), path) from None
    raise ProofError(f"unknown rule {rule!r}", path)


def parse_sequent(text_or_sexp) -> Sequent:
    s = parse_sexp(text_or_sexp) if isinstance(text_or_sexp, str) else text_or_sexp
    if not (isinstance(s, list) and len(s) == 3 and s[0] == "|-"):
        raise LogicSyntaxError("a sequent is written (|- A B)")
    return Sequent(sexp_to_formula(s[1]), sexp_to_formula(s[2]))


def parse_proof(text: str) -> Proof:
    s = parse_sexp(text)
    if not (isinstance(s, list) and len(s) == 3 and s[0] == "proof"):
        raise LogicSyntaxError("a proof file is written (proof (|- A B) tree)")
    return build_proof(parse_sequent(s[1]), s[2])


def _tree_text(p: Proof) -> str:
    match p.rule:
        case "ax":
            return "(ax)"
        case "forall-R" | "exists-L":
            return f"({p.rule} {p.var} {_tree_text(p.premises[0])})"
        case "forall-L" | "exists-R":
            return f"({p.rule} {show_expr(p.term)} {_tree_text(p.premises[0])})"
        case "cut":
            return f"(cut {show_formula(p.cut)} {_tree_text(p.premises[0])} {_tree_text(p.premises[1])})"
    raise ValueError(p.rule)


def show_proof(p: Proof) -> str:
    c = p.conclusion
    return f"(proof (|- {show_formula(c.left)} {show_formula(c.right)}) {_tree_text(p)})"


# -- checking ---------------------------------------------------------------------------


def check_proof(p: Proof, ax: AxiomSet | None = None, path: tuple[int, ...] = ()) -> Sequent:
    """Verify every node against its rule schema; return the root conclusion."""
    ax = ax or default_axiom_set()
    seq = p.conclusion
    arity = 2 if p.rule == "cut" else 0 if p.rule == "ax" else 1
    if p.rule not in RULES:
        raise ProofError(f"unknown rule {p.rule!r}", path)
    if len(p.premises) != arity:
        raise ProofError(f"{p.rule} has {arity} premise(s), found {len(p.premises)}", path)
    if p.rule == "ax":
        if not (isinstance(seq.left, Atomic) and isinstance(seq.right, Atomic)):
            raise ProofError(f"ax needs atomic propositions, got {seq}", path)
        if not ax.member(seq.left.expr, seq.right.expr):
            raise ProofError(f"({show_formula(seq.left)}, {show_formula(seq.right)}) is not an axiom", path)
        return seq
    if p.rule == "cut":
        left, right = p.premises
        if left.conclusion != Sequent(seq.left, p.cut) or right.conclusion != Sequent(p.cut, seq.right):
            raise ProofError("cut premises do not share the cut formula", path)
    else:
        arg = p.term if p.rule in ("forall-L", "exists-R") else p.var
        if arg is None:
            raise ProofError(f"{p.rule} is missing its argument", path)
        if p.premises[0].conclusion != _premise(p.rule, seq, arg, path):
            raise ProofError(f"premise {p.premises[0].conclusion} does not match {p.rule}", path)
        if p.rule in ("forall-R", "exists-L") and p.var in fv(seq.left) | fv(seq.right):
            raise ProofError(f"eigenvariable {p.var} is free in the conclusion {seq}", path)
    for i, q in enumerate(p.premises):
        check_proof(q, ax, path + (i,))
    return seq


# -- interpretation ----------------------------------------------------------------------


def formula_to_game(f: Formula) -> Game:
    """∀ contributes an Opponent move, ∃ a Proponent move, atoms nothing."""
    word = []
    while not isinstance(f, Atomic):
        word.append("O" if isinstance(f, Forall) else "P")
        f = f.body
    return filiform("".join(word))


def proof_to_strategy(p: Proof, ax: AxiomSet | None = None) -> Strategy:
    """Witness dependencies of a cut-free proof as a strategy on ⟦A⟧ ⊸ ⟦B⟧.

    Quantifiers of the conclusion are numbered along the spines, left formula
    first.  An Opponent rule binds its eigenvariable to its move; a Proponent
    rule with witness ``t`` depends on the moves bound to the variables of ``t``.
    """
    check_proof(p, ax)
    if p.has_cut():
        raise ProofError("proof_to_strategy needs a cut-free proof; use interp_proof")
    dom, cod = formula_to_game(p.conclusion.left), formula_to_game(p.conclusion.right)
    pairs = []
    node, env, li, ri = p, {}, 0, len(dom)
    while node.rule != "ax":
        if node.rule in ("exists-L", "forall-R"):
            move = li if node.rule == "exists-L" else ri
            env[node.var] = move
        else:
            move = li if node.rule == "forall-L" else ri
            pairs.extend((env[v], move) for v in sorted(expr_fv(node.term)) if v in env)
        if node.rule.endswith("-L"):
            li += 1
        else:
            ri += 1
        node = node.premises[0]
    return Strategy(dom, cod, pairs)


def interp_proof(p: Proof, ax: AxiomSet | None = None) -> Strategy:
    """Interpretation extended to cuts by composing the strategies of the premises.

    This is an extension: a cut must sit at the root or directly above another
    cut, so that each cut-free segment has a closed conclusion of its own.
    """
    check_proof(p, ax)
    return _interp(p, ax)


def _interp(p: Proof, ax) -> Strategy:
    if p.rule != "cut":
        if p.has_cut():
            raise ProofError("cuts are only interpreted at the root or directly above another cut")
        return proof_to_strategy(p, ax)
    sigma: CyclicStrategy = compose_strategies(_interp(p.premises[0], ax), _interp(p.premises[1], ax))
    if not is_strategy(sigma):
        raise ProofError("composite of the cut premises is not a strategy")
    return Strategy(sigma.dom, sigma.cod, sigma.pairs)


# -- worked proofs -------------------------------------------------------------------------

WITNESSES: dict[str, str] = {
    "muP": "(proof (|- (exists x (exists y (and x y))) (exists z z)) (exists-L x (exists-L y (exists-R (and x y) (ax)))))",
    "etaP": "(proof (|- top (exists x x)) (exists-R top (ax)))",
    "deltaP": "(proof (|- (exists x x) (exists y (exists z (and y z)))) (exists-L x (exists-R x (exists-R x (ax)))))",
    "epsP": "(proof (|- (exists x x) top) (exists-L x (ax)))",
    "gammaP": "(proof (|- (exists x (exists y (and x y))) (exists z (exists t (and t z)))) "
    "(exists-L x (exists-L y (exists-R y (exists-R x (ax))))))",
    "etaOP": "(proof (|- top (forall x (exists y (or x y)))) (forall-R x (exists-R (or x top) (ax))))",
    "epsOP": "(proof (|- (exists x (forall y (and x y))) bot) (exists-L x (forall-L (and x bot) (ax))))",
    "gammaOP": "(proof (|- (exists x (forall y (and x y))) (forall z (exists t (and t z)))) "
    "(forall-R z (exists-L x (forall-L z (exists-R x (ax))))))",
    # Opponent-polarity duals, not displayed in the source
    "muO": "(proof (|- (forall x (forall y (and x y))) (forall z z)) (forall-R z (forall-L z (forall-L z (ax)))))",
    "etaO": "(proof (|- top (forall x (or x top))) (forall-R x (ax)))",
    "deltaO": "(proof (|- (forall x x) (forall y (forall z (and y z)))) (forall-R y (forall-R z (forall-L (and y z) (ax)))))",
    "epsO": "(proof (|- (forall x x) top) (forall-L top (ax)))",
    "gammaO": "(proof (|- (forall x (forall y (and x y))) (forall z (forall t (and z t)))) "
    "(forall-R z (forall-R t (forall-L t (forall-L z (ax))))))",
}


def definability_witness(name: str) -> Proof:
    """A proof whose strategy is the generator ``name`` under the default axioms."""
    try:
        return parse_proof(WITNESSES[name])
    except KeyError:
        raise KeyError(f"unknown generator {name!r}") from None


def chain_proof(witness: str) -> Proof:
    """∃x∃y(x∧y) ⊢ ∃z z with the given witness for z."""
    return parse_proof(
        f"(proof (|- (exists x (exists y (and x y))) (exists z z)) (exists-L x (exists-L y (exists-R {witness} (ax)))))"
    )


PERMUTATIONS = (
    "(proof (|- (forall x x) (forall y (exists z z))) (forall-L bot (forall-R y (exists-R y (ax)))))",
    "(proof (|- (forall x x) (forall y (exists z z))) (forall-R y (forall-L bot (exists-R y (ax)))))",
    "(proof (|- (forall x x) (forall y (exists z z))) (forall-R y (exists-R y (forall-L bot (ax)))))",
)

CUT_EXAMPLE = (
    "(proof (|- top (exists x (= x 0))) "
    "(cut (forall y (exists z (= y z))) "
    "(forall-R y (exists-R y (ax))) "
    "(forall-L 0 (exists-L z (exists-R z (ax))))))"
)
CUT_FREE_REDUCT = "(proof (|- top (exists x (= x 0))) (exists-R 0 (ax)))"
