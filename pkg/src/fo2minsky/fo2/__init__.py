from .ast import (
    ATOMS, And, Eq, Exists, Forall, Formula, Iff, Implies, Not, Or, SuccL,
    SuccP, Unary, Var, X, Y, children, conj, depth, disj, exists, forall,
    free_vars, iff, implies, is_sentence, neg, predicates, size,
)
from .eval import UnboundVariable, compile_formula, evaluate, satisfies, table
from .sexpr import FormulaSyntaxError, parse_formula, pretty_formula, print_formula

__all__ = [
    "ATOMS", "And", "Eq", "Exists", "Forall", "Formula", "Iff", "Implies",
    "Not", "Or", "SuccL", "SuccP", "Unary", "Var", "X", "Y", "children",
    "conj", "depth", "disj", "exists", "forall", "free_vars", "iff",
    "implies", "is_sentence", "neg", "predicates", "size",
    "UnboundVariable", "compile_formula", "evaluate", "satisfies", "table",
    "FormulaSyntaxError", "parse_formula", "pretty_formula", "print_formula",
]
