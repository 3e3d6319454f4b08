"""Existential DNF formulas: concrete grammar, parser, printer and evaluation.

Grammar (UTF-8, '#' starts a line comment):

    formula := ["exists" ident+ "."] dnf
    dnf     := conj { "or" conj }
    conj    := unit { "and" unit }
    unit    := literal | "(" conj ")"
    literal := term ("=" | "!=") term
    term    := atom [ infix atom ]
    atom    := ident | ident "(" term {"," term} ")" | "(" term ")"

Infix sugar exists for binary symbols named +, * (or the middle dot), /\\ and
\\/; nested infix terms need parentheses.  The free-variable roles are fixed
by name: x, y and z1..zl.  Everything declared after "exists" is bound.
Disequality s != t is sugar for a negated equation; no other negation exists,
and universal quantifiers are rejected rather than normalized away.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache, reduce

from .core import FiniteAlgebra, Signature, direct_product, pair_index
from .errors import EvalError, FormulaSyntaxError, ValidationError
from .terms import App, Term, Var, free_vars, term_text

ROLE_X = "x"
ROLE_Y = "y"
KEYWORDS = ("exists", "forall", "and", "or")


def z_roles(l: int) -> tuple[str, ...]:
    return tuple(f"z{i + 1}" for i in range(l))


@dataclass(frozen=True)
class Literal:
    lhs: Term
    rhs: Term
    positive: bool = True

    def text(self) -> str:
        op = "=" if self.positive else "!="
        return f"{term_text(self.lhs)} {op} {term_text(self.rhs)}"

    def variables(self) -> frozenset[str]:
        return free_vars(self.lhs) | free_vars(self.rhs)


def _formula_text(bound_vars: tuple[str, ...], disjuncts) -> str:
    parts = []
    for conj in disjuncts:
        body = " and ".join(lit.text() for lit in conj)
        parts.append(f"({body})" if len(conj) > 1 else body)
    text = " or ".join(parts)
    if bound_vars:
        text = f"exists {' '.join(bound_vars)} . {text}"
    return text


@dataclass(frozen=True)
class ExistentialDnf:
    """exists w-vector, disjunction of conjunctions of literals."""

    bound_vars: tuple[str, ...]
    disjuncts: tuple[tuple[Literal, ...], ...]
    l: int = 1

    def __post_init__(self):
        if not self.disjuncts or any(not d for d in self.disjuncts):
            raise ValidationError("formula needs at least one literal per disjunct")
        allowed = {ROLE_X, ROLE_Y, *z_roles(self.l), *self.bound_vars}
        for conj in self.disjuncts:
            for lit in conj:
                extra = lit.variables() - allowed
                if extra:
                    raise ValidationError(
                        f"free variables {sorted(extra)} outside roles and bound list"
                    )

    def positive_indices(self, k: int) -> tuple[int, ...]:
        """Indices of the non-negated literals of disjunct k (recomputed)."""
        return tuple(j for j, lit in enumerate(self.disjuncts[k]) if lit.positive)

    def text(self) -> str:
        return _formula_text(self.bound_vars, self.disjuncts)


@dataclass(frozen=True)
class PositiveExistential:
    """exists w-vector, one conjunction of positive literals."""

    bound_vars: tuple[str, ...]
    literals: tuple[Literal, ...]
    l: int = 1

    def __post_init__(self):
        for lit in self.literals:
            if not lit.positive:
                raise ValidationError("negative literal in positive formula")

    @property
    def is_trivially_true(self) -> bool:
        return not self.literals

    def text(self) -> str:
        if not self.literals:
            # the empty conjunction has no grammar form; x = x is the
            # canonical constantly-true rendering
            return _formula_text(self.bound_vars, ((Literal(Var("x"), Var("x")),),))
        return _formula_text(self.bound_vars, (self.literals,))


def strip_to_positive(phi: ExistentialDnf, k: int) -> PositiveExistential:
    """Keep exactly the positive literals of disjunct k, bound variables and
    order preserved.  An all-negative disjunct yields the (flagged) empty
    conjunction, which is constantly true."""
    if not 0 <= k < len(phi.disjuncts):
        raise ValidationError(f"disjunct index {k} out of range")
    kept = tuple(lit for lit in phi.disjuncts[k] if lit.positive)
    return PositiveExistential(phi.bound_vars, kept, phi.l)


# -- tokenizer / parser --------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+|#[^\n]*)"
    r"|(?P<op>!=|=|\(|\)|,|\.|\+|\*|·|/\\|\\/)"
    r"|(?P<ident>[A-Za-z0-9_]+)"
)

_INFIX_ALIASES = {"*": ("*", "·"), "·": ("·", "*")}
_INFIX_TOKENS = ("+", "*", "·", "/\\", "\\/")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "ident" | "op" | "eof"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[i]!r}", i)
        if m.lastgroup != "ws":
            out.append(_Tok(m.lastgroup, m.group(), i))
        i = m.end()
    out.append(_Tok("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, signature: Signature, l: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.signature = signature
        self.l = l
        self.roles = {ROLE_X, ROLE_Y, *z_roles(l)}
        self.bound: tuple[str, ...] = ()
        self.var_pos: dict[str, int] = {}

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            raise FormulaSyntaxError(f"expected '{text}', found {tok.text!r}", tok.pos)
        return self.next()

    # formula := ["exists" ident+ "."] dnf
    def parse_formula(self) -> ExistentialDnf:
        tok = self.peek()
        if tok.kind == "ident" and tok.text == "forall":
            raise FormulaSyntaxError("not existential: universal quantifier", tok.pos)
        if tok.kind == "ident" and tok.text == "exists":
            self.next()
            names = []
            while self.peek().kind == "ident":
                v = self.next()
                if v.text in KEYWORDS:
                    raise FormulaSyntaxError(
                        f"keyword '{v.text}' cannot be a bound variable", v.pos
                    )
                if v.text in self.roles:
                    raise FormulaSyntaxError(
                        f"bound variable '{v.text}' shadows a role name", v.pos
                    )
                if self.signature.has(v.text):
                    raise FormulaSyntaxError(
                        f"bound variable '{v.text}' collides with a symbol", v.pos
                    )
                if v.text in names:
                    raise FormulaSyntaxError(
                        f"duplicate bound variable '{v.text}'", v.pos
                    )
                names.append(v.text)
            if not names:
                raise FormulaSyntaxError(
                    "expected bound variable names after 'exists'", self.peek().pos
                )
            self.expect_op(".")
            self.bound = tuple(names)
        disjuncts = [self.parse_conj()]
        while self._match_keyword("or"):
            disjuncts.append(self.parse_conj())
        tok = self.peek()
        if tok.kind != "eof":
            raise FormulaSyntaxError(f"unexpected trailing {tok.text!r}", tok.pos)
        self._check_free_variables(disjuncts)
        return ExistentialDnf(self.bound, tuple(tuple(c) for c in disjuncts), self.l)

    def _match_keyword(self, word: str) -> bool:
        tok = self.peek()
        if tok.kind == "ident" and tok.text == word:
            self.next()
            return True
        return False

    def parse_conj(self) -> list[Literal]:
        lits = list(self.parse_unit())
        while self._match_keyword("and"):
            lits.extend(self.parse_unit())
        return lits

    def parse_unit(self) -> tuple[Literal, ...]:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "(":
            save = self.i
            try:
                self.next()
                lits = self.parse_conj()
                self.expect_op(")")
            except FormulaSyntaxError:
                self.i = save  # parenthesized term, not a group
            else:
                nxt = self.peek()
                if nxt.kind == "op" and nxt.text in ("=", "!=", *_INFIX_TOKENS):
                    self.i = save  # "(term)" followed by an operator
                else:
                    return tuple(lits)
        return (self.parse_literal(),)

    def parse_literal(self) -> Literal:
        lhs = self.parse_term()
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("=", "!="):
            self.next()
        else:
            raise FormulaSyntaxError(
                f"expected '=' or '!=', found {tok.text!r}", tok.pos
            )
        rhs = self.parse_term()
        return Literal(lhs, rhs, tok.text == "=")

    def parse_term(self) -> Term:
        left = self.parse_atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text in _INFIX_TOKENS:
            self.next()
            sym = self._resolve_infix(tok)
            right = self.parse_atom()
            after = self.peek()
            if after.kind == "op" and after.text in _INFIX_TOKENS:
                raise FormulaSyntaxError(
                    "parentheses required for nested infix terms", after.pos
                )
            return App(sym, (left, right))
        return left

    def _resolve_infix(self, tok: _Tok) -> str:
        for cand in _INFIX_ALIASES.get(tok.text, (tok.text,)):
            if self.signature.has(cand) and self.signature.arity(cand) == 2:
                return cand
        raise FormulaSyntaxError(
            f"unknown binary symbol '{tok.text}'", tok.pos
        )

    def parse_atom(self) -> Term:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "(":
            self.next()
            t = self.parse_term()
            self.expect_op(")")
            return t
        if tok.kind != "ident":
            raise FormulaSyntaxError(f"expected a term, found {tok.text!r}", tok.pos)
        if tok.text in KEYWORDS:
            raise FormulaSyntaxError(
                f"keyword '{tok.text}' in term position", tok.pos
            )
        self.next()
        nxt = self.peek()
        if nxt.kind == "op" and nxt.text == "(":
            if not self.signature.has(tok.text):
                raise FormulaSyntaxError(f"unknown symbol '{tok.text}'", tok.pos)
            self.next()
            args = [self.parse_term()]
            while self.peek().kind == "op" and self.peek().text == ",":
                self.next()
                args.append(self.parse_term())
            self.expect_op(")")
            arity = self.signature.arity(tok.text)
            if arity != len(args):
                raise FormulaSyntaxError(
                    f"symbol '{tok.text}' takes {arity} arguments, got {len(args)}",
                    tok.pos,
                )
            return App(tok.text, tuple(args))
        if self.signature.has(tok.text):
            arity = self.signature.arity(tok.text)
            if arity != 0:
                raise FormulaSyntaxError(
                    f"symbol '{tok.text}' of arity {arity} used without arguments",
                    tok.pos,
                )
            return App(tok.text, ())
        self.var_pos.setdefault(tok.text, tok.pos)
        return Var(tok.text)

    def _check_free_variables(self, disjuncts: list[list[Literal]]) -> None:
        allowed = self.roles | set(self.bound)
        for conj in disjuncts:
            for lit in conj:
                for v in sorted(lit.variables()):
                    if v not in allowed:
                        raise FormulaSyntaxError(
                            f"free variable '{v}' outside roles "
                            f"x, y, z1..z{self.l} and bound variables",
                            self.var_pos.get(v, -1),
                        )


def parse_formula(
    text: str, signature: Signature, l: int | None = None
) -> ExistentialDnf:
    return _Parser(text, signature, l if l is not None else signature.l).parse_formula()


def parse_term_text(text: str, signature: Signature) -> Term:
    """Parse a single term (used for zero/one terms in context files)."""
    p = _Parser(text, signature, signature.l)
    t = p.parse_term()
    tok = p.peek()
    if tok.kind != "eof":
        raise FormulaSyntaxError(f"unexpected trailing {tok.text!r}", tok.pos)
    return t


# -- evaluation ----------------------------------------------------------------


def _as_disjuncts(
    phi: ExistentialDnf | PositiveExistential,
) -> tuple[tuple[Literal, ...], ...]:
    if isinstance(phi, ExistentialDnf):
        return phi.disjuncts
    return (phi.literals,)


class DnfEvaluator:
    """Compiled evaluator for one formula over one algebra.

    Witness search for the bound variables runs disjunct by disjunct in input
    order, lexicographically over element indices, short-circuiting on the
    first false literal.  Literals that do not mention any bound variable are
    checked before entering the witness loop; this cannot change the first
    witness found.  Instances hold no mutable state and are safe to share.
    """

    def __init__(self, algebra: FiniteAlgebra, phi: ExistentialDnf | PositiveExistential):
        self.algebra = algebra
        self.bound = phi.bound_vars
        slots = {ROLE_X: 0, ROLE_Y: 1}
        for i, z in enumerate(z_roles(phi.l)):
            slots[z] = 2 + i
        base = 2 + phi.l
        for j, w in enumerate(phi.bound_vars):
            slots[w] = base + j
        self._w_base = base
        self._n_slots = base + len(phi.bound_vars)
        wset = set(phi.bound_vars)
        self._l = phi.l
        self._disjuncts = []
        for conj in _as_disjuncts(phi):
            free, dep = [], []
            for lit in conj:
                compiled = (
                    self._compile(lit.lhs, slots),
                    self._compile(lit.rhs, slots),
                    lit.positive,
                )
                (dep if lit.variables() & wset else free).append(compiled)
            self._disjuncts.append((free, dep))

    def _compile(self, t: Term, slots: dict[str, int]):
        if isinstance(t, Var):
            i = slots[t.name]
            return lambda env, _i=i: env[_i]
        table = self.algebra.table(t.symbol)
        arity = self.algebra.signature.arity(t.symbol)
        if arity != len(t.args):
            raise EvalError(
                f"arity mismatch: '{t.symbol}' takes {arity} arguments, "
                f"got {len(t.args)}"
            )
        if not t.args:
            c = table[0]
            return lambda env, _c=c: _c
        n = self.algebra.size
        subs = [self._compile(a, slots) for a in t.args]
        if arity == 1:
            f0 = subs[0]
            return lambda env, _t=table, _f=f0: _t[_f(env)]
        if arity == 2:
            f0, f1 = subs
            return lambda env, _t=table, _n=n, _f=f0, _g=f1: _t[_f(env) * _n + _g(env)]
        return lambda env, _t=table, _n=n, _s=subs: _t[
            reduce(lambda acc, f: acc * _n + f(env), _s, 0)
        ]

    def _env(self, x: int, y: int, zs: tuple[int, ...]) -> list[int]:
        if len(zs) != self._l:
            raise EvalError(f"expected {self._l} z-arguments, got {len(zs)}")
        return [x, y, *zs] + [0] * len(self.bound)

    @staticmethod
    def _holds(lits, env) -> bool:
        for lhs, rhs, positive in lits:
            if (lhs(env) == rhs(env)) != positive:
                return False
        return True

    def first_witness(
        self, x: int, y: int, zs: tuple[int, ...]
    ) -> tuple[int, tuple[int, ...]] | None:
        """First (disjunct index, bound-variable assignment) satisfying every
        literal of that disjunct, or None."""
        env = self._env(x, y, zs)
        n = self.algebra.size
        nb = len(self.bound)
        base = self._w_base
        for k, (free, dep) in enumerate(self._disjuncts):
            if not self._holds(free, env):
                continue
            if not dep:
                return (k, (0,) * nb if nb else ())
            for w in itertools.product(range(n), repeat=nb):
                for j in range(nb):
                    env[base + j] = w[j]
                if self._holds(dep, env):
                    return (k, w)
        return None

    def satisfied(self, x: int, y: int, zs: tuple[int, ...]) -> bool:
        return self.first_witness(x, y, zs) is not None

    def all_witnesses(
        self, x: int, y: int, zs: tuple[int, ...]
    ) -> list[tuple[int, tuple[int, ...]]]:
        env = self._env(x, y, zs)
        n = self.algebra.size
        nb = len(self.bound)
        base = self._w_base
        out = []
        for k, (free, dep) in enumerate(self._disjuncts):
            if not self._holds(free, env):
                continue
            for w in itertools.product(range(n), repeat=nb):
                for j in range(nb):
                    env[base + j] = w[j]
                if self._holds(dep, env):
                    out.append((k, w))
        return out


def eval_dnf(
    algebra: FiniteAlgebra,
    phi: ExistentialDnf | PositiveExistential,
    x: int,
    y: int,
    zs: tuple[int, ...],
) -> bool:
    """True iff some bound-variable assignment satisfies some disjunct."""
    return _cached_evaluator(algebra, phi).satisfied(x, y, zs)


@lru_cache(maxsize=256)
def _cached_evaluator(
    algebra: FiniteAlgebra, phi: ExistentialDnf | PositiveExistential
) -> DnfEvaluator:
    return DnfEvaluator(algebra, phi)


@lru_cache(maxsize=128)
def _cached_product(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    return direct_product(a, b)


def eval_in_product(
    a: FiniteAlgebra,
    b: FiniteAlgebra,
    phi: ExistentialDnf | PositiveExistential,
    ab: tuple[int, int],
    cd: tuple[int, int],
    z_pairs: tuple[tuple[int, int], ...],
) -> bool:
    """Evaluate over A x B at paired arguments under the fixed encoding.

    z_pairs gives, per z-role, the (A-side, B-side) coordinates.
    """
    p = _cached_product(a, b)
    x = pair_index(ab[0], ab[1], b.size)
    y = pair_index(cd[0], cd[1], b.size)
    zs = tuple(pair_index(za, zb, b.size) for za, zb in z_pairs)
    return eval_dnf(p, phi, x, y, zs)
