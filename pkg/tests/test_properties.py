"""Property-based checks of the structural invariants."""
import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from factorlab import (
    DnfEvaluator,
    ExistentialDnf,
    Literal,
    congruence_meet,
    direct_product,
    eval_term,
    pair_index,
    parse_formula,
    principal_congruence,
    subalgebra_generated,
)
from factorlab.fixtures import (
    chain_lattice,
    cyclic_ring,
    diamond_lattice,
    lattice_context,
    pentagon_lattice,
    ring_context,
)
from factorlab.terms import App, Var, term_text

Z6 = cyclic_ring(6)
N5 = pentagon_lattice()
RING_SIG = Z6.signature
ALGEBRAS = [Z6, N5, diamond_lattice(), chain_lattice(3)]
Z6_CTX = ring_context(Z6).populated(max_size=6, depth=1)
C3_CTX = lattice_context(chain_lattice(3)).populated(max_size=4, depth=2)


def terms_for(signature, variables, max_depth=2):
    leaves = [st.builds(Var, st.sampled_from(variables))] + [
        st.just(App(sym)) for sym, k in signature.symbols if k == 0
    ]
    builders = [sym for sym, k in signature.symbols if k > 0]

    def extend(children):
        return st.one_of(
            *[
                st.builds(
                    lambda args, s=sym: App(s, tuple(args)),
                    st.lists(
                        children,
                        min_size=signature.arity(sym),
                        max_size=signature.arity(sym),
                    ),
                )
                for sym in builders
            ]
        )

    return st.recursive(st.one_of(*leaves), extend, max_leaves=max_depth * 3)


ring_terms = terms_for(RING_SIG, ["x", "y", "z1"])


@st.composite
def random_formulas(draw):
    n_bound = draw(st.integers(0, 2))
    bound = tuple(f"w{i}" for i in range(n_bound))
    variables = ["x", "y", "z1", *bound]
    strat = terms_for(RING_SIG, variables)
    disjuncts = []
    for _ in range(draw(st.integers(1, 2))):
        lits = []
        for _ in range(draw(st.integers(1, 3))):
            lits.append(
                Literal(draw(strat), draw(strat), draw(st.booleans()))
            )
        disjuncts.append(tuple(lits))
    return ExistentialDnf(bound, tuple(disjuncts), 1)


@given(random_formulas())
def test_print_parse_round_trip_random(phi):
    assert parse_formula(phi.text(), RING_SIG, 1) == phi


@given(ring_terms, ring_terms,
       st.integers(0, 5), st.integers(0, 5), st.integers(0, 2),
       st.integers(0, 2), st.integers(0, 5), st.integers(0, 2))
def test_atomic_literals_evaluate_coordinatewise(lhs, rhs, a, c, b, d, za, zb):
    # a, c, za live in Z6; b, d, zb in Z3
    left, right = Z6, cyclic_ring(3)
    product = direct_product(left, right)
    env_a = {"x": a, "y": c, "z1": za}
    env_b = {"x": b, "y": d, "z1": zb}
    env_p = {
        k: pair_index(env_a[k], env_b[k], right.size) for k in env_a
    }
    holds_p = eval_term(product, lhs, env_p) == eval_term(product, rhs, env_p)
    holds_a = eval_term(left, lhs, env_a) == eval_term(left, rhs, env_a)
    holds_b = eval_term(right, lhs, env_b) == eval_term(right, rhs, env_b)
    assert holds_p == (holds_a and holds_b)


@given(st.sets(st.integers(0, 5)), st.sets(st.integers(0, 5)))
def test_subalgebra_idempotent_and_monotone(s1, s2):
    sub1, emb1 = subalgebra_generated(Z6, s1)
    again, emb_again = subalgebra_generated(Z6, set(emb1))
    assert emb_again == emb1
    if s1 <= s2:
        _, emb2 = subalgebra_generated(Z6, s2)
        assert set(emb1) <= set(emb2)


@given(st.sampled_from(ALGEBRAS), st.data())
def test_principal_congruence_below_any_containing_congruence(algebra, data):
    a = data.draw(st.integers(0, algebra.size - 1))
    b = data.draw(st.integers(0, algebra.size - 1))
    cg = principal_congruence(algebra, a, b)
    assert cg.related(a, b)
    # minimality against every congruence of the algebra containing (a, b)
    from factorlab import all_congruences

    for theta in all_congruences(algebra):
        if theta.related(a, b):
            assert congruence_meet(cg, theta).rep == cg.rep


def _holds_identity(algebra, lhs, rhs, variables):
    for env_vals in itertools.product(range(algebra.size), repeat=len(variables)):
        env = dict(zip(variables, env_vals))
        if eval_term(algebra, lhs, env) != eval_term(algebra, rhs, env):
            return False
    return True


@settings(max_examples=30)
@given(st.data())
def test_pool_members_inherit_generator_identities(data):
    variables = ["v1", "v2", "v3"]
    strat = terms_for(RING_SIG, variables)
    lhs = data.draw(strat)
    rhs = data.draw(strat)
    if _holds_identity(Z6, lhs, rhs, variables):
        for member in Z6_CTX.pool_algebras:
            assert _holds_identity(member, lhs, rhs, variables), (
                f"{term_text(lhs)} = {term_text(rhs)} lost in {member.name}"
            )


@settings(max_examples=25)
@given(st.data())
def test_lattice_pool_members_inherit_generator_identities(data):
    c3 = chain_lattice(3)
    variables = ["v1", "v2", "v3"]
    strat = terms_for(c3.signature, variables)
    lhs = data.draw(strat)
    rhs = data.draw(strat)
    if _holds_identity(c3, lhs, rhs, variables):
        for member in C3_CTX.pool_algebras:
            assert _holds_identity(member, lhs, rhs, variables)


@given(random_formulas(),
       st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_evaluator_agrees_with_all_witnesses(phi, x, y, z):
    ev = DnfEvaluator(Z6, phi)
    first = ev.first_witness(x, y, (z,))
    everything = ev.all_witnesses(x, y, (z,))
    if first is None:
        assert everything == []
    else:
        assert everything[0] == first


def _naive_eval(algebra, phi, x, y, zs):
    # independent route: plain recursive term evaluation over explicit
    # environment dicts, no compilation, no literal hoisting
    base = {"x": x, "y": y}
    for i, z in enumerate(zs):
        base[f"z{i + 1}"] = z
    for w_vals in itertools.product(
        range(algebra.size), repeat=len(phi.bound_vars)
    ):
        env = dict(base, **dict(zip(phi.bound_vars, w_vals)))
        for conj in phi.disjuncts:
            if all(
                (eval_term(algebra, lit.lhs, env)
                 == eval_term(algebra, lit.rhs, env)) == lit.positive
                for lit in conj
            ):
                return True
    return False


@given(random_formulas(),
       st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_compiled_evaluator_matches_naive_route(phi, x, y, z):
    compiled = DnfEvaluator(Z6, phi).satisfied(x, y, (z,))
    assert compiled == _naive_eval(Z6, phi, x, y, (z,))
