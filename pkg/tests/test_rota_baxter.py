"""Weighted differential Lie systems with a Rota-Baxter operator."""

import random
from fractions import Fraction

import pytest

from shirshov import (
    AlgebraConfig,
    Alphabet,
    DrblSystem,
    NaLeaf,
    NaOp,
    NaPair,
    Poly,
    apply_D,
    apply_operator,
    commutator,
    drbl_nf,
    enumerate_alsw,
    enumerate_basis,
    instantiate_rules,
    leading,
    lie_expand,
    parse_poly,
    parse_word,
    s1_rules,
    shirshov_bracket,
    verify_axioms,
)


A1 = Alphabet(("x",), (("P", 1),))
A2 = Alphabet(("x", "y"), (("P", 1),))


def make_sys(alphabet=A2, weight=0):
    return DrblSystem(AlgebraConfig(alphabet, Fraction(weight)))


def w(s, alphabet=A2):
    return parse_word(s, alphabet)


def random_lie(rng, config, max_degree, terms=3):
    pool = enumerate_alsw(config, max_degree)
    out = Poly.zero()
    for _ in range(terms):
        u = rng.choice(pool)
        c = Fraction(rng.randint(-3, 3))
        if c:
            out = out + lie_expand(
                config, shirshov_bracket(u, config.alphabet)
            ).scale(c)
    return out


def test_rule_leading_forms():
    sys_ = make_sys(A2, 1)
    g = sys_.section_rule(w("x y"))
    assert leading(sys_.config, g.poly) == (w("D(P(x y))"), Fraction(1))
    assert g.origin == ("section", w("x y"))
    f = sys_.rota_baxter_rule(w("x"), w("y"))
    assert leading(sys_.config, f.poly) == (w("P(x) P(y)"), Fraction(1))
    assert f.origin == ("rota-baxter", w("x"), w("y"))
    with pytest.raises(ValueError):
        sys_.rota_baxter_rule(w("y"), w("x"))
    with pytest.raises(ValueError):
        sys_.section_rule(w("y x"))


def test_rota_baxter_rule_expands_the_defining_identity():
    sys_ = make_sys(A2, 2)
    c = sys_.config
    f = sys_.rota_baxter_rule(w("x"), w("y")).poly
    x, y = parse_poly("x", A2), parse_poly("y", A2)
    px, py = apply_operator("P", x), apply_operator("P", y)
    expect = (
        commutator(px, py)
        - apply_operator("P", commutator(x, py))
        - apply_operator("P", commutator(px, y))
        - apply_operator("P", commutator(x, y)).scale(2)
    )
    assert f == expect


def test_instantiate_rules_small_inventories():
    sys1 = make_sys(A1, 1)
    rules3 = instantiate_rules(sys1, 3)
    assert [r.origin for r in rules3] == [("section", w("x", A1))]
    rules4 = instantiate_rules(sys1, 4)
    assert [r.origin for r in rules4] == [
        ("section", w("x", A1)),
        ("section", w("D(x)", A1)),
        ("section", w("P(x)", A1)),
    ]
    sys2 = make_sys(A2, 1)
    rules = instantiate_rules(sys2, 4)
    origins = [r.origin for r in rules]
    assert origins.count(("rota-baxter", w("x"), w("y"))) == 1
    sections = [o for o in origins if o[0] == "section"]
    assert len(sections) == 7 and len(origins) == 8
    assert s1_rules(sys2, 4) == rules[:7]


def test_worked_normal_form_example():
    sys_ = make_sys(A2, 1)
    p = commutator(
        apply_operator("P", parse_poly("x", A2)),
        apply_operator("P", parse_poly("y", A2)),
    )
    nf = drbl_nf(p, sys_)
    assert repr(nf) == "P([P(x) y]) - P([P(y) x]) + P([x y])"
    assert nf.as_poly(sys_.config) == drbl_nf(nf, sys_).as_poly(sys_.config)


def test_nf_accepts_bracketed_input():
    sys_ = make_sys(A2, 1)
    t = NaPair(
        NaLeaf(0, NaOp("P", (NaLeaf(0, "x"),))),
        NaLeaf(0, NaOp("P", (NaLeaf(0, "y"),))),
    )
    as_tree = drbl_nf(t, sys_)
    as_poly = drbl_nf(lie_expand(sys_.config, t), sys_)
    assert as_tree == as_poly
    assert drbl_nf(shirshov_bracket(w("x y"), A2), sys_) == drbl_nf(
        parse_poly("[x y]", A2), sys_
    )
    # a one-prime word is itself a Lie element
    assert not drbl_nf(w("P(x)"), sys_).is_zero()


def test_section_identity_normalizes_to_zero():
    rng = random.Random(3)
    for weight in (0, 1, 2):
        sys_ = make_sys(A2, weight)
        basis = enumerate_basis(sys_, 3)
        pool = [t for d in basis for t in basis[d]]
        for _ in range(10):
            a = lie_expand(sys_.config, rng.choice(pool))
            p = apply_D(sys_.config, apply_operator("P", a)) - a
            assert drbl_nf(p, sys_).is_zero()


def test_nf_is_linear_and_idempotent():
    rng = random.Random(17)
    sys_ = make_sys(A2, 1)
    c = sys_.config
    for _ in range(8):
        p = random_lie(rng, c, 4)
        q = random_lie(rng, c, 4)
        nf_sum = drbl_nf(p + q, sys_)
        split = drbl_nf(p, sys_).as_poly(c) + drbl_nf(q, sys_).as_poly(c)
        assert nf_sum.as_poly(c) == drbl_nf(split, sys_).as_poly(c)
        again = drbl_nf(nf_sum, sys_)
        assert again == nf_sum
        # every surviving bracketed word is a basis word
        basis = {t for d in enumerate_basis(sys_, 4) for t in enumerate_basis(sys_, 4)[d]}
        assert all(t in basis for _, t in nf_sum.terms)


def test_fast_path_agrees_with_generic_engine():
    rng = random.Random(41)
    for alphabet in (A1, A2):
        for weight in (0, 1):
            sys_ = make_sys(alphabet, weight)
            engine = sys_.system(5)
            for _ in range(12):
                p = random_lie(rng, sys_.config, 5)
                fast = drbl_nf(p, sys_).as_poly(sys_.config)
                slow = engine.reduce(p, mode="lie")
                assert fast == slow


def test_basis_counts_and_degree_three_elements():
    sys1 = make_sys(A1, 1)
    basis1 = enumerate_basis(sys1, 4)
    assert [len(basis1[d]) for d in (1, 2, 3, 4)] == [1, 2, 5, 12]
    assert [repr(t) for t in basis1[3]] == [
        "D^2(x)",
        "P(D(x))",
        "P(P(x))",
        "[D(x) x]",
        "[P(x) x]",
    ]
    sys2 = make_sys(A2, 1)
    basis2 = enumerate_basis(sys2, 3)
    assert [len(basis2[d]) for d in (1, 2, 3)] == [2, 5, 17]
    # counts do not depend on the weight
    assert [
        len(enumerate_basis(make_sys(A2, 0), 3)[d]) for d in (1, 2, 3)
    ] == [2, 5, 17]


def test_basis_excludes_descending_pairs_and_d_over_p():
    sys_ = make_sys(A2, 1)
    basis = enumerate_basis(sys_, 5)
    reprs = {d: [repr(t) for t in basis[d]] for d in basis}
    # P(x)·P(y) descends (x > y): excluded at top level ...
    assert "[P(x) P(y)]" not in reprs[4]
    # ... and nested inside an operator argument
    assert "P(P(x) P(y))" not in reprs[5]
    # the ascending arrangement is not Lyndon-Shirshov at all
    from shirshov import is_alsw

    assert not is_alsw(w("P(y) P(x)"), A2)
    # no D ever sits over a P in a basis word, at any depth
    from shirshov.words import OpApp, underlying_word

    def no_d_over_op(word):
        for p in word.primes:
            if type(p.head) is OpApp:
                if p.d_power != 0 or not all(
                    no_d_over_op(a) for a in p.head.args
                ):
                    return False
        return True

    for d in basis:
        for t in basis[d]:
            assert no_d_over_op(underlying_word(t))


def test_basis_matches_engine_irreducibles():
    for alphabet in (A1, A2):
        for weight in (0, 1):
            sys_ = make_sys(alphabet, weight)
            basis = enumerate_basis(sys_, 5)
            flat = [t for d in range(1, 6) for t in basis[d]]
            engine = sys_.system(5)
            assert engine.enumerate_irr("lie") == flat
    # one degree higher on the single-generator alphabet
    sys1 = make_sys(A1, 1)
    basis6 = enumerate_basis(sys1, 6)
    flat6 = [t for d in range(1, 7) for t in basis6[d]]
    assert sys1.system(6).enumerate_irr("lie") == flat6


def test_axioms_hold_on_samples():
    for weight in (0, 2):
        sys_ = make_sys(A2, weight)
        report = verify_axioms(sys_, samples=20, max_degree=3, seed=1)
        assert report.passed, report.summary()
        assert report.checked == 60
        assert "pass" in report.summary()


def test_axioms_specific_pairs():
    # generators at weight zero
    sys0 = make_sys(A2, 0)
    x, y = parse_poly("x", A2), parse_poly("y", A2)
    px, py = apply_operator("P", x), apply_operator("P", y)
    rb = (
        commutator(px, py)
        - apply_operator("P", commutator(x, py))
        - apply_operator("P", commutator(px, y))
    )
    assert drbl_nf(rb, sys0).is_zero()
    # derivative against operator image at weight two
    sys2 = make_sys(A2, 2)
    c2 = sys2.config
    a = parse_poly("D(x)", A2)
    b = apply_operator("P", parse_poly("x", A2))
    leib = (
        apply_D(c2, commutator(a, b))
        - commutator(apply_D(c2, a), b)
        - commutator(a, apply_D(c2, b))
        - commutator(apply_D(c2, a), apply_D(c2, b)).scale(2)
    )
    assert drbl_nf(leib, sys2).is_zero()


def test_lie_irreducible_can_expand_to_assoc_reducible():
    sys_ = make_sys(A2, 1)
    engine = sys_.system(5)
    u = w("P(x) y P(y)")
    # irreducible as a Lie leading word ...
    from shirshov.rota_baxter import _find_match

    assert _find_match(sys_, u) is None
    # ... but its bracket expansion contains an associatively reducible
    # monomial, so word-by-word normal forms differ between the modes
    exp = lie_expand(sys_.config, shirshov_bracket(u, A2))
    assert any(engine.is_reducible(v) for v in exp.terms)
    assert w("y P(x) P(y)") in exp.terms


def test_modes_agree_after_an_associative_pass():
    rng = random.Random(59)
    for weight in (0, 1):
        sys_ = make_sys(A2, weight)
        engine = sys_.system(5)
        for _ in range(10):
            p = random_lie(rng, sys_.config, 5)
            lie_nf = engine.reduce(p, mode="lie")
            assert engine.reduce(p, mode="assoc") == engine.reduce(
                lie_nf, mode="assoc"
            )


def test_random_ideal_combinations_reduce_to_zero():
    rng = random.Random(67)
    sys_ = make_sys(A1, 1)
    engine = sys_.system(5)
    pool = [u for u in enumerate_alsw(sys_.config, 5) if engine.is_reducible(u)]
    assert pool
    total = Poly.zero()
    for _ in range(12):
        u = rng.choice(pool)
        entry, ctx = engine.match(u)
        multiple = engine.special_multiple(entry.rule_index, entry.lift, ctx)
        total = total + multiple.scale(Fraction(rng.randint(1, 5)))
    assert engine.reduce(total, mode="lie").is_zero()
    # associative variant over the section rules alone
    s1_engine = DrblSystem(sys_.config).system(5, s1_only=True)
    from shirshov import subst_poly
    from shirshov.words import enumerate_words

    words = enumerate_words(A1, 5)
    reducible = [
        u for d in words for u in words[d] if s1_engine.is_reducible(u)
    ]
    total = Poly.zero()
    for _ in range(12):
        u = rng.choice(reducible)
        entry, ctx = s1_engine.match(u)
        multiple = subst_poly(
            sys_.config, ctx, s1_engine.core(entry.rule_index, entry.lift)
        )
        total = total + multiple.scale(Fraction(rng.randint(-4, 4)))
    assert s1_engine.reduce(total, mode="assoc").is_zero()


def test_nf_degree_guard():
    sys_ = make_sys(A1, 1)
    with pytest.raises(ValueError):
        drbl_nf(parse_poly("P(P(P(x)))", A1), sys_, max_degree=2)
