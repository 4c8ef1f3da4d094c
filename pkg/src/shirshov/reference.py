"""Deliberately naive reference computations, used only by the test suite.

Each oracle recomputes a testable consequence by brute force, independent of
the code path it validates: word counts by exhaustive rotation filtering,
standard bracketings by trying every binary tree, the differential by the
recursive two-factor rule, and quotient dimensions by exact-rational rank
computation over explicitly generated spanning and ideal rows.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .algebra import AlgebraConfig, Poly, apply_D, leading, multiply
from .lyndon import enumerate_alsw_by_degree, is_alsw, special_expand
from .words import (
    Alphabet,
    NaLeaf,
    NaOp,
    NaPair,
    Word,
    occurrences,
    underlying_word,
)


def oracle_lyndon_count(q: int, n: int) -> int:
    """Length-n words over q letters strictly greater than all rotations.

    Pure integer-tuple filter; the count is invariant under relabeling, so
    the tuple order stands in for any total order on q letters.
    """
    if q > 4 or n > 10:
        raise ValueError("oracle bound exceeded: q <= 4, n <= 10")
    count = 0
    for w in product(range(q), repeat=n):
        if all(w > w[k:] + w[:k] for k in range(1, n)):
            count += 1
    return count


def derivation_recursive(config: AlgebraConfig, u: Word) -> Poly:
    """The differential by the two-factor rule, splitting off the first prime.

    D(p·v) = D(p)·v + p·D(v) + weight·D(p)·D(v); a single prime just gains
    one D application.  Independent of the closed-form subset expansion.
    """
    primes = u.primes
    head = Poly.word(Word((primes[0].shifted(1),)))
    if len(primes) == 1:
        return head
    rest = Word(primes[1:])
    d_rest = derivation_recursive(config, rest)
    out = multiply(head, Poly.word(rest))
    out = out + multiply(Poly.word(Word(primes[:1])), d_rest)
    if config.weight:
        out = out + multiply(head, d_rest).scale(config.weight)
    return out


# ---------------------------------------------------------------------------
# Exhaustive bracketing search.


def _oracle_lex_greater(ps, qs, alphabet: Alphabet) -> bool:
    """ps > qs in the lex order with proper prefixes greater."""
    for p, q in zip(ps, qs):
        if p == q:
            continue
        return alphabet.prime_key(p) > alphabet.prime_key(q)
    return len(ps) < len(qs)


def _oracle_is_alsw(u: Word, alphabet: Alphabet) -> bool:
    primes = u.primes
    return all(
        _oracle_lex_greater(primes, primes[k:] + primes[:k], alphabet)
        for k in range(1, len(primes))
    )


def _all_trees(items):
    """Every full binary tree over the given ordered leaves."""
    if len(items) == 1:
        yield items[0]
        return
    for k in range(1, len(items)):
        for left in _all_trees(items[:k]):
            for right in _all_trees(items[k:]):
                yield NaPair(left, right)


def _tree_ok(t, alphabet: Alphabet) -> bool:
    """NLSW conditions: underlying words ALSW at every node, and for a node
    (v, w) whose left child is (v1, v2), v2 is lex-no-greater than w."""
    if type(t) is NaLeaf:
        head = t.head
        if type(head) is NaOp:
            return all(_tree_ok(a, alphabet) for a in head.args)
        return True
    if not _oracle_is_alsw(underlying_word(t), alphabet):
        return False
    if not (_tree_ok(t.left, alphabet) and _tree_ok(t.right, alphabet)):
        return False
    if type(t.left) is NaPair:
        v2 = underlying_word(t.left.right).primes
        w = underlying_word(t.right).primes
        if _oracle_lex_greater(v2, w, alphabet):
            return False
    return True


def oracle_all_bracketings(u: Word, alphabet: Alphabet):
    """The unique binary bracketing of an ALSW passing the NLSW conditions.

    Tries every bracketing; raises if none or more than one passes, either
    of which falsifies the uniqueness claim under test.
    """
    if len(u.primes) > 8:
        raise ValueError("oracle bound exceeded: length <= 8")
    if not _oracle_is_alsw(u, alphabet):
        raise ValueError("not a Lyndon-Shirshov word: %r" % (u,))
    leaves = []
    for p in u.primes:
        head = p.head
        if type(head) is str:
            leaves.append(NaLeaf(p.d_power, head))
        else:
            leaves.append(
                NaLeaf(
                    p.d_power,
                    NaOp(
                        head.name,
                        tuple(
                            oracle_all_bracketings(a, alphabet)
                            for a in head.args
                        ),
                    ),
                )
            )
    found = [t for t in _all_trees(leaves) if _tree_ok(t, alphabet)]
    if len(found) != 1:
        raise AssertionError(
            "expected exactly one standard bracketing of %r, found %d"
            % (u, len(found))
        )
    return found[0]


# ---------------------------------------------------------------------------
# Quotient dimensions by rank computation.

_MONOMIAL_CAP = 200_000


def oracle_quotient_dim(config: AlgebraConfig, rules, max_degree: int, letters=None):
    """Per-degree dimensions of the Lie quotient modulo the given rules.

    The Lie span in each degree is triangular over ALSW leading words, so
    its dimension is the ALSW count.  Ideal rows are the bracketed rule
    multiples: for every rule, every D-lift whose leading fits the bound,
    and every occurrence of that leading inside an ALSW word, the isolating
    bracketing filled with the lifted rule.  Exact Gaussian elimination with
    deg-lex-descending pivots then counts, per degree, how many ALSW leading
    words the ideal consumes.

    ``letters`` optionally restricts the letter alphabet of the enumeration
    (for example, to bare generators with no differential).  Returns a tuple
    of dimensions for degrees 1..max_degree.
    """
    alphabet = config.alphabet
    by_deg = enumerate_alsw_by_degree(alphabet, max_degree, letters)
    alsws = [w for d in range(1, max_degree + 1) for w in by_deg.get(d, ())]
    alsw_count = {d: 0 for d in range(1, max_degree + 1)}
    for w in alsws:
        alsw_count[w.degree] += 1

    rows = []
    monomials = 0
    for rule in rules:
        poly = getattr(rule, "poly", rule)
        lift = 0
        while True:
            core = apply_D(config, poly, lift)
            v, _ = leading(config, core)
            if v.degree > max_degree:
                break
            if not is_alsw(v, alphabet):
                raise AssertionError(
                    "lifted rule leading %r is not Lyndon-Shirshov" % (v,)
                )
            for w in alsws:
                if w.degree < v.degree:
                    continue
                for ctx in occurrences(w, v):
                    row = special_expand(config, ctx, v, core)
                    rows.append(row)
                    monomials += len(row.terms)
                    if monomials > _MONOMIAL_CAP:
                        raise RuntimeError(
                            "oracle instance too large: more than %d monomials"
                            % _MONOMIAL_CAP
                        )
            lift += 1

    key = alphabet.key
    pivots: dict[Word, dict[Word, Fraction]] = {}
    for row in rows:
        terms = dict(row.terms)
        while terms:
            lead = max(terms, key=key)
            pivot = pivots.get(lead)
            if pivot is None:
                coeff = terms[lead]
                pivots[lead] = {w: c / coeff for w, c in terms.items()}
                break
            coeff = terms[lead]
            for w, c in pivot.items():
                nc = terms.get(w, 0) - coeff * c
                if nc:
                    terms[w] = nc
                else:
                    terms.pop(w, None)

    consumed = {d: 0 for d in range(1, max_degree + 1)}
    for lead in pivots:
        if not is_alsw(lead, alphabet):
            raise AssertionError(
                "ideal pivot %r is not Lyndon-Shirshov" % (lead,)
            )
        consumed[lead.degree] += 1
    return tuple(
        alsw_count[d] - consumed[d] for d in range(1, max_degree + 1)
    )
