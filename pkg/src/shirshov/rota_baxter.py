"""Free differential Lie Rota-Baxter algebras of weight λ.

The defining rule system over the operator alphabet {P} has two families,
parameterized by Lyndon-Shirshov words:

* section rules  g(u) = expansion of D(P([u])) − [u], leading D(P(u));
* Rota-Baxter rules  f(u,v) = expansion of
  [P([u])P([v])] − P([u, P([v])]) − P([P([u]), v]) − λ P([u,v])
  for u deg-lex-greater than v, leading P(u)·P(v).

Normal forms have a closed reducibility description, which ``drbl_nf``
exploits instead of scanning a rule table.  A monomial is reducible iff it
contains (at any nesting depth):

* a prime D^k(P(w)) with k ≥ 1 — reduced by the (k−1)-lift of g(w); for
  λ ≠ 0 this requires (k−1)(breadth(w)−1) < 2, because past that point the
  lift's true leading word is no longer D^k(P(w)): the D of a breadth-n
  word gains degree n per application through its all-positions term, so a
  trailing monomial of g(w) overtakes the nominal leading;
* once those are gone, adjacent primes P(a)·P(b) with a deg-lex-greater
  than b — reduced by f(a,b); or
* (λ ≠ 0) a contiguous run of n ≥ 2 primes, each with D-power at least i,
  where i(n−1) ≥ 2 and removing i D's from every prime leaves a
  Lyndon-Shirshov word w — that run is exactly the overtaking leading word
  of the i-lift of g(w), with leading coefficient −λ^{(n−1)i}.

Rules are built lazily per parameter; the same cache backs the fast path
and the eagerly instantiated systems handed to the generic engine.

The linear basis of the quotient is enumerated directly: the letter
alphabet is D^i(generator) together with P(w) (never D over P) for w a
Lyndon-Shirshov word of the same restricted language, and bracketed words
containing adjacent P(a)·P(b) with a deg-lex-greater than b anywhere are
excluded.  ``verify_axioms`` spot-checks the section, weighted-Leibniz and
Rota-Baxter identities on random basis elements by reducing to zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    AlgebraConfig,
    Poly,
    apply_D,
    apply_operator,
    commutator,
    leading,
    lie_expand,
)
from .lyndon import (
    enumerate_alsw,
    enumerate_alsw_by_degree,
    is_alsw_hereditary,
    shirshov_bracket,
    special_expand,
)
from .rewriting import LieCombination, ReductionStep, RewriteSystem, Rule, make_rule
from .words import NaLeaf, NaOp, NaPair, OpApp, Prime, Word, iter_subword_runs


class DrblSystem:
    """Rule families of a free differential Lie Rota-Baxter algebra.

    Holds the algebra configuration (one unary operator) plus lazy caches:
    rules keyed by their Lyndon-Shirshov parameters, lifted rule
    polynomials, bracketed multiples keyed by context, and fully
    instantiated engine systems keyed by degree bound.
    """

    def __init__(self, config: AlgebraConfig):
        ops = tuple(config.alphabet.operators)
        if len(ops) != 1 or ops[0][1] != 1:
            raise ValueError(
                "a Rota-Baxter system needs exactly one unary operator"
            )
        self.config = config
        self.operator = ops[0][0]
        self._section: dict[Word, Rule] = {}
        self._rota_baxter: dict[tuple[Word, Word], Rule] = {}
        self._cores: dict[tuple, Poly] = {}
        self._specials: dict[tuple, Poly] = {}
        self._engines: dict[tuple[int, bool], RewriteSystem] = {}

    # -- rule families -------------------------------------------------------

    def _bracketed(self, u: Word) -> Poly:
        if not is_alsw_hereditary(u, self.config.alphabet):
            raise ValueError("parameter %r is not a Lyndon-Shirshov word" % (u,))
        return lie_expand(self.config, shirshov_bracket(u, self.config.alphabet))

    def section_rule(self, u: Word) -> Rule:
        """g(u): applying D undoes P, modulo lower terms."""
        got = self._section.get(u)
        if got is None:
            bu = self._bracketed(u)
            poly = apply_D(self.config, apply_operator(self.operator, bu)) - bu
            got = make_rule(self.config, poly, ("section", u))
            self._section[u] = got
        return got

    def rota_baxter_rule(self, u: Word, v: Word) -> Rule:
        """f(u,v): the bracket of two P-images re-expressed under P."""
        got = self._rota_baxter.get((u, v))
        if got is None:
            key = self.config.alphabet.key
            if key(u) <= key(v):
                raise ValueError("parameters must satisfy u > v in deg-lex")
            bu = self._bracketed(u)
            bv = self._bracketed(v)
            pu = apply_operator(self.operator, bu)
            pv = apply_operator(self.operator, bv)
            poly = (
                commutator(pu, pv)
                - apply_operator(self.operator, commutator(bu, pv))
                - apply_operator(self.operator, commutator(pu, bv))
                - apply_operator(self.operator, commutator(bu, bv)).scale(
                    self.config.weight
                )
            )
            got = make_rule(self.config, poly, ("rota-baxter", u, v))
            self._rota_baxter[(u, v)] = got
        return got

    # -- lifted cores and bracketed multiples ---------------------------------

    def _core(self, tag: tuple, lift: int) -> Poly:
        key = tag + (lift,)
        got = self._cores.get(key)
        if got is None:
            if tag[0] == "section":
                rule = self.section_rule(tag[1])
            else:
                rule = self.rota_baxter_rule(tag[1], tag[2])
            got = apply_D(self.config, rule.poly, lift)
            self._cores[key] = got
        return got

    def _special_multiple(self, tag: tuple, lift: int, ctx) -> Poly:
        key = tag + (lift, ctx)
        got = self._specials.get(key)
        if got is None:
            core = self._core(tag, lift)
            v, _ = leading(self.config, core)
            got = special_expand(self.config, ctx, v, core)
            self._specials[key] = got
        return got

    # -- instantiated engines --------------------------------------------------

    def system(self, max_degree: int, s1_only: bool = False) -> RewriteSystem:
        """The generic rewrite engine over the eagerly instantiated rules."""
        key = (max_degree, s1_only)
        got = self._engines.get(key)
        if got is None:
            rules = (
                s1_rules(self, max_degree)
                if s1_only
                else instantiate_rules(self, max_degree)
            )
            got = RewriteSystem(self.config, rules, max_degree)
            self._engines[key] = got
        return got


def s1_rules(sys: DrblSystem, max_degree: int) -> list[Rule]:
    """All section rules whose leading word fits the bound, deg-lex order."""
    return [
        sys.section_rule(u)
        for u in enumerate_alsw(sys.config, max_degree - 2)
    ]


def instantiate_rules(sys: DrblSystem, max_degree: int) -> list[Rule]:
    """Every rule whose leading word has degree at most ``max_degree``.

    Section rules come first (deg-lex by parameter), then Rota-Baxter
    rules sorted by their leading word P(u)·P(v).
    """
    out = s1_rules(sys, max_degree)
    params = enumerate_alsw(sys.config, max_degree - 3)
    key = sys.config.alphabet.key
    pairs = [
        (u, v)
        for u in params
        for v in params
        if u.degree + v.degree <= max_degree - 2 and key(u) > key(v)
    ]

    def leading_key(pair):
        u, v = pair
        w = Word(
            (
                Prime(0, OpApp(sys.operator, (u,))),
                Prime(0, OpApp(sys.operator, (v,))),
            )
        )
        return key(w)

    pairs.sort(key=leading_key)
    out.extend(sys.rota_baxter_rule(u, v) for u, v in pairs)
    return out


# ---------------------------------------------------------------------------
# Fast-path normal form.


def _find_match(sys: DrblSystem, u: Word):
    """Locate the first reducible pattern in a monomial.

    Returns (rule tag, lift, context) or None.  Section patterns are tried
    before Rota-Baxter pairs, so D-over-P primes never survive into the
    pair scan; the run pattern only exists for nonzero weight.
    """
    alphabet = sys.config.alphabet
    key = alphabet.key
    weighted = sys.config.weight != 0
    pair_hit = None
    run_hit = None
    for run, build in iter_subword_runs(u):
        n = len(run)
        if n == 1:
            p = run[0]
            if p.d_power >= 1 and type(p.head) is OpApp:
                w = p.head.args[0]
                k = p.d_power
                if not weighted or (k - 1) * (w.breadth - 1) < 2:
                    return ("section", w), k - 1, build()
        elif pair_hit is None and n == 2:
            p, q = run
            if (
                p.d_power == 0
                and q.d_power == 0
                and type(p.head) is OpApp
                and type(q.head) is OpApp
            ):
                a, b = p.head.args[0], q.head.args[0]
                if key(a) > key(b):
                    pair_hit = (("rota-baxter", a, b), 0, build)
        if weighted and n >= 2 and run_hit is None:
            bound = min(p.d_power for p in run)
            for i in range(1, bound + 1):
                if i * (n - 1) < 2:
                    continue
                w = Word(tuple(p.shifted(-i) for p in run))
                if is_alsw_hereditary(w, alphabet):
                    run_hit = (("section", w), i, build)
                    break
    if pair_hit is not None:
        return pair_hit[0], pair_hit[1], pair_hit[2]()
    if run_hit is not None:
        return run_hit[0], run_hit[1], run_hit[2]()
    return None


def _as_poly(config: AlgebraConfig, p) -> Poly:
    if isinstance(p, Poly):
        return p
    if isinstance(p, (NaLeaf, NaPair)):
        return lie_expand(config, p)
    if isinstance(p, LieCombination):
        return p.as_poly(config)
    if isinstance(p, Word):
        return Poly.word(p)
    raise TypeError("cannot interpret %r as a Lie element" % (p,))


def drbl_nf(
    p,
    sys: DrblSystem,
    max_degree: int | None = None,
    log: list | None = None,
) -> LieCombination:
    """Normal form of a Lie element in the free weighted system.

    Accepts a polynomial, a bracketed word, or a prior normal form.  While
    the leading word is reducible, subtracts the bracketed rule multiple
    isolating it; once irreducible, peels it off as a standard-bracketed
    basis word.  The result is the unique basis combination equal to ``p``.
    """
    config = sys.config
    alphabet = config.alphabet
    working = _as_poly(config, p)
    if max_degree is not None and working.max_degree() > max_degree:
        raise ValueError(
            "degree %d exceeds the requested bound %d"
            % (working.max_degree(), max_degree)
        )
    out = []
    while working:
        u, c = leading(config, working)
        if not is_alsw_hereditary(u, alphabet):
            raise ValueError(
                "not a Lie element: leading word %r is not Lyndon-Shirshov" % (u,)
            )
        m = _find_match(sys, u)
        if m is not None:
            tag, lift, ctx = m
            core = sys._core(tag, lift)
            _, lc = leading(config, core)
            factor = c / lc
            multiple = sys._special_multiple(tag, lift, ctx).scale(factor)
            working = working - multiple
            if log is not None:
                log.append(ReductionStep(tag, lift, ctx, factor, multiple))
        else:
            nb = shirshov_bracket(u, alphabet)
            out.append((c, nb))
            working = working - lie_expand(config, nb).scale(c)
    return LieCombination(tuple(out))


# ---------------------------------------------------------------------------
# The linear basis.


def _basis_letters(sys: DrblSystem):
    alphabet = sys.config.alphabet
    op = sys.operator

    def letters(d: int, alsw_by_deg):
        out = [Prime(d - 1, g) for g in alphabet.generators]
        for w in alsw_by_deg.get(d - 1, ()):
            out.append(Prime(0, OpApp(op, (w,))))
        return out

    return letters


def _contains_descending_pair(w: Word, alphabet) -> bool:
    """Adjacent P(a)·P(b) with a deg-lex-greater, at any nesting depth."""
    key = alphabet.key
    primes = w.primes
    for t, p in enumerate(primes):
        head = p.head
        if type(head) is not OpApp:
            continue
        if any(_contains_descending_pair(a, alphabet) for a in head.args):
            return True
        if t + 1 < len(primes) and p.d_power == 0:
            q = primes[t + 1]
            if q.d_power == 0 and type(q.head) is OpApp:
                if key(head.args[0]) > key(q.head.args[0]):
                    return True
    return False


def enumerate_basis(sys: DrblSystem, max_degree: int) -> dict[int, list]:
    """Bracketed basis words by degree.

    The carrier words are Lyndon-Shirshov words over the restricted letters
    D^i(generator) and P(w) with w a smaller word of the same language; the
    descending adjacent P-pair pattern is then excluded.  Values are
    standard-bracketed words, deg-lex sorted within each degree.
    """
    alphabet = sys.config.alphabet
    by_deg = enumerate_alsw_by_degree(alphabet, max_degree, _basis_letters(sys))
    out: dict[int, list] = {}
    for d in range(1, max_degree + 1):
        out[d] = [
            shirshov_bracket(w, alphabet)
            for w in by_deg.get(d, ())
            if not _contains_descending_pair(w, alphabet)
        ]
    return out


# ---------------------------------------------------------------------------
# Axiom verification.


@dataclass
class AxiomReport:
    """Result of random-sample axiom checking."""

    samples: int
    checked: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        if self.passed:
            return "pass: %d identity instances over %d sample pairs" % (
                self.checked,
                self.samples,
            )
        return "fail: %d of %d identity instances have nonzero residue" % (
            len(self.failures),
            self.checked,
        )


def verify_axioms(
    sys: DrblSystem, samples: int = 100, max_degree: int = 3, seed: int = 0
) -> AxiomReport:
    """Check the defining identities on random pairs of basis elements.

    For each sampled pair (a, b): the Rota-Baxter identity
    [P(a)P(b)] − P([a P(b)]) − P([P(a) b]) − λP([a b]), the weighted
    Leibniz rule D([a b]) − [D(a) b] − [a D(b)] − λ[D(a) D(b)], and the
    section identity D(P(a)) − a must all normalize to zero.  Failures are
    reported with their inputs.
    """
    rng = random.Random(seed)
    config = sys.config
    lam = config.weight
    basis = enumerate_basis(sys, max_degree)
    pool = [t for d in sorted(basis) for t in basis[d]]
    if not pool:
        raise ValueError("empty basis pool")
    failures = []
    checked = 0
    for _ in range(samples):
        ta = rng.choice(pool)
        tb = rng.choice(pool)
        a = lie_expand(config, ta)
        b = lie_expand(config, tb)
        pa = apply_operator(sys.operator, a)
        pb = apply_operator(sys.operator, b)
        instances = (
            (
                "rota-baxter",
                commutator(pa, pb)
                - apply_operator(sys.operator, commutator(a, pb))
                - apply_operator(sys.operator, commutator(pa, b))
                - apply_operator(sys.operator, commutator(a, b)).scale(lam),
            ),
            (
                "leibniz",
                apply_D(config, commutator(a, b))
                - commutator(apply_D(config, a), b)
                - commutator(a, apply_D(config, b))
                - commutator(apply_D(config, a), apply_D(config, b)).scale(lam),
            ),
            ("section", apply_D(config, pa) - a),
        )
        for name, poly in instances:
            checked += 1
            if not poly:
                continue
            nf = drbl_nf(poly, sys)
            if not nf.is_zero():
                failures.append((name, ta, tb, nf))
    return AxiomReport(samples, checked, failures)
