"""
Exit criteria. Each test records one PASS/FAIL line, printed in the pytest
terminal summary under "acceptance criteria".

All comparisons are exact polynomial equality; there are no tolerances.
"""

import random
import time
from math import comb

import pytest

from eqpieri import perm, pieri
from eqpieri.oracle import (
    convention, expand_product, expand_product_classical, localization_special,
    schubert_from_word, double_schubert,
)
from eqpieri.perm import (
    Permutation, all_permutations, bruhat_leq, length, longest_element,
    m_bruhat_chain, r_arrow, special_cycle,
)
from eqpieri.pieri import (
    classical_limit, compute_datum, pieri_coefficient, pieri_expand, pieri_summands,
)
from eqpieri.poly import Polynomial, Variable, divided_difference, positivity_certificate, t

from conftest import U_EX, V_EX, W_EX

GOLDEN = {
    3: Polynomial.constant(1),
    4: (t(6) - t(1)) + (t(8) - t(2)),
    5: (t(3) - t(1)) * (t(6) - t(1)) + (t(3) - t(1)) * (t(8) - t(2)) + (t(6) - t(2)) * (t(8) - t(2)),
    6: (t(3) - t(1)) * (t(6) - t(1)) * (t(8) - t(1)),
}

SWEEP_N = (2, 3, 4, 5)
SAMPLE_N6 = 60


def _clear_caches():
    for fn in (pieri.pieri_coefficient, pieri.nonvanishing, perm.r_arrow, perm.m_bruhat_chain,
               perm._inversions):
        fn.cache_clear()


def _triples(n):
    for w in all_permutations(n):
        for m in range(1, n):
            for p in range(1, n - m + 1):
                yield w, m, p


def _record(w, m, p, cmap):
    n = w.n
    return {
        "w": w, "m": m, "p": p,
        "formula": pieri_expand(w, m, p).terms,
        "oracle": {u: cmap.y_to_t(c, n) for u, c in expand_product(w, special_cycle(m, p, n)).items()},
    }


@pytest.fixture(scope="module")
def sweep():
    cmap = convention()
    records = [_record(w, m, p, cmap) for n in SWEEP_N for w, m, p in _triples(n)]
    rng = random.Random(6)
    sampled = rng.sample(list(_triples(6)), SAMPLE_N6)
    records += [_record(w, m, p, cmap) for w, m, p in sampled]
    return records


def test_criterion_1_example_golden_values(criterion):
    with criterion("1. worked-example golden values (exact, < 1 s)"):
        _clear_caches()
        start = time.perf_counter()
        values = {p: pieri_coefficient(W_EX, U_EX, 3, p) for p in GOLDEN}
        elapsed = time.perf_counter() - start
        assert values == GOLDEN
        assert elapsed < 1.0, f"took {elapsed:.3f} s"


def test_criterion_2_example_relations(criterion):
    with criterion("2. worked-example arrow and m-Bruhat relations"):
        arrow = r_arrow(W_EX, U_EX, 3)
        assert arrow is not None and set(arrow.b_values) == {4, 5, 8}
        assert arrow.replay(W_EX)[-1] == U_EX
        assert r_arrow(W_EX, V_EX, 3) is None
        chain = m_bruhat_chain(W_EX, V_EX, 3)
        assert chain is not None and chain.replay(W_EX)[-1] == V_EX


def test_criterion_3_oracle_equivalence(criterion, sweep):
    with criterion(f"3. formula == double Schubert oracle, all n <= 5 + {SAMPLE_N6} sampled at n = 6"):
        mismatches = [(str(r["w"]), r["m"], r["p"]) for r in sweep if r["formula"] != r["oracle"]]
        assert sum(1 for r in sweep if r["w"].n == 5) == 120 * 10
        assert mismatches == []


def test_criterion_4_localization_identity(criterion, sweep):
    with criterion("4. localization identity on the sweep and on the worked example"):
        checked = 0
        for r in sweep:
            if r["w"].n > 5:
                continue
            for u, c in r["formula"].items():
                datum = compute_datum(r["w"], u, r["m"], r["p"])
                assert localization_special(datum.nu, datum.q, u.n) == c, (r["w"], u, r["m"], r["p"])
                checked += 1
        for p in (4, 5, 6):
            datum = compute_datum(W_EX, U_EX, 3, p)
            assert localization_special(datum.nu, datum.q, 9) == GOLDEN[p]
        assert checked > 1000


def test_criterion_5_positivity_and_grading(criterion, sweep):
    with criterion("5. Graham positivity and grading of every nonzero coefficient"):
        items = [(W_EX, U_EX, p, GOLDEN[p]) for p in GOLDEN]
        for r in sweep:
            for source in ("formula", "oracle"):
                items += [(r["w"], u, r["p"], c) for u, c in r[source].items()]
        for w, u, p, c in items:
            assert c, (w, u, p)
            assert c.is_homogeneous(p + length(w) - length(u)), (w, u, p, c)
            assert positivity_certificate(c) is not None, (w, u, p, c)


def test_criterion_6_classical_limit(criterion):
    with criterion("6. classical limit at n = 4 matches single Schubert products"):
        for w, m, p in _triples(4):
            e = pieri_expand(w, m, p)
            limit = classical_limit(e)
            assert limit == expand_product_classical(w, special_cycle(m, p, 4)), (w, m, p)
            assert set(limit.values()) <= {1}
            assert set(limit) == {u for u in e.terms if e.q_of(u) == 0}


def test_criterion_7_support(criterion, sweep):
    with criterion("7. oracle support == (r-arrow and q >= 0 and r(m,p) <= u), n <= 5"):
        exceptions = []
        for r in sweep:
            w, m, p = r["w"], r["m"], r["p"]
            if w.n > 5:
                continue
            cycle = special_cycle(m, p, w.n)
            for u in all_permutations(w.n):
                predicted = (r_arrow(w, u, m) is not None
                             and p + length(w) - length(u) >= 0
                             and bruhat_leq(cycle, u))
                if predicted != (u in r["oracle"]):
                    exceptions.append((str(w), str(u), m, p))
        assert exceptions == []


def _random_poly(rng, n_vars=4):
    terms = {}
    for _ in range(rng.randint(1, 5)):
        mono = {}
        for _ in range(rng.randint(0, 3)):
            v = Variable("x", rng.randint(1, n_vars))
            mono[v] = mono.get(v, 0) + rng.randint(1, 3)
        key = tuple(sorted(mono.items()))
        terms[key] = terms.get(key, 0) + rng.randint(-4, 4)
    return Polynomial(terms)


def _descending_words(w):
    n, words = w.n, []
    target = length(longest_element(n)) - length(w)

    def go(v, word):
        if len(word) == target:
            if v == w:
                words.append(tuple(word))
            return
        for i in range(1, n):
            if v(i) > v(i + 1):
                go(v.times_simple(i), word + [i])

    go(longest_element(n), [])
    return words


def test_criterion_8_property_suites(criterion):
    with criterion("8. d_i^2 = 0, braid relations, word independence, summand counts (1000 each)"):
        rng = random.Random(8)
        d = divided_difference
        for _ in range(1000):
            f = _random_poly(rng)
            i = rng.randint(1, 2)
            assert d(d(f, i), i) == Polynomial()
            assert d(d(d(f, i), i + 1), i) == d(d(d(f, i + 1), i), i + 1)

        for n in (3, 4):
            for w in all_permutations(n):
                expected = double_schubert(w)
                for word in _descending_words(w):
                    assert schubert_from_word(n, word) == expected

        count = 0
        while count < 1000:
            n = rng.randint(3, 7)
            w = Permutation(tuple(rng.sample(range(1, n + 1), n)))
            m = rng.randint(1, n - 1)
            p = rng.randint(1, n - m)
            support = list(pieri_expand(w, m, p).terms)
            if not support:
                continue
            u = rng.choice(support)
            datum = compute_datum(w, u, m, p)
            assert len(pieri_summands(datum)) == comb(datum.q + datum.r - 1, datum.q)
            count += 1
