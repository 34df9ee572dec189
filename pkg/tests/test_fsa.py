import itertools
import random

import pytest

from agt import fsa
from agt.errors import UsageError
from agt.fsa import FAIL, Dfa, Nfa
from agt.words import Alphabet, inverse_closed_alphabet


def words_up_to(n_syms, max_len):
    for length in range(max_len + 1):
        yield from (bytes(t) for t in itertools.product(range(n_syms), repeat=length))


def language_set(m, max_len):
    return {w for w in words_up_to(m.alphabet.size, max_len) if m.accepts(w)}


def free_group_acceptor(A: Alphabet) -> Dfa:
    """Hand-built acceptor for freely reduced words (Fig.-1 style):
    state 0 = start, state 1+x = last letter was x."""
    n = A.size
    rows = [[1 + c for c in range(n)]]
    for last in range(n):
        rows.append([FAIL if A.inverse[last] == c else 1 + c for c in range(n)])
    return Dfa(A, n + 1, 0, range(n + 1), rows)


@pytest.fixture(scope="module")
def ab():
    return inverse_closed_alphabet(["a", "b"], {"a": "A", "b": "B"})


@pytest.fixture(scope="module")
def f2_acceptor(ab):
    return free_group_acceptor(ab)


def random_dfa(rng, alphabet, max_states=6):
    n = rng.randint(1, max_states)
    rows = [
        [rng.choice([FAIL] + list(range(n))) for _ in range(alphabet.size)]
        for _ in range(n)
    ]
    accepting = [s for s in range(n) if rng.random() < 0.5]
    return Dfa(alphabet, n, rng.randrange(n), accepting, rows)


# -- accepts -------------------------------------------------------------


def test_accepts_freely_reduced_examples(ab, f2_acceptor):
    assert f2_acceptor.accepts(ab.parse_word("aB"))
    assert not f2_acceptor.accepts(ab.parse_word("aA"))
    assert f2_acceptor.accepts(b"") == (f2_acceptor.initial in f2_acceptor.accepting)


# -- determinize ----------------------------------------------------------


def test_determinize_already_deterministic(ab, f2_acceptor):
    nfa = Nfa(ab)
    for _ in range(f2_acceptor.num_states):
        nfa.add_state()
    nfa.initials = {f2_acceptor.initial}
    nfa.accepting = set(f2_acceptor.accepting)
    for s, row in enumerate(f2_acceptor.transitions):
        for c, t in enumerate(row):
            if t != FAIL:
                nfa.add_transition(s, c, t)
    det = fsa.determinize(nfa)
    assert language_set(det, 5) == language_set(f2_acceptor, 5)


def test_determinize_contains_symbol(ab):
    # 2-state NFA for "words containing the symbol a"
    nfa = Nfa(ab)
    nfa.add_state()
    nfa.add_state()
    nfa.initials = {0}
    nfa.accepting = {1}
    for c in range(ab.size):
        nfa.add_transition(0, c, 0)
        nfa.add_transition(1, c, 1)
    nfa.add_transition(0, 0, 1)
    det = fsa.determinize(nfa)
    assert det.num_states == 2
    expected = {w for w in words_up_to(ab.size, 8) if 0 in w}
    assert language_set(det, 8) == expected


def test_determinize_empty_language(ab):
    nfa = Nfa(ab)
    nfa.add_state()
    nfa.initials = {0}
    det = fsa.determinize(nfa)
    assert fsa.language_is_finite(det) == 0


# -- minimize -------------------------------------------------------------


def test_minimize_idempotent_and_canonical(ab, f2_acceptor):
    m1 = fsa.minimize(f2_acceptor)
    assert fsa.minimize(m1) == m1


def test_minimize_f2_six_states_with_sink(ab, f2_acceptor):
    # duplicate every state; minimization must recover 5 live + sink
    n = f2_acceptor.num_states
    rows = []
    for copy in range(2):
        for row in f2_acceptor.transitions:
            rows.append([t if t == FAIL else t + n * ((copy + 1) % 2) for t in row])
    doubled = Dfa(ab, 2 * n, 0, list(range(2 * n)), rows)
    m = fsa.minimize(doubled)
    assert m.num_states == 5
    assert m.num_states_with_sink == 6
    assert language_set(m, 6) == language_set(f2_acceptor, 6)


def test_minimize_membership_agrees_with_brute_force(ab):
    rng = random.Random(12345)
    for _ in range(10):
        m = random_dfa(rng, ab)
        mm = fsa.minimize(m)
        assert language_set(mm, 8) == language_set(m, 8)


def test_minimize_canonical_on_language_equal_pairs(ab):
    rng = random.Random(99)
    for _ in range(20):
        m = fsa.minimize(random_dfa(rng, ab))
        # scramble the state numbering; minimization must recanonicalize
        n = m.num_states
        perm = list(range(n))
        rng.shuffle(perm)
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        rows = [None] * n
        for s in range(n):
            rows[perm[s]] = [FAIL if t == FAIL else perm[t] for t in m.transitions[s]]
        scrambled = Dfa(ab, n, perm[m.initial], [perm[s] for s in m.accepting], rows)
        assert fsa.minimize(scrambled) == m


# -- boolean ops ----------------------------------------------------------


def test_boolean_op_examples(ab, f2_acceptor):
    m = fsa.minimize(f2_acceptor)
    assert fsa.boolean_op("and", m, m) == m
    assert fsa.boolean_op("not", fsa.boolean_op("not", m)) == m
    diff = fsa.boolean_op("minus", fsa.all_words_dfa(ab), m)
    assert diff.accepts(ab.parse_word("aA"))
    assert not diff.accepts(ab.parse_word("ab"))


def test_boolean_ops_against_set_semantics(ab):
    rng = random.Random(7)
    for _ in range(15):
        m1 = random_dfa(rng, ab)
        m2 = random_dfa(rng, ab)
        s1 = language_set(m1, 6)
        s2 = language_set(m2, 6)
        assert language_set(fsa.boolean_op("and", m1, m2), 6) == s1 & s2
        assert language_set(fsa.boolean_op("or", m1, m2), 6) == s1 | s2
        assert language_set(fsa.boolean_op("minus", m1, m2), 6) == s1 - s2
        universe = set(words_up_to(ab.size, 6))
        assert language_set(fsa.boolean_op("not", m1), 6) == universe - s1


def test_de_morgan(ab):
    rng = random.Random(21)
    for _ in range(10):
        m1 = random_dfa(rng, ab)
        m2 = random_dfa(rng, ab)
        lhs = fsa.boolean_op("not", fsa.boolean_op("and", m1, m2))
        rhs = fsa.boolean_op(
            "or", fsa.boolean_op("not", m1), fsa.boolean_op("not", m2)
        )
        assert lhs == rhs


def test_boolean_alphabet_mismatch(ab):
    other = inverse_closed_alphabet(["x"], {"x": "X"})
    with pytest.raises(UsageError):
        fsa.boolean_op("and", fsa.all_words_dfa(ab), fsa.all_words_dfa(other))


# -- language analytics ----------------------------------------------------


def test_language_finiteness(ab, f2_acceptor, s3_structure, z2_structure):
    assert fsa.language_is_finite(s3_structure.word_acceptor) == 6
    assert fsa.language_is_finite(z2_structure.word_acceptor) is None
    assert fsa.language_is_finite(fsa.empty_language_dfa(ab)) == 0
    assert fsa.language_is_finite(f2_acceptor) is None


def test_growth_series_f2(f2_acceptor):
    g = fsa.growth_series(f2_acceptor, 4)
    assert g.numerator == (1, 1)
    assert g.denominator == (1, -3)
    assert g.coefficients == (1, 4, 12, 36)


def test_growth_series_all_words_and_empty(ab):
    g = fsa.growth_series(fsa.all_words_dfa(ab), 3)
    assert g.numerator == (1,)
    assert g.denominator == (1, -4)
    two = Alphabet(["x", "y"], [0, 1])
    g2 = fsa.growth_series(fsa.all_words_dfa(two), 4)
    assert (g2.numerator, g2.denominator) == ((1,), (1, -2))
    empty = fsa.growth_series(fsa.empty_language_dfa(ab), 3)
    assert (empty.numerator, empty.denominator) == ((0,), (1,))
    assert empty.coefficients == (0, 0, 0)


def test_growth_of_finite_language(ab, s3_structure):
    g = fsa.growth_series(s3_structure.word_acceptor, 6)
    assert g.coefficients == (1, 2, 2, 1, 0, 0)
    assert g.denominator == (1,)
    assert g.numerator == (1, 2, 2, 1)


def test_growth_matches_enumeration_counts(ab):
    # length 12 on a two-symbol alphabet, length 8 on four symbols
    two = Alphabet(["x", "y"], [0, 1])
    rng = random.Random(3)
    for _ in range(10):
        m = random_dfa(rng, two)
        g = fsa.growth_series(m, 13)
        counts = [0] * 13
        for w in fsa.enumerate_words(m, 12):
            counts[len(w)] += 1
        assert list(g.coefficients) == counts
    for _ in range(4):
        m = random_dfa(rng, ab)
        g = fsa.growth_series(m, 9)
        counts = [0] * 9
        for w in fsa.enumerate_words(m, 8):
            counts[len(w)] += 1
        assert list(g.coefficients) == counts


def test_enumerate_examples(ab, f2_acceptor, s3_structure):
    words = fsa.enumerate_words(f2_acceptor, 1)
    assert [ab.format_word(w) for w in words] == ["", "a", "A", "b", "B"]
    assert fsa.enumerate_words(fsa.empty_language_dfa(ab), 4) == []
    assert len(fsa.enumerate_words(s3_structure.word_acceptor, 3)) == 6


def test_enumerate_shortlex_order(ab, f2_acceptor):
    words = fsa.enumerate_words(f2_acceptor, 4)
    for u, v in zip(words, words[1:]):
        assert ab.shortlex_less(u, v)


def test_shortest_accepted(ab, f2_acceptor):
    assert fsa.shortest_accepted(f2_acceptor) == b""
    assert fsa.shortest_accepted(fsa.empty_language_dfa(ab)) is None
    no_eps = fsa.boolean_op(
        "minus", f2_acceptor, Dfa(ab, 1, 0, (0,), [[FAIL] * ab.size])
    )
    assert fsa.shortest_accepted(no_eps) == ab.parse_word("a")
