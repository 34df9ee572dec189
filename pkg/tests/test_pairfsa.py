import itertools
import random

import pytest

from agt import fsa, pairfsa
from agt.autostruct import EPSILON_KEY
from agt.errors import UsageError
from agt.fsa import FAIL, Dfa
from agt.pairfsa import (
    PairAlphabet,
    PairDfa,
    compose,
    decode_pair,
    diagonal,
    encode_pair,
    partners,
    project_first,
    project_second,
    swap,
    validate_padding,
)
from agt.words import inverse_closed_alphabet


@pytest.fixture(scope="module")
def ab():
    return inverse_closed_alphabet(["a", "b"], {"a": "A", "b": "B"})


@pytest.fixture(scope="module")
def pa(ab):
    return PairAlphabet(ab)


def words_up_to(n_syms, max_len):
    for length in range(max_len + 1):
        yield from (bytes(t) for t in itertools.product(range(n_syms), repeat=length))


def test_pair_alphabet_shape(ab, pa):
    assert pa.alphabet.size == (ab.size + 1) ** 2 - 1
    assert pa.parts(pa.index(0, pa.pad)) == (0, pa.pad)
    with pytest.raises(UsageError):
        pa.index(pa.pad, pa.pad)


def test_encode_pair_examples(ab, pa):
    w = encode_pair(pa, ab.parse_word("ab"), ab.parse_word("a"))
    assert [pa.parts(c) for c in w] == [(0, 0), (2, pa.pad)]
    assert encode_pair(pa, b"", b"") == b""
    w2 = encode_pair(pa, ab.parse_word("a"), ab.parse_word("abb"))
    assert [pa.parts(c) for c in w2] == [(0, 0), (pa.pad, 2), (pa.pad, 2)]


def test_encode_decode_roundtrip(ab, pa):
    rng = random.Random(5)
    for _ in range(200):
        u = bytes(rng.randrange(ab.size) for _ in range(rng.randrange(6)))
        v = bytes(rng.randrange(ab.size) for _ in range(rng.randrange(6)))
        assert decode_pair(pa, encode_pair(pa, u, v)) == (u, v)


def test_decode_rejects_bad_padding(ab, pa):
    bad = bytes([pa.index(0, pa.pad), pa.index(0, 0)])
    with pytest.raises(UsageError):
        decode_pair(pa, bad)


def test_diagonal_examples(ab):
    allw = fsa.all_words_dfa(ab)
    d = diagonal(allw)
    assert d.accepts_pair(ab.parse_word("ab"), ab.parse_word("ab"))
    assert not d.accepts_pair(ab.parse_word("a"), ab.parse_word("b"))
    assert project_first(d) == fsa.minimize(allw)
    validate_padding(d)


def anb_times_an(ab) -> PairDfa:
    """Hand-built pair automaton for {(a^n b, a^n) : n >= 0}."""
    pa = PairAlphabet(ab)
    rows = [[FAIL] * pa.alphabet.size for _ in range(2)]
    rows[0][pa.index(0, 0)] = 0  # (a, a)
    rows[0][pa.index(2, pa.pad)] = 1  # (b, $)
    return PairDfa(ab, Dfa(pa.alphabet, 2, 0, (1,), rows), pa)


def test_project_first_examples(ab):
    p = anb_times_an(ab)
    proj = project_first(p)
    for w in words_up_to(ab.size, 8):
        expected = len(w) >= 1 and w[-1] == 2 and all(c == 0 for c in w[:-1])
        assert proj.accepts(w) == expected
    proj2 = project_second(p)
    for w in words_up_to(ab.size, 6):
        assert proj2.accepts(w) == all(c == 0 for c in w)
    empty = PairDfa(ab, fsa.empty_language_dfa(PairAlphabet(ab).alphabet))
    assert fsa.language_is_finite(project_first(empty)) == 0


def test_swap(ab):
    p = anb_times_an(ab)
    s = swap(p)
    assert s.accepts_pair(ab.parse_word("aa"), ab.parse_word("aab"))
    assert not s.accepts_pair(ab.parse_word("aab"), ab.parse_word("aa"))


def test_compose_diagonal_identity(ab, f2_acceptor=None):
    lang = fsa.minimize(
        fsa.boolean_op(
            "minus",
            fsa.all_words_dfa(ab),
            fsa.empty_language_dfa(ab),
        )
    )
    d = diagonal(lang)
    assert pairfsa.equivalent(compose(d, d), d)


def test_compose_with_empty_is_empty(ab):
    d = diagonal(fsa.all_words_dfa(ab))
    empty = PairDfa(ab, fsa.empty_language_dfa(PairAlphabet(ab).alphabet))
    assert compose(d, empty).is_empty()
    assert compose(empty, d).is_empty()


def test_compose_multipliers_z2(z2_structure):
    s = z2_structure
    m_eps = s.multipliers[EPSILON_KEY].minimized()
    m_a = s.multipliers[0]
    m_inv_a = s.multipliers[1]
    assert compose(m_a, m_inv_a).minimized() == m_eps


def test_compose_agrees_with_relational_join(ab):
    """Brute-force join on small random relations, |u|,|v|,|w| <= 5."""
    rng = random.Random(11)
    pa = PairAlphabet(ab)

    def random_relation(seed):
        r = random.Random(seed)
        pairs = set()
        for _ in range(6):
            u = bytes(r.randrange(2) for _ in range(r.randrange(4)))
            v = bytes(r.randrange(2) for _ in range(r.randrange(4)))
            pairs.add((u, v))
        return pairs

    def relation_dfa(pairs):
        words = sorted(encode_pair(pa, u, v) for u, v in pairs)
        # trie acceptor for the finite set
        index = {b"": 0}
        rows = [[FAIL] * pa.alphabet.size]
        accepting = set()
        for w in words:
            cur = b""
            for c in w:
                nxt = cur + bytes((c,))
                if nxt not in index:
                    index[nxt] = len(rows)
                    rows.append([FAIL] * pa.alphabet.size)
                rows[index[cur]][c] = index[nxt]
                cur = nxt
            accepting.add(index[w])
        return PairDfa(ab, Dfa(pa.alphabet, len(rows), 0, accepting, rows), pa)

    for trial in range(8):
        rel1 = random_relation(trial * 2)
        rel2 = random_relation(trial * 2 + 1)
        expected = {
            (u, w) for u, v in rel1 for v2, w in rel2 if v == v2
        }
        comp = compose(relation_dfa(rel1), relation_dfa(rel2))
        got = set()
        for u in words_up_to(2, 5):
            for w in words_up_to(2, 5):
                if comp.accepts_pair(u, w):
                    got.add((u, w))
        assert got == expected


def test_projection_shrinks_under_composition(ab):
    p = anb_times_an(ab)
    comp = compose(p, swap(p))
    sub = fsa.boolean_op("minus", project_first(comp), project_first(p))
    assert fsa.language_is_finite(sub) == 0


def test_partners_lookup(ab, z2_structure):
    s = z2_structure
    m_a = s.multipliers[0]
    assert partners(m_a, ab.parse_word("ab")) == [ab.parse_word("aab")]
    assert partners(m_a, ab.parse_word("A")) == [b""]
    # u not accepted by the word acceptor: no partners
    assert partners(m_a, ab.parse_word("ba")) == []


def test_pad_modes_and_validation(z2_structure):
    # minimization may merge padded dead ends (equal futures), so a state
    # with several entry modes must have no live continuation
    for mult in z2_structure.multipliers.values():
        validate_padding(mult)
        modes = pairfsa.pad_modes(mult)
        live = set(fsa.live_states(mult.dfa))
        for state, ms in modes.items():
            if state in live and len(ms) > 1:
                row = mult.dfa.transitions[state]
                assert not any(t in live for t in row if t != FAIL)
