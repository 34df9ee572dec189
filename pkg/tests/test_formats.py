import json

import pytest

from agt import formats, fsa
from agt.coxeter import CoxeterMatrix
from agt.errors import UsageError
from agt.pairfsa import PairDfa
from agt.rewrite import Presentation, knuth_bendix, system_from_presentation
from agt.words import inverse_closed_alphabet


def test_presentation_roundtrip(ab_alphabet):
    p = Presentation(ab_alphabet, [ab_alphabet.parse_word("abAB")])
    data = json.loads(formats.dumps(formats.presentation_to_json(p)))
    p2 = formats.presentation_from_json(data)
    assert p2 == p


def test_presentation_examples():
    z2 = formats.presentation_from_json(
        {
            "generators": ["a", "b"],
            "inverses": {"a": "A", "b": "B"},
            "relators": ["abAB"],
        }
    )
    assert z2.alphabet.names == ("a", "A", "b", "B")
    assert [z2.alphabet.format_word(r) for r in z2.relators] == ["abAB"]

    s3 = formats.presentation_from_json(
        {
            "generators": ["a", "b"],
            "involutions": ["a", "b"],
            "relators": ["ababab"],
        }
    )
    assert s3.alphabet.names == ("a", "b")
    assert s3.alphabet.inverse == (0, 1)


def test_presentation_error_diagnostics():
    with pytest.raises(UsageError, match="'c'"):
        formats.presentation_from_json(
            {
                "generators": ["a", "b"],
                "involutions": ["a", "b"],
                "relators": ["abc"],
            }
        )
    with pytest.raises(UsageError, match="generator 'b'"):
        formats.presentation_from_json(
            {"generators": ["a", "b"], "inverses": {"a": "A"}, "relators": []}
        )
    with pytest.raises(UsageError, match="distinct"):
        # an inverse name clashing with its generator is not an involution marker
        formats.presentation_from_json(
            {"generators": ["a"], "inverses": {"a": "a"}, "relators": []}
        )


def test_presentation_explicit_order():
    p = formats.presentation_from_json(
        {
            "generators": ["a", "b"],
            "inverses": {"a": "A", "b": "B"},
            "order": ["a", "b", "A", "B"],
            "relators": ["abAB"],
        }
    )
    assert p.alphabet.names == ("a", "b", "A", "B")
    assert p.alphabet.inverse == (2, 3, 0, 1)


def test_diff_dump_format(z2_structure):
    text = z2_structure.diff_machine.dump()
    lines = text.splitlines()
    assert lines[0] == "state 0 ''"
    assert any(line.startswith("state ") for line in lines)
    # transition triples: source, symbol name, target
    assert any(line.split()[1].startswith("(") for line in lines if not line.startswith("state"))


def test_dfa_roundtrip(free_structure):
    wa = free_structure.word_acceptor
    data = json.loads(formats.dumps(formats.dfa_to_json(wa)))
    wa2 = formats.dfa_from_json(data)
    assert wa2 == wa


def test_pairdfa_roundtrip(z2_structure):
    m = z2_structure.multipliers[0]
    data = json.loads(formats.dumps(formats.pairdfa_to_json(m)))
    m2 = formats.dfa_from_json(data)
    assert isinstance(m2, PairDfa)
    assert m2 == m


def test_matrix_roundtrip():
    m = CoxeterMatrix([[1, 3, 0], [3, 1, 4], [0, 4, 1]])
    data = json.loads(formats.dumps(formats.matrix_to_json(m)))
    m2 = formats.matrix_from_json(data)
    assert m2.m == m.m


def test_growth_json(z2_structure):
    g = fsa.growth_series(z2_structure.word_acceptor, 5)
    data = formats.growth_to_json(g)
    assert data["numerator"] == [1, 2, 1]
    assert data["denominator"] == [1, -2, 1]
    assert data["coefficients"] == [1, 4, 8, 12, 16]


def test_diff_roundtrip(z2_structure):
    d = z2_structure.diff_machine
    data = json.loads(formats.dumps(formats.diff_to_json(d)))
    d2 = formats.diff_from_json(data)
    assert d2.words == d.words
    assert d2.table == d.table
    assert data["k"] == 2


def test_structure_bundle_roundtrip(tmp_path, z2_structure):
    out = tmp_path / "bundle"
    written = formats.save_structure(z2_structure, out)
    assert "wa.json" in written and "m_eps.json" in written
    s2 = formats.load_structure(out)
    assert s2.word_acceptor == z2_structure.word_acceptor
    assert s2.k == z2_structure.k
    assert s2.verified
    assert s2.multipliers.keys() == z2_structure.multipliers.keys()
    for key in s2.multipliers:
        assert s2.multipliers[key] == z2_structure.multipliers[key]


def test_bundle_deterministic_bytes(tmp_path, z2_structure):
    d1 = tmp_path / "one"
    d2 = tmp_path / "two"
    formats.save_structure(z2_structure, d1)
    formats.save_structure(z2_structure, d2)
    for f in sorted(p.name for p in d1.iterdir()):
        assert (d1 / f).read_bytes() == (d2 / f).read_bytes()


def test_rules_dump(ab_alphabet):
    rs = system_from_presentation(Presentation(ab_alphabet, [ab_alphabet.parse_word("abAB")]))
    knuth_bendix(rs)
    text = formats.rules_dump(rs)
    assert "ba -> ab" in text
    assert text.endswith("\n")
