"""Stable JSON formats for every artifact the CLI reads and writes.

Automaton schema: {"alphabet": [names], "inverses": {name: name},
"pairAlphabet": bool, "states": n, "initial": i, "accepting": [...],
"transitions": row-major dense table with -1 = FAIL}.  For pair
automata the alphabet entry is the base alphabet and the columns follow
the documented pair-symbol order.  All writers sort keys and emit a
trailing newline, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

from .autostruct import EPSILON_KEY, AutomaticStructure
from .coxeter import CoxeterMatrix
from .errors import UsageError
from .fsa import Dfa, GrowthSeries
from .pairfsa import PairAlphabet, PairDfa
from .rewrite import Presentation, RewriteSystem
from .words import Alphabet
from .worddiff import WordDifferenceMachine


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _alphabet_to_json(a: Alphabet) -> dict:
    return {
        "alphabet": list(a.names),
        "inverses": {a.names[i]: a.names[a.inverse[i]] for i in range(a.size)},
    }


def _alphabet_from_json(data: dict) -> Alphabet:
    names = data["alphabet"]
    inv_names = data["inverses"]
    index = {n: i for i, n in enumerate(names)}
    try:
        inverse = [index[inv_names[n]] for n in names]
    except KeyError as exc:
        raise UsageError(f"inverse map refers to unknown symbol {exc}") from None
    return Alphabet(names, inverse)


def dfa_to_json(m: Dfa, pair: bool = False, base: Alphabet | None = None) -> dict:
    data = _alphabet_to_json(base if pair else m.alphabet)
    data.update(
        {
            "pairAlphabet": pair,
            "states": m.num_states,
            "initial": m.initial,
            "accepting": sorted(m.accepting),
            "transitions": [list(row) for row in m.transitions],
        }
    )
    return data


def dfa_from_json(data: dict) -> Dfa | PairDfa:
    base = _alphabet_from_json(data)
    alphabet = PairAlphabet(base).alphabet if data.get("pairAlphabet") else base
    m = Dfa(
        alphabet,
        data["states"],
        data["initial"],
        data["accepting"],
        data["transitions"],
    )
    if data.get("pairAlphabet"):
        return PairDfa(base, m)
    return m


def pairdfa_to_json(p: PairDfa) -> dict:
    return dfa_to_json(p.dfa, pair=True, base=p.base)


def presentation_to_json(p: Presentation) -> dict:
    a = p.alphabet
    generators = []
    inverses = {}
    involutions = []
    seen = set()
    for i, name in enumerate(a.names):
        if i in seen:
            continue
        generators.append(name)
        seen.add(i)
        j = a.inverse[i]
        if j == i:
            involutions.append(name)
        else:
            inverses[name] = a.names[j]
            seen.add(j)
    return {
        "generators": generators,
        "inverses": inverses,
        "involutions": involutions,
        "relators": [a.format_word(r) for r in p.relators],
    }


def presentation_from_json(data: dict) -> Presentation:
    if "generators" not in data:
        raise UsageError("presentation needs a 'generators' list")
    generators = data["generators"]
    inverses = data.get("inverses", {})
    involutions = data.get("involutions", [])
    if not isinstance(generators, list) or not generators:
        raise UsageError("'generators' must be a nonempty list")
    for g in generators:
        if g not in involutions and g not in inverses:
            raise UsageError(
                f"generator {g!r} needs an entry in 'inverses' or 'involutions'"
            )
    from .words import inverse_closed_alphabet

    explicit = data.get("order")
    if explicit is not None:
        index = {}
        names = list(explicit)
        inv = []
        for n in names:
            index[n] = len(index)
        for n in names:
            if n in involutions:
                inv.append(index[n])
            else:
                partner = inverses.get(n) or next(
                    (k for k, v in inverses.items() if v == n), None
                )
                if partner is None or partner not in index:
                    raise UsageError(f"order entry {n!r} lacks an inverse in the order")
                inv.append(index[partner])
        alphabet = Alphabet(names, inv)
    else:
        alphabet = inverse_closed_alphabet(generators, inverses, involutions)
    relators = []
    for r in data.get("relators", []):
        if isinstance(r, list):
            relators.append(alphabet.word(r))
        else:
            relators.append(alphabet.parse_word(r))
    return Presentation(alphabet, relators)


def matrix_to_json(m: CoxeterMatrix) -> dict:
    return {"rank": m.rank, "m": [list(row) for row in m.m]}


def matrix_from_json(data: dict) -> CoxeterMatrix:
    if "m" not in data:
        raise UsageError("Coxeter matrix file needs an 'm' table")
    m = CoxeterMatrix(data["m"])
    if "rank" in data and data["rank"] != m.rank:
        raise UsageError("declared rank does not match the matrix")
    return m


def growth_to_json(g: GrowthSeries) -> dict:
    return {
        "numerator": list(g.numerator),
        "denominator": list(g.denominator),
        "coefficients": list(g.coefficients),
        "display": str(g),
    }


def rules_dump(rs: RewriteSystem) -> str:
    return rs.dump() + "\n"


def diff_to_json(d: WordDifferenceMachine) -> dict:
    return {
        **_alphabet_to_json(d.alphabet),
        "states": [d.alphabet.format_word(w) for w in d.words],
        "transitions": [list(row) for row in d.table],
        "k": d.max_difference_length(),
    }


def diff_from_json(data: dict) -> WordDifferenceMachine:
    base = _alphabet_from_json(data)
    pa = PairAlphabet(base)
    words = tuple(base.parse_word(w) for w in data["states"])
    table = tuple(tuple(row) for row in data["transitions"])
    index = {w: i for i, w in enumerate(words)}
    inverse_state = tuple(
        index.get(base.free_reduce(base.invert(w)), -1) for w in words
    )
    return WordDifferenceMachine(base, pa, words, table, inverse_state, None)


# -- structure bundles -------------------------------------------------

WA_FILE = "wa.json"
PRESENTATION_FILE = "presentation.json"
DIFF_FILE = "diff.json"
TRANSCRIPT_FILE = "transcript.txt"
META_FILE = "meta.json"
RULES_FILE = "rules.txt"


def _multiplier_filename(a: Alphabet, key: int | None) -> str:
    return "m_eps.json" if key is None else f"m_{a.names[key]}.json"


def save_structure(s: AutomaticStructure, outdir: str | Path) -> list[str]:
    """Write a structure bundle directory; returns the file names written."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def write(name: str, text: str) -> None:
        (out / name).write_text(text)
        written.append(name)

    write(PRESENTATION_FILE, dumps(presentation_to_json(s.presentation)))
    write(WA_FILE, dumps(dfa_to_json(s.word_acceptor)))
    for key in sorted(s.multipliers, key=lambda k: (k is not None, k or 0)):
        write(
            _multiplier_filename(s.alphabet, key),
            dumps(pairdfa_to_json(s.multipliers[key])),
        )
    write(DIFF_FILE, dumps(diff_to_json(s.diff_machine)))
    write(
        META_FILE,
        dumps({"k": s.k, "verified": s.verified, "format": "agt-structure-v1"}),
    )
    write(TRANSCRIPT_FILE, s.transcript + "\n")
    if s.reducer is not None:
        write(RULES_FILE, rules_dump(s.reducer))
    return written


def load_structure(bundle: str | Path) -> AutomaticStructure:
    path = Path(bundle)
    if not path.is_dir():
        raise UsageError(f"{bundle} is not a structure bundle directory")
    pres = presentation_from_json(json.loads((path / PRESENTATION_FILE).read_text()))
    wa = dfa_from_json(json.loads((path / WA_FILE).read_text()))
    assert isinstance(wa, Dfa)
    diff = diff_from_json(json.loads((path / DIFF_FILE).read_text()))
    meta = json.loads((path / META_FILE).read_text())
    multipliers: dict[int | None, PairDfa] = {}
    for key in [None, *range(pres.alphabet.size)]:
        mp = path / _multiplier_filename(pres.alphabet, key)
        loaded = dfa_from_json(json.loads(mp.read_text()))
        assert isinstance(loaded, PairDfa)
        multipliers[key] = loaded
    transcript = (path / TRANSCRIPT_FILE).read_text().rstrip("\n")
    return AutomaticStructure(
        presentation=pres,
        word_acceptor=wa,
        multipliers=multipliers,
        diff_machine=diff,
        k=meta["k"],
        verified=meta["verified"],
        transcript=transcript,
    )
