"""Consumer algorithms over verified automatic structures.

Normal forms are computed by folding the multiplier automata (one
functional partner lookup per letter), which makes the word problem,
order, growth and enumeration immediate.  Conjugacy search follows the
bounded-conjugator bound a^(|u|+|v|) with a = |X^+-|^k: the answer is
tri-state, since reaching the full bound is astronomically expensive
and anything short of it only proves "unknown".
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fsa, pairfsa
from .autostruct import EPSILON_KEY, AutomaticStructure
from .errors import IntegrityError, UsageError
from .fsa import Dfa, GrowthSeries
from .words import Word


def _require_verified(s: AutomaticStructure) -> None:
    if not s.verified:
        raise UsageError("structure is not verified")


def multiply(s: AutomaticStructure, u: Word, y: int) -> Word:
    """The unique v in L with u*y =_G v, for u already in normal form."""
    key = (y, u)
    memo = s._partner_memo
    v = memo.get(key)
    if v is None:
        vs = pairfsa.partners(s.multipliers[y], u)
        if vs is None or len(vs) != 1:
            raise IntegrityError(
                f"multiplier lookup for symbol {y} on {u!r} returned "
                f"{'infinitely many' if vs is None else len(vs)} partners"
            )
        v = vs[0]
        memo[key] = v
    return v


def normal_form(s: AutomaticStructure, w: Word) -> Word:
    """The unique accepted representative of the element of w.

    Folds the multipliers: starting from the empty word, each letter of
    w is applied through its multiplier's functional lookup.
    """
    _require_verified(s)
    s.alphabet.check_word(w)
    rep = b""
    for y in w:
        rep = multiply(s, rep, y)
    if not s.word_acceptor.accepts(rep):
        raise IntegrityError("normal form not accepted by the word acceptor")
    return rep


def word_problem(s: AutomaticStructure, u: Word, v: Word) -> bool:
    """True iff u and v represent the same group element."""
    return normal_form(s, u) == normal_form(s, v)


def group_order(s: AutomaticStructure) -> int | None:
    """Group order (None for infinite): unique representatives make this
    the count of accepted words, infinite exactly when the acceptor
    admits loops through live states."""
    _require_verified(s)
    return fsa.language_is_finite(s.word_acceptor)


def growth(s: AutomaticStructure, n_terms: int) -> GrowthSeries:
    """Growth series of the normal-form language (counts representatives
    by word length; shortlex representatives have geodesic length)."""
    _require_verified(s)
    return fsa.growth_series(s.word_acceptor, n_terms)


def enumerate_elements(s: AutomaticStructure, max_len: int) -> list[Word]:
    _require_verified(s)
    return fsa.enumerate_words(s.word_acceptor, max_len)


def element_ball(s: AutomaticStructure, radius: int) -> dict[Word, int]:
    """BFS of the Cayley graph: normal form -> word-length distance."""
    _require_verified(s)
    dist = {b"": 0}
    layer = [b""]
    for d in range(1, radius + 1):
        nxt = []
        for g in layer:
            for y in range(s.alphabet.size):
                h = multiply(s, g, y)
                if h not in dist:
                    dist[h] = d
                    nxt.append(h)
        layer = nxt
    return dist


@dataclass
class ConeTypeResult:
    """Radius-limited cone-type classification (the equivalence is only
    tested to the stated depth, so the output is approximate)."""

    automaton: Dfa
    count: int
    radius: int
    depth: int


def cone_types(s: AutomaticStructure, radius: int) -> ConeTypeResult:
    """Classify group elements by their outgoing geodesic trees.

    Elements within radius - depth of the identity (depth = radius // 2)
    are classified by their geodesic continuation trees truncated at
    that depth; the quotient automaton transitions along geodesic edges
    of BFS representatives.
    """
    _require_verified(s)
    if radius < 4:
        raise UsageError("cone-type radius must be at least 4")
    depth = radius // 2
    dist = element_ball(s, radius)
    classify_limit = radius - depth

    sig_ids: dict = {}

    def intern(x) -> int:
        if x not in sig_ids:
            sig_ids[x] = len(sig_ids)
        return sig_ids[x]

    memo: dict[tuple[Word, int], int] = {}

    def signature(g: Word, d: int) -> int:
        if d == 0:
            return intern("leaf")
        key = (g, d)
        got = memo.get(key)
        if got is None:
            items = []
            for y in range(s.alphabet.size):
                h = multiply(s, g, y)
                if dist.get(h, -1) == dist[g] + 1:
                    items.append((y, signature(h, d - 1)))
            got = intern(frozenset(items))
            memo[key] = got
        return got

    classified = [g for g, dg in dist.items() if dg <= classify_limit]
    classified.sort(key=lambda w: (len(w), w))
    classes: dict[int, int] = {}
    rep_of: dict[int, Word] = {}
    for g in classified:
        sig = signature(g, depth)
        if sig not in classes:
            classes[sig] = len(classes)
            rep_of[classes[sig]] = g
    count = len(classes)

    def class_of(g: Word) -> int:
        return classes[signature(g, depth)]

    rows = []
    for c in range(count):
        g = rep_of[c]
        row = []
        for y in range(s.alphabet.size):
            h = multiply(s, g, y)
            if dist.get(h, -1) == dist[g] + 1 and dist[h] <= classify_limit:
                row.append(class_of(h))
            else:
                row.append(fsa.FAIL)
        rows.append(row)
    dfa = Dfa(s.alphabet, count, class_of(b""), range(count), rows)
    return ConeTypeResult(dfa, count, radius, depth)


@dataclass
class ConjugacyAnswer:
    status: str  # "conjugate" | "notConjugateWithin" | "unknown"
    witness: Word | None
    searched_bound: int


def conjugacy_bound(s: AutomaticStructure, u: Word, v: Word) -> int:
    """The conjugator length bound |X^+-|^(k(|u|+|v|)), exactly."""
    _require_verified(s)
    return s.alphabet.size ** (s.k * (len(u) + len(v)))


def conjugacy_search(
    s: AutomaticStructure, u: Word, v: Word, max_len: int
) -> ConjugacyAnswer:
    """Breadth-first search for a conjugator among normal forms.

    Returns the shortlex-least witness g with g^-1 u g =_G v; reports
    notConjugateWithin only when the search reached the full conjugator
    bound (a complete search, hence a proof), else unknown.
    """
    _require_verified(s)
    if max_len < 0:
        raise UsageError("max_len must be >= 0")
    A = s.alphabet
    target = normal_form(s, v)
    for g in fsa.enumerate_words(s.word_acceptor, max_len):
        if normal_form(s, A.invert(g) + u + g) == target:
            assert word_problem(s, A.invert(g) + u + g, v)
            return ConjugacyAnswer("conjugate", g, max_len)
    if max_len >= conjugacy_bound(s, u, v):
        return ConjugacyAnswer("notConjugateWithin", None, max_len)
    return ConjugacyAnswer("unknown", None, max_len)
