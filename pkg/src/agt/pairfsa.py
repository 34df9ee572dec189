"""Two-variable automata over the padded pair alphabet.

A pair word encodes two words (u, v) letter by letter; when the lengths
differ, the shorter word is padded with the $ symbol at its end, so a
pair word has length max(|u|, |v|) and never contains ($, $).  Pair
automata are ordinary Dfas over the derived pair alphabet, wrapped with
their base alphabet; they are stored deterministic and minimized at API
boundaries.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from . import fsa
from .errors import ResourceLimitError, UsageError
from .fsa import FAIL, DEFAULT_STATE_CAP, Dfa, Nfa
from .words import Alphabet, Word

PAD_NAME = "$"


class PairAlphabet:
    """Derived alphabet of pairs (a, b), a, b in base + {$}, minus ($, $).

    Symbols are ordered row-major by component indices with $ last in
    each component, matching the serialized column order.  The pad
    component index is ``base.size``.
    """

    __slots__ = ("base", "pad", "alphabet", "_index")

    def __init__(self, base: Alphabet):
        self.base = base
        n = base.size
        self.pad = n
        names = []
        pairs = []
        for i in range(n + 1):
            for j in range(n + 1):
                if i == n and j == n:
                    continue
                left = base.names[i] if i < n else PAD_NAME
                right = base.names[j] if j < n else PAD_NAME
                names.append(f"({left},{right})")
                pairs.append((i, j))
        inv = []
        index = {p: k for k, p in enumerate(pairs)}
        for i, j in pairs:
            ii = base.inverse[i] if i < n else n
            jj = base.inverse[j] if j < n else n
            inv.append(index[(ii, jj)])
        self.alphabet = Alphabet(names, inv)
        self._index = index

    def index(self, i: int, j: int) -> int:
        try:
            return self._index[(i, j)]
        except KeyError:
            raise UsageError(f"invalid pair symbol ({i},{j})") from None

    def parts(self, k: int) -> tuple[int, int]:
        n = self.base.size
        i, j = divmod(k, n + 1)
        if i == n and j == n:
            raise UsageError("pair symbol index out of range")
        return i, j


def encode_pair(pa: PairAlphabet, u: Word, v: Word) -> bytes:
    """Pad the shorter word with $ at its end and zip into pair symbols."""
    pa.base.check_word(u)
    pa.base.check_word(v)
    pad = pa.pad
    out = bytearray()
    for i in range(max(len(u), len(v))):
        a = u[i] if i < len(u) else pad
        b = v[i] if i < len(v) else pad
        out.append(pa.index(a, b))
    return bytes(out)


def decode_pair(pa: PairAlphabet, pw: bytes) -> tuple[Word, Word]:
    """Inverse of encode_pair; raises on padding-discipline violations."""
    u = bytearray()
    v = bytearray()
    u_done = v_done = False
    for k in pw:
        a, b = pa.parts(k)
        if a == pa.pad:
            u_done = True
        elif u_done:
            raise UsageError("left word resumes after padding")
        else:
            u.append(a)
        if b == pa.pad:
            v_done = True
        elif v_done:
            raise UsageError("right word resumes after padding")
        else:
            v.append(b)
    return bytes(u), bytes(v)


class PairDfa:
    """A Dfa over the pair alphabet of ``base``, accepting padded pairs."""

    __slots__ = ("base", "pairs", "dfa")

    def __init__(self, base: Alphabet, dfa: Dfa, pairs: PairAlphabet | None = None):
        self.base = base
        self.pairs = pairs if pairs is not None else PairAlphabet(base)
        if dfa.alphabet != self.pairs.alphabet:
            raise UsageError("automaton alphabet is not the pair alphabet of base")
        self.dfa = dfa

    def accepts_pair(self, u: Word, v: Word) -> bool:
        return self.dfa.accepts(encode_pair(self.pairs, u, v))

    def minimized(self) -> "PairDfa":
        return PairDfa(self.base, fsa.minimize(self.dfa), self.pairs)

    def is_empty(self) -> bool:
        return fsa.language_is_finite(self.dfa) == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PairDfa):
            return NotImplemented
        return self.base == other.base and self.dfa == other.dfa

    def __hash__(self) -> int:
        return hash((self.base, self.dfa))

    def __repr__(self) -> str:
        return f"PairDfa(states={self.dfa.num_states}, base={list(self.base.names)!r})"


def equivalent(p: PairDfa, q: PairDfa) -> bool:
    return p.base == q.base and fsa.equivalent(p.dfa, q.dfa)


def pad_modes(p: PairDfa) -> dict[int, set[str]]:
    """Pad phases under which each reachable state can be entered.

    Modes are "noPad", "leftPadded", "rightPadded"; a clean pair
    automaton assigns each live state a single mode.
    """
    pa = p.pairs
    modes: dict[int, set[str]] = {p.dfa.initial: {"noPad"}}
    queue = deque([(p.dfa.initial, "noPad")])
    while queue:
        s, mode = queue.popleft()
        row = p.dfa.transitions[s]
        for k, t in enumerate(row):
            if t == FAIL:
                continue
            a, b = pa.parts(k)
            if a == pa.pad:
                nmode = "leftPadded"
            elif b == pa.pad:
                nmode = "rightPadded"
            else:
                nmode = "noPad"
            if nmode != mode and mode != "noPad":
                continue  # discipline-violating path; flagged by validate_padding
            cur = modes.setdefault(t, set())
            if nmode not in cur:
                cur.add(nmode)
                queue.append((t, nmode))
    return modes


def validate_padding(p: PairDfa) -> None:
    """Check that no accepted string violates the padding discipline.

    Tracks (state, mode) reachability; a transition that resumes a
    padded side must not be able to reach acceptance.
    """
    pa = p.pairs
    live = set(fsa.live_states(p.dfa))
    seen = {(p.dfa.initial, "noPad")}
    queue = deque(seen)
    while queue:
        s, mode = queue.popleft()
        row = p.dfa.transitions[s]
        for k, t in enumerate(row):
            if t == FAIL:
                continue
            a, b = pa.parts(k)
            if a == pa.pad:
                nmode = "leftPadded"
            elif b == pa.pad:
                nmode = "rightPadded"
            else:
                nmode = "noPad"
            bad = (mode == "leftPadded" and nmode != "leftPadded") or (
                mode == "rightPadded" and nmode != "rightPadded"
            )
            if bad:
                if t in live:
                    raise UsageError(
                        f"padding discipline violated at state {s} on symbol {k}"
                    )
                continue
            if (t, nmode) not in seen:
                seen.add((t, nmode))
                queue.append((t, nmode))


def diagonal(m: Dfa) -> PairDfa:
    """Identity relation on L(m): accepts exactly the pairs (w, w), w in L(m)."""
    pa = PairAlphabet(m.alphabet)
    k = m.alphabet.size
    rows = []
    for s in range(m.num_states):
        row = [FAIL] * pa.alphabet.size
        for c in range(k):
            t = m.transitions[s][c]
            if t != FAIL:
                row[pa.index(c, c)] = t
        rows.append(row)
    d = Dfa(pa.alphabet, m.num_states, m.initial, m.accepting, rows)
    return PairDfa(m.alphabet, fsa.minimize(d), pa)


def swap(p: PairDfa) -> PairDfa:
    """Coordinate swap: accepts (v, u) iff p accepts (u, v)."""
    pa = p.pairs
    perm = [pa.index(*reversed(pa.parts(k))) for k in range(pa.alphabet.size)]
    rows = []
    for row in p.dfa.transitions:
        new_row = [FAIL] * len(row)
        for k, t in enumerate(row):
            new_row[perm[k]] = t
        rows.append(new_row)
    d = Dfa(pa.alphabet, p.dfa.num_states, p.dfa.initial, p.dfa.accepting, rows)
    return PairDfa(p.base, fsa.minimize(d), pa)


def project_first(p: PairDfa, state_cap: int = DEFAULT_STATE_CAP) -> Dfa:
    """The language {u : some v with (u, v) accepted}.

    Second coordinates are erased; symbols ($, b) become epsilon moves
    (v outlives u), then determinize and minimize.
    """
    pa = p.pairs
    nfa = Nfa(p.base)
    for _ in range(p.dfa.num_states):
        nfa.add_state()
    nfa.initials = {p.dfa.initial}
    nfa.accepting = set(p.dfa.accepting)
    for s in range(p.dfa.num_states):
        for k, t in enumerate(p.dfa.transitions[s]):
            if t == FAIL:
                continue
            a, _b = pa.parts(k)
            if a == pa.pad:
                nfa.add_eps(s, t)
            else:
                nfa.add_transition(s, a, t)
    return fsa.minimize(fsa.determinize(nfa, state_cap))


def project_second(p: PairDfa, state_cap: int = DEFAULT_STATE_CAP) -> Dfa:
    return project_first(swap(p), state_cap)


def compose(p: PairDfa, q: PairDfa, state_cap: int = DEFAULT_STATE_CAP) -> PairDfa:
    """Relation composition {(u, w) : some v, (u,v) in p and (v,w) in q}.

    Built as a product NFA over reachable state pairs that guesses the
    middle word: on an output symbol (a, c) the middle letter b ranges
    over the base alphabet and $; portions of the middle word extending
    past both u and w are consumed by epsilon moves (p reads ($,b)
    while q reads (b,$)), so arbitrary middle-word overhang is handled
    exactly by the closure.
    """
    if p.base != q.base:
        raise UsageError("compose needs a common base alphabet")
    pa = p.pairs
    n = p.base.size
    pad = pa.pad

    # sparse views: p by (state, a) -> [(b, t)], q by (state, b) -> [(c, t)]
    p_by_a: list[dict[int, list[tuple[int, int]]]] = []
    for row in p.dfa.transitions:
        d: dict[int, list[tuple[int, int]]] = {}
        for k, t in enumerate(row):
            if t != FAIL:
                a, b = pa.parts(k)
                d.setdefault(a, []).append((b, t))
        p_by_a.append(d)
    q_by_b: list[dict[int, list[tuple[int, int]]]] = []
    for row in q.dfa.transitions:
        d = {}
        for k, t in enumerate(row):
            if t != FAIL:
                b, c = pa.parts(k)
                d.setdefault(b, []).append((c, t))
        q_by_b.append(d)

    # composed state: (p state, q state, output pad phase); the phase
    # (0 none, 1 u ended, 2 w ended) keeps the output string disciplined,
    # while p and q enforce the middle word's own padding internally.
    NOPH, UPAD, WPAD = 0, 1, 2
    nfa = Nfa(pa.alphabet)
    index: dict[tuple[int, int, int], int] = {}

    def state_id(sp: int, sq: int, ph: int) -> int:
        key = (sp, sq, ph)
        if key not in index:
            if len(index) >= state_cap:
                raise ResourceLimitError("composition product states", state_cap)
            index[key] = nfa.add_state()
            if sp in p.dfa.accepting and sq in q.dfa.accepting:
                nfa.accepting.add(index[key])
            todo.append(key)
        return index[key]

    todo: deque[tuple[int, int, int]] = deque()
    nfa.initials = {state_id(p.dfa.initial, q.dfa.initial, NOPH)}
    while todo:
        sp, sq, ph = todo.popleft()
        src = index[(sp, sq, ph)]
        pd = p_by_a[sp]
        qd = q_by_b[sq]
        for a, pairs_pb in pd.items():
            for b, tp in pairs_pb:
                for c, tq in qd.get(b, ()):
                    if a == pad and c == pad:
                        # middle word outlives both u and w: no output
                        nfa.add_eps(src, state_id(tp, tq, ph))
                        continue
                    if a != pad and c != pad:
                        nph = NOPH
                        if ph != NOPH:
                            continue
                    elif a == pad:
                        nph = UPAD
                        if ph == WPAD:
                            continue
                    else:
                        nph = WPAD
                        if ph == UPAD:
                            continue
                    nfa.add_transition(src, pa.index(a, c), state_id(tp, tq, nph))
        # q's pair string is exhausted (both v and w ended) while u continues
        if ph != UPAD:
            for a, pairs_pb in pd.items():
                if a == pad:
                    continue
                for b, tp in pairs_pb:
                    if b == pad:
                        nfa.add_transition(src, pa.index(a, pad), state_id(tp, sq, WPAD))
        # p's pair string is exhausted (both u and v ended) while w continues
        if ph != WPAD:
            for c, tq in qd.get(pad, ()):
                nfa.add_transition(src, pa.index(pad, c), state_id(sp, tq, UPAD))
    return PairDfa(p.base, fsa.minimize(fsa.determinize(nfa, state_cap)), pa)


def slice_first(p: PairDfa, u: Word) -> Dfa:
    """Dfa over the base alphabet accepting {v : (u, v) in L(p)}.

    Deterministic by construction: states are (position in u, pair
    state); acceptance means the rest of u pads out to an accepting
    state.  Exact for any partner multiplicity, including none.
    """
    pa = p.pairs
    pad = pa.pad
    m = p.dfa.num_states
    nu = len(u)
    # pad_ok[i][s]: reading (u_i,$)...(u_{nu-1},$) from s ends accepting
    pad_ok = [[False] * m for _ in range(nu + 1)]
    for s in range(m):
        pad_ok[nu][s] = s in p.dfa.accepting
    for i in range(nu - 1, -1, -1):
        sym = pa.index(u[i], pad)
        for s in range(m):
            t = p.dfa.transitions[s][sym]
            pad_ok[i][s] = t != FAIL and pad_ok[i + 1][t]
    index: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []

    def state_id(i: int, s: int) -> int:
        key = (i, s)
        if key not in index:
            index[key] = len(order)
            order.append(key)
        return index[key]

    state_id(0, p.dfa.initial)
    rows: list[list[int]] = []
    pos = 0
    while pos < len(order):
        i, s = order[pos]
        pos += 1
        row = []
        for b in range(p.base.size):
            if i < nu:
                t = p.dfa.transitions[s][pa.index(u[i], b)]
                row.append(state_id(i + 1, t) if t != FAIL else FAIL)
            else:
                t = p.dfa.transitions[s][pa.index(pad, b)]
                row.append(state_id(nu, t) if t != FAIL else FAIL)
        rows.append(row)
    accepting = [k for k, (i, s) in enumerate(order) if pad_ok[i][s]]
    return Dfa(p.base, len(order), 0, accepting, rows)


def partners(p: PairDfa, u: Word) -> list[Word] | None:
    """Sorted list of all v with (u, v) accepted; None when infinite."""
    sl = slice_first(p, u)
    count = fsa.language_is_finite(sl)
    if count is None:
        return None
    if count == 0:
        return []
    out = fsa.enumerate_words(sl, len(u) + p.dfa.num_states + 1)
    assert len(out) == count
    return out
