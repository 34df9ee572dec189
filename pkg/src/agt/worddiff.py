"""Word-difference machines: the engine recognizing fellow travelling.

States are reduced words d = u(i)^-1 v(i) collected from the prefixes
of rewrite rules (and their inverses).  A pair of words is accepted as
long as every prefix difference is represented in the state set: the
transition on a pair symbol (a, b) from state d is the reduction of
a^-1 d b, defined exactly when that reduction is again a state.  Pad
symbols (a,$) and ($,b) are ordinary transitions, so the automaton
constructions downstream need no special cases.
"""

from __future__ import annotations

from .pairfsa import PairAlphabet
from .rewrite import RewriteSystem
from .words import Word


class WordDifferenceMachine:
    __slots__ = ("alphabet", "pairs", "words", "index", "table", "inverse_state", "reducer")

    def __init__(
        self,
        alphabet,
        pairs: PairAlphabet,
        words: tuple[Word, ...],
        table: tuple[tuple[int, ...], ...],
        inverse_state: tuple[int, ...],
        reducer: RewriteSystem | None,
    ):
        self.alphabet = alphabet
        self.pairs = pairs
        self.words = words
        self.index = {w: i for i, w in enumerate(words)}
        self.table = table
        self.inverse_state = inverse_state
        self.reducer = reducer

    @property
    def num_states(self) -> int:
        return len(self.words)

    @property
    def initial(self) -> int:
        return 0  # the empty difference

    def max_difference_length(self) -> int:
        """The realized fellow-traveller bound k: longest state word."""
        return max(len(w) for w in self.words)

    def step(self, state: int, a: int, b: int) -> int:
        """Transition on component symbols (pad = alphabet size); -1 if undefined."""
        return self.table[state][self.pairs.index(a, b)]

    def step_sym(self, state: int, pair_symbol: int) -> int:
        return self.table[state][pair_symbol]

    def run_pair(self, u: Word, v: Word) -> tuple[bool, int]:
        """Run the padded pair (u, v); (True, final state) or (False, position)."""
        self.alphabet.check_word(u)
        self.alphabet.check_word(v)
        pad = self.pairs.pad
        state = 0
        for i in range(max(len(u), len(v))):
            a = u[i] if i < len(u) else pad
            b = v[i] if i < len(v) else pad
            state = self.table[state][self.pairs.index(a, b)]
            if state < 0:
                return False, i
        return True, state

    def state_of(self, w: Word) -> int | None:
        return self.index.get(w)

    def dump(self) -> str:
        """One line per state, then one line per defined transition."""
        fmt = self.alphabet.format_word
        lines = [f"state {i} {fmt(w)!r}" for i, w in enumerate(self.words)]
        for s, row in enumerate(self.table):
            for k, t in enumerate(row):
                if t >= 0:
                    lines.append(f"{s} {self.pairs.alphabet.names[k]} {t}")
        return "\n".join(lines)


def accumulate_from_rules(rs: RewriteSystem) -> WordDifferenceMachine:
    """Build the word-difference machine of a rewrite system.

    For every rule u -> v and prefix index i, the reduction of
    u(i)^-1 v(i) becomes a state; the state set is closed under
    (reduced) inversion, and the transition table is the full closure
    over the collected set.  Deterministic: states appear in discovery
    order starting from the empty difference.
    """
    A = rs.alphabet
    pa = PairAlphabet(A)
    red = rs.reduce
    inv = A.invert

    ordered: dict[Word, None] = {b"": None}
    for _, (u, v) in rs.live_items():
        m = max(len(u), len(v))
        for i in range(1, m + 1):
            ordered.setdefault(red(inv(u[:i]) + v[:i]), None)
    # inversion closure (reduced inverses are states too)
    work = list(ordered)
    while work:
        d = work.pop(0)
        di = red(inv(d))
        if di not in ordered:
            ordered[di] = None
            work.append(di)

    words = tuple(ordered)
    index = {w: i for i, w in enumerate(words)}
    pad = pa.pad
    n = A.size
    table = []
    for d in words:
        row = [-1] * pa.alphabet.size
        for k in range(pa.alphabet.size):
            a, b = pa.parts(k)
            left = bytes((A.inverse[a],)) if a != pad else b""
            right = bytes((b,)) if b != pad else b""
            d2 = red(left + d + right)
            if d2 in index:
                row[k] = index[d2]
        table.append(tuple(row))
    inverse_state = tuple(index[red(inv(d))] for d in words)
    return WordDifferenceMachine(A, pa, words, tuple(table), inverse_state, rs)
