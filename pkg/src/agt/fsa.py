"""Deterministic finite automata over a generator alphabet.

Transition tables are dense, one row per state in alphabet order, with
``FAIL = -1`` as an absorbing failure sentinel (the failure state is
implicit and never counted in ``num_states``).  Minimized automata are
canonical: states are live (reachable and co-reachable) and numbered
breadth-first from the initial state with symbols taken in alphabet
order, so two minimized automata accept the same language iff they are
structurally equal.

Language analytics (finiteness, counting, growth series) are exact over
arbitrary-precision integers; growth series are returned as integer
polynomial fractions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import ResourceLimitError, UsageError
from .words import Alphabet, Word

FAIL = -1

DEFAULT_STATE_CAP = 10**6


class Dfa:
    """Immutable deterministic automaton; FAIL (-1) is the implicit sink."""

    __slots__ = ("alphabet", "num_states", "initial", "accepting", "transitions")

    def __init__(
        self,
        alphabet: Alphabet,
        num_states: int,
        initial: int,
        accepting: Iterable[int],
        transitions: Sequence[Sequence[int]],
    ):
        if num_states <= 0:
            raise UsageError("a Dfa needs at least one state")
        if not 0 <= initial < num_states:
            raise UsageError("initial state out of range")
        accepting = frozenset(accepting)
        if any(not 0 <= s < num_states for s in accepting):
            raise UsageError("accepting state out of range")
        rows = tuple(tuple(row) for row in transitions)
        if len(rows) != num_states:
            raise UsageError("transition table must have one row per state")
        k = alphabet.size
        for row in rows:
            if len(row) != k:
                raise UsageError("transition row width must match alphabet size")
            if any(t != FAIL and not 0 <= t < num_states for t in row):
                raise UsageError("transition target out of range")
        self.alphabet = alphabet
        self.num_states = num_states
        self.initial = initial
        self.accepting = accepting
        self.transitions = rows

    @property
    def num_states_with_sink(self) -> int:
        """State count including the failure sink when it is reachable."""
        if any(FAIL in row for row in self.transitions):
            return self.num_states + 1
        return self.num_states

    def step(self, state: int, symbol: int) -> int:
        if state == FAIL:
            return FAIL
        return self.transitions[state][symbol]

    def run(self, w: Word) -> int:
        state = self.initial
        for c in w:
            state = self.transitions[state][c]
            if state == FAIL:
                return FAIL
        return state

    def accepts(self, w: Word) -> bool:
        self.alphabet.check_word(w)
        return self.run(w) in self.accepting

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dfa):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.num_states == other.num_states
            and self.initial == other.initial
            and self.accepting == other.accepting
            and self.transitions == other.transitions
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.num_states, self.initial, self.accepting, self.transitions))

    def __repr__(self) -> str:
        return (
            f"Dfa(states={self.num_states}, accepting={sorted(self.accepting)}, "
            f"alphabet={list(self.alphabet.names)!r})"
        )


class Nfa:
    """Nondeterministic automaton used as an intermediate during construction.

    Mutable and single-owner: build it up, then :func:`determinize`.
    Supports multiple initial states and epsilon moves.
    """

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.num_states = 0
        self.initials: set[int] = set()
        self.accepting: set[int] = set()
        self.transitions: dict[tuple[int, int], set[int]] = {}
        self.eps: dict[int, set[int]] = {}

    def add_state(self) -> int:
        self.num_states += 1
        return self.num_states - 1

    def add_transition(self, src: int, symbol: int, dst: int) -> None:
        self.transitions.setdefault((src, symbol), set()).add(dst)

    def add_eps(self, src: int, dst: int) -> None:
        self.eps.setdefault(src, set()).add(dst)

    def eps_closure(self, states: Iterable[int]) -> frozenset[int]:
        seen = set(states)
        stack = list(seen)
        while stack:
            s = stack.pop()
            for t in self.eps.get(s, ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)


def determinize(nfa: Nfa, state_cap: int = DEFAULT_STATE_CAP) -> Dfa:
    """Subset construction (reachable subsets only); epsilon moves are closed over."""
    k = nfa.alphabet.size
    start = nfa.eps_closure(nfa.initials)
    index: dict[frozenset[int], int] = {start: 0}
    rows: list[list[int]] = []
    queue = deque([start])
    order = [start]
    while queue:
        subset = queue.popleft()
        row = []
        for c in range(k):
            targets: set[int] = set()
            for s in subset:
                targets |= nfa.transitions.get((s, c), set())
            if targets:
                closed = nfa.eps_closure(targets)
                if closed not in index:
                    if len(index) >= state_cap:
                        raise ResourceLimitError("subset construction states", state_cap)
                    index[closed] = len(index)
                    queue.append(closed)
                    order.append(closed)
                row.append(index[closed])
            else:
                row.append(FAIL)
        rows.append(row)
    accepting = [i for i, subset in enumerate(order) if subset & nfa.accepting]
    return Dfa(nfa.alphabet, len(order), 0, accepting, rows)


# -- minimization ------------------------------------------------------


def _reachable(dfa: Dfa) -> list[int]:
    seen = [False] * dfa.num_states
    seen[dfa.initial] = True
    queue = deque([dfa.initial])
    order = [dfa.initial]
    while queue:
        s = queue.popleft()
        for t in dfa.transitions[s]:
            if t != FAIL and not seen[t]:
                seen[t] = True
                queue.append(t)
                order.append(t)
    return order


def _co_reachable(dfa: Dfa, states: Sequence[int]) -> set[int]:
    back: dict[int, list[int]] = {s: [] for s in states}
    in_set = set(states)
    for s in states:
        for t in dfa.transitions[s]:
            if t in in_set:
                back[t].append(s)
    live = set(s for s in states if s in dfa.accepting)
    queue = deque(live)
    while queue:
        s = queue.popleft()
        for p in back[s]:
            if p not in live:
                live.add(p)
                queue.append(p)
    return live


def _empty_dfa(alphabet: Alphabet) -> Dfa:
    return Dfa(alphabet, 1, 0, (), [[FAIL] * alphabet.size])


def minimize(dfa: Dfa) -> Dfa:
    """Canonical minimal automaton for the language of ``dfa``.

    Hopcroft partition refinement on the trimmed automaton, then a
    breadth-first renumbering from the initial state.  Equal languages
    give structurally identical results, which is the automaton
    equality used everywhere else.
    """
    reach = _reachable(dfa)
    live = _co_reachable(dfa, reach)
    if dfa.initial not in live:
        return _empty_dfa(dfa.alphabet)
    live_order = [s for s in reach if s in live]
    remap = {s: i for i, s in enumerate(live_order)}
    n = len(live_order)
    k = dfa.alphabet.size
    sink = n  # explicit dead state during refinement
    table = [
        [remap.get(t, sink) if t != FAIL else sink for t in dfa.transitions[s]]
        for s in live_order
    ]
    table.append([sink] * k)
    accepting = {remap[s] for s in live_order if s in dfa.accepting}

    # Hopcroft refinement over n+1 states.
    partition: list[set[int]] = []
    block_of = [0] * (n + 1)
    acc = set(accepting)
    rest = set(range(n + 1)) - acc
    for block in (acc, rest):
        if block:
            for s in block:
                block_of[s] = len(partition)
            partition.append(block)
    back: list[list[list[int]]] = [[[] for _ in range(n + 1)] for _ in range(k)]
    for s in range(n + 1):
        row = table[s]
        for c in range(k):
            back[c][row[c]].append(s)
    work = deque(range(len(partition)))
    in_work = set(work)
    while work:
        b = work.popleft()
        in_work.discard(b)
        splitter = list(partition[b])
        for c in range(k):
            pre: set[int] = set()
            for t in splitter:
                pre.update(back[c][t])
            touched: dict[int, set[int]] = {}
            for s in pre:
                touched.setdefault(block_of[s], set()).add(s)
            for blk, inside in touched.items():
                block = partition[blk]
                if len(inside) == len(block):
                    continue
                block -= inside
                new_id = len(partition)
                partition.append(inside)
                for s in inside:
                    block_of[s] = new_id
                if blk in in_work:
                    work.append(new_id)
                    in_work.add(new_id)
                else:
                    smaller = new_id if len(inside) <= len(block) else blk
                    work.append(smaller)
                    in_work.add(smaller)

    dead_block = block_of[sink]
    init_block = block_of[0]
    if init_block == dead_block:
        return _empty_dfa(dfa.alphabet)

    # BFS renumbering of live blocks from the initial block.
    rep: dict[int, int] = {}
    for s in range(n):
        rep.setdefault(block_of[s], s)
    number = {init_block: 0}
    order = [init_block]
    queue = deque([init_block])
    while queue:
        blk = queue.popleft()
        row = table[rep[blk]]
        for c in range(k):
            tb = block_of[row[c]]
            if tb != dead_block and tb not in number:
                number[tb] = len(number)
                order.append(tb)
                queue.append(tb)
    rows = []
    for blk in order:
        row = table[rep[blk]]
        rows.append(
            [number[block_of[t]] if block_of[t] != dead_block else FAIL for t in row]
        )
    new_accepting = [number[blk] for blk in order if rep[blk] in accepting]
    return Dfa(dfa.alphabet, len(order), 0, new_accepting, rows)


# -- boolean algebra ---------------------------------------------------


def _complete_step(dfa: Dfa, state: int, c: int) -> int:
    # FAIL behaves as an explicit absorbing non-accepting state.
    if state == FAIL:
        return FAIL
    return dfa.transitions[state][c]


def _product(m1: Dfa, m2: Dfa, keep: Callable[[bool, bool], bool]) -> Dfa:
    if m1.alphabet != m2.alphabet:
        raise UsageError("boolean operations need a common alphabet")
    k = m1.alphabet.size
    start = (m1.initial, m2.initial)
    index = {start: 0}
    rows: list[list[int]] = []
    order = [start]
    queue = deque([start])
    while queue:
        s1, s2 = queue.popleft()
        row = []
        for c in range(k):
            t = (_complete_step(m1, s1, c), _complete_step(m2, s2, c))
            if t == (FAIL, FAIL):
                row.append(FAIL)
                continue
            if t not in index:
                index[t] = len(index)
                order.append(t)
                queue.append(t)
            row.append(index[t])
        rows.append(row)
    accepting = [
        i
        for i, (s1, s2) in enumerate(order)
        if keep(s1 in m1.accepting, s2 in m2.accepting)
    ]
    return Dfa(m1.alphabet, len(order), 0, accepting, rows)


def complement(m: Dfa) -> Dfa:
    k = m.alphabet.size
    n = m.num_states
    rows = [[t if t != FAIL else n for t in row] for row in m.transitions]
    rows.append([n] * k)
    accepting = [s for s in range(n + 1) if s not in m.accepting]
    return minimize(Dfa(m.alphabet, n + 1, m.initial, accepting, rows))


def boolean_op(kind: str, m1: Dfa, m2: Dfa | None = None) -> Dfa:
    """Minimized boolean combination: kind in {"and","or","not","minus"}."""
    if kind == "not":
        if m2 is not None:
            raise UsageError("'not' takes a single automaton")
        return complement(m1)
    if m2 is None:
        raise UsageError(f"'{kind}' needs two automata")
    if kind == "and":
        return minimize(_product(m1, m2, lambda a, b: a and b))
    if kind == "or":
        return minimize(_product(m1, m2, lambda a, b: a or b))
    if kind == "minus":
        return minimize(_product(m1, m2, lambda a, b: a and not b))
    raise UsageError(f"unknown boolean op {kind!r}")


def equivalent(m1: Dfa, m2: Dfa) -> bool:
    """Language equality via canonical minimized forms."""
    return minimize(m1) == minimize(m2)


def all_words_dfa(alphabet: Alphabet) -> Dfa:
    return Dfa(alphabet, 1, 0, (0,), [[0] * alphabet.size])


def empty_language_dfa(alphabet: Alphabet) -> Dfa:
    return _empty_dfa(alphabet)


# -- language analytics ------------------------------------------------


def live_states(dfa: Dfa) -> list[int]:
    """States both reachable from the initial and able to reach acceptance."""
    reach = _reachable(dfa)
    co = _co_reachable(dfa, reach)
    return [s for s in reach if s in co]


def language_is_finite(dfa: Dfa) -> int | None:
    """Exact number of accepted words, or None when the language is infinite.

    The language is infinite iff the live part of the automaton admits a
    loop; otherwise the count is a DAG path count.
    """
    live = live_states(dfa)
    if dfa.initial not in live:
        return 0
    live_set = set(live)
    # cycle detection on the live subgraph
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {s: WHITE for s in live}
    stack: list[tuple[int, int]] = [(dfa.initial, 0)]
    colour[dfa.initial] = GREY
    while stack:
        s, i = stack.pop()
        row = dfa.transitions[s]
        advanced = False
        while i < len(row):
            t = row[i]
            i += 1
            if t not in live_set:
                continue
            if colour[t] == GREY:
                return None
            if colour[t] == WHITE:
                stack.append((s, i))
                colour[t] = GREY
                stack.append((t, 0))
                advanced = True
                break
        if not advanced:
            colour[s] = BLACK
    # acyclic: count accepted paths with memoized DFS
    memo: dict[int, int] = {}

    def count(s: int) -> int:
        if s in memo:
            return memo[s]
        total = 1 if s in dfa.accepting else 0
        for t in dfa.transitions[s]:
            if t in live_set:
                total += count(t)
        memo[s] = total
        return total

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, len(live) + 100))
    try:
        return count(dfa.initial)
    finally:
        sys.setrecursionlimit(old)


def count_words_by_length(dfa: Dfa, max_len: int) -> list[int]:
    """Exact accepted-word counts per length 0..max_len (big integers)."""
    live = live_states(dfa)
    if dfa.initial not in live:
        return [0] * (max_len + 1)
    live_ix = {s: i for i, s in enumerate(live)}
    succ: list[list[int]] = [[] for _ in live]
    for s in live:
        for t in dfa.transitions[s]:
            if t in live_ix:
                succ[live_ix[s]].append(live_ix[t])
    acc = [s in dfa.accepting for s in live]
    vec = [0] * len(live)
    vec[live_ix[dfa.initial]] = 1
    counts = []
    for _ in range(max_len + 1):
        counts.append(sum(v for v, a in zip(vec, acc) if a))
        nxt = [0] * len(live)
        for i, v in enumerate(vec):
            if v:
                for j in succ[i]:
                    nxt[j] += v
        vec = nxt
    return counts


@dataclass(frozen=True)
class GrowthSeries:
    """Rational generating function sum s(n) x^n with exact integer data.

    ``numerator``/``denominator`` are ascending integer coefficient
    tuples with denominator(0) > 0 and no common polynomial factor;
    ``coefficients`` are the first requested term counts.
    """

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]
    coefficients: tuple[int, ...]

    def term(self, n: int) -> int:
        return _expand(self.numerator, self.denominator, n + 1)[n]

    def expand(self, n_terms: int) -> list[int]:
        return _expand(self.numerator, self.denominator, n_terms)

    def __str__(self) -> str:
        return f"({_poly_str(self.numerator)})/({_poly_str(self.denominator)})"


def _poly_str(coeffs: Sequence[int]) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
            continue
        x = "x" if i == 1 else f"x^{i}"
        if c == 1:
            terms.append(x)
        elif c == -1:
            terms.append(f"-{x}")
        else:
            terms.append(f"{c}{x}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def _expand(num: Sequence[int], den: Sequence[int], n_terms: int) -> list[int]:
    # coefficients of num/den as a power series; den[0] != 0
    out: list[int] = []
    for n in range(n_terms):
        acc = Fraction(num[n]) if n < len(num) else Fraction(0)
        for i in range(1, min(n, len(den) - 1) + 1):
            acc -= den[i] * out[n - i]
        q = acc / den[0]
        if q.denominator != 1:
            raise AssertionError("series expansion produced a non-integer")
        out.append(int(q))
    return out


def _berlekamp_massey(seq: Sequence[int]) -> list[Fraction]:
    """Minimal LFSR (connection polynomial, constant term 1) over the rationals."""
    c = [Fraction(1)]
    b = [Fraction(1)]
    L, m = 0, 1
    bf = Fraction(1)
    for n in range(len(seq)):
        d = Fraction(seq[n])
        for i in range(1, L + 1):
            d += c[i] * seq[n - i]
        if d == 0:
            m += 1
            continue
        t = list(c)
        coef = d / bf
        while len(c) < len(b) + m:
            c.append(Fraction(0))
        for i, bv in enumerate(b):
            c[i + m] -= coef * bv
        if 2 * L <= n:
            L = n + 1 - L
            b = t
            bf = d
            m = 1
        else:
            m += 1
    out = c[: L + 1]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def growth_series(dfa: Dfa, n_terms: int) -> GrowthSeries:
    """Exact rational growth series of the accepted language.

    Term counts are computed by the transfer recurrence over live
    states; the minimal linear recurrence those terms satisfy (order at
    most the live state count, so 2m+1 terms pin it down) gives the
    denominator, and the numerator is the matching truncated product.
    The result is verified against the counted terms before returning.
    """
    if n_terms < 1:
        raise UsageError("n_terms must be >= 1")
    m = len(live_states(dfa))
    need = max(2 * m + 1, n_terms)
    counts = count_words_by_length(dfa, need - 1)
    if all(c == 0 for c in counts):
        return GrowthSeries((0,), (1,), tuple(counts[:n_terms]))
    conn = _berlekamp_massey(counts)
    # numerator = series * denominator, truncated; trailing terms must vanish
    prod = [Fraction(0)] * len(counts)
    for n in range(len(counts)):
        for i, cv in enumerate(conn):
            if i <= n:
                prod[n] += cv * counts[n - i]
    deg = max((i for i, v in enumerate(prod) if v != 0), default=-1)
    num_frac = prod[: deg + 1] if deg >= 0 else [Fraction(0)]
    # clear denominators jointly, normalize sign and content
    from math import gcd, lcm

    denoms = [f.denominator for f in num_frac + conn]
    scale = lcm(*denoms) if denoms else 1
    num = [int(f * scale) for f in num_frac]
    den = [int(f * scale) for f in conn]
    content = 0
    for v in num + den:
        content = gcd(content, abs(v))
    if content > 1:
        num = [v // content for v in num]
        den = [v // content for v in den]
    if den[0] < 0:
        num = [-v for v in num]
        den = [-v for v in den]
    series = GrowthSeries(tuple(num), tuple(den), tuple(counts[:n_terms]))
    if series.expand(len(counts)) != counts:
        raise AssertionError("growth series expansion mismatch")
    return series


def enumerate_words(dfa: Dfa, max_len: int) -> list[Word]:
    """All accepted words of length <= max_len, in shortlex order."""
    if max_len < 0:
        raise UsageError("max_len must be >= 0")
    live = set(live_states(dfa))
    out: list[Word] = []
    if dfa.initial not in live:
        return out
    layer: list[tuple[bytes, int]] = [(b"", dfa.initial)]
    if dfa.initial in dfa.accepting:
        out.append(b"")
    for _ in range(max_len):
        nxt: list[tuple[bytes, int]] = []
        for w, s in layer:
            row = dfa.transitions[s]
            for c in range(dfa.alphabet.size):
                t = row[c]
                if t in live:
                    wt = w + bytes((c,))
                    nxt.append((wt, t))
                    if t in dfa.accepting:
                        out.append(wt)
        layer = nxt
        if not layer:
            break
    return out


def shortest_accepted(dfa: Dfa) -> Word | None:
    """Shortlex-least accepted word, or None for the empty language."""
    if dfa.initial in dfa.accepting:
        return b""
    seen = {dfa.initial}
    layer = [(b"", dfa.initial)]
    while layer:
        nxt = []
        for w, s in layer:
            row = dfa.transitions[s]
            for c in range(dfa.alphabet.size):
                t = row[c]
                if t != FAIL and t not in seen:
                    wt = w + bytes((c,))
                    if t in dfa.accepting:
                        return wt
                    seen.add(t)
                    nxt.append((wt, t))
        layer = nxt
    return None
