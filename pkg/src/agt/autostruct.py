"""The shortlex automaticity pipeline.

From a presentation: run bounded Knuth-Bendix completion until the word
differences stabilise, build the candidate word acceptor and the
multiplier automata from the difference machine, apply elementary
projection/functionality tests (feeding failure witnesses back into
completion), and finally run axiom checking.  Passing axiom checks
proves the automata form a shortlex automatic structure; failing them
abandons the attempt.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from . import fsa, pairfsa
from .errors import ResourceLimitError
from .fsa import FAIL, Dfa
from .limits import Limits
from .pairfsa import PairDfa
from .rewrite import Completion, Presentation, RewriteSystem, system_from_presentation
from .words import Alphabet, Word
from .worddiff import WordDifferenceMachine, accumulate_from_rules

EPSILON_KEY = None  # multiplier map key for the identity multiplier

_LT, _GT, _PAD = 0, 1, 2


def build_candidate_word_acceptor(
    diff: WordDifferenceMachine, alphabet: Alphabet, state_cap: int = fsa.DEFAULT_STATE_CAP
) -> Dfa:
    """Candidate word acceptor: reject u as soon as some prefix u' admits
    a word v <_slex u' whose difference run ends at the empty difference.

    Rejecting on prefixes keeps the language prefix-closed (shortlex
    normal forms are).  The subset construction tracks, per candidate v,
    the current difference state together with the shortlex comparison
    status (still equal / lex-smaller / lex-bigger / v already ended);
    the always-present "v equals u so far" run is implicit.
    """
    n = alphabet.size
    eps = diff.initial
    pad = diff.pairs.pad
    step = diff.step

    def advance(items: frozenset[int], x: int) -> frozenset[int] | None:
        """None means a witness completed: u' has a smaller equal word."""
        out = set()
        # expansions of the implicit equal-so-far run
        for y in range(n):
            if y == x:
                continue
            d2 = step(eps, x, y)
            if d2 >= 0:
                if y < x and d2 == eps:
                    return None
                out.add(d2 * 3 + (_LT if y < x else _GT))
        d2 = step(eps, x, pad)
        if d2 >= 0:
            if d2 == eps:
                return None
            out.add(d2 * 3 + _PAD)
        for item in items:
            d, flag = divmod(item, 3)
            if flag == _PAD:
                d2 = step(d, x, pad)
                if d2 >= 0:
                    if d2 == eps:
                        return None
                    out.add(d2 * 3 + _PAD)
            else:
                for y in range(n):
                    d2 = step(d, x, y)
                    if d2 >= 0:
                        if flag == _LT and d2 == eps:
                            return None
                        out.add(d2 * 3 + flag)
                d2 = step(d, x, pad)
                if d2 >= 0:
                    if d2 == eps:
                        return None
                    out.add(d2 * 3 + _PAD)
        return frozenset(out)

    start: frozenset[int] = frozenset()
    index = {start: 0}
    order = [start]
    rows: list[list[int]] = []
    queue = deque([start])
    while queue:
        state = queue.popleft()
        row = []
        for x in range(n):
            nxt = advance(state, x)
            if nxt is None:
                row.append(FAIL)
                continue
            if nxt not in index:
                if len(index) >= state_cap:
                    raise ResourceLimitError("word acceptor states", state_cap)
                index[nxt] = len(index)
                order.append(nxt)
                queue.append(nxt)
            row.append(index[nxt])
        rows.append(row)
    return fsa.minimize(Dfa(alphabet, len(order), 0, range(len(order)), rows))


def build_multiplier(
    wa: Dfa,
    diff: WordDifferenceMachine,
    y: int | None,
    state_cap: int = fsa.DEFAULT_STATE_CAP,
) -> PairDfa:
    """Multiplier automaton M_y: accepts (u, v) iff both are accepted by
    the word acceptor (pad-aware) and the difference run ends at the
    state of the reduced word of y (the empty word for y = None).

    Direct product of two word-acceptor runs with the difference
    machine; a padded side must be accepted at the moment its padding
    starts and is frozen afterwards.
    """
    A = wa.alphabet
    pa = diff.pairs
    pad = pa.pad
    if y is None:
        target_word = b""
    else:
        target_word = diff.reducer.reduce(bytes((y,))) if diff.reducer else bytes((y,))
    target = diff.state_of(target_word)
    if target is None:
        # reported by the caller: the multiplier is empty
        return PairDfa(A, fsa.empty_language_dfa(pa.alphabet), pa)

    NOPAD, UPAD, VPAD = 0, 1, 2
    start = (wa.initial, wa.initial, diff.initial, NOPAD)
    index = {start: 0}
    order = [start]
    rows: list[list[int]] = []
    queue = deque([start])

    def state_id(st: tuple[int, int, int, int]) -> int:
        if st not in index:
            if len(index) >= state_cap:
                raise ResourceLimitError("multiplier states", state_cap)
            index[st] = len(index)
            order.append(st)
            queue.append(st)
        return index[st]

    while queue:
        su, sv, d, mode = queue.popleft()
        row = [FAIL] * pa.alphabet.size
        for k in range(pa.alphabet.size):
            a, b = pa.parts(k)
            if a != pad and b != pad:
                if mode != NOPAD:
                    continue
                tu = wa.transitions[su][a]
                tv = wa.transitions[sv][b]
                d2 = diff.step_sym(d, k)
                if tu != FAIL and tv != FAIL and d2 >= 0:
                    row[k] = state_id((tu, tv, d2, NOPAD))
            elif b == pad:
                # v has ended; it must be accepted where it stopped
                if mode == NOPAD and sv not in wa.accepting:
                    continue
                if mode == UPAD:
                    continue
                tu = wa.transitions[su][a]
                d2 = diff.step_sym(d, k)
                if tu != FAIL and d2 >= 0:
                    row[k] = state_id((tu, sv, d2, VPAD))
            else:
                if mode == NOPAD and su not in wa.accepting:
                    continue
                if mode == VPAD:
                    continue
                tv = wa.transitions[sv][b]
                d2 = diff.step_sym(d, k)
                if tv != FAIL and d2 >= 0:
                    row[k] = state_id((su, tv, d2, UPAD))
        rows.append(row)

    accepting = []
    for i, (su, sv, d, mode) in enumerate(order):
        if d != target:
            continue
        if mode == NOPAD and su in wa.accepting and sv in wa.accepting:
            accepting.append(i)
        elif mode == VPAD and su in wa.accepting:
            accepting.append(i)
        elif mode == UPAD and sv in wa.accepting:
            accepting.append(i)
    d = Dfa(pa.alphabet, len(order), 0, accepting, rows)
    return PairDfa(A, fsa.minimize(d), pa)


@dataclass
class AutomaticStructure:
    """Word acceptor, multipliers and provenance for one derivation."""

    presentation: Presentation
    word_acceptor: Dfa
    multipliers: dict[int | None, PairDfa]
    diff_machine: WordDifferenceMachine
    k: int
    verified: bool = False
    transcript: str = ""
    reducer: RewriteSystem | None = None
    _partner_memo: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def alphabet(self) -> Alphabet:
        return self.presentation.alphabet


@dataclass
class CheckFailure:
    kind: str  # "empty" | "epsilon" | "projection" | "functionality"
    symbol: int | None = None  # multiplier key involved
    witness: Word | None = None
    partners: tuple[Word, ...] = ()


@dataclass
class ElementaryReport:
    ok: bool
    failures: list[CheckFailure] = field(default_factory=list)


def elementary_checks(s: AutomaticStructure, radius: int) -> ElementaryReport:
    """The quick tests that must pass before axiom checking.

    (a) the word acceptor is nonempty and accepts the empty word;
    (b) each multiplier projects onto the acceptor language on both
        coordinates (every representative can be multiplied);
    (c) each multiplier is functional up to the given radius: every
        accepted u of length <= radius has exactly one partner.
    Failures carry a witness word for the retry loop.
    """
    failures: list[CheckFailure] = []
    wa = s.word_acceptor
    if not wa.accepts(b""):
        return ElementaryReport(False, [CheckFailure(kind="epsilon")])
    wa_min = fsa.minimize(wa)
    for key, mult in sorted(s.multipliers.items(), key=lambda kv: (kv[0] is None, kv[0] or 0)):
        proj1 = pairfsa.project_first(mult)
        if proj1 != wa_min:
            witness = fsa.shortest_accepted(fsa.boolean_op("minus", wa_min, proj1))
            failures.append(CheckFailure("projection", key, witness))
            continue
        proj2 = pairfsa.project_second(mult)
        if proj2 != wa_min:
            witness = fsa.shortest_accepted(fsa.boolean_op("minus", wa_min, proj2))
            failures.append(CheckFailure("projection", key, witness))
    if not failures:
        words = fsa.enumerate_words(wa, radius)
        for key, mult in sorted(s.multipliers.items(), key=lambda kv: (kv[0] is None, kv[0] or 0)):
            for u in words:
                vs = pairfsa.partners(mult, u)
                if vs is None or len(vs) != 1:
                    failures.append(
                        CheckFailure("functionality", key, u, tuple(vs or ()))
                    )
                    break
    return ElementaryReport(not failures, failures)


@dataclass
class AxiomReport:
    ok: bool
    failed_relator: Word | None = None
    failed_inverse: int | None = None


def axiom_check(s: AutomaticStructure, state_cap: int = fsa.DEFAULT_STATE_CAP) -> AxiomReport:
    """Axiom checking: composed multipliers must equal the identity
    multiplier, for every inverse pair and every relator.

    Equality is structural equality of canonical minimized automata.  A
    pass proves the structure; a failure abandons the derivation.
    """
    A = s.alphabet
    m_eps = s.multipliers[EPSILON_KEY].minimized()
    done = set()
    for y in range(A.size):
        pair = tuple(sorted((y, A.inverse[y])))
        if pair in done:
            continue
        done.add(pair)
        comp = pairfsa.compose(s.multipliers[y], s.multipliers[A.inverse[y]], state_cap)
        if comp.minimized() != m_eps:
            return AxiomReport(False, failed_inverse=y)
    for relator in s.presentation.relators:
        acc = s.multipliers[relator[0]]
        for c in relator[1:]:
            acc = pairfsa.compose(acc, s.multipliers[c], state_cap)
        if acc.minimized() != m_eps:
            return AxiomReport(False, failed_relator=relator)
    return AxiomReport(True)


@dataclass
class DeriveOutcome:
    status: str  # "verified" | "abandoned"
    structure: AutomaticStructure | None
    transcript: str
    reason: str | None = None
    resource_limited: bool = False

    @property
    def verified(self) -> bool:
        return self.status == "verified"


def derive_shortlex_structure(
    pres: Presentation, limits: Limits | None = None
) -> DeriveOutcome:
    """The outer loop: complete a while, build automata, test, retry.

    Completion pauses when no new word difference has appeared during
    the last ``stability_window`` processed critical pairs.  Elementary
    failures feed witness equations back and resume completion; axiom
    failure or pass exhaustion abandons with a transcript.
    """
    limits = limits or Limits()
    A = pres.alphabet
    rs = system_from_presentation(pres)
    comp = Completion(rs, limits)
    lines: list[str] = []

    diff_words: set[Word] = set()
    state = {"since_new": 0}

    def note_rule(lhs: Word, rhs: Word) -> None:
        red = rs.reduce
        inv = A.invert
        for i in range(1, max(len(lhs), len(rhs)) + 1):
            d = red(inv(lhs[:i]) + rhs[:i])
            if d not in diff_words:
                diff_words.add(d)
                diff_words.add(red(inv(d)))
                state["since_new"] = 0

    comp.on_rule = note_rule

    def pause_when(c: Completion) -> bool:
        state["since_new"] += 1
        return state["since_new"] >= limits.stability_window

    structure: AutomaticStructure | None = None
    for pass_no in range(1, limits.max_passes + 1):
        state["since_new"] = 0
        result = comp.run(pause_when)
        lines.append(
            f"pass {pass_no}: kb status={result.status}"
            + (f" which={result.which}" if result.which else "")
            + f" rules={rs.num_live} processed={result.processed} queue={result.queue_size}"
        )
        try:
            diff = accumulate_from_rules(rs)
            lines.append(f"pass {pass_no}: diffs={diff.num_states} k={diff.max_difference_length()}")
            wa = build_candidate_word_acceptor(diff, A, limits.state_cap)
            lines.append(f"pass {pass_no}: wa states={wa.num_states} (+sink={wa.num_states_with_sink})")
            multipliers: dict[int | None, PairDfa] = {}
            multipliers[EPSILON_KEY] = build_multiplier(wa, diff, None, limits.state_cap)
            for y in range(A.size):
                multipliers[y] = build_multiplier(wa, diff, y, limits.state_cap)
            sizes = " ".join(
                f"m_{A.names[y] if y is not None else 'eps'}={m.dfa.num_states}"
                for y, m in sorted(multipliers.items(), key=lambda kv: (kv[0] is not None, kv[0] or 0))
            )
            lines.append(f"pass {pass_no}: {sizes}")
            for y, m in multipliers.items():
                if m.is_empty():
                    name = A.names[y] if y is not None else "eps"
                    lines.append(f"pass {pass_no}: warning multiplier m_{name} is empty")
        except ResourceLimitError as exc:
            lines.append(f"pass {pass_no}: resource failure: {exc}")
            return DeriveOutcome(
                "abandoned", None, "\n".join(lines), str(exc), resource_limited=True
            )
        structure = AutomaticStructure(
            presentation=pres,
            word_acceptor=wa,
            multipliers=multipliers,
            diff_machine=diff,
            k=diff.max_difference_length(),
            reducer=rs,
        )
        report = elementary_checks(structure, limits.check_radius)
        if not report.ok:
            descs = []
            injected = 0
            for f in report.failures:
                name = "eps" if f.symbol is None else A.names[f.symbol]
                w = A.format_word(f.witness) if f.witness is not None else "-"
                descs.append(f"{f.kind}(m_{name}, witness={w!r})")
                if f.witness is not None and f.symbol is not None:
                    uy = f.witness + bytes((f.symbol,))
                    nf = rs.reduce(uy)
                    if nf != uy:
                        comp.enqueue((uy, nf))
                        injected += 1
                for v1, v2 in zip(f.partners, f.partners[1:]):
                    comp.enqueue((v1, v2))
                    injected += 1
            lines.append(
                f"pass {pass_no}: elementary=failed [{'; '.join(descs)}] injected={injected}"
            )
            if not comp.queue:
                lines.append(f"pass {pass_no}: no further equations available; giving up")
                return DeriveOutcome(
                    "abandoned", structure, "\n".join(lines),
                    "elementary checks fail with no equations left to process",
                )
            continue
        lines.append(f"pass {pass_no}: elementary=ok")
        try:
            ax = axiom_check(structure, limits.state_cap)
        except ResourceLimitError as exc:
            lines.append(f"pass {pass_no}: axiom check resource failure: {exc}")
            return DeriveOutcome(
                "abandoned", structure, "\n".join(lines), str(exc), resource_limited=True
            )
        if ax.ok:
            lines.append(f"pass {pass_no}: axiom=ok")
            lines.append(f"verified: k={structure.k}")
            structure.verified = True
            structure.transcript = "\n".join(lines)
            return DeriveOutcome("verified", structure, structure.transcript)
        if ax.failed_inverse is not None:
            what = f"inverse pair ({A.names[ax.failed_inverse]})"
        else:
            what = f"relator {A.format_word(ax.failed_relator)!r}"
        lines.append(f"pass {pass_no}: axiom=failed on {what}; procedure abandoned")
        return DeriveOutcome(
            "abandoned", structure, "\n".join(lines), f"axiom check failed on {what}"
        )
    lines.append(f"abandoned: pass limit ({limits.max_passes}) exhausted")
    return DeriveOutcome(
        "abandoned", structure, "\n".join(lines), "pass limit exhausted"
    )
