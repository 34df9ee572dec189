"""Pure-Python string-rewriting kernel.

Same contract as the compiled kernel in ``_reduce_cy.pyx``: repeatedly
replace the leftmost, lowest-indexed matching left-hand side until the
word is irreducible.  The trie is a flat table ``next_tab`` of width
``n_syms`` per node (node 0 is the root, -1 means no edge) and
``node_rule`` holds the rule index ending at a node (-1 for none).
Right-hand sides never exceed their left-hand sides in length, so the
buffer only shrinks.
"""

from __future__ import annotations

KERNEL_NAME = "python"


def reduce_word(word, next_tab, node_rule, rhs_list, n_syms, max_lhs):
    buf = bytearray(word)
    i = 0
    while i < len(buf):
        node = 0
        best_rule = -1
        best_len = 0
        j = i
        n = len(buf)
        while j < n:
            node = next_tab[node * n_syms + buf[j]]
            if node < 0:
                break
            j += 1
            r = node_rule[node]
            if r >= 0 and (best_rule < 0 or r < best_rule):
                best_rule = r
                best_len = j - i
        if best_rule < 0:
            i += 1
            continue
        buf[i : i + best_len] = rhs_list[best_rule]
        i = i - max_lhs + 1
        if i < 0:
            i = 0
    return bytes(buf)


def leftmost_match(word, next_tab, node_rule, n_syms):
    """(position, rule index, match length) of the leftmost lowest-indexed
    match, or None when the word is irreducible."""
    n = len(word)
    for i in range(n):
        node = 0
        best_rule = -1
        best_len = 0
        j = i
        while j < n:
            node = next_tab[node * n_syms + word[j]]
            if node < 0:
                break
            j += 1
            r = node_rule[node]
            if r >= 0 and (best_rule < 0 or r < best_rule):
                best_rule = r
                best_len = j - i
        if best_rule >= 0:
            return i, best_rule, best_len
    return None
