# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled string-rewriting kernel; see _reduce_py.py for the contract.

The reduction loop dominates Knuth-Bendix completion time, so it runs
over raw byte buffers here.  Right-hand sides never exceed their
left-hand sides, so rewriting shrinks the buffer in place.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memmove

KERNEL_NAME = "cython"


def reduce_word(bytes word, int[::1] next_tab, int[::1] node_rule,
                list rhs_list, int n_syms, int max_lhs):
    cdef Py_ssize_t n = len(word)
    if n == 0:
        return word
    cdef unsigned char *buf = <unsigned char *> malloc(n)
    if buf == NULL:
        raise MemoryError()
    cdef const unsigned char *src = word
    memcpy(buf, src, n)
    cdef Py_ssize_t i = 0, j
    cdef int node, r, best_rule, best_len, lr
    cdef bytes rhs
    cdef const unsigned char *rp
    try:
        while i < n:
            node = 0
            best_rule = -1
            best_len = 0
            j = i
            while j < n:
                node = next_tab[node * n_syms + buf[j]]
                if node < 0:
                    break
                j += 1
                r = node_rule[node]
                if r >= 0 and (best_rule < 0 or r < best_rule):
                    best_rule = r
                    best_len = <int> (j - i)
            if best_rule < 0:
                i += 1
                continue
            rhs = <bytes> rhs_list[best_rule]
            lr = <int> len(rhs)
            if lr > 0:
                rp = rhs
                memcpy(buf + i, rp, lr)
            if lr < best_len:
                memmove(buf + i + lr, buf + i + best_len, n - i - best_len)
                n -= best_len - lr
            i = i - max_lhs + 1
            if i < 0:
                i = 0
        return buf[:n]
    finally:
        free(buf)


def leftmost_match(bytes word, int[::1] next_tab, int[::1] node_rule, int n_syms):
    cdef Py_ssize_t n = len(word)
    cdef const unsigned char *w = word
    cdef Py_ssize_t i, j
    cdef int node, r, best_rule, best_len
    for i in range(n):
        node = 0
        best_rule = -1
        best_len = 0
        j = i
        while j < n:
            node = next_tab[node * n_syms + w[j]]
            if node < 0:
                break
            j += 1
            r = node_rule[node]
            if r >= 0 and (best_rule < 0 or r < best_rule):
                best_rule = r
                best_len = <int> (j - i)
        if best_rule >= 0:
            return i, best_rule, best_len
    return None
