"""Benchmark the compiled reduction kernel against the pure-Python one.

Two measurements:
  1. micro: reduce a fixed random corpus through both kernel functions
     on the completed Z^2 system and a partially completed braid system;
  2. macro: derive the full braid-group structure in a subprocess with
     and without AGT_PURE_PYTHON=1.

Usage: python benchmarks/bench_reduce.py [--skip-macro]
"""

import argparse
import os
import random
import subprocess
import sys
import time

from agt import _reduce_py
from agt.limits import Limits
from agt.rewrite import Presentation, knuth_bendix, system_from_presentation
from agt.words import inverse_closed_alphabet

try:
    from agt import _reduce_cy

    KERNELS = [("cython", _reduce_cy), ("python", _reduce_py)]
except ImportError:
    KERNELS = [("python", _reduce_py)]


def systems():
    A = inverse_closed_alphabet(["a", "b"], {"a": "A", "b": "B"})
    z2 = system_from_presentation(Presentation(A, [A.parse_word("abAB")]))
    knuth_bendix(z2)
    b3 = system_from_presentation(Presentation(A, [A.parse_word("abaBAB")]))
    knuth_bendix(b3, Limits(max_rules=120))
    return A, [("Z^2 complete", z2), ("B3 partial (120 rules)", b3)]


def micro():
    A, cases = systems()
    rng = random.Random(77)
    corpus = [
        bytes(rng.randrange(A.size) for _ in range(rng.randrange(10, 60)))
        for _ in range(20_000)
    ]
    print(f"{'system':<24}{'kernel':<10}{'time':>10}{'words/s':>14}")
    for label, rs in cases:
        reference = None
        for name, kernel in KERNELS:
            start = time.perf_counter()
            out = [
                kernel.reduce_word(
                    w, rs._next, rs._node_rule, rs._rhs, rs._n_syms, rs.max_lhs_len
                )
                for w in corpus
            ]
            elapsed = time.perf_counter() - start
            if reference is None:
                reference = out
            else:
                assert out == reference, "kernels disagree"
            rate = len(corpus) / elapsed
            print(f"{label:<24}{name:<10}{elapsed:>9.3f}s{rate:>13.0f}")


def macro():
    snippet = (
        "import time; from agt.rewrite import Presentation, KERNEL_NAME;"
        "from agt.words import inverse_closed_alphabet;"
        "from agt.autostruct import derive_shortlex_structure;"
        "A = inverse_closed_alphabet(['a','b'], {'a':'A','b':'B'});"
        "t = time.perf_counter();"
        "out = derive_shortlex_structure(Presentation(A, [A.parse_word('abaBAB')]));"
        "print(f'{KERNEL_NAME}: {out.status} in {time.perf_counter()-t:.2f}s')"
    )
    print("\nfull braid-group derivation:", flush=True)
    for env_extra in ({}, {"AGT_PURE_PYTHON": "1"}):
        env = dict(os.environ, **env_extra)
        sys.stdout.flush()
        subprocess.run([sys.executable, "-c", snippet], env=env, check=True)


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--skip-macro", action="store_true")
    args = parser.parse_args()
    micro()
    if not args.skip_macro:
        macro()
