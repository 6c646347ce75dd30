#!/usr/bin/env python3
"""Regenerates tests/fixtures.hpp from brute-force counting in plain Python.

Letters are signed ints: 1..a generators, -1..-a inverses. Nothing here
imports the C++ library.

    python3 tests/oracles/fixtures.py > tests/fixtures.hpp
"""

from fractions import Fraction
import sys


def layer(a, n):
    return 1 if n == 0 else 2 * a * (2 * a - 1) ** (n - 1)


def letters(a):
    return [i for i in range(-a, a + 1) if i != 0]


def exponent_counts(a, n, k, marked=1):
    """counts[r] = reduced words of length n with marked exponent sum = r mod k."""
    if n == 0:
        out = [0] * k
        out[0] = 1
        return out
    state = {}
    for l in letters(a):
        s = (1 if l == marked else -1 if l == -marked else 0) % k
        state[(l, s)] = state.get((l, s), 0) + 1
    for _ in range(n - 1):
        nxt = {}
        for (last, s), c in state.items():
            for l in letters(a):
                if l == -last:
                    continue
                t = (s + (1 if l == marked else -1 if l == -marked else 0)) % k
                nxt[(l, t)] = nxt.get((l, t), 0) + c
        state = nxt
    out = [0] * k
    for (_, s), c in state.items():
        out[s] += c
    return out


def extremal_densities(a, k, n_max):
    mu, out = Fraction(0), []
    for n in range(1, n_max + 1):
        mu += Fraction(exponent_counts(a, n, k)[1 % k], layer(a, n))
        out.append(mu / n)
    return out


def semigroup_densities(a, k, n_max):
    from math import comb
    mu, out = Fraction(0), []
    for n in range(1, n_max + 1):
        hits = sum(comb(n, j) * (a - 1) ** (n - j) for j in range(n + 1) if j % k == 1 % k)
        mu += Fraction(hits, a ** n)
        out.append(mu / n)
    return out


def xy_count(a, x, y, n):
    state = {x: 1}
    for _ in range(n - 1):
        nxt = {}
        for last, c in state.items():
            for l in letters(a):
                if l != -last:
                    nxt[l] = nxt.get(l, 0) + c
        state = nxt
    return state.get(y, 0)


def xy_densities(a, x, y, n_max):
    mu, out = Fraction(0), []
    for n in range(1, n_max + 1):
        mu += Fraction(xy_count(a, x, y, n), layer(a, n))
        out.append(mu / n)
    return out


def words_from(a, first, n_max):
    """All reduced words of length 1..n_max starting with `first`."""
    stack = [(first,)]
    while stack:
        w = stack.pop()
        yield w
        if len(w) < n_max:
            for l in letters(a):
                if l != -w[-1]:
                    stack.append(w + (l,))


def greedy_trace(a, k, cap, x=1, y=1, floor=Fraction(1, 10 ** 6)):
    """Layer-greedy divisor-free W inside S = extremal(k) n F^{xy}."""
    def in_g(t):
        return len(t) == 0 or (t[0] == x and t[-1] == y)

    def esum(w):
        return sum(1 if l == 1 else -1 if l == -1 else 0 for l in w)

    open_ = {l: set() for l in range(1, cap + 1)}
    for w in words_from(a, x, cap):
        if w[-1] == y and esum(w) % k == 1 % k:
            open_[len(w)].add(w)
    kappa = Fraction(2 * a, 2 * a - 1)
    mu, steps, W = Fraction(0), [], {}
    while True:
        best, best_inc = 0, Fraction(0)
        for l in range(1, cap + 1):
            inc = Fraction(len(open_[l]), layer(a, l))
            if open_[l] and inc > best_inc:
                best, best_inc = l, inc
        if best == 0:
            stop = "layers-exhausted"
            break
        if best_inc < floor:
            stop = "floor-reached"
            break
        added = open_[best]
        open_[best] = set()
        W[best] = added
        mu += best_inc
        assert kappa * mu < 1
        steps.append((best, len(added), mu))
        for l in range(best + 1, cap + 1):
            open_[l] = {v for v in open_[l] if not (v[:best] in added and in_g(v[best:]))}
        for l in range(1, best):
            open_[l] -= {v[:l] for v in added if in_g(v[l:])}
    return steps, stop


def frac(q):
    return '"%d/%d"' % (q.numerator, q.denominator)


def main():
    out = sys.stdout
    out.write("// Generated by tests/oracles/fixtures.py. Do not edit.\n\n")
    out.write("#ifndef PFREE_TESTS_FIXTURES_HPP_\n#define PFREE_TESTS_FIXTURES_HPP_\n\n")
    out.write("#include <array>\n#include <cstddef>\n#include <cstdint>\n\n")
    out.write("namespace fixtures {\n\n")

    def seq(name, values):
        out.write("  inline constexpr std::array<const char*, %d> %s{\n" % (len(values), name))
        for v in values:
            out.write("      %s,\n" % frac(v))
        out.write("  };\n\n")

    for k in (2, 3, 4):
        seq("extremal_a2_k%d" % k, extremal_densities(2, k, 12))
    for k in (2, 3, 4):
        seq("semigroup_a2_k%d" % k, semigroup_densities(2, k, 12))
    seq("extremal_a3_k2", extremal_densities(3, 2, 8))
    seq("xy_a2_aa", xy_densities(2, 1, 1, 10))
    seq("xy_a2_ab", xy_densities(2, 1, 2, 10))
    seq("xy_a2_aA", xy_densities(2, 1, -1, 10))

    mu8 = sum(Fraction(exponent_counts(2, n, 2)[1], layer(2, n)) for n in range(1, 9))
    out.write("  inline constexpr const char* extremal_a2_k2_mu8 = %s;\n\n" % frac(mu8))

    steps, stop = greedy_trace(2, 2, 14)
    out.write("  struct TraceStep {\n    std::size_t layer;\n    std::uint64_t added;\n"
              "    const char* measure;\n  };\n\n")
    out.write("  inline constexpr std::array<TraceStep, %d> greedy_a2_k2_cap14{{\n" % len(steps))
    for l, n, mu in steps:
        out.write("      {%d, %d, %s},\n" % (l, n, frac(mu)))
    out.write("  }};\n")
    out.write('  inline constexpr const char* greedy_a2_k2_cap14_stop = "%s";\n\n' % stop)

    out.write("}  // namespace fixtures\n\n#endif  // PFREE_TESTS_FIXTURES_HPP_\n")


if __name__ == "__main__":
    main()
