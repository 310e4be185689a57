#!/usr/bin/env python3
"""Slow reference computations for the frozen values in the unit tests.

Everything here is brute force over plain Python lists. Run it to regenerate
the numbers; the C++ tests hold the printed values as constants.
"""
import math
from collections import Counter


def lg(x):
    return math.log2(x)


def h0(seq):
    n = len(seq)
    return sum(c / n * lg(n / c) for c in Counter(seq).values())


def hk(seq, k):
    n = len(seq)
    if k == 0:
        return h0(seq)
    groups = {}
    for i in range(k, n):
        groups.setdefault(tuple(seq[i - k:i]), []).append(seq[i])
    return sum(len(g) * h0(g) for g in groups.values()) / n


def rank(v, i, b):
    return sum(1 for x in v[:i] if x == b)


def select(v, j, b):
    seen = 0
    for p, x in enumerate(v, 1):
        if x == b:
            seen += 1
            if seen == j:
                return p
    return None


def partition(s):
    n = len(s)
    occ = Counter(s)
    sigma = max(s)
    cls = {a: (0 if occ[a] == n else math.ceil(lg(n / occ[a]) * lg(n))) for a in occ}
    t = [cls[a] for a in s]
    m = [cls[a] for a in range(1, sigma + 1)]
    subs = {}
    for l in sorted(set(m)):
        members = [a for a in range(1, sigma + 1) if cls[a] == l]
        local = {a: k + 1 for k, a in enumerate(members)}
        subs[l] = [local[a] for a in s if cls[a] == l]
    return t, m, subs


def bwt(text):
    t = text + "$"
    sa = sorted(range(len(t)), key=lambda i: t[i:])
    return "".join(t[i - 1] for i in sa)


def main():
    v = [int(c) for c in "1000100101"]
    print("bitvec rank(7,1)", rank(v, 7, 1), "rank(10,0)", rank(v, 10, 0))
    print("bitvec select(5,0)", select(v, 5, 0), "select(5,1)", select(v, 5, 1))

    abra = "abracadabra"
    code = {c: k + 1 for k, c in enumerate("abcdr")}
    s = [code[c] for c in abra]
    t, m, subs = partition(s)
    print("abra t", t)
    print("abra m", m)
    print("abra subs", subs)
    n = len(s)
    nh0 = n * h0(s)
    pbits = n * h0(t) + sum(len(q) * lg(max(q)) for q in subs.values())
    print("abra nH0 %.6f partition %.6f bound %.6f" % (nh0, pbits, nh0 + n / lg(n)))
    print("abra H0 %.10f H1 %.10f H2 %.10f" % (h0(abra), hk(abra, 1), hk(abra, 2)))
    print("ababab H1", hk("ababab", 1))
    print("h_sets (2,2,1) %.10f  lg5 %.10f" % ((2 * 0.4 * lg(2.5) + 0.2 * lg(5)), lg(5)))
    print("bwt", bwt(abra))


if __name__ == "__main__":
    main()
