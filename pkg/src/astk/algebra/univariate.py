"""Dense univariate polynomials over Q as tuples of coefficients, low degree first."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from astk.algebra.poly import parse_coeff


def trim(p: Sequence) -> tuple:
    p = [parse_coeff(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def degree(p) -> int:
    return len(trim(p)) - 1


def add(a, b) -> tuple:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a, b) -> tuple:
    return add(a, [-c for c in b])


def mul(a, b) -> tuple:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def scale(a, c) -> tuple:
    c = parse_coeff(c)
    return trim([c * x for x in a])


def divmod_(a, b) -> tuple:
    a, b = list(trim(a)), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / lb
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a = list(trim(a))
    return trim(q), trim(a)


def monic(a) -> tuple:
    a = trim(a)
    return scale(a, 1 / a[-1]) if a else a


def gcd(a, b) -> tuple:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def xgcd(a, b) -> tuple:
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return (), (), ()
    lc = r0[-1]
    return scale(r0, 1 / lc), scale(s0, 1 / lc), scale(t0, 1 / lc)


def derivative(a) -> tuple:
    return trim([i * c for i, c in enumerate(a)][1:])


def evaluate(a, x):
    x = parse_coeff(x)
    total = Fraction(0)
    for c in reversed(trim(a)):
        total = total * x + c
    return total


def power(a, k: int) -> tuple:
    out = (Fraction(1),)
    for _ in range(k):
        out = mul(out, a)
    return out


def to_str(a, var: str = "x") -> str:
    a = trim(a)
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")
