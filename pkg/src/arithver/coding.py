"""Pairing, tuple coding and the beta-function sequence coding.

The pairing function is Cantor's <x,y> = (x+y)(x+y+1)/2 + x.  A sequence
a_0..a_k is coded by a single number w = <b,c> with
(w)_i = b mod (1 + (i+1)*c).
"""

import math
import random


def pair(x, y):
    if x < 0 or y < 0:
        raise ValueError("pairing is defined on naturals")
    s = x + y
    return s * (s + 1) // 2 + x


def split(z):
    if z < 0:
        raise ValueError("naturals only")
    s = (math.isqrt(8 * z + 1) - 1) // 2
    x = z - s * (s + 1) // 2
    return x, s - x


def tuple_encode(xs):
    """Right-nested iterated pairing; a 1-tuple codes as itself."""
    if not xs:
        raise ValueError("tuple_encode needs a nonempty list")
    out = xs[-1]
    for x in reversed(xs[:-1]):
        out = pair(x, out)
    return out


def tuple_decode(z, k):
    if k < 1:
        raise ValueError("tuple_decode needs k >= 1")
    out = []
    for _ in range(k - 1):
        x, z = split(z)
        out.append(x)
    out.append(z)
    return out


def beta(b, c, i):
    return b % (1 + (i + 1) * c)


def beta_index(w, i):
    """(w)_i with w read as <b,c>."""
    b, c = split(w)
    return beta(b, c, i)


def _check_coprime(moduli, rng=None):
    n = len(moduli)
    if n <= 50:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    else:
        rng = rng or random.Random(0)
        pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(200)]
        pairs = [(i, j) for i, j in pairs if i != j]
    for i, j in pairs:
        if math.gcd(moduli[i], moduli[j]) != 1:
            raise AssertionError("beta moduli are not pairwise coprime")


def seq_encode(xs):
    """A code w with beta_index(w, i) == xs[i] for every position.

    c is the least multiple of lcm(1..k) exceeding max(xs), which keeps the
    moduli 1 + (i+1)c pairwise coprime and larger than every element; b is
    found by Chinese remaindering.  No minimality of w is promised.
    """
    if not xs:
        raise ValueError("seq_encode needs a nonempty list")
    k = len(xs)
    base = math.lcm(*range(1, k + 1))
    c = base * (max(xs) // base + 1)
    moduli = [1 + (i + 1) * c for i in range(k)]
    _check_coprime(moduli)
    b, m = 0, 1
    for a, mod in zip(xs, moduli):
        # combine b (mod m) with a (mod mod)
        diff = (a - b) % mod
        b = b + m * (diff * pow(m, -1, mod) % mod)
        m *= mod
    w = pair(b, c)
    return w
