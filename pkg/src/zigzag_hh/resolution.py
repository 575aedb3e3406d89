"""Generators f^m_(i,j), the minimal bimodule resolution P and its bar-side twins.

A generator index is the triple ``(m, i, j)``; it is the zero symbol when
``j < 0`` or ``j > m``.  Elements of P_m are dicts keyed by
``(left, i, j, right)`` with basis indices on both sides, the degree being
carried separately.  Reduced bar chains are dicts keyed by
``(left, seq, right)`` where ``seq`` is a tuple of non-idempotent basis
elements.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import (Algebra, SOURCE, TARGET, IDEMPOTENTS, alpha, beta, e, vx)

__all__ = [
    "DegreeMismatch", "gens", "is_gen", "gen_origin", "gen_target", "d_terms",
    "apply_d", "apply_d0", "generator", "g_tensor", "g_tensor_right", "bar_d", "bar_d0", "composable", "acc",
]


class DegreeMismatch(ValueError):
    pass


def acc(out: dict, key, val) -> None:
    """Add ``val`` to ``out[key]``, dropping the key when it cancels."""
    if not val:
        return
    cur = out.get(key)
    if cur is None:
        out[key] = val
        return
    cur = cur + val
    if cur:
        out[key] = cur
    else:
        del out[key]


def is_gen(m: int, j: int) -> bool:
    return 0 <= j <= m


def gens(m: int):
    """F^m in the order (i, j): i = 1, 2 and 0 <= j <= m."""
    return [(vx(i), j) for i in (1, 2) for j in range(m + 1)]


def gen_origin(m: int, i: int, j: int) -> int:
    return vx(i)


def gen_target(m: int, i: int, j: int) -> int:
    return vx(i + m)


@lru_cache(maxsize=None)
def d_terms(A: Algebra, m: int, i: int, j: int):
    """The generator formula for d_m(f^m_(i,j)) as ``[(coeff, left, (i', j'), right)]``."""
    F = A.F
    i = vx(i)
    sg = F.one if m % 2 == 0 else -F.one
    raw = [
        (F.one, alpha(i), (i + 1, j - 1)),
        (sg * F.q_pow(m - j), None, (i, j - 1), alpha(i - m - 1)),
        (F.q_pow(j), beta(i - 1), (i - 1, j)),
        (sg, None, (i, j), beta(i - m)),
    ]
    out = []
    for term in raw:
        c, left, (gi, gj) = term[:3]
        if not is_gen(m - 1, gj):
            continue
        gi = vx(gi)
        if left is None:
            out.append((c, e(gi), (gi, gj), term[3]))
        else:
            out.append((c, left, (gi, gj), e(gen_target(m - 1, gi, gj))))
    return tuple(out)


def generator(A: Algebra, m: int, i: int, j: int, c=None) -> dict:
    """The free generator o(f) (x) t(f) of P_m attached to f^m_(i,j)."""
    i = vx(i)
    return {(e(i), i, j, e(gen_target(m, i, j))): A.F.one if c is None else c}


def _lmul(A: Algebra, b: int, x: int):
    return A.mul_basis(b, x)


def apply_d(A: Algebra, m: int, x: dict) -> dict:
    """d_m : P_m -> P_{m-1}, extended bimodule-linearly."""
    if m < 1:
        raise DegreeMismatch("d_m needs m >= 1")
    out: dict = {}
    mul = A.mul_basis
    for (b, i, j, c), k in x.items():
        if not is_gen(m, j):
            raise DegreeMismatch(f"f^{m}_({i},{j}) is not a generator")
        for coef, left, (gi, gj), right in d_terms(A, m, i, j):
            lp = mul(b, left)
            if lp is None:
                continue
            rp = mul(right, c)
            if rp is None:
                continue
            acc(out, (lp[0], gi, gj, rp[0]), k * coef * lp[1] * rp[1])
    return out


def apply_d0(A: Algebra, x: dict) -> dict:
    """The augmentation P_0 -> A, x (x) y |-> xy."""
    out: dict = {}
    for (b, i, j, c), k in x.items():
        p = A.mul_basis(b, c)
        if p is not None:
            acc(out, p[0], k * p[1])
    return out


@lru_cache(maxsize=None)
def _g_tensor(A: Algebra, m: int, i: int, j: int):
    if not is_gen(m, j):
        return ()
    if m == 0:
        return (((), A.F.one),)
    out: dict = {}
    for seq, c in _g_tensor(A, m - 1, vx(i + 1), j - 1):
        acc(out, (alpha(i),) + seq, c)
    qj = A.F.q_pow(j)
    for seq, c in _g_tensor(A, m - 1, vx(i - 1), j):
        acc(out, (beta(i - 1),) + seq, qj * c)
    return tuple(sorted(out.items()))


def g_tensor(A: Algebra, m: int, i: int, j: int) -> dict:
    """g^m_(i,j) as a dict ``{sequence: coeff}`` (left recursion)."""
    return dict(_g_tensor(A, m, vx(i), j))


@lru_cache(maxsize=None)
def _g_tensor_right(A: Algebra, m: int, i: int, j: int):
    if not is_gen(m, j):
        return ()
    if m == 0:
        return (((), A.F.one),)
    out: dict = {}
    qe = A.F.q_pow(m - j)
    for seq, c in _g_tensor_right(A, m - 1, i, j - 1):
        acc(out, seq + (alpha(i - m - 1),), qe * c)
    for seq, c in _g_tensor_right(A, m - 1, i, j):
        acc(out, seq + (beta(i - m),), c)
    return tuple(sorted(out.items()))


def g_tensor_right(A: Algebra, m: int, i: int, j: int) -> dict:
    """The same tensor unfolded through the right-hand recursion."""
    return dict(_g_tensor_right(A, m, vx(i), j))


def composable(seq) -> bool:
    return all(TARGET[a] == SOURCE[b] for a, b in zip(seq, seq[1:]))


def bar_d(A: Algebra, m: int, x: dict) -> dict:
    """Differential of the reduced bar resolution, B_m -> B_{m-1}."""
    out: dict = {}
    mul = A.mul_basis
    for (l, seq, r), k in x.items():
        if m == 0:
            raise DegreeMismatch("bar_d needs m >= 1")
        p = mul(l, seq[0])
        if p is not None:
            acc(out, (p[0], seq[1:], r), k * p[1])
        for pos in range(m - 1):
            p = mul(seq[pos], seq[pos + 1])
            if p is None or p[0] in IDEMPOTENTS:
                continue
            sign = -1 if pos % 2 == 0 else 1  # (-1)^(pos+1)
            acc(out, (l, seq[:pos] + (p[0],) + seq[pos + 2:], r), k * p[1] * sign)
        p = mul(seq[-1], r)
        if p is not None:
            acc(out, (l, seq[:-1], p[0]), k * p[1] * (1 if m % 2 == 0 else -1))
    return out


def bar_d0(A: Algebra, x: dict) -> dict:
    out: dict = {}
    for (l, seq, r), k in x.items():
        p = A.mul_basis(l, r)
        if p is not None:
            acc(out, p[0], k * p[1])
    return out
