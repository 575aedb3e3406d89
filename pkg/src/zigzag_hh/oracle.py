"""Independent ground truth from the reduced bar cochain complex.

Cochains of degree m are functions on composable sequences ``(a1, ..., am)``
of non-idempotent basis elements with values in ``e_o(a1) A e_t(am)``; in
degree 0 they are elements of ``e1 A e1 + e2 A e2``.  Nothing here uses the
minimal resolution except to move classes in and out (through Phi and Psi).
"""

from __future__ import annotations

import os
from functools import lru_cache

from .algebra import Algebra, BASIS, IDEMPOTENTS, NONIDEMPOTENT, SOURCE, TARGET, algebra_for
from .bv import BarCochain, from_bar, to_bar
from .complexes import HHClass, complexes_for
from .linalg import rank
from .products import ring_for
from .resolution import acc, composable
from .scalars import Field

DEFAULT_WINDOW = 7


class WindowExceeded(ValueError):
    """The requested degree is beyond the bar-complex window."""


def _window() -> int:
    raw = os.environ.get("ZIGZAG_HH_ORACLE_WINDOW")
    return min(DEFAULT_WINDOW, int(raw)) if raw else DEFAULT_WINDOW


def _check(m: int, window: int | None = None) -> None:
    w = _window() if window is None else window
    if m > w:
        raise WindowExceeded(f"degree {m} is outside the oracle window (<= {w})")


@lru_cache(maxsize=None)
def sequences(m: int) -> tuple:
    """Composable sequences of m non-idempotent basis elements (``((),)`` for m = 0)."""
    if m == 0:
        return ((),)
    out = [(a,) for a in NONIDEMPOTENT]
    for _ in range(m - 1):
        out = [s + (b,) for s in out for b in NONIDEMPOTENT if TARGET[s[-1]] == SOURCE[b]]
    return tuple(out)


def _values(seq: tuple) -> tuple:
    if not seq:
        return tuple(b for b in BASIS if SOURCE[b] == TARGET[b])
    o, t = SOURCE[seq[0]], TARGET[seq[-1]]
    return tuple(b for b in BASIS if SOURCE[b] == o and TARGET[b] == t)


@lru_cache(maxsize=None)
def cochain_basis(m: int) -> tuple:
    return tuple((s, b) for s in sequences(m) for b in _values(s))


def bar_delta(A: Algebra, f, m: int):
    """The Hochschild differential of a degree-m bar cochain, as a lazy cochain.

    (df)(a1..a_{m+1}) = a1 f(a2..) + sum_i (-1)^i f(.. a_i a_{i+1} ..) + (-1)^{m+1} f(a1..am) a_{m+1}
    """
    F = A.F

    def value(seq):
        out: dict = {}
        a1, rest = seq[0], seq[1:]
        for k, c in A.multiply({a1: F.one}, f(rest)).items():
            acc(out, k, c)
        for i in range(1, m + 1):
            pr = A.mul_basis(seq[i - 1], seq[i])
            if pr is None:
                continue
            b, c0 = pr
            if b in IDEMPOTENTS:
                continue
            sign = F.one if i % 2 == 0 else -F.one
            for k, c in f(seq[:i - 1] + (b,) + seq[i + 1:]).items():
                acc(out, k, sign * c0 * c)
        head = seq[:-1]
        sign = F.one if (m + 1) % 2 == 0 else -F.one
        for k, c in A.multiply(f(head), {seq[-1]: F.one}).items():
            acc(out, k, sign * c)
        return out

    return BarCochain(m + 1, value)


def delta_columns(A: Algebra, m: int) -> dict:
    """Matrix of delta^m on the cochain bases, as ``{column: {row: coeff}}``."""
    F = A.F
    src = cochain_basis(m)
    rows = {k: n for n, k in enumerate(cochain_basis(m + 1))}
    cols: dict = {}
    for n, (s, b) in enumerate(src):
        f = BarCochain(m, lambda seq, s=s, b=b: {b: F.one} if seq == s else {})
        df = bar_delta(A, f, m)
        col: dict = {}
        for t in _affected(s, m):
            for v, c in df(t).items():
                acc(col, rows[(t, v)], c)
        cols[n] = col
    return cols


def _affected(s: tuple, m: int) -> set:
    """Sequences of length m+1 whose coboundary can read the value at ``s``."""
    out = set(_merge_index(m).get(s, ()))
    for a in NONIDEMPOTENT:
        if not s or TARGET[a] == SOURCE[s[0]]:
            out.add((a,) + s)
        if not s or TARGET[s[-1]] == SOURCE[a]:
            out.add(s + (a,))
    return out


@lru_cache(maxsize=None)
def _merge_index(m: int) -> dict:
    """For each sequence of length m, the sequences of length m+1 that merge onto it."""
    idx: dict = {}
    for t in sequences(m + 1):
        for i in range(1, m + 1):
            pr = _BASIC_PRODUCTS.get((t[i - 1], t[i]))
            if pr is not None:
                idx.setdefault(t[:i - 1] + (pr,) + t[i + 1:], set()).add(t)
    return idx


def _basic_products() -> dict:
    # which pairs multiply to a nonzero basis element (independent of q)
    from .algebra import TABLE
    out = {}
    for (x, y), entry in TABLE.items():
        if entry is not None and x in NONIDEMPOTENT and y in NONIDEMPOTENT:
            out[(x, y)] = entry[0]
    return out


_BASIC_PRODUCTS = _basic_products()


@lru_cache(maxsize=None)
def _rank_delta(F: Field, m: int) -> int:
    if m < 0:
        return 0
    return rank(delta_columns(algebra_for(F), m))


def hh_dim_oracle(F: Field, m: int, window: int | None = None) -> int:
    """dim HH^m from the reduced bar complex: dim ker delta^m - rank delta^{m-1}."""
    _check(m, window)
    return len(cochain_basis(m)) - _rank_delta(F, m) - _rank_delta(F, m - 1)


# ---------------------------------------------------------------------------
# circle products, bracket and cup on bar cochains


def circle_i(A: Algebra, f, m: int, i: int, g, l: int) -> BarCochain:
    """(f o_i g)(a1..a_{m+l-1}) = f(a1..a_{i-1}, g(a_i..a_{i+l-1}), a_{i+l}..)."""
    if not 1 <= i <= m:
        raise ValueError(f"position {i} outside 1..{m}")
    n = m + l - 1

    def value(seq):
        out: dict = {}
        inner = seq[i - 1:i - 1 + l]
        before, after = seq[:i - 1], seq[i - 1 + l:]
        for b, c in g(inner).items():
            if b in IDEMPOTENTS:
                continue
            full = before + (b,) + after
            if not composable(full):
                continue
            for k, v in f(full).items():
                acc(out, k, c * v)
        return out

    return BarCochain(n, value)


def circle(A: Algebra, f, m: int, g, l: int) -> BarCochain:
    """f o g = sum_i (-1)^{(l-1)(i-1)} f o_i g."""
    F = A.F
    parts = [((F.one if ((l - 1) * (i - 1)) % 2 == 0 else -F.one), circle_i(A, f, m, i, g, l))
             for i in range(1, m + 1)]

    def value(seq):
        out: dict = {}
        for sign, p in parts:
            for k, v in p(seq).items():
                acc(out, k, sign * v)
        return out

    return BarCochain(m + l - 1, value)


def bracket_cochain(A: Algebra, f, m: int, g, l: int) -> BarCochain:
    """[f, g] = f o g - (-1)^{(m-1)(l-1)} g o f."""
    F = A.F
    fg = circle(A, f, m, g, l) if m else None
    gf = circle(A, g, l, f, m) if l else None
    sign = -F.one if ((m - 1) * (l - 1)) % 2 == 0 else F.one

    def value(seq):
        out: dict = {}
        if fg is not None:
            for k, v in fg(seq).items():
                acc(out, k, v)
        if gf is not None:
            for k, v in gf(seq).items():
                acc(out, k, sign * v)
        return out

    return BarCochain(m + l - 1, value)


def cup_cochain(A: Algebra, f, m: int, g, l: int) -> BarCochain:
    """(f u g)(a1..a_{m+l}) = f(a1..am) g(a_{m+1}..)."""
    return BarCochain(m + l, lambda seq: A.multiply(f(seq[:m]), g(seq[m:])))


def bracket_oracle(x: HHClass, y: HHClass, window: int | None = None) -> HHClass:
    """Gerstenhaber bracket through circle products on transported representatives."""
    m, l = x.degree, y.degree
    n = m + l - 1
    F = x.field
    cx = complexes_for(F)
    if n < 0:
        return cx.hh(0).from_coords((F.zero,) * len(cx.hh(0)))
    _check(n, window)
    A = cx.A
    f, g = to_bar(A, x.rep, m), to_bar(A, y.rep, l)
    return cx.cls(n, from_bar(A, bracket_cochain(A, f, m, g, l), n))


def cup_oracle(x: HHClass, y: HHClass, window: int | None = None) -> HHClass:
    """Cup product computed on the bar side and pulled back."""
    m, l = x.degree, y.degree
    _check(m + l, window)
    F = x.field
    cx = complexes_for(F)
    A = cx.A
    f, g = to_bar(A, x.rep, m), to_bar(A, y.rep, l)
    return cx.cls(m + l, from_bar(A, cup_cochain(A, f, m, g, l), m + l))


# ---------------------------------------------------------------------------
# cross-checks


def delta_squared_defect(F: Field, m: int) -> int:
    """Number of nonzero entries of delta^{m+1} o delta^m on the cochain basis."""
    _check(m + 2, DEFAULT_WINDOW + 1)
    A = algebra_for(F)
    first, second = delta_columns(A, m), delta_columns(A, m + 1)
    bad = 0
    for col in first.values():
        out: dict = {}
        for r, c in col.items():
            for k, v in second[r].items():
                acc(out, k, c * v)
        bad += len(out)
    return bad


def crosscheck(F: Field, bound: int = 5) -> dict:
    """Dimensions, cups of basis classes and brackets of generators against
    the minimal-resolution machinery, up to total degree ``bound``."""
    from .bv import bv_for

    cx = complexes_for(F)
    R = ring_for(F)
    B = bv_for(F)
    dims = [{"m": m, "oracle": hh_dim_oracle(F, m), "minimal": cx.hh_codim(m)}
            for m in range(bound + 1)]
    cups = []
    for m in range(bound + 1):
        for l in range(bound + 1 - m):
            for a, x in enumerate(cx.hh_basis(m)):
                for b, y in enumerate(cx.hh_basis(l)):
                    ok = cup_oracle(x, y).coords == R.cup(x, y).coords
                    cups.append({"degrees": (m, l), "index": (a, b), "ok": ok})
    brackets = []
    names = [n for n in R.pres.names if n != "1"]
    for a in names:
        for b in names:
            x, y = R.gen(a), R.gen(b)
            if x.degree + y.degree == 0 or x.degree + y.degree > bound:
                continue
            want = B.bracket(x, y)
            got = bracket_oracle(x, y)
            brackets.append({"pair": f"[{a},{b}]", "oracle": R.render(got),
                             "bv": R.render(want), "ok": got.coords == want.coords})
    ok = (all(d["oracle"] == d["minimal"] for d in dims) and all(c["ok"] for c in cups)
          and all(b["ok"] for b in brackets))
    return {"q": str(F.spec), "dims": dims, "cups_checked": len(cups),
            "cup_failures": [c for c in cups if not c["ok"]],
            "brackets": brackets, "ok": ok}
