"""The eight-dimensional zigzag algebra A_q.

Basis elements are the integers 0..7 in the fixed order
``e1 < e2 < a1 < a2 < b1 < b2 < a1b1 < a2b2`` (``a`` for alpha, ``b`` for beta).
Paths compose left to right, so ``a1 * b1`` is the loop ``a1b1`` at vertex 1.
An algebra element is a plain ``dict`` mapping basis indices to field scalars
with no stored zeros.
"""

from __future__ import annotations

from functools import lru_cache

from .scalars import Field, make_field

E1, E2, A1, A2, B1, B2, L1, L2 = range(8)
BASIS = (E1, E2, A1, A2, B1, B2, L1, L2)
NAMES = ("e1", "e2", "a1", "a2", "b1", "b2", "a1b1", "a2b2")
NAME_INDEX = {n: k for k, n in enumerate(NAMES)}
IDEMPOTENTS = (E1, E2)
NONIDEMPOTENT = (A1, A2, B1, B2, L1, L2)


def vx(i: int) -> int:
    """Normalise an integer subscript to a vertex in {1, 2}."""
    return (i - 1) % 2 + 1


def e(i: int) -> int:
    return E1 if vx(i) == 1 else E2


def alpha(i: int) -> int:
    return A1 if vx(i) == 1 else A2


def beta(i: int) -> int:
    return B1 if vx(i) == 1 else B2


def loop(i: int) -> int:
    return L1 if vx(i) == 1 else L2


# (source, target) of each basis element
SOURCE = (1, 2, 1, 2, 2, 1, 1, 2)
TARGET = (1, 2, 2, 1, 1, 2, 1, 2)


def source(b: int) -> int:
    return SOURCE[b]


def target(b: int) -> int:
    return TARGET[b]


def _build_table():
    """Product of basis elements as ``(result, sign, q_exponent)`` or ``None``.

    Only two kinds of nonzero product between non-idempotents exist:
    ``a_i b_i`` is the loop at i and ``b_i a_i = -q^{-1} a_{i+1} b_{i+1}``.
    """
    table = {}
    for x in BASIS:
        for y in BASIS:
            if TARGET[x] != SOURCE[y]:
                continue
            if x in IDEMPOTENTS:
                table[x, y] = (y, 1, 0)
            elif y in IDEMPOTENTS:
                table[x, y] = (x, 1, 0)
    for i in (1, 2):
        table[alpha(i), beta(i)] = (loop(i), 1, 0)
        table[beta(i), alpha(i)] = (loop(i + 1), -1, -1)
    return table


TABLE = _build_table()


class Algebra:
    """A_q over a concrete coefficient field."""

    def __init__(self, field: Field):
        self.F = field
        self._mul = {}
        for (x, y), (z, sign, ex) in TABLE.items():
            c = field.q_pow(ex)
            self._mul[x, y] = (z, c if sign > 0 else -c)

    # -- products ---------------------------------------------------------
    def mul_basis(self, x: int, y: int):
        """``(z, c)`` with x*y = c*z, or ``None`` when the product vanishes."""
        return self._mul.get((x, y))

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for bx, cx in x.items():
            for by, cy in y.items():
                hit = self._mul.get((bx, by))
                if hit is None:
                    continue
                z, c = hit
                v = out.get(z, self.F.zero) + cx * cy * c
                if v:
                    out[z] = v
                else:
                    out.pop(z, None)
        return out

    def basis_elem(self, b: int, c=None) -> dict:
        return {b: self.F.one if c is None else c}

    def unit(self) -> dict:
        return {E1: self.F.one, E2: self.F.one}

    # -- twisting data ----------------------------------------------------
    def nakayama_coeff(self, b: int):
        """Scalar c with nu(b) = c*b (nu is diagonal on the basis)."""
        if b in (A1, A2):
            return -self.F.q
        if b in (B1, B2):
            return -self.F.q_pow(-1)
        return self.F.one

    def nakayama(self, x: dict) -> dict:
        return {b: c * self.nakayama_coeff(b) for b, c in x.items()}

    def trace(self, x: dict):
        """lambda(x): coefficient of a1b1 plus coefficient of a2b2."""
        return x.get(L1, self.F.zero) + x.get(L2, self.F.zero)

    def form(self, x: dict, y: dict):
        return self.trace(self.multiply(x, y))

    def tilde(self, b: int) -> dict:
        """Dual basis element with respect to ``form``."""
        one = self.F.one
        if b in IDEMPOTENTS:
            return {loop(source(b)): one}
        if b in (A1, A2):
            return {beta(1 if b == A1 else 2): one}
        if b in (B1, B2):
            i = 1 if b == B1 else 2
            return {alpha(i): -self.F.q}
        return {e(source(b)): one}

    def star(self, b: int) -> int:
        """The symmetric (q = -1) dual basis element."""
        return STAR[b]

    # -- rendering --------------------------------------------------------
    def fmt(self, x: dict) -> str:
        return format_linear(self.F, [(NAMES[b], x[b]) for b in sorted(x)])


STAR = {E1: L1, E2: L2, A1: B1, A2: B2, B1: A1, B2: A2, L1: E1, L2: E2}


def format_linear(F: Field, terms) -> str:
    """Render ``[(label, scalar), ...]`` as ``c1*label1 + c2*label2``."""
    parts = []
    for label, c in terms:
        if not c:
            continue
        s = F.fmt(c)
        neg = s.startswith("-") and (" " not in s)
        if neg:
            s = s[1:]
        if " " in s:
            s = f"({s})"
        body = label if s == "1" else f"{s}*{label}"
        if label == "":
            body = s
        parts.append(("-" if neg else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


@lru_cache(maxsize=None)
def algebra_for(field: Field) -> Algebra:
    return Algebra(field)


def get_algebra(spec) -> Algebra:
    return algebra_for(make_field(spec) if not isinstance(spec, Field) else spec)


# module-level conveniences mirroring the operation names
def multiply(A: Algebra, x: dict, y: dict) -> dict:
    return A.multiply(x, y)


def nakayama(A: Algebra, x: dict) -> dict:
    return A.nakayama(x)


def form(A: Algebra, x: dict, y: dict):
    return A.form(x, y)


def tilde(A: Algebra, b: int) -> dict:
    return A.tilde(b)
