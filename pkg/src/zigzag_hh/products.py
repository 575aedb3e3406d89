"""Cup products on HH^*(A_q) and the ring presentations for each case of q.

Cochains are dicts over parallel pairs ``(b, i, j)`` (see :mod:`complexes`).
The cup product has a closed form on pairs; the diagonal route through
P -> P (x)_A P is kept alongside it as an independent check.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import E1, E2, A1, A2, B1, B2, L1, L2, e, format_linear, vx
from .complexes import Complexes, HHClass, complexes_for, format_cochain
from .linalg import Echelon
from .resolution import acc, apply_d, d_terms, gen_target, generator, is_gen
from .scalars import Field, QClass


class DegreeOverflow(ValueError):
    pass


class UnknownClass(KeyError):
    """A name that is not a generator of the active presentation."""


class PresentationMismatch(AssertionError):
    pass


# ---------------------------------------------------------------------------
# diagonal map and the tensor square of P


@lru_cache(maxsize=None)
def diagonal(F: Field, m: int, i: int, j: int):
    """Terms ``(s, (i, j1), (i2, j2), coeff)`` of the diagonal on f^m_(i,j)."""
    i = vx(i)
    out = []
    for s in range(m + 1):
        for j1 in range(min(s, j) + 1):
            j2 = j - j1
            if not is_gen(m - s, j2):
                continue
            out.append((s, (i, j1), (vx(i - s), j2), F.q_pow((s - j1) * (j - j1))))
    return tuple(out)


def diagonal_apply(A, m: int, x: dict) -> dict:
    """Bimodule extension of the diagonal: P_m -> (P (x)_A P)_m.

    Keys are ``(s, left, g1, mid, g2, right)`` with ``g1`` of degree s.
    """
    out: dict = {}
    for (b, i, j, c), k in x.items():
        for s, g1, g2, coef in diagonal(A.F, m, i, j):
            mid = e(gen_target(s, *g1))
            acc(out, (s, b, g1, mid, g2, c), k * coef)
    return out


def tensor_d(A, m: int, T: dict) -> dict:
    """Differential of P (x)_A P: d (x) 1 + (-1)^s 1 (x) d, dropping d_0."""
    out: dict = {}
    mul = A.mul_basis
    for (s, b, g1, mid, g2, c), k in T.items():
        if s >= 1:
            for coef, left, h, right in d_terms(A, s, *g1):
                lp = mul(b, left)
                rp = mul(right, mid)
                if lp is None or rp is None:
                    continue
                acc(out, (s - 1, lp[0], h, rp[0], g2, c), k * coef * lp[1] * rp[1])
        t = m - s
        if t >= 1:
            sign = -1 if s % 2 else 1
            for coef, left, h, right in d_terms(A, t, *g2):
                lp = mul(mid, left)
                rp = mul(right, c)
                if lp is None or rp is None:
                    continue
                acc(out, (s, b, g1, lp[0], h, rp[0]), k * coef * lp[1] * rp[1] * sign)
    return out


def diagonal_chain_map_defect(A, m: int) -> list:
    """Generators of P_m on which b_m o Delta_m and Delta_{m-1} o d_m differ."""
    bad = []
    for i in (1, 2):
        for j in range(m + 1):
            g = generator(A, m, i, j)
            lhs = tensor_d(A, m, diagonal_apply(A, m, g))
            rhs = diagonal_apply(A, m - 1, apply_d(A, m, g))
            if lhs != rhs:
                bad.append((m, i, j))
    return bad


# ---------------------------------------------------------------------------
# cochain-level cup


def cup_cochains(A, x: dict, m: int, y: dict, l: int) -> dict:
    """Closed-form cup of an m-cochain and an l-cochain."""
    F, out = A.F, {}
    mul = A.mul_basis
    for (a, i, j), cx in x.items():
        for (a2, i2, j2), cy in y.items():
            if vx(i2) != vx(i - m):
                continue
            p = mul(a, a2)
            if p is None:
                continue
            acc(out, (p[0], vx(i), j + j2), cx * cy * p[1] * F.q_pow((m - j) * j2))
    return out


def _values(x: dict) -> dict:
    """Cochain as a map generator (i, j) -> algebra element."""
    out: dict = {}
    for (b, i, j), c in x.items():
        out.setdefault((vx(i), j), {})[b] = c
    return out


def cup_via_diagonal(A, x: dict, m: int, y: dict, l: int) -> dict:
    """Cup computed by evaluating x (x) y on the diagonal of each generator."""
    vx_, vy = _values(x), _values(y)
    out: dict = {}
    n = m + l
    for i in (1, 2):
        for j in range(n + 1):
            for s, g1, g2, coef in diagonal(A.F, n, i, j):
                if s != m:
                    continue
                a, b = vx_.get(g1), vy.get(g2)
                if not a or not b:
                    continue
                for z, c in A.multiply(a, b).items():
                    acc(out, (z, i, j), coef * c)
    return out


# ---------------------------------------------------------------------------
# presentations


@dataclass
class Generator:
    name: str
    degree: int
    cochain: dict


@dataclass
class Relation:
    label: str
    terms: list  # [(coeff, (name, name, ...)), ...]


@dataclass
class Presentation:
    qclass: QClass
    generators: list
    relations: list
    w_degree: int | None = None
    w_relation: tuple | None = None  # (c,) meaning w1^2 - c w0 w2

    def gen(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    @property
    def names(self):
        return [g.name for g in self.generators]


def _pair_sum(F, *terms):
    out: dict = {}
    for c, b, i, j in terms:
        acc(out, (b, vx(i), j), c)
    return out


def build_presentation(F: Field) -> Presentation:
    """The named generators and relations of the ring presentation for ``F``'s case."""
    qc = F.classify()
    q, one = F.q, F.one
    P = lambda *t: _pair_sum(F, *t)  # noqa: E731
    gens = [Generator("1", 0, P((one, E1, 1, 0), (one, E2, 2, 0)))]
    rels: list = []
    R = lambda label, *terms: rels.append(Relation(label, list(terms)))  # noqa: E731

    if qc.kind == "generic":
        gens += [
            Generator("z1", 0, P((one, L1, 1, 0), (one, L2, 2, 0))),
            Generator("z2", 0, P((one, L1, 1, 0), (-one, L2, 2, 0))),
            Generator("u1", 1, P((one, B1, 2, 0), (one, B2, 1, 0))),
            Generator("u2", 1, P((one, A1, 1, 1), (one, A2, 2, 1))),
        ]
        us = ["u1", "u2"]
        R("u1u2+u2u1", (one, ("u1", "u2")), (one, ("u2", "u1")))
        w_deg, w_rel = None, None
    elif qc.kind == "pm1":
        gens += [
            Generator("z1", 0, P((one, L1, 1, 0), (q, L2, 2, 0))),
            Generator("z2", 0, P((one, L1, 1, 0), (-q, L2, 2, 0))),
            Generator("u1", 1, P((q, A1, 1, 0), (one, A2, 2, 0))),
            Generator("u2", 1, P((one, B1, 2, 0), (one, B2, 1, 0))),
            Generator("u3", 1, P((one, A1, 1, 1), (one, A2, 2, 1))),
            Generator("u4", 1, P((one, B1, 2, 1), (q, B2, 1, 1))),
        ]
        for j in range(3):
            gens.append(Generator(f"w{j}", 2, P((one, E1, 1, j), (F.q_pow(j), E2, 2, j))))
        us = ["u1", "u2", "u3", "u4"]
        R("u1u3", (one, ("u1", "u3")))
        R("u2u4", (one, ("u2", "u4")))
        R("z2w0", (one, ("z2", "w0")))
        R("z2w1", (one, ("z2", "w1")))
        R("u1u2-q*z1w0", (one, ("u1", "u2")), (-q, ("z1", "w0")))
        R("u1u4-z1w1", (one, ("u1", "u4")), (-one, ("z1", "w1")))
        R("u1u4-u3u2", (one, ("u1", "u4")), (-one, ("u3", "u2")))
        R("u3u4-z1w2", (one, ("u3", "u4")), (-one, ("z1", "w2")))
        R("z2w2", (one, ("z2", "w2")))
        R("u1w1-q*u3w0", (one, ("u1", "w1")), (-q, ("u3", "w0")))
        R("u1w2-u3w1", (one, ("u1", "w2")), (-one, ("u3", "w1")))
        R("u2w1-q*u4w0", (one, ("u2", "w1")), (-q, ("u4", "w0")))
        R("u2w2-u4w1", (one, ("u2", "w2")), (-one, ("u4", "w1")))
        R("w1^2-q*w0w2", (one, ("w1", "w1")), (-q, ("w0", "w2")))
        w_deg, w_rel = 2, q
    else:
        s = qc.s
        gens += [
            Generator("z1", 0, P((one, L1, 1, 0))),
            Generator("z2", 0, P((one, L2, 2, 0))),
            Generator("u1", 1, P((one, B1, 2, 0), (one, B2, 1, 0))),
            Generator("u2", 1, P((one, A1, 1, 1), (one, A2, 2, 1))),
        ]
        us = ["u1", "u2"]
        if s % 2:
            w_deg, w_rel = 2 * s, one
            for j in range(3):
                gens.append(Generator(f"w{j}", w_deg, P((one, E1, 1, j * s), (one, E2, 2, j * s))))
            R("w1^2-w0w2", (one, ("w1", "w1")), (-one, ("w0", "w2")))
        else:
            w_deg, w_rel = s, F.q_pow(s * s // 4)
            h = s // 2
            for j in range(3):
                gens.append(Generator(f"w{j}", w_deg,
                                      P((one, E1, 1, j * h), (F.q_pow(j * h), E2, 2, j * h))))
            R("w1^2-q^(s^2/4)*w0w2", (one, ("w1", "w1")), (-w_rel, ("w0", "w2")))
        for z in ("z1", "z2"):
            for j in range(3):
                R(f"{z}w{j}", (one, (z, f"w{j}")))
    # relations shared by every case: the nilpotent degree-zero part and the
    # exterior algebra on the u's, glued along k
    for a, b in (("z1", "z1"), ("z1", "z2"), ("z2", "z2")):
        R(f"{a}{b}", (one, (a, b)))
    for z in ("z1", "z2"):
        for u in us:
            R(f"{z}{u}", (one, (z, u)))
    for u in us:
        R(f"{u}^2", (one, (u, u)))
    return Presentation(qc, gens, rels, w_deg, None if w_rel is None else (w_rel,))


_WORD = re.compile(r"[zuw]\d|1")


def parse_word(text: str) -> tuple:
    """``"u1*w0"`` or ``"u1u2"`` -> ``("u1", "w0")``; the empty word is the unit."""
    flat = re.sub(r"[\s*]", "", text)
    if not flat:
        return ("1",)
    tokens = _WORD.findall(flat)
    if "".join(tokens) != flat:
        raise UnknownClass(f"cannot read {text!r} as a product of generators")
    return tuple(t for t in tokens if t != "1") or ("1",)


def parse_terms(text: str) -> list:
    """Split a signed sum of monomials into ``[(Fraction, word), ...]``."""
    flat = text.replace(" ", "")
    if not flat:
        raise ValueError("empty expression")
    out = []
    for sign, body in re.findall(r"([+-]?)([^+-]+)", flat):
        m = re.fullmatch(r"(\d+(?:/\d+)?)?\*?(.*)", body)
        coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        out.append((-coef if sign == "-" else coef, parse_word(m.group(2))))
    return out


# ---------------------------------------------------------------------------
# the cohomology ring


class CohomologyRing:
    """HH^*(A_q) with cup product, named generators and monomial rendering."""

    def __init__(self, F: Field, max_degree: int | None = None):
        self.F = F
        self.cx: Complexes = complexes_for(F)
        self.A = self.cx.A
        self.pres = build_presentation(F)
        self.max_degree = max_degree
        self._gen_cls: dict = {}
        self._monobasis: dict = {}

    # -- classes ----------------------------------------------------------
    def cls(self, m: int, x: dict) -> HHClass:
        return self.cx.cls(m, x)

    def zero(self, m: int) -> HHClass:
        return self.cx.hh(m).from_coords((self.F.zero,) * len(self.cx.hh(m)))

    def gen(self, name: str) -> HHClass:
        if name not in self._gen_cls:
            g = self.pres.gen(name)
            self._gen_cls[name] = self.cls(g.degree, g.cochain)
        return self._gen_cls[name]

    def cup(self, x: HHClass, y: HHClass) -> HHClass:
        n = x.degree + y.degree
        if self.max_degree is not None and n > self.max_degree:
            raise DegreeOverflow(f"degree {n} exceeds configured maximum {self.max_degree}")
        return self.cls(n, cup_cochains(self.A, x.rep, x.degree, y.rep, y.degree))

    def add(self, x: HHClass, y: HHClass, c=None) -> HHClass:
        """x + c*y."""
        assert x.degree == y.degree
        c = self.F.one if c is None else c
        cs = tuple(a + c * b for a, b in zip(x.coords, y.coords))
        return self.cx.hh(x.degree).from_coords(cs)

    def scale(self, c, x: HHClass) -> HHClass:
        return self.cx.hh(x.degree).from_coords(tuple(c * a for a in x.coords))

    def word(self, names) -> HHClass:
        """Cup product of named generators, left to right."""
        out = self.gen(names[0])
        for n in names[1:]:
            out = self.cup(out, self.gen(n))
        return out

    def combo(self, terms) -> HHClass:
        """Evaluate ``[(coeff, (name, ...)), ...]`` as a class."""
        acc_cls = None
        for c, names in terms:
            w = self.scale(self.F(c) if isinstance(c, int) else c, self.word(names))
            acc_cls = w if acc_cls is None else self.add(acc_cls, w)
        return acc_cls

    def parse(self, text: str) -> HHClass:
        """Evaluate an expression such as ``u3-u2``, ``-2*u1*w0`` or ``1/2 u1u2``."""
        terms = parse_terms(text)
        names = set(self.pres.names)
        for _, word in terms:
            for n in word:
                if n not in names:
                    raise UnknownClass(f"{n!r} is not a generator at q = {self.F.spec}")
        degrees = {self.degree_of(w) for _, w in terms}
        if len(degrees) != 1:
            raise ValueError(f"inhomogeneous expression {text!r}")
        return self.combo([(self.F(c), w) for c, w in terms])

    def degree_of(self, names) -> int:
        return sum(self.pres.gen(n).degree for n in names)

    # -- monomials ----------------------------------------------------------
    def monomials(self, m: int):
        """Monomials of degree m in the generators, fewest factors first."""
        gens = [g for g in self.pres.generators if g.name != "1"]
        if m == 0:
            yield ("1",)
        exterior = {g.name for g in gens if g.degree % 2 == 1 or g.name.startswith("z")}
        for k in range(1, m + 2 if m else 2):
            for combo in itertools.combinations_with_replacement(range(len(gens)), k):
                names = tuple(gens[t].name for t in combo)
                if sum(gens[t].degree for t in combo) != m:
                    continue
                if any(names.count(n) > 1 for n in exterior):
                    continue
                yield names

    def monomial_basis(self, m: int):
        """Greedy basis of HH^m by monomials, with an echelon for decomposition."""
        if m not in self._monobasis:
            ech = Echelon(track=True)
            chosen = []
            for names in self.monomials(m):
                cls = self.word(names)
                v = {k: c for k, c in enumerate(cls.coords) if c}
                if ech.add(v, {len(chosen): self.F.one}) is not None:
                    chosen.append(names)
            self._monobasis[m] = (chosen, ech)
        return self._monobasis[m]

    def decompose(self, x: HHClass):
        """Coefficients of x on the monomial basis, or ``None`` if it is not spanned."""
        chosen, ech = self.monomial_basis(x.degree)
        combo: dict = {}
        r = ech.reduce({k: c for k, c in enumerate(x.coords) if c}, combo)
        if r:
            return None
        return [(chosen[k], -c) for k, c in sorted(combo.items()) if c]

    def render(self, x: HHClass) -> str:
        """Presentation notation when possible, pair notation otherwise."""
        dec = self.decompose(x)
        if dec is None:
            return format_cochain(self.F, x.rep, x.degree)
        terms = [("*".join(n for n in names if n != "1") or "1", c) for names, c in dec]
        terms = [(lab if lab != "1" else "", c) for lab, c in terms]
        out = format_linear(self.F, terms)
        return out

    def render_pairs(self, x: HHClass) -> str:
        return format_cochain(self.F, x.rep, x.degree)

    # -- verification -----------------------------------------------------
    def verify_presentation(self, bound: int = 10) -> dict:
        rep: dict = {"q": str(self.F.spec), "qclass": str(self.pres.qclass),
                     "generators": [], "relations": [], "generation": [], "w_recursion": []}
        ok = True
        for g in self.pres.generators:
            hh = self.cx.hh(g.degree)
            cocycle = hh.is_cocycle(g.cochain)
            nonzero = cocycle and any(hh.coords(g.cochain))
            rep["generators"].append({"name": g.name, "degree": g.degree,
                                      "cocycle": cocycle, "nonzero_class": nonzero})
            ok &= cocycle and nonzero
        for r in self.pres.relations:
            val = self.combo(r.terms)
            zero = val.is_zero()
            entry = {"relation": r.label, "zero_class": zero}
            if not zero:
                entry["witness"] = format_cochain(self.F, val.rep, val.degree)
            rep["relations"].append(entry)
            ok &= zero
        for m in range(bound + 1):
            chosen, _ = self.monomial_basis(m)
            dim = self.cx.hh_codim(m)
            good = len(chosen) == dim
            rep["generation"].append({"m": m, "dim": dim, "spanned": len(chosen), "ok": good})
            ok &= good
        d = self.pres.w_degree
        if d is not None:
            ws = [self.gen(f"w{j}") for j in range(3)]
            for m in range(d, bound + 1):
                ech = Echelon()
                for x in self.cx.hh_basis(m - d):
                    for w in ws:
                        y = self.cup(x, w)
                        ech.add({k: c for k, c in enumerate(y.coords) if c})
                dim = self.cx.hh_codim(m)
                good = len(ech) == dim
                rep["w_recursion"].append({"m": m, "dim": dim, "spanned": len(ech), "ok": good})
                ok &= good
        rep["ok"] = ok
        return rep

    def nilpotent(self, x: HHClass, bound: int) -> bool:
        """True if some cup power of x vanishes in degrees <= bound (x of positive
        odd degree squares to zero by graded commutativity)."""
        if x.is_zero():
            return True
        p = x
        while True:
            if x.degree == 0:
                # degree zero: powers stay in degree 0, at most dim HH^0 steps
                for _ in range(len(x.coords) + 1):
                    p = self.cup(p, x)
                    if p.is_zero():
                        return True
                return False
            if p.degree + x.degree > bound:
                return False
            p = self.cup(p, x)
            if p.is_zero():
                return True

    def ideal_by(self, seeds: list, bound: int) -> dict:
        """Degreewise span (as echelons over coordinates) of the cup ideal generated by ``seeds``."""
        spans = {m: Echelon() for m in range(bound + 1)}
        for x in seeds:
            for m in range(x.degree, bound + 1):
                for y in self.cx.hh_basis(m - x.degree):
                    z = self.cup(x, y)
                    spans[m].add({k: c for k, c in enumerate(z.coords) if c})
        return spans

    def nilpotent_quotient(self, bound: int = 8) -> dict:
        """Truncated HH^*/N: nilpotent generators, quotient dims and the w-relation."""
        nil, non = [], []
        for g in self.pres.generators:
            if g.name == "1":
                continue
            (nil if self.nilpotent(self.gen(g.name), 2 * bound) else non).append(g.name)
        basis_report = []
        for m in range(bound + 1):
            for k, x in enumerate(self.cx.hh_basis(m)):
                basis_report.append({"m": m, "index": k, "nilpotent": self.nilpotent(x, 2 * bound)})
        spans = self.ideal_by([self.gen(n) for n in nil], bound)
        dims = [self.cx.hh_codim(m) - len(spans[m]) for m in range(bound + 1)]
        expected = [expected_nil_quotient_dim(self.pres, m) for m in range(bound + 1)]
        rel_ok = None
        if self.pres.w_degree is not None and 2 * self.pres.w_degree <= bound:
            c = self.pres.w_relation[0]
            val = self.combo([(self.F.one, ("w1", "w1")), (-c, ("w0", "w2"))])
            rel_ok = spans[val.degree].contains({k: v for k, v in enumerate(val.coords) if v})
        return {"q": str(self.F.spec), "nilpotent_generators": nil, "non_nilpotent_generators": non,
                "basis_nilpotency": basis_report,
                "quotient_dims": dims, "expected_dims": expected,
                "w_relation_in_ideal": rel_ok,
                "ok": dims == expected and rel_ok is not False}


def expected_nil_quotient_dim(pres: Presentation, m: int) -> int:
    """Hilbert function of k (generic) or k[w0,w1,w2]/(quadric) with |w| = d."""
    d = pres.w_degree
    if d is None:
        return 1 if m == 0 else 0
    if m % d:
        return 0
    k = m // d
    return 2 * k + 1


@lru_cache(maxsize=None)
def ring_for(F: Field) -> CohomologyRing:
    return CohomologyRing(F)


def cup(x: HHClass, y: HHClass) -> HHClass:
    return ring_for(x.field).cup(x, y)


def verify_presentation(F: Field, bound: int = 10) -> dict:
    return ring_for(F).verify_presentation(bound)


def nilpotent_quotient(F: Field, bound: int = 8) -> dict:
    return ring_for(F).nilpotent_quotient(bound)


def cup_coherence(F: Field, bound: int = 10, class_bound: int = 8) -> dict:
    """Closed-form cup against the diagonal route, plus ring axioms on classes.

    * the diagonal is a chain map on generators of degree <= bound;
    * both cochain-level cups agree on every pair of basis cochains with
      total degree <= bound;
    * x y = (-1)^{|x||y|} y x on basis classes with |x|+|y| <= class_bound;
    * (x y) z = x (y z) on all triples of presentation generators.
    """
    from .complexes import cochain_basis

    R = ring_for(F)
    A = R.A
    diag = [b for m in range(1, bound + 1) for b in diagonal_chain_map_defect(A, m)]
    cochain_bad = []
    pairs = 0
    for m in range(bound + 1):
        for l in range(bound + 1 - m):
            for p in cochain_basis(m):
                x = {p: F.one}
                for r in cochain_basis(l):
                    y = {r: F.one}
                    pairs += 1
                    if cup_cochains(A, x, m, y, l) != cup_via_diagonal(A, x, m, y, l):
                        cochain_bad.append((m, p, l, r))
    comm_bad = []
    for m in range(class_bound + 1):
        for l in range(m, class_bound + 1 - m):
            for a, x in enumerate(R.cx.hh_basis(m)):
                for b, y in enumerate(R.cx.hh_basis(l)):
                    sign = -F.one if (m * l) % 2 else F.one
                    if R.cup(x, y).coords != R.scale(sign, R.cup(y, x)).coords:
                        comm_bad.append(((m, a), (l, b)))
    assoc_bad = []
    names = R.pres.names
    for a in names:
        for b in names:
            for c in names:
                x, y, z = R.gen(a), R.gen(b), R.gen(c)
                if R.cup(R.cup(x, y), z).coords != R.cup(x, R.cup(y, z)).coords:
                    assoc_bad.append((a, b, c))
    unit = R.gen("1")
    unit_bad = [(m, k) for m in range(class_bound + 1)
                for k, x in enumerate(R.cx.hh_basis(m)) if R.cup(unit, x).coords != x.coords]
    return {"q": str(F.spec), "diagonal_defects": diag, "cochain_pairs": pairs,
            "cochain_mismatches": cochain_bad, "commutativity_failures": comm_bad,
            "associativity_failures": assoc_bad, "unit_failures": unit_bad,
            "ok": not (diag or cochain_bad or comm_bad or assoc_bad or unit_bad)}
