"""Characters of finite-dimensional q(n)-modules with half-integer weights.

Exponent vectors are doubled, so x_1^{3/2} x_2^{1/2} is stored as (3, 1).
With x_i = e^{eps_i},

    D^-1 = prod_{i<j} (x_i + x_j) / (x_i - x_j)

and, for lam strictly decreasing with no zero entry,

    ch E(lam) = 2^{ceil(n/2)} s_rho(x) s_{lam - rho}(x),   rho = (n-1, ..., 1, 0).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .exactpoly import NotDivisible
from . import weights as W


class CharPoly:
    """Integer Laurent polynomial in n variables with doubled exponents."""

    __slots__ = ("n", "_c")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self._c = {}
        for e, a in (terms or {}).items():
            if a:
                e = tuple(e)
                if len(e) != n:
                    raise ValueError("exponent vector has wrong length")
                self._c[e] = self._c.get(e, 0) + a
                if not self._c[e]:
                    del self._c[e]

    @classmethod
    def monomial(cls, exp, coeff: int = 1) -> "CharPoly":
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def const(cls, n: int, c: int = 1) -> "CharPoly":
        return cls(n, {(0,) * n: c})

    @property
    def terms(self) -> list:
        return sorted(self._c.items(), reverse=True)

    def coeff(self, exp) -> int:
        return self._c.get(tuple(exp), 0)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = CharPoly.const(self.n, other)
        return isinstance(other, CharPoly) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "CharPoly") -> "CharPoly":
        out = dict(self._c)
        for e, a in other._c.items():
            out[e] = out.get(e, 0) + a
        return CharPoly(self.n, out)

    def __neg__(self):
        return CharPoly(self.n, {e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CharPoly(self.n, {e: a * other for e, a in self._c.items()})
        out: dict = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + a1 * a2
        return CharPoly(self.n, out)

    __rmul__ = __mul__

    def permute(self, w) -> "CharPoly":
        """Substitute x_i -> x_{w(i)}; exponent at position w[i] comes from position i."""
        out = {}
        for e, a in self._c.items():
            new = [0] * self.n
            for i, x in enumerate(e):
                new[w[i]] = x
            out[tuple(new)] = a
        return CharPoly(self.n, out)

    def is_symmetric(self) -> bool:
        return all(self.permute(w) == self for w in _transpositions(self.n))

    def exact_div(self, other: "CharPoly") -> "CharPoly":
        """Quotient when ``other`` divides ``self``; NotDivisible otherwise.

        Both sides are shifted to honest polynomials with the divisor free of
        monomial factors, then divided by lex-leading terms (well-founded on
        nonnegative exponents).
        """
        if not other:
            raise ZeroDivisionError("division by zero CharPoly")
        if not self:
            return CharPoly(self.n)
        dmin = [min(e[i] for e in other._c) for i in range(self.n)]
        nmin = [min(e[i] for e in self._c) for i in range(self.n)]
        den = {tuple(x - m for x, m in zip(e, dmin)): a for e, a in other._c.items()}
        rem = {tuple(x - m for x, m in zip(e, nmin)): a for e, a in self._c.items()}
        lead_e = max(den)
        lead_a = den[lead_e]
        quo: dict = {}
        while rem:
            e = max(rem)
            a = rem[e]
            qe = tuple(x - y for x, y in zip(e, lead_e))
            if min(qe) < 0 or a % lead_a:
                raise NotDivisible(f"{self} is not divisible by {other}")
            qa = a // lead_a
            quo[qe] = qa
            for de, da in den.items():
                k = tuple(x + y for x, y in zip(qe, de))
                v = rem.get(k, 0) - qa * da
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        shift = [m - d for m, d in zip(nmin, dmin)]
        return CharPoly(self.n, {tuple(x + s for x, s in zip(e, shift)): a for e, a in quo.items()})

    def at_one(self) -> int:
        return sum(self._c.values())

    def pretty(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, a in self.terms:
            mono = "*".join(
                f"x{i + 1}" + ("" if x == 2 else f"^{W.format_entry(x)}")
                for i, x in enumerate(e) if x)
            if not mono:
                parts.append(str(a))
            elif a == 1:
                parts.append(mono)
            elif a == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{a}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = pretty

    def __repr__(self):
        return f"CharPoly({self.pretty()})"

    def to_json(self) -> dict:
        return {"monomials": [{"exp": list(e), "coeff": a} for e, a in self.terms]}

    @classmethod
    def from_json(cls, d: dict, n: int) -> "CharPoly":
        return cls(n, {tuple(m["exp"]): m["coeff"] for m in d["monomials"]})


def _transpositions(n: int):
    for i in range(n - 1):
        w = list(range(n))
        w[i], w[i + 1] = w[i + 1], w[i]
        yield w


def _sign(w) -> int:
    s = 1
    w = list(w)
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            if w[i] > w[j]:
                s = -s
    return s


def rho(n: int) -> tuple:
    """Doubled rho_n = (n-1, ..., 1, 0)."""
    return tuple(2 * (n - 1 - i) for i in range(n))


def alternant(exp) -> CharPoly:
    n = len(exp)
    out = CharPoly(n)
    for w in itertools.permutations(range(n)):
        out = out + CharPoly.monomial(exp).permute(w) * _sign(w)
    return out


def vandermonde(n: int) -> CharPoly:
    return alternant(rho(n))


def _check_constant_fraction(mu) -> None:
    if len({e % 2 for e in mu}) > 1:
        raise W.InvalidWeight("entries must share their fractional part")


def schur_laurent(mu, n: int | None = None) -> CharPoly:
    """Laurent Schur polynomial via the bialternant (doubled entries)."""
    mu = tuple(mu)
    n = len(mu) if n is None else n
    if len(mu) != n:
        raise ValueError("need exactly n entries")
    if not W.is_weakly_decreasing(mu):
        raise W.InvalidWeight(f"{W.format_weight(mu)} is not weakly decreasing")
    _check_constant_fraction(mu)
    num = alternant(tuple(m + r for m, r in zip(mu, rho(n))))
    return num.exact_div(vandermonde(n))


def _ell(lam) -> int:
    return sum(1 for e in lam if e)


def _halfdim(lam) -> int:
    return 2 ** math.ceil(_ell(lam) / 2)


def _pair_sum(n: int, i: int, j: int) -> CharPoly:
    a = [0] * n
    b = [0] * n
    a[i] = 2
    b[j] = 2
    return CharPoly.monomial(a) + CharPoly.monomial(b)


@dataclass
class VermaCharacter:
    """ch Delta(lam) = factor * e^lam * D^-1, the series cut at total height ``depth``."""

    factor: int
    series: CharPoly
    depth: int


def _height(n: int, diff) -> int:
    # diff is lam - mu in doubled eps-coordinates; height in simple roots
    tot, run = 0, 0
    for i in range(n - 1):
        run += diff[i]
        tot += run
    return tot // 2


def verma_character(lam, n: int | None = None, depth: int = 0) -> VermaCharacter:
    """Each positive root contributes (1 + e^-a)/(1 - e^-a) = 1 + 2 sum_k e^{-k a}."""
    lam = tuple(lam)
    n = len(lam) if n is None else n
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    series = {lam: 1}
    for i in range(n):
        for j in range(i + 1, n):
            h = j - i
            new: dict = {}
            for e, a in series.items():
                k = 0
                while True:
                    e2 = list(e)
                    e2[i] -= 2 * k
                    e2[j] += 2 * k
                    e2 = tuple(e2)
                    if _height(n, [x - y for x, y in zip(lam, e2)]) > depth:
                        break
                    new[e2] = new.get(e2, 0) + a * (1 if k == 0 else 2)
                    k += 1
            series = new
    return VermaCharacter(_halfdim(lam), CharPoly(n, series), depth)


def _require_plus(lam, typ: str = "C") -> None:
    if not W.is_dominant(typ, lam):
        raise W.InvalidWeight(f"{W.format_weight(lam)} is not in the dominant set")


def euler_character(lam, n: int | None = None, route: str = "alternating-sum") -> CharPoly:
    """ch E(lam) for lam in Lambda^+ (doubled entries)."""
    lam = tuple(lam)
    n = len(lam) if n is None else n
    if len(lam) != n:
        raise ValueError("need exactly n entries")
    typ = "C" if lam and lam[0] % 2 else "B"
    _require_plus(lam, typ)
    if route == "schur-product":
        if any(e == 0 for e in lam) or len(set(lam)) < n:
            raise W.InvalidWeight("the Schur-product route needs distinct nonzero entries")
        r = rho(n)
        shifted = tuple(a - b for a, b in zip(lam, r))
        return schur_laurent(r, n) * schur_laurent(shifted, n) * _halfdim(lam)
    if route != "alternating-sum":
        raise ValueError(f"unknown route {route!r}")
    # Phi^+(lam): pairs i<j with lam_i = lam_j; 1 + e^{-beta} = (x_i + x_j) / x_i.
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if lam[i] == lam[j]]
    num = CharPoly.monomial(lam)
    for i, j in pairs:
        e = [0] * n
        e[i] = 2
        num = num * CharPoly.monomial(e)
    rest = CharPoly.const(n)
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in pairs:
                rest = rest * _pair_sum(n, i, j)
    # num / prod_beta (x_i+x_j) times the full pair product = num * rest
    base = num * rest
    total = CharPoly(n)
    for w in itertools.permutations(range(n)):
        total = total + base.permute(w) * _sign(w)
    return total.exact_div(vandermonde(n)) * _halfdim(lam)


def pieri_step(mu) -> list:
    """All weakly decreasing mu + eps_r."""
    mu = tuple(mu)
    if not W.is_weakly_decreasing(mu):
        raise W.InvalidWeight(f"{W.format_weight(mu)} is not weakly decreasing")
    out = []
    for r in range(len(mu)):
        d = mu[:r] + (mu[r] + 2,) + mu[r + 1:]
        if W.is_weakly_decreasing(d) and d not in out:
            out.append(d)
    return out


def natural_character(n: int, dual: bool = False) -> CharPoly:
    """ch V = 2 (x_1 + ... + x_n); the dual has x_i^-1."""
    out = CharPoly(n)
    for i in range(n):
        e = [0] * n
        e[i] = -2 if dual else 2
        out = out + CharPoly.monomial(e) * 2
    return out


def translated_euler_targets(lam) -> list:
    """nu = lam + eps_r in the dominant set (via the Pieri rule on lam - rho)."""
    n = len(lam)
    r = rho(n)
    return [tuple(a + b for a, b in zip(d, r)) for d in pieri_step(tuple(a - b for a, b in zip(lam, r)))]


@dataclass
class IrreducibleResult:
    lam: tuple
    character: CharPoly
    l_row: dict = field(default_factory=dict)     # mu -> l_{mu lam}(1)
    a_row: dict = field(default_factory=dict)     # mu -> a_{lam mu} = u_{-w0 lam, -w0 mu}(1)
    a_col: dict = field(default_factory=dict)     # mu -> a_{mu lam}

    def multiplicities_nonnegative(self) -> bool:
        return all(a >= 0 for _, a in self.character.terms)


def irreducible_character(lam, wedge_solver) -> IrreducibleResult:
    """ch L(lam) = sum over dominant mu <= lam of l_{mu lam}(1) ch E(mu).

    ``wedge_solver`` is a type C WedgeSolver whose window holds lam.
    Entries whose interval is not inside the window raise WindowTooSmall.
    """
    from .canbasis import WindowTooSmall

    lam = tuple(lam)
    n = len(lam)
    _require_plus(lam, "C")
    tens = wedge_solver.tensor
    ldom = wedge_solver.l_dominant(lam)
    for mu in ldom:
        if not tens.certified(mu, lam):
            raise WindowTooSmall(f"l entry at {W.format_weight(mu)} is not certified")
    ch = CharPoly(n)
    l_row = {}
    for mu, p in sorted(ldom.items()):
        c = p.at_one()
        if c:
            l_row[mu] = c
            ch = ch + euler_character(mu, n, "schur-product") * c
    a_row, a_col = {}, {}
    for mu in wedge_solver.dominant():
        if W.bruhat_leq("C", mu, lam):
            c = wedge_solver.u_column(W.neg_w0(mu)).get(W.neg_w0(lam))
            if c and c.at_one():
                a_row[mu] = c.at_one()
        if W.bruhat_leq("C", lam, mu):
            c = wedge_solver.u_column(W.neg_w0(lam)).get(W.neg_w0(mu))
            if c and c.at_one():
                a_col[mu] = c.at_one()
    return IrreducibleResult(lam, ch, l_row, a_row, a_col)
