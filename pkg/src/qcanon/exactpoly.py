"""Exact Laurent polynomials in one variable and sparse vectors over them.

All coefficients are Python integers, so there is no overflow and no
floating point anywhere.  A polynomial is stored as a dict ``{exponent:
coefficient}`` with zero coefficients dropped.
"""
from __future__ import annotations

from typing import Iterable, Iterator


class NotDivisible(ArithmeticError):
    """Raised when an exact division has a nonzero remainder."""


class LaurentPoly:
    """Element of Z[v, v^-1].

    The variable is ``q`` for types C and A and ``t`` for type B; only the
    printed name depends on it.
    """

    __slots__ = ("_c", "var")

    def __init__(self, coeffs=None, var: str = "q"):
        c = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for e, a in items:
                if not isinstance(e, int) or not isinstance(a, int):
                    raise TypeError("exponents and coefficients must be int")
                if a:
                    c[e] = c.get(e, 0) + a
                    if not c[e]:
                        del c[e]
        self._c = c
        self.var = var

    @classmethod
    def _raw(cls, c: dict, var: str = "q") -> "LaurentPoly":
        p = cls.__new__(cls)
        p._c = c
        p.var = var
        return p

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1, var: str = "q") -> "LaurentPoly":
        return cls._raw({exp: coeff} if coeff else {}, var)

    @classmethod
    def const(cls, a: int, var: str = "q") -> "LaurentPoly":
        return cls.monomial(0, a, var)

    # basic access

    @property
    def terms(self) -> tuple:
        return tuple(sorted(self._c.items()))

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def items(self):
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._c:
            return self
        c = dict(self._c)
        for e, a in other._c.items():
            s = c.get(e, 0) + a
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -a for e, a in self._c.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: dict = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                s = c.get(e, 0) + a1 * a2
                if s:
                    c[e] = s
                else:
                    c.pop(e, None)
        return LaurentPoly._raw(c, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) == 1:
                (e, a), = self._c.items()
                if a in (1, -1):
                    return LaurentPoly.monomial(e * n, a ** (-n), self.var)
            raise NotDivisible("only units can be inverted")
        r = LaurentPoly.const(1, self.var)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()}, self.var)

    def scale(self, a: int) -> "LaurentPoly":
        if not a:
            return LaurentPoly._raw({}, self.var)
        return LaurentPoly._raw({e: a * b for e, b in self._c.items()}, self.var)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self):
        return f"LaurentPoly({self.pretty()})"

    def pretty(self) -> str:
        if not self._c:
            return "0"
        out = []
        for e, a in sorted(self._c.items(), reverse=True):
            sign = "-" if a < 0 else "+"
            a = abs(a)
            if e == 0:
                body = str(a)
            else:
                mono = self.var if e == 1 else f"{self.var}^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    __str__ = pretty

    # involutions and specializations

    def bar(self) -> "LaurentPoly":
        return LaurentPoly._raw({-e: a for e, a in self._c.items()}, self.var)

    def at_one(self) -> int:
        return sum(self._c.values())

    def substitute_power(self, k: int, var: str | None = None) -> "LaurentPoly":
        """Return p(v^k); ``k=2`` turns a polynomial in q into one in t."""
        return LaurentPoly._raw({e * k: a for e, a in self._c.items()}, var or self.var)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        other = self._coerce(other)
        if not other._c:
            raise ZeroDivisionError("division by zero polynomial")
        if not self._c:
            return LaurentPoly._raw({}, self.var)
        lo_a, lo_b = self.min_exp(), other.min_exp()
        a = {e - lo_a: c for e, c in self._c.items()}
        b = {e - lo_b: c for e, c in other._c.items()}
        db = max(b)
        lb = b[db]
        quo = {}
        while a:
            da = max(a)
            if da < db:
                raise NotDivisible(f"{self} is not divisible by {other}")
            ca = a[da]
            if ca % lb:
                raise NotDivisible(f"{self} is not divisible by {other}")
            m = ca // lb
            quo[da - db] = m
            for e, c in b.items():
                k = e + da - db
                s = a.get(k, 0) - m * c
                if s:
                    a[k] = s
                else:
                    a.pop(k, None)
        return LaurentPoly._raw({e + lo_a - lo_b: c for e, c in quo.items()}, self.var)

    def to_json(self) -> dict:
        return {"coeffs": [[e, a] for e, a in self.terms]}

    @classmethod
    def from_json(cls, d: dict, var: str = "q") -> "LaurentPoly":
        return cls(((int(e), int(a)) for e, a in d["coeffs"]), var)


def zero(var: str = "q") -> LaurentPoly:
    return LaurentPoly._raw({}, var)


def one(var: str = "q") -> LaurentPoly:
    return LaurentPoly.const(1, var)


def bar_poly(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def evaluate_at_one(p: LaurentPoly) -> int:
    return p.at_one()


def exponent_double(p: LaurentPoly) -> LaurentPoly:
    """p(q) -> p(t^2)."""
    return p.substitute_power(2, "t")


def negativity_report(p: LaurentPoly) -> list[tuple[int, int]]:
    """The (exponent, coefficient) pairs with negative coefficient."""
    return [(e, a) for e, a in p.terms if a < 0]


def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a.exact_div(b)


def qint(m: int, step: int = 1, var: str = "q") -> LaurentPoly:
    """Balanced quantum integer [m] in the variable v^step."""
    if m == 0:
        return zero(var)
    sgn = 1 if m > 0 else -1
    m = abs(m)
    return LaurentPoly({step * (m - 1 - 2 * j): sgn for j in range(m)}, var)


def qfactorial(m: int, step: int = 1, var: str = "q") -> LaurentPoly:
    r = one(var)
    for j in range(1, m + 1):
        r = r * qint(j, step, var)
    return r


def positive_part(p: LaurentPoly) -> LaurentPoly:
    return LaurentPoly._raw({e: a for e, a in p.items() if e > 0}, p.var)


def negative_part(p: LaurentPoly) -> LaurentPoly:
    return LaurentPoly._raw({e: a for e, a in p.items() if e < 0}, p.var)


class SparseVector:
    """Finite linear combination of basis labels with Laurent coefficients.

    Labels are tuples of doubled integers.  Iteration is lexicographic on the
    labels, so printing and serialization are deterministic.
    """

    __slots__ = ("_d", "cutoff")

    def __init__(self, data=None, cutoff: int | None = None):
        self._d: dict = {}
        self.cutoff = cutoff
        if data:
            for k, v in (data.items() if isinstance(data, dict) else data):
                self.add_term(k, v)

    def add_term(self, key, coeff) -> None:
        if isinstance(coeff, int):
            coeff = LaurentPoly.const(coeff)
        if not coeff:
            return
        cur = self._d.get(key)
        s = coeff if cur is None else cur + coeff
        if s:
            self._d[key] = s
        else:
            self._d.pop(key, None)

    def __getitem__(self, key) -> LaurentPoly:
        return self._d.get(key) or zero()

    def get(self, key, default=None):
        return self._d.get(key, default)

    def __contains__(self, key):
        return key in self._d

    def __len__(self):
        return len(self._d)

    def __iter__(self) -> Iterator:
        return iter(sorted(self._d))

    def items(self) -> Iterable:
        return ((k, self._d[k]) for k in sorted(self._d))

    def keys(self):
        return sorted(self._d)

    def __add__(self, other: "SparseVector") -> "SparseVector":
        r = SparseVector(self._d, self.cutoff)
        for k, v in other._d.items():
            r.add_term(k, v)
        return r

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        r = SparseVector(self._d, self.cutoff)
        for k, v in other._d.items():
            r.add_term(k, -v)
        return r

    def scale(self, c) -> "SparseVector":
        return SparseVector({k: v * c for k, v in self._d.items()}, self.cutoff)

    def bar_coeffs(self) -> "SparseVector":
        return SparseVector({k: v.bar() for k, v in self._d.items()}, self.cutoff)

    def truncate(self, keep) -> "SparseVector":
        return SparseVector({k: v for k, v in self._d.items() if keep(k)}, self.cutoff)

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._d == other._d

    def __repr__(self):
        body = ", ".join(f"{k}: {v.pretty()}" for k, v in self.items())
        return f"SparseVector({{{body}}})"

    def as_dict(self) -> dict:
        return dict(self._d)
