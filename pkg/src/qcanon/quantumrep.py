"""Chevalley generators on the natural representation and its tensor powers.

The coproduct is

    D(E_i) = 1 (x) E_i + E_i (x) K_i^-1
    D(F_i) = K_i (x) F_i + F_i (x) 1
    D(K_i) = K_i (x) K_i

so on n factors E_i acts on one slot with K_i^-1 on every later slot, and
F_i acts on one slot with K_i on every earlier slot.

Vectors on n factors are plain dicts ``{tuple of doubled entries:
LaurentPoly}``.  For the mixed type each slot is natural (V) or dual (W);
the flags travel alongside as ``duals``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exactpoly import LaurentPoly, NotDivisible, qfactorial
from . import weights as W


class WindowEscape(ValueError):
    """An action left the truncation window; ``needed`` is the smallest cutoff that holds it."""

    def __init__(self, needed: int, msg: str = ""):
        super().__init__(msg or f"result leaves the window; cutoff {needed} needed")
        self.needed = needed


@dataclass(frozen=True)
class GeneratorSymbol:
    kind: str  # "E", "F", "K", "Kinv"
    node: int
    power: int = 1

    def __post_init__(self):
        if self.kind not in ("E", "F", "K", "Kinv"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.power < 1:
            raise ValueError("divided power must be positive")


@dataclass(frozen=True)
class CartanData:
    """Root datum of one of the types C, B, A (one-sided) or Amix.

    ``A`` is the type C datum with node 0 removed; it acts on the same
    natural representation.
    """

    type: str

    def __post_init__(self):
        if self.type not in W.TYPES:
            raise ValueError(f"unknown type {self.type!r}")

    @property
    def var(self) -> str:
        return "t" if self.type == "B" else "q"

    def has_node(self, i: int) -> bool:
        if self.type == "C" or self.type == "B":
            return i >= 0
        if self.type == "A":
            return i >= 1
        return True

    def window_nodes(self, cutoff: int, lo: int | None = None) -> list:
        """Nodes whose generators preserve the window."""
        if self.type == "C":
            return list(range(cutoff))
        if self.type == "A":
            return list(range(1, cutoff))
        if self.type == "B":
            return list(range(cutoff - 1))
        lo = -cutoff if lo is None else lo
        return list(range(lo, cutoff - 1))

    def root(self, i: int) -> dict:
        return W.simple_root(self.type, i)

    def pairing(self, i: int, j: int) -> int:
        return W.form(self.type, self.root(i), self.root(j))

    def qstep(self, i: int) -> int:
        """Exponent d_i with q_i = v^{d_i}."""
        return self.pairing(i, i) // 2

    def kexp(self, i: int, e: int, dual: bool = False) -> int:
        """K_i v_e = v^{kexp} v_e."""
        return W.form(self.type, self.root(i), W.delta(self.type, e, dual))

    def poly(self, exp: int = 0, c: int = 1) -> LaurentPoly:
        return LaurentPoly.monomial(exp, c, self.var)

    def natural(self, kind: str, i: int, e: int, dual: bool = False) -> list:
        """E_i or F_i on one basis vector: list of (new entry, coefficient)."""
        if not self.has_node(i):
            raise ValueError(f"node {i} not in type {self.type}")
        T = self.type
        if T in ("C", "A"):
            if i == 0:
                if kind == "E":
                    return [(-1, self.poly())] if e == 1 else []
                return [(1, self.poly())] if e == -1 else []
            if kind == "E":
                if e == 2 * i + 1 or e == -2 * i + 1:
                    return [(e - 2, self.poly())]
                return []
            if e == 2 * i - 1 or e == -2 * i - 1:
                return [(e + 2, self.poly())]
            return []
        if T == "B":
            if i == 0:
                two = LaurentPoly({1: 1, -1: 1}, "t")
                if kind == "E":
                    if e == 2:
                        return [(0, self.poly())]
                    if e == 0:
                        return [(-2, two)]
                    return []
                if e == -2:
                    return [(0, self.poly())]
                if e == 0:
                    return [(2, two)]
                return []
            if kind == "E":
                if e == 2 * i + 2 or e == -2 * i:
                    return [(e - 2, self.poly())]
                return []
            if e == 2 * i or e == -2 * i - 2:
                return [(e + 2, self.poly())]
            return []
        # Amix: v_j at natural slots, w_j at dual slots (entries doubled)
        if kind == "E":
            if not dual:
                return [(e - 2, self.poly())] if e == 2 * i + 2 else []
            return [(e + 2, self.poly())] if e == 2 * i else []
        if not dual:
            return [(e + 2, self.poly())] if e == 2 * i else []
        return [(e - 2, self.poly())] if e == 2 * i + 2 else []


def natural_action(cartan: CartanData, g: GeneratorSymbol, e: int, dual: bool = False) -> dict:
    """Image of one basis vector as ``{(entry,): coeff}``."""
    return tensor_action(cartan, g, {(e,): cartan.poly()}, (dual,) if dual else None)


def _add(out: dict, key, c: LaurentPoly) -> None:
    cur = out.get(key)
    s = c if cur is None else cur + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def apply_once(cartan: CartanData, kind: str, i: int, vec: dict, duals=None) -> dict:
    """E_i, F_i, K_i or K_i^-1 (single power) on a vector of n factors."""
    out: dict = {}
    for lam, c in vec.items():
        ks = [cartan.kexp(i, e, bool(duals and duals[s])) for s, e in enumerate(lam)]
        if kind in ("K", "Kinv"):
            tot = sum(ks)
            _add(out, lam, c.shift(tot if kind == "K" else -tot))
            continue
        n = len(lam)
        for s in range(n):
            for e2, a in cartan.natural(kind, i, lam[s], bool(duals and duals[s])):
                if kind == "E":
                    tw = -sum(ks[s + 1:])
                else:
                    tw = sum(ks[:s])
                new = lam[:s] + (e2,) + lam[s + 1:]
                _add(out, new, (c * a).shift(tw))
    return out


def _needed_cutoff(cartan: CartanData, lam) -> int:
    return max(abs(e) for e in lam) // 2 + 1


def tensor_action(cartan: CartanData, g: GeneratorSymbol, vec: dict, duals=None,
                  cutoff: int | None = None, lo: int | None = None) -> dict:
    """Apply g (with divided power) to ``vec``.

    With ``cutoff`` given, raise WindowEscape if the image leaves the window.
    """
    out = vec
    for _ in range(g.power if g.kind in ("E", "F") else 1):
        out = apply_once(cartan, g.kind, g.node, out, duals)
    if g.kind in ("E", "F") and g.power > 1:
        den = qfactorial(g.power, cartan.qstep(g.node), cartan.var)
        try:
            out = {k: c.exact_div(den) for k, c in out.items()}
        except NotDivisible as exc:  # pragma: no cover - would be a bug
            raise AssertionError(f"divided power not integral: {exc}") from exc
    if cutoff is not None:
        for lam in out:
            if cartan.type == "Amix":
                lo_ = -cutoff if lo is None else lo
                bad = [e for e in lam if not (2 * lo_ <= e < 2 * cutoff)]
                if bad:
                    need = max(cutoff, max(e // 2 + 1 for e in lam))
                    raise WindowEscape(need)
            elif max(abs(e) for e in lam) >= 2 * cutoff:
                raise WindowEscape(_needed_cutoff(cartan, lam))
    return out


def specialized_action_at_one(cartan: CartanData, g: GeneratorSymbol, vec: dict, duals=None) -> dict:
    """The action with q (or t) set to 1; input and output have integer coefficients."""
    lifted = {k: cartan.poly(0, c) for k, c in vec.items() if c}
    out = tensor_action(cartan, g, lifted, duals)
    res = {}
    for k, c in out.items():
        v = c.at_one()
        if v:
            res[k] = v
    return res


def weight_of(cartan: CartanData, lam, duals=None) -> dict:
    return W.wt(cartan.type, lam, duals)
