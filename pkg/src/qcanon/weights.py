"""Weight tuples, the weight lattice, and the Bruhat ordering.

Entries are stored doubled: the half-integer 3/2 is kept as 3, the integer 2
as 4.  Weights in the lattice P are sparse dicts ``{key: coeff}``.  For types
C and B the key is the doubled absolute index of the basis vector delta; for
the mixed type A lattice the key is the doubled index of epsilon.

Four root data are supported:

``"C"``     half-integers; a_0 = -2 d_{1/2}, a_i = d_{i-1/2} - d_{i+1/2}
``"B"``     integers;      a_0 = -d_1,       a_i = d_i - d_{i+1}, (d_a,d_b)=2
``"A"``     the type C lattice restricted to the nodes i >= 1
``"Amix"``  integers for sl_infinity, e_j at natural and -e_j at dual slots
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

TYPES = ("C", "B", "A", "Amix")
LATTICE_OF = {"C": "half", "A": "half", "B": "int", "Amix": "mixed"}


class InvalidWeight(ValueError):
    pass


@dataclass(frozen=True)
class WeightTuple:
    doubled: tuple
    lattice: str = "half"
    duals: tuple | None = None

    def __post_init__(self):
        if self.lattice not in ("half", "int", "mixed"):
            raise InvalidWeight(f"unknown lattice {self.lattice!r}")
        for e in self.doubled:
            if not isinstance(e, int):
                raise InvalidWeight("entries must be doubled integers")
            if self.lattice == "half" and e % 2 == 0:
                raise InvalidWeight(f"{Fraction(e, 2)} is not a half-integer")
            if self.lattice in ("int", "mixed") and e % 2:
                raise InvalidWeight(f"{Fraction(e, 2)} is not an integer")
        if self.lattice == "mixed":
            if self.duals is None or len(self.duals) != len(self.doubled):
                raise InvalidWeight("mixed weights need one dual flag per entry")

    def __len__(self):
        return len(self.doubled)

    @property
    def n(self) -> int:
        return len(self.doubled)

    def entries(self) -> tuple:
        return tuple(Fraction(e, 2) for e in self.doubled)

    def __str__(self):
        return format_weight(self.doubled, self.duals)


def format_entry(e: int) -> str:
    f = Fraction(e, 2)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_weight(doubled, duals=None) -> str:
    parts = []
    for i, e in enumerate(doubled):
        s = format_entry(e)
        if duals is not None and duals[i]:
            s += "*"
        parts.append(s)
    return ",".join(parts)


_ENTRY = re.compile(r"^\s*(-?\d+)(?:/(\d+))?\s*(\*?)\s*$")


def parse_weight(text: str, lattice: str = "half") -> WeightTuple:
    """Parse ``"3/2,1/2,-5/2"``; a trailing ``*`` marks a dual slot."""
    if not text.strip():
        raise InvalidWeight("empty weight")
    doubled, duals = [], []
    for part in text.split(","):
        m = _ENTRY.match(part)
        if not m:
            raise InvalidWeight(f"cannot parse entry {part!r}")
        num, den, star = int(m.group(1)), m.group(2), m.group(3)
        den = int(den) if den else 1
        if den not in (1, 2):
            raise InvalidWeight(f"entry {part!r} is not in (1/2)Z")
        doubled.append(num * (2 // den))
        duals.append(bool(star))
    if any(duals) and lattice != "mixed":
        raise InvalidWeight("dual markers are only allowed in the mixed lattice")
    return WeightTuple(tuple(doubled), lattice, tuple(duals) if lattice == "mixed" else None)


# lattice P


def delta(typ: str, e: int, dual: bool = False) -> dict:
    """Weight of the basis vector with doubled index e."""
    if typ in ("C", "A"):
        return {abs(e): 1 if e > 0 else -1}
    if typ == "B":
        return {abs(e): 1 if e > 0 else -1} if e else {}
    if typ == "Amix":
        return {e: -1 if dual else 1}
    raise ValueError(typ)


def simple_root(typ: str, i: int) -> dict:
    if typ in ("C", "A"):
        if i == 0:
            if typ == "A":
                raise ValueError("node 0 is not a type A node")
            return {1: -2}
        return {2 * i - 1: 1, 2 * i + 1: -1}
    if typ == "B":
        if i == 0:
            return {2: -1}
        return {2 * i: 1, 2 * i + 2: -1}
    if typ == "Amix":
        return {2 * i: 1, 2 * i + 2: -1}
    raise ValueError(typ)


def form(typ: str, x: dict, y: dict) -> int:
    if len(x) > len(y):
        x, y = y, x
    s = sum(a * y.get(k, 0) for k, a in x.items())
    return 2 * s if typ == "B" else s


def add_weights(x: dict, y: dict, sign: int = 1) -> dict:
    r = dict(x)
    for k, a in y.items():
        v = r.get(k, 0) + sign * a
        if v:
            r[k] = v
        else:
            r.pop(k, None)
    return r


def freeze(x: dict) -> tuple:
    return tuple(sorted(x.items()))


def root_coords(typ: str, x: dict) -> dict | None:
    """Coordinates of x in the simple roots, or None if x is not in Q."""
    if not x:
        return {}
    if typ in ("C", "A"):
        # key 2j-1 carries d_{j-1/2}
        cs = {(k + 1) // 2: a for k, a in x.items()}
        top = max(cs)
        coords, run = {}, 0
        for i in range(top - 1, 0, -1):
            run -= cs.get(i + 1, 0)
            if run:
                coords[i] = run
        total = sum(cs.values())
        if total % 2:
            return None
        if total:
            coords[0] = -total // 2
        if typ == "A" and total:
            return None
        return coords
    if typ == "B":
        cs = {k // 2: a for k, a in x.items()}
        top = max(cs)
        coords, run = {}, 0
        for i in range(top - 1, 0, -1):
            run -= cs.get(i + 1, 0)
            if run:
                coords[i] = run
        total = sum(cs.values())
        if total:
            coords[0] = -total
        return coords
    if typ == "Amix":
        cs = {k // 2: a for k, a in x.items()}
        if sum(cs.values()):
            return None
        coords, run = {}, 0
        for j in range(min(cs), max(cs)):
            run += cs.get(j, 0)
            if run:
                coords[j] = run
        return coords
    raise ValueError(typ)


def in_qplus(typ: str, x: dict) -> bool:
    c = root_coords(typ, x)
    return c is not None and all(v >= 0 for v in c.values())


def root_from_coords(typ: str, coords: dict) -> dict:
    r: dict = {}
    for i, a in coords.items():
        r = add_weights(r, {k: a * v for k, v in simple_root(typ, i).items()})
    return r


# partial weights and the Bruhat order


def _delta_t(typ, e, dual):
    return delta(typ, e, dual)


def partial_weights(typ: str, lam, duals=None) -> list:
    """[wt_1, ..., wt_n] as dicts, wt_r = sum_{i >= r} delta(lam_i)."""
    n = len(lam)
    out = [None] * n
    cur: dict = {}
    for r in range(n - 1, -1, -1):
        cur = add_weights(cur, delta(typ, lam[r], bool(duals and duals[r])))
        out[r] = cur
    return out


def wt_r(typ: str, lam, r: int, duals=None) -> dict:
    """sum_{i >= r} delta(lam_i), positions counted from 1."""
    if not 1 <= r <= len(lam):
        raise IndexError(f"position {r} out of range")
    return partial_weights(typ, lam, duals)[r - 1]


def wt(typ: str, lam, duals=None) -> dict:
    cur: dict = {}
    for r, e in enumerate(lam):
        cur = add_weights(cur, delta(typ, e, bool(duals and duals[r])))
    return cur


def bruhat_leq(typ: str, mu, lam, duals=None) -> bool:
    """mu <= lam: same total weight and wt_r(lam) - wt_r(mu) in Q+ for all r."""
    if len(mu) != len(lam):
        return False
    pl = partial_weights(typ, lam, duals)
    pm = partial_weights(typ, mu, duals)
    if pl[0] != pm[0]:
        return False
    for r in range(1, len(lam)):
        if not in_qplus(typ, add_weights(pl[r], pm[r], -1)):
            return False
    return True


def bruhat_leq_chain(typ: str, mu, lam, cutoff: int) -> bool:
    """Chain version of the order on weakly decreasing tuples.

    Breadth-first search upward from mu by steps nu + (e_s - e_t), s < t,
    with nu_s + nu_t = 0, staying weakly decreasing and inside the window.
    """
    mu, lam = tuple(mu), tuple(lam)
    for x in (mu, lam):
        if not is_weakly_decreasing(x):
            raise InvalidWeight(f"{format_weight(x)} is not weakly decreasing")
    if mu == lam:
        return True
    seen = {mu}
    frontier = [mu]
    n = len(mu)
    while frontier:
        nxt = []
        for nu in frontier:
            for s in range(n):
                for t in range(s + 1, n):
                    if nu[s] + nu[t]:
                        continue
                    new = list(nu)
                    new[s] += 2
                    new[t] -= 2
                    new = tuple(new)
                    if max(abs(x) for x in new) >= 2 * cutoff:
                        continue
                    if any(new[i] < new[i + 1] for i in range(n - 1)):
                        continue
                    if new == lam:
                        return True
                    if new not in seen:
                        seen.add(new)
                        nxt.append(new)
        frontier = nxt
    return False


def window_entries(typ: str, cutoff: int, lo: int | None = None) -> list:
    """Doubled entries of the truncated index set.

    Types C and A use |r| < cutoff over half-integers, type B |a| < cutoff
    over integers.  For the mixed type the window is lo <= j < cutoff.
    """
    if typ in ("C", "A"):
        return [e for e in range(-2 * cutoff + 1, 2 * cutoff, 2)]
    if typ == "B":
        return [e for e in range(-2 * cutoff + 2, 2 * cutoff, 2)]
    if typ == "Amix":
        lo = -cutoff if lo is None else lo
        return [2 * j for j in range(lo, cutoff)]
    raise ValueError(typ)


def window_weights(typ: str, n: int, cutoff: int, lo: int | None = None, sector=None):
    entries = window_entries(typ, cutoff, lo)
    if sector is None:
        return [tuple(p) for p in product(entries, repeat=n)]
    pools = [[e for e in entries if (e > 0) == (s > 0)] for s in sector]
    return [tuple(p) for p in product(*pools)]


def interval_below(typ: str, lam, cutoff: int, duals=None, lo=None, sector=None) -> list:
    """All mu <= lam in the window, by exhaustive scan, in an order refining <=."""
    target = freeze(wt(typ, lam, duals))
    out = []
    for mu in window_weights(typ, len(lam), cutoff, lo, sector):
        if freeze(wt(typ, mu, duals)) != target:
            continue
        if bruhat_leq(typ, mu, lam, duals):
            out.append(mu)
    # lowest first: sorting by the size of the principal ideal refines the order
    size = {mu: sum(1 for nu in out if bruhat_leq(typ, nu, mu, duals)) for mu in out}
    return sorted(out, key=lambda mu: (size[mu], mu))


def interval_bound(typ: str, mu, lam, duals=None) -> int:
    """Largest doubled |entry| any nu with mu <= nu <= lam can have.

    If wt_r(nu) - wt_r(mu) and wt_r(lam) - wt_r(nu) are both in Q+, the
    first is bounded coordinatewise by wt_r(lam) - wt_r(mu), so its support
    is confined to the nodes occurring there.
    """
    pl = partial_weights(typ, lam, duals)
    pm = partial_weights(typ, mu, duals)
    top = max(abs(e) for e in tuple(mu) + tuple(lam))
    for r in range(len(lam)):
        c = root_coords(typ, add_weights(pl[r], pm[r], -1)) or {}
        for i in c:
            if typ in ("C", "A"):
                top = max(top, 2 * i + 1)
            elif typ == "B":
                top = max(top, 2 * i + 2)
            else:
                top = max(top, abs(2 * i), abs(2 * i + 2))
    return top


def interval_range(typ: str, mu, lam, duals=None) -> tuple:
    """(smallest, largest) doubled entry any nu with mu <= nu <= lam can have."""
    pl = partial_weights(typ, lam, duals)
    pm = partial_weights(typ, mu, duals)
    ents = tuple(mu) + tuple(lam)
    lo, hi = min(ents), max(ents)
    for r in range(len(lam)):
        for i in root_coords(typ, add_weights(pl[r], pm[r], -1)) or {}:
            if typ == "Amix":
                lo, hi = min(lo, 2 * i), max(hi, 2 * i + 2)
            else:
                b = 2 * i + (2 if typ == "B" else 1)
                lo, hi = min(lo, -b), max(hi, b)
    return lo, hi


# sign patterns, sharp map, Weyl group bits


def sign_pattern(lam) -> tuple:
    if any(e == 0 for e in lam):
        raise InvalidWeight("a zero entry has no sign")
    return tuple(1 if e > 0 else -1 for e in lam)


def minimal_sector(l: int, m: int) -> tuple:
    return (-1,) * l + (1,) * m


def sharp_map(lam) -> tuple:
    """Half-integer tuple -> nonzero integer tuple, r -> r + sgn(r)/2."""
    for e in lam:
        if e % 2 == 0:
            raise InvalidWeight("sharp map needs half-integer entries")
    return tuple(e + (1 if e > 0 else -1) for e in lam)


def sharp_inverse(lam) -> tuple:
    for e in lam:
        if e == 0 or e % 2:
            raise InvalidWeight("inverse sharp map needs nonzero integers")
    return tuple(e - (1 if e > 0 else -1) for e in lam)


def w0_reverse(lam) -> tuple:
    return tuple(reversed(lam))


def w0(lam) -> tuple:
    return tuple(reversed(lam))


def neg(lam) -> tuple:
    return tuple(-e for e in lam)


def neg_w0(lam) -> tuple:
    return tuple(-e for e in reversed(lam))


def is_dominant(typ: str, lam) -> bool:
    """Strictly decreasing, except that type B allows repeated zeros."""
    for a, b in zip(lam, lam[1:]):
        if a < b:
            return False
        if a == b and not (typ == "B" and a == 0):
            return False
    return True


def is_weakly_decreasing(lam) -> bool:
    return all(a >= b for a, b in zip(lam, lam[1:]))


def zero_count(lam) -> int:
    return sum(1 for e in lam if e == 0)


def nonzero_count(lam) -> int:
    return sum(1 for e in lam if e)


def typicality(lam) -> str:
    n = len(lam)
    if any(lam[i] + lam[j] == 0 for i in range(n) for j in range(i + 1, n)):
        return "atypical"
    return "typical"


def finite_dim_test(lam) -> bool:
    """Weakly decreasing, with equal neighbours allowed only at 0."""
    return is_dominant("B", lam)
