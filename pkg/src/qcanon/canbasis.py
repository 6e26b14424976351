"""Canonical and dual canonical bases of truncated tensor spaces.

For a bar-invariant element X = sum_mu x_mu M_mu with x_lam = 1 the
coefficient at mu satisfies

    x_mu - bar(x_mu) = sum_{mu < nu <= lam} r_{mu nu} bar(x_nu)

where psi(M_nu) = sum_mu r_{mu nu} M_mu.  Processing mu downward, the right
side is known; the canonical basis keeps its positive-degree part, the dual
canonical basis its negative-degree part.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .barinv import BarEngine, in_window
from .exactpoly import LaurentPoly, NotDivisible, negative_part, positive_part
from . import weights as W


class NonTriangularInput(ArithmeticError):
    pass


class WindowTooSmall(ValueError):
    pass


KINDS = ("t", "l", "ta", "la", "u", "ua")


@dataclass
class CoeffTable:
    """Entries (mu, lam) -> LaurentPoly, one column per lam."""

    kind: str
    type: str
    n: int
    cutoff: int
    entries: dict = field(default_factory=dict)
    normalization: str = "M"
    provisional: set = field(default_factory=set)
    duals: tuple | None = None
    lo: int | None = None

    def column(self, lam) -> dict:
        lam = tuple(lam)
        return {mu: p for (mu, l), p in self.entries.items() if l == lam}

    def get(self, mu, lam) -> LaurentPoly:
        return self.entries.get((tuple(mu), tuple(lam)), LaurentPoly.const(0, "t" if self.type == "B" else "q"))

    def add_column(self, lam, col: dict, provisional=()) -> None:
        lam = tuple(lam)
        for mu, p in col.items():
            if p:
                self.entries[(mu, lam)] = p
        for mu in provisional:
            self.provisional.add((mu, lam))

    def to_json(self, allow_provisional: bool = False) -> dict:
        rows = []
        for (mu, lam) in sorted(self.entries):
            if (mu, lam) in self.provisional and not allow_provisional:
                continue
            row = {"mu": W.format_weight(mu, self.duals), "la": W.format_weight(lam, self.duals),
                   "poly": self.entries[(mu, lam)].to_json()}
            if (mu, lam) in self.provisional:
                row["provisional"] = True
            rows.append(row)
        return {"kind": self.kind, "type": self.type, "n": self.n, "cutoff": self.cutoff,
                "normalization": self.normalization, "entries": rows}

    @classmethod
    def from_json(cls, d: dict) -> "CoeffTable":
        var = "t" if d["type"] == "B" else "q"
        lattice = {"B": "int", "Amix": "mixed"}.get(d["type"], "half")
        tab = cls(d["kind"], d["type"], d["n"], d["cutoff"], normalization=d.get("normalization", "M"))
        for row in d["entries"]:
            mu = W.parse_weight(row["mu"], lattice).doubled
            lam = W.parse_weight(row["la"], lattice).doubled
            tab.entries[(mu, lam)] = LaurentPoly.from_json(row["poly"], var)
            if row.get("provisional"):
                tab.provisional.add((mu, lam))
        return tab


def _height(typ: str, x: dict) -> int:
    c = W.root_coords(typ, x)
    if c is None:
        raise NonTriangularInput("difference outside the root lattice")
    return sum(c.values())


class CanonicalSolver:
    """Triangular solver over one BarEngine.

    ``sector`` restricts to monomials with the sign pattern of lam (used
    with the type A sector engine).  For type B, ``basis`` selects N (plain
    tensors) or M = (t+1/t)^{-z} N.
    """

    def __init__(self, engine: BarEngine, n: int):
        self.engine = engine
        self.n = n
        self.type = engine.type
        self.order_type = "C" if engine.type == "A" else engine.lattice_type
        if engine.type == "A":
            self.order_type = "C"
        self.var = engine.var
        self._blocks: dict = {}
        self._cols: dict = {}

    # interval bookkeeping

    def window(self):
        sector = None
        return W.window_weights(self.engine.lattice_type, self.n, self.engine.cutoff, self.engine.lo, sector)

    def block(self, lam) -> list:
        key = W.freeze(W.wt(self.order_type, lam, self.engine.duals))
        if key not in self._blocks:
            blk = [mu for mu in self.window()
                   if W.freeze(W.wt(self.order_type, mu, self.engine.duals)) == key]
            self._blocks[key] = blk
        return self._blocks[key]

    def below(self, lam) -> list:
        """mu <= lam in the window (same sector for the type A engine), top first."""
        lam = tuple(lam)
        out = []
        for mu in self.block(lam):
            if self.engine.type == "A" and W.sign_pattern(mu) != W.sign_pattern(lam):
                continue
            if W.bruhat_leq(self.order_type, mu, lam, self.engine.duals):
                out.append(mu)
        pl = W.partial_weights(self.order_type, lam, self.engine.duals)

        def depth(mu):
            pm = W.partial_weights(self.order_type, mu, self.engine.duals)
            return sum(_height(self.order_type, W.add_weights(a, b, -1)) for a, b in zip(pl, pm))

        return sorted(out, key=lambda mu: (depth(mu), mu))

    def certified(self, mu, lam) -> bool:
        if self.engine.type == "Amix":
            a, b = W.interval_range("Amix", mu, lam, self.engine.duals)
            lo = -self.engine.cutoff if self.engine.lo is None else self.engine.lo
            return b < 2 * self.engine.cutoff and a >= 2 * lo
        return W.interval_bound(self.order_type, mu, lam, self.engine.duals) < 2 * self.engine.cutoff

    # bar matrix

    def r(self, mu, nu, basis: str = "N") -> LaurentPoly:
        c = self.engine.psi(nu).get(mu)
        if c is None:
            return LaurentPoly.const(0, self.var)
        if self.type == "B" and basis == "M":
            d = W.zero_count(mu) - W.zero_count(nu)
            two = LaurentPoly({1: 1, -1: 1}, "t")
            if d > 0:
                c = c * two ** d
            elif d < 0:
                c = c.exact_div(two ** (-d))
        return c

    def column(self, lam, kind: str = "t", basis: str | None = None) -> dict:
        """The column of t (kind "t") or l (kind "l") at lam."""
        lam = tuple(lam)
        if basis is None:
            basis = "N" if kind == "t" else "M"
        key = (lam, kind, basis)
        if key in self._cols:
            return self._cols[key]
        self.engine.check_window(lam)
        one = LaurentPoly.const(1, self.var)
        img = self.engine.psi(lam)
        if img.get(lam) != one:
            raise NonTriangularInput(f"psi(M_{lam}) has diagonal {img.get(lam)}")
        ivl = self.below(lam)
        for mu in img:
            if mu != lam and not W.bruhat_leq(self.order_type, mu, lam, self.engine.duals):
                raise NonTriangularInput(f"psi(M_{lam}) has a term at {mu} not below")
        col = {lam: one}
        done = [lam]
        for mu in ivl:
            if mu == lam:
                continue
            s = LaurentPoly.const(0, self.var)
            for nu in done:
                x = col.get(nu)
                if x:
                    rr = self.r(mu, nu, basis)
                    if rr:
                        s = s + rr * x.bar()
            if s + s.bar():
                raise NonTriangularInput(f"discrepancy at {mu} is not antisymmetric: {s}")
            x = positive_part(s) if kind == "t" else negative_part(s)
            if x:
                col[mu] = x
            done.append(mu)
        self._cols[key] = col
        return col

    def provisional(self, lam, col) -> list:
        return [mu for mu in col if not self.certified(mu, lam)]


# convenience wrappers


def _solver(typ, n, cutoff, duals=None, lo=None) -> CanonicalSolver:
    return CanonicalSolver(BarEngine(typ, cutoff, duals, lo), n)


def canonical_T(lam, cutoff: int, typ: str = "C", solver: CanonicalSolver | None = None) -> dict:
    solver = solver or _solver(typ, len(lam), cutoff)
    return solver.column(lam, "t")


def dual_canonical_L(lam, cutoff: int, typ: str = "C", solver: CanonicalSolver | None = None) -> dict:
    solver = solver or _solver(typ, len(lam), cutoff)
    return solver.column(lam, "l")


def canonical_T_sector(lam, cutoff: int, solver: CanonicalSolver | None = None) -> dict:
    solver = solver or _solver("A", len(lam), cutoff)
    return solver.column(lam, "t")


def mixed_dual_canonical(l: int, m: int, lam, cutoff: int, lo: int | None = None,
                         solver: CanonicalSolver | None = None) -> tuple:
    """(t, l) columns for V^{(x) l} (x) W^{(x) m} over the window lo <= j < cutoff."""
    duals = (False,) * l + (True,) * m
    if len(lam) != l + m:
        raise ValueError("weight length must be l + m")
    solver = solver or _solver("Amix", l + m, cutoff, duals, lo)
    return solver.column(lam, "t"), solver.column(lam, "l")


def build_table(solver: CanonicalSolver, kind: str, lams=None, basis: str | None = None) -> CoeffTable:
    eng = solver.engine
    tab = CoeffTable(kind, eng.type, solver.n, eng.cutoff,
                     normalization=basis or ("N" if kind == "t" and eng.type == "B" else "M"),
                     duals=eng.duals, lo=eng.lo)
    if lams is None:
        lams = solver.window()
    for lam in lams:
        col = solver.column(lam, kind, basis)
        tab.add_column(lam, col, solver.provisional(lam, col))
    return tab


def duality_pairing(lam, mu, solver: CanonicalSolver) -> LaurentPoly:
    """<T_lam, L_{-mu}> = sum_nu t_{nu lam} bar(l_{-nu,-mu}).

    T is expanded in N and L in M (the two agree outside type B).
    """
    lam, mu = tuple(lam), tuple(mu)
    tcol = solver.column(lam, "t", "N")
    lcol = solver.column(W.neg(mu), "l", "M")
    s = LaurentPoly.const(0, solver.var)
    for nu, t in tcol.items():
        x = lcol.get(W.neg(nu))
        if x:
            s = s + t * x.bar()
    return s


def bar_of_column(solver: CanonicalSolver, col: dict, basis: str = "N") -> dict:
    """psi applied to sum_mu col[mu] M_mu, returned in the same basis."""
    out: dict = {}
    for nu, c in col.items():
        cb = c.bar()
        for mu in solver.engine.psi(nu):
            rr = solver.r(mu, nu, basis)
            cur = out.get(mu, LaurentPoly.const(0, solver.var)) + cb * rr
            if cur:
                out[mu] = cur
            else:
                out.pop(mu, None)
    return out


def positivity_scan(typ: str, n: int, cutoff: int, solver: CanonicalSolver | None = None,
                    lams=None, dominant_only: bool = False) -> list:
    """Every negative coefficient of every t-column in the window."""
    solver = solver or _solver(typ, n, cutoff)
    found = []
    for lam in (lams if lams is not None else solver.window()):
        if dominant_only and not W.is_weakly_decreasing(lam):
            continue
        for mu, p in sorted(solver.column(lam, "t").items()):
            neg = [(e, a) for e, a in p.terms if a < 0]
            if neg:
                found.append((mu, tuple(lam), neg))
    return found


def widening_scan(typ: str, n: int, start: int, stop: int, dominant_only: bool = False,
                  time_budget: float | None = None) -> dict:
    """Run positivity_scan on cutoffs start..stop until a certified negative entry appears.

    Returns a machine-readable report; ``status`` is "found" or "exhausted".
    """
    import time

    t0 = time.monotonic()
    report = {"type": typ, "n": n, "scanned": [], "found": [], "status": "exhausted"}
    for k in range(start, stop + 1):
        solver = _solver(typ, n, k)
        hits = positivity_scan(typ, n, k, solver, dominant_only=dominant_only)
        cols = sum(1 for lam in solver.window() if not dominant_only or W.is_weakly_decreasing(lam))
        report["scanned"].append({"cutoff": k, "columns": cols,
                                  "seconds": round(time.monotonic() - t0, 3)})
        for mu, lam, neg in hits:
            report["found"].append({"cutoff": k, "mu": W.format_weight(mu), "la": W.format_weight(lam),
                                    "negative_terms": [list(t) for t in neg],
                                    "certified": solver.certified(mu, lam)})
        if any(f["certified"] for f in report["found"]):
            report["status"] = "found"
            break
        if time_budget is not None and time.monotonic() - t0 > time_budget:
            report["status"] = "budget"
            break
    return report
