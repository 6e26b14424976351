"""Grothendieck-group bookkeeping at q = 1.

Classes are finite integer combinations of labels.  Psi sends [Delta(lam)]
to M_lam(1), Psi_e sends [E(lam)] to E_lam(1), Phi sends [U(lam)] to
U_lam(1).  Translation functors act on Verma classes by moving single
entries; the admissible moves are selected by the weight criterion
wt(lam - eps_j) = wt(lam) + alpha_i (E-direction) or
wt(lam + eps_j) = wt(lam) - alpha_i (F-direction).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .exactpoly import LaurentPoly
from .quantumrep import CartanData, GeneratorSymbol, specialized_action_at_one
from .superchar import euler_character, natural_character, translated_euler_targets
from . import weights as W

BASES = ("Delta", "E", "L", "U", "T")

TILTING_CAVEAT = "known-to-need-correction (Tsuchioka): type C t-polynomials are not all positive"


@dataclass
class KElement:
    basis: str
    entries: dict = field(default_factory=dict)
    conjectural: bool = False
    caveat: str = ""
    needs_correction: bool = False

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        self.entries = {tuple(k): v for k, v in self.entries.items() if v}

    def __add__(self, other: "KElement") -> "KElement":
        if self.basis != other.basis:
            raise ValueError("basis mismatch")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return KElement(self.basis, out, self.conjectural or other.conjectural, self.caveat or other.caveat,
                        self.needs_correction or other.needs_correction)

    def scale(self, c: int) -> "KElement":
        return KElement(self.basis, {k: c * v for k, v in self.entries.items()}, self.conjectural, self.caveat,
                        self.needs_correction)

    def __eq__(self, other):
        return isinstance(other, KElement) and self.basis == other.basis and self.entries == other.entries

    def to_json(self, duals=None) -> dict:
        return {"basis": self.basis,
                "entries": [{"weight": W.format_weight(k, duals), "mult": v}
                            for k, v in sorted(self.entries.items(), reverse=True)],
                "conjectural": self.conjectural,
                "known_to_need_correction": self.needs_correction,
                **({"caveat": self.caveat} if self.caveat else {})}


# blocks


def block_of(lam, typ: str = "C") -> tuple:
    return W.freeze(W.wt(typ, lam))


def block_partition(lams, typ: str = "C") -> dict:
    out: dict = {}
    for lam in lams:
        out.setdefault(block_of(lam, typ), []).append(tuple(lam))
    return out


# translation functors on Verma classes


def _admissible(lam, i: int, direction: str, typ: str = "C") -> list:
    ai = W.simple_root(typ, i)
    base = W.wt(typ, lam)
    want = W.add_weights(base, ai, 1 if direction == "E" else -1)
    step = -2 if direction == "E" else 2
    out = []
    for j in range(len(lam)):
        new = lam[:j] + (lam[j] + step,) + lam[j + 1:]
        if W.wt(typ, new) == want:
            out.append(j)
    return out


def translate_verma(i: int, r: int, lam, direction: str, typ: str = "C") -> KElement:
    """E_i^{(r)} or F_i^{(r)} applied to [Delta(lam)], multiplicity 2^r per target."""
    if direction not in ("E", "F"):
        raise ValueError("direction is E or F")
    lam = tuple(lam)
    step = -2 if direction == "E" else 2
    adm = _admissible(lam, i, direction, typ)
    out: dict = {}
    for js in itertools.combinations(adm, r):
        new = list(lam)
        for j in js:
            new[j] += step
        new = tuple(new)
        # the whole move must shift the weight by r alpha_i
        want = W.add_weights(W.wt(typ, lam), W.simple_root(typ, i), r if direction == "E" else -r)
        if W.wt(typ, new) == want:
            out[new] = out.get(new, 0) + 2 ** r
    return KElement("Delta", out)


def psi_image(elem: KElement) -> dict:
    """Psi: Delta classes to monomials at q = 1."""
    if elem.basis != "Delta":
        raise ValueError("Psi is defined on Verma classes")
    return dict(elem.entries)


def verify_translation(i: int, r: int, lam, typ: str = "C") -> bool:
    """Compare translate_verma with 2^r times the specialized divided power, both directions."""
    lam = tuple(lam)
    cart = CartanData(typ)
    for d in ("E", "F"):
        lhs = psi_image(translate_verma(i, r, lam, d, typ))
        act = specialized_action_at_one(cart, GeneratorSymbol(d, i, r), {lam: 1})
        rhs = {k: (2 ** r) * v for k, v in act.items() if v}
        if lhs != rhs:
            return False
    return True


def euler_translation_pieri(i: int, lam, direction: str) -> KElement:
    """Block component of E(lam) (x) V (F-direction) or E(lam) (x) V* (E-direction).

    ch(E(lam) (x) V) = 2 sum ch E(nu) over dominant nu = lam + eps_r, and
    dually with lam - eps_r for V*; the summands kept are those with
    wt(nu) = wt(lam) - alpha_i (F) or wt(lam) + alpha_i (E).
    """
    lam = tuple(lam)
    ai = W.simple_root("C", i)
    base = W.wt("C", lam)
    want = W.add_weights(base, ai, 1 if direction == "E" else -1)
    out: dict = {}
    cands = translated_euler_targets(lam) if direction == "F" else _minus_targets(lam)
    for nu in cands:
        if W.wt("C", nu) == want and nu not in out:
            out[nu] = 2
    return KElement("E", out)


def _minus_targets(lam) -> list:
    out = []
    for r in range(len(lam)):
        nu = lam[:r] + (lam[r] - 2,) + lam[r + 1:]
        if W.is_dominant("C", nu):
            out.append(nu)
    return out


def euler_tensor_identity(lam, dual: bool = False) -> bool:
    """ch(E(lam) (x) V) = 2 sum ch E(nu), nu = lam + eps_r dominant (lam - eps_r for V*)."""
    n = len(lam)
    lhs = euler_character(lam, n, "schur-product") * natural_character(n, dual)
    rhs = None
    for nu in (_minus_targets(lam) if dual else translated_euler_targets(lam)):
        t = euler_character(nu, n, "schur-product") * 2
        rhs = t if rhs is None else rhs + t
    return rhs is not None and lhs == rhs


def euler_divided_power(i: int, r: int, lam, direction: str) -> dict:
    """E_i^{(r)} or F_i^{(r)} on E_lam through the closed E-basis rule, exact in q."""
    from .exactpoly import qfactorial
    from .wedge import act_on_E

    vec = {tuple(lam): LaurentPoly.const(1)}
    for _ in range(r):
        new: dict = {}
        for mu, c in vec.items():
            for nu, a in act_on_E(GeneratorSymbol(direction, i), mu).entries.items():
                new[nu] = new.get(nu, LaurentPoly()) + c * a
        vec = {k: v for k, v in new.items() if v}
    den = qfactorial(r, CartanData("C").qstep(i))
    return {k: v.exact_div(den) for k, v in vec.items()}


def euler_translation_power(i: int, r: int, lam, direction: str) -> KElement:
    """r single translations on the Euler side, divided by r!."""
    cur = KElement("E", {tuple(lam): 1})
    for _ in range(r):
        nxt = KElement("E", {})
        for mu, c in cur.entries.items():
            nxt = nxt + euler_translation_pieri(i, mu, direction).scale(c)
        cur = nxt
    fact = 1
    for k in range(2, r + 1):
        fact *= k
    if any(v % fact for v in cur.entries.values()):
        raise ArithmeticError("Euler-side translation is not divisible by r!")
    return KElement("E", {k: v // fact for k, v in cur.entries.items()})


def verify_euler_translation(i: int, lam, r: int = 1) -> bool:
    """Pieri-side translation equals 2^r x the E-basis divided power at q = 1."""
    for d in ("E", "F"):
        lhs = euler_translation_power(i, r, lam, d).entries
        act = euler_divided_power(i, r, lam, d)
        rhs = {k: (2 ** r) * v.at_one() for k, v in act.items() if v.at_one()}
        if lhs != rhs:
            return False
    return True


# conjectural outputs


def conjectural_tilting(lam, solver, flavor: str = "C-halfint") -> KElement:
    """Sum of t_{mu lam}(1) [Delta(mu)], flagged as conjectural."""
    from .canbasis import WindowTooSmall

    lam = tuple(lam)
    col = solver.column(lam, "t")
    bad = solver.provisional(lam, col)
    if bad:
        raise WindowTooSmall(f"uncertified entries at {[W.format_weight(m, solver.engine.duals) for m in bad]}")
    entries = {mu: p.at_one() for mu, p in col.items()}
    if flavor == "C-halfint":
        return KElement("Delta", entries, True, TILTING_CAVEAT, True)
    return KElement("Delta", entries, True, "conjectural")


def conjectural_irreducible_mixed(lam, solver) -> KElement:
    """Sum of l_{mu lam}(1) [Delta(mu)] on the mixed tensor space, flagged as conjectural."""
    from .canbasis import WindowTooSmall

    lam = tuple(lam)
    col = solver.column(lam, "l")
    bad = solver.provisional(lam, col)
    if bad:
        raise WindowTooSmall(f"uncertified entries at {[W.format_weight(m, solver.engine.duals) for m in bad]}")
    return KElement("Delta", {mu: p.at_one() for mu, p in col.items()}, True, "conjectural")


def ml_inverse_check(solver, lams) -> list:
    """Check sum_nu t_{nu lam}(1) l_{-nu,-mu}(1) = delta on certified entries.

    Returns the list of failing (lam, mu, value) triples.
    """
    fails = []
    for lam in lams:
        tcol = solver.column(lam, "t", "N")
        for mu in solver.below(lam):
            if not solver.certified(mu, lam):
                continue
            lcol = solver.column(W.neg(mu), "l", "M")
            s = 0
            for nu, t in tcol.items():
                x = lcol.get(W.neg(nu))
                if x:
                    s += t.at_one() * x.at_one()
            if s != (1 if tuple(mu) == tuple(lam) else 0):
                fails.append((tuple(lam), tuple(mu), s))
    return fails


def pairing_K(e: KElement, f: KElement) -> int:
    """<[L(-w0 lam)], [U(mu)]> = delta_{lam mu}, extended bilinearly.

    ``e`` is in the L-basis with keys -w0 lam; ``f`` is in the U-basis.
    """
    if e.basis != "L" or f.basis != "U":
        raise ValueError("pairing takes an L-class and a U-class")
    s = 0
    for k, v in e.entries.items():
        s += v * f.entries.get(W.neg_w0(k), 0)
    return s


def action_matrix_U(i: int, kind: str, wedge_solver, lams) -> dict:
    """Matrix of E_i or F_i on the U-basis at q = 1, {(target, source): int}.

    U_lam is expanded in the F-basis, acted on via straightening of the
    monomial action, and re-expanded in U by triangularity.
    """
    from .wedge import straighten_C

    out = {}
    cart = CartanData("C")
    g = GeneratorSymbol(kind, i)
    for lam in lams:
        vec: dict = {}
        for mu, c in wedge_solver.u_column(lam).items():
            img = specialized_action_at_one(cart, g, {W.w0(mu): 1})
            for m2, a in img.items():
                for lab, v in straighten_C(m2).entries.items():
                    vec[lab] = vec.get(lab, 0) + c.at_one() * a * v.at_one()
        vec = {k: v for k, v in vec.items() if v}
        # peel off U's from the lowest label upward
        while vec:
            low = min(vec, key=lambda m: sum(1 for x in vec if W.bruhat_leq("C", x, m)))
            c = vec[low]
            out[(low, tuple(lam))] = c
            for mu, p in wedge_solver.u_column(low).items():
                v = vec.get(mu, 0) - c * p.at_one()
                if v:
                    vec[mu] = v
                else:
                    vec.pop(mu, None)
    return out


def action_matrix_L(i: int, kind: str, wedge_solver, lams) -> dict:
    """Matrix of E_i or F_i on the L-basis at q = 1, {(target, source): int}."""
    from .wedge import act_on_E

    out = {}
    g = GeneratorSymbol(kind, i)
    for lam in lams:
        # L_lam = sum l_{mu lam} E_mu; act on each E_mu; convert back with E = sum a L
        evec: dict = {}
        for mu, p in wedge_solver.l_dominant(lam).items():
            for nu, c in act_on_E(g, mu).entries.items():
                evec[nu] = evec.get(nu, 0) + p.at_one() * c.at_one()
        for nu, c in evec.items():
            if not c:
                continue
            for kap, x in wedge_solver.E_vector(nu).entries.items():
                key = (kap, tuple(lam))
                out[key] = out.get(key, 0) + c * x.at_one()
    return {k: v for k, v in out.items() if v}
