"""The full toroidal Lie algebra over N+1 torus variables, with exact brackets.

Basis symbols are t_0^j t^r X where X is a simple-algebra element ('g'), a
one-form generator k_p ('k'), a vector field d_p ('d'), or a shifted vector
field ('dt'): dt_p = d_p - nu r_p k_0 for p >= 1 and
dt_0 = -d_0 + (mu + nu)(j + 1/2) k_0.  One-forms are taken modulo exact
forms, which imposes one linear relation among k_0..k_N per nonzero degree;
elements are always stored center-canonicalized.  The vector-field bracket
carries the two-cocycle mu tau_1 + nu tau_2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .finite_lie_data import SimpleAlgebra

Q = Fraction


class ConfigError(ValueError):
    """Raised for invalid parameters or mixed-parameter operations."""


@dataclass(frozen=True)
class Params:
    """Algebra parameters: N space variables, cocycle weights, central charge."""

    N: int
    mu: Fraction
    nu: Fraction
    c: Fraction
    g_dot: SimpleAlgebra

    def __post_init__(self):
        if self.N < 1:
            raise ConfigError("N must be at least 1")
        if self.c == 0:
            raise ConfigError(
                "central charge c must be nonzero: bounded weight modules with "
                "a nonzero central action exist only for the character "
                "(c, 0, ..., 0) with c != 0")

    def zero_r(self):
        return (0,) * self.N


class BasisSymbol(NamedTuple):
    """t_0^j t^r X with X selected by (tag, idx).

    tag 'g': idx indexes the simple-algebra basis;
    tag 'k'/'d'/'dt': idx = p in 0..N.
    """

    tag: str
    j: int
    r: tuple
    idx: int

    def degree(self):
        return (self.j,) + self.r

    def exponent(self, p):
        """p-th torus exponent, p = 0..N (p = 0 is the t_0 exponent)."""
        return self.j if p == 0 else self.r[p - 1]


def g_sym(params, j, r, i):
    return BasisSymbol("g", j, tuple(r), i)


def k_sym(params, j, r, p):
    return BasisSymbol("k", j, tuple(r), p)


def d_sym(params, j, r, p):
    return BasisSymbol("d", j, tuple(r), p)


def dt_sym(params, j, r, p):
    return BasisSymbol("dt", j, tuple(r), p)


def canonicalize_center(params: Params, sym: BasisSymbol) -> dict:
    """Canonical representative of a one-form symbol modulo exact forms.

    At nonzero degree rho the relation sum_p rho_p t^rho k_p = 0 eliminates
    k_{p_min} for the smallest p_min with rho_{p_min} != 0.  Returns a dict
    BasisSymbol -> coefficient.
    """
    if sym.tag != "k":
        raise ConfigError("canonicalize_center applies to one-form symbols only")
    deg = sym.degree()
    if all(x == 0 for x in deg):
        return {sym: Q(1)}
    p_min = next(p for p in range(params.N + 1) if deg[p] != 0)
    if sym.idx != p_min:
        return {sym: Q(1)}
    scale = Q(-1, deg[p_min])
    out = {}
    for p in range(params.N + 1):
        if p == p_min or deg[p] == 0:
            continue
        out[BasisSymbol("k", sym.j, sym.r, p)] = scale * deg[p]
    return out


class ToroidalElement:
    """Sparse exact linear combination of basis symbols, center-canonicalized."""

    __slots__ = ("params", "terms")

    def __init__(self, params: Params, terms=None):
        self.params = params
        canon = {}
        for sym, cf in (terms or {}).items():
            cf = Q(cf)
            if cf == 0:
                continue
            if sym.tag == "k":
                for s2, c2 in canonicalize_center(params, sym).items():
                    canon[s2] = canon.get(s2, Q(0)) + cf * c2
            else:
                canon[sym] = canon.get(sym, Q(0)) + cf
        self.terms = {s: c for s, c in canon.items() if c != 0}

    @classmethod
    def from_symbol(cls, params, sym, coeff=Q(1)):
        return cls(params, {sym: coeff})

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, Q(0)) + c
        return ToroidalElement(self.params, out)

    def __sub__(self, other):
        return self + other.scale(Q(-1))

    def scale(self, s):
        return ToroidalElement(self.params, {k: Q(s) * v for k, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, ToroidalElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _check(self, other):
        if other.params is not self.params and other.params != self.params:
            raise ConfigError("elements built over different parameters")

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for sym, cf in sorted(self.terms.items()):
            bits.append(f"{cf}*{sym.tag}[{sym.idx}]@({sym.j},{sym.r})")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# brackets
# ---------------------------------------------------------------------------

def _add(out, sym, cf):
    if cf:
        out[sym] = out.get(sym, Q(0)) + cf


def _exact_form_terms(params, degree_src: BasisSymbol, target_j, target_r, coeff):
    """coeff * sum_p rho_p t^target k_p where rho is degree_src's degree."""
    out = {}
    for p in range(params.N + 1):
        e = degree_src.exponent(p)
        if e:
            _add(out, BasisSymbol("k", target_j, target_r, p), coeff * e)
    return out


def _bracket_basis(params: Params, a: BasisSymbol, b: BasisSymbol) -> dict:
    """Raw bracket of two basis symbols (not yet canonicalized)."""
    ta, tb = a.tag, b.tag
    j, r = a.j + b.j, tuple(x + y for x, y in zip(a.r, b.r))

    if ta == "k" and tb == "k":
        return {}
    if (ta, tb) in (("g", "k"), ("k", "g")):
        return {}

    if ta == "g" and tb == "g":
        out = {}
        for kidx, cf in params.g_dot.struct[a.idx][b.idx]:
            _add(out, BasisSymbol("g", j, r, kidx), cf)
        pairing = params.g_dot.pair(a.idx, b.idx)
        if pairing:
            for sym, cf in _exact_form_terms(params, a, j, r, pairing).items():
                _add(out, sym, cf)
        return out

    if ta == "d" and tb == "g":
        # [t^rho d_a, t^sigma g] = sigma_a t^(rho+sigma) g
        return {BasisSymbol("g", j, r, b.idx): Q(b.exponent(a.idx))}
    if ta == "g" and tb == "d":
        return _negate(_bracket_basis(params, b, a))

    if ta == "d" and tb == "k":
        # [t^rho d_a, t^sigma k_b] = sigma_a t^+ k_b + delta_ab sum_p rho_p t^+ k_p
        out = {}
        _add(out, BasisSymbol("k", j, r, b.idx), Q(b.exponent(a.idx)))
        if a.idx == b.idx:
            for sym, cf in _exact_form_terms(params, a, j, r, Q(1)).items():
                _add(out, sym, cf)
        return out
    if ta == "k" and tb == "d":
        return _negate(_bracket_basis(params, b, a))

    if ta == "d" and tb == "d":
        out = {}
        _add(out, BasisSymbol("d", j, r, b.idx), Q(b.exponent(a.idx)))
        _add(out, BasisSymbol("d", j, r, a.idx), Q(-a.exponent(b.idx)))
        tau = params.mu * b.exponent(a.idx) * a.exponent(b.idx) \
            + params.nu * a.exponent(a.idx) * b.exponent(b.idx)
        if tau:
            for sym, cf in _exact_form_terms(params, b, j, r, tau).items():
                _add(out, sym, cf)
        return out

    if ta == "dt" and tb == "dt":
        return _bracket_tilde(params, a, b)

    if ta == "dt" and tb in ("g", "k"):
        if a.idx >= 1:
            return _bracket_basis(params, a._replace(tag="d"), b)
        return _negate(_bracket_basis(params, a._replace(tag="d"), b))
    if ta in ("g", "k") and tb == "dt":
        return _negate(_bracket_basis(params, b, a))

    if ta == "dt" and tb == "d":
        out = {}
        for sym, cf in _tilde_to_plain(params, a).items():
            for s2, c2 in _bracket_basis(params, sym, b).items():
                _add(out, s2, cf * c2)
        return out
    if ta == "d" and tb == "dt":
        return _negate(_bracket_basis(params, b, a))

    raise ConfigError(f"unhandled bracket tags {ta!r}, {tb!r}")


def _negate(d):
    return {s: -c for s, c in d.items()}


def _bracket_tilde(params: Params, a: BasisSymbol, b: BasisSymbol) -> dict:
    """Brackets of the shifted vector fields, in their own coordinates."""
    i, jj = a.j, b.j
    rr, ss = a.r, b.r
    j, r = i + jj, tuple(x + y for x, y in zip(rr, ss))
    mu, nu = params.mu, params.nu
    out = {}

    def add_k(coef_k0, coef_s, coef_r=Q(0)):
        _add(out, BasisSymbol("k", j, r, 0), coef_k0)
        for p in range(1, params.N + 1):
            _add(out, BasisSymbol("k", j, r, p),
                 coef_s * ss[p - 1] + coef_r * rr[p - 1])

    if a.idx >= 1 and b.idx >= 1:
        sa, rb = Q(ss[a.idx - 1]), Q(rr[b.idx - 1])
        ra, sb = Q(rr[a.idx - 1]), Q(ss[b.idx - 1])
        _add(out, BasisSymbol("dt", j, r, b.idx), sa)
        _add(out, BasisSymbol("dt", j, r, a.idx), -rb)
        w = mu * sa * rb + nu * ra * sb
        if w:
            add_k(w * jj, w)
        return out

    if a.idx == 0 and b.idx >= 1:
        rb, sb = Q(rr[b.idx - 1]), Q(ss[b.idx - 1])
        _add(out, BasisSymbol("dt", j, r, b.idx), Q(-jj))
        _add(out, BasisSymbol("dt", j, r, 0), -rb)
        add_k(-(mu * rb * (jj - 1) + nu * sb * (i + 1)) * jj, Q(0))
        coef = -(mu * rb * jj + nu * sb * (i + 1))
        for p in range(1, params.N + 1):
            _add(out, BasisSymbol("k", j, r, p), coef * ss[p - 1])
        return out

    if a.idx >= 1 and b.idx == 0:
        return _negate(_bracket_tilde(params, b, a))

    # both are the shifted d_0
    _add(out, BasisSymbol("dt", j, r, 0), Q(i - jj))
    w = (mu + nu) * (jj + 1) * (i + 1)
    add_k(w * jj, w)
    return out


# ---------------------------------------------------------------------------
# tilde basis change
# ---------------------------------------------------------------------------

def _tilde_to_plain(params: Params, sym: BasisSymbol) -> dict:
    """Expand one 'dt' symbol over 'd' and 'k' symbols at the same degree."""
    if sym.tag != "dt":
        return {sym: Q(1)}
    if sym.idx >= 1:
        out = {BasisSymbol("d", sym.j, sym.r, sym.idx): Q(1)}
        rp = sym.r[sym.idx - 1]
        if rp:
            out[BasisSymbol("k", sym.j, sym.r, 0)] = -params.nu * rp
        return out
    out = {BasisSymbol("d", sym.j, sym.r, 0): Q(-1)}
    cf = (params.mu + params.nu) * (Q(sym.j) + Q(1, 2))
    if cf:
        out[BasisSymbol("k", sym.j, sym.r, 0)] = cf
    return out


def _plain_to_tilde(params: Params, sym: BasisSymbol) -> dict:
    """Expand one 'd' symbol over 'dt' and 'k' symbols at the same degree."""
    if sym.tag != "d":
        return {sym: Q(1)}
    if sym.idx >= 1:
        out = {BasisSymbol("dt", sym.j, sym.r, sym.idx): Q(1)}
        rp = sym.r[sym.idx - 1]
        if rp:
            out[BasisSymbol("k", sym.j, sym.r, 0)] = params.nu * rp
        return out
    out = {BasisSymbol("dt", sym.j, sym.r, 0): Q(-1)}
    cf = (params.mu + params.nu) * (Q(sym.j) + Q(1, 2))
    if cf:
        out[BasisSymbol("k", sym.j, sym.r, 0)] = cf
    return out


def to_tilde(el: ToroidalElement) -> ToroidalElement:
    out = {}
    for sym, cf in el.terms.items():
        for s2, c2 in _plain_to_tilde(el.params, sym).items():
            out[s2] = out.get(s2, Q(0)) + cf * c2
    return ToroidalElement(el.params, out)


def from_tilde(el: ToroidalElement) -> ToroidalElement:
    out = {}
    for sym, cf in el.terms.items():
        for s2, c2 in _tilde_to_plain(el.params, sym).items():
            out[s2] = out.get(s2, Q(0)) + cf * c2
    return ToroidalElement(el.params, out)


# ---------------------------------------------------------------------------
# public bracket and checks
# ---------------------------------------------------------------------------

def bracket(a: ToroidalElement, b: ToroidalElement) -> ToroidalElement:
    a._check(b)
    out = {}
    for sa, ca in a.terms.items():
        for sb, cb in b.terms.items():
            cf = ca * cb
            for sym, c in _bracket_basis(a.params, sa, sb).items():
                out[sym] = out.get(sym, Q(0)) + cf * c
    return ToroidalElement(a.params, out)


def bracket_symbols(params: Params, a: BasisSymbol, b: BasisSymbol) -> ToroidalElement:
    return ToroidalElement(params, _bracket_basis(params, a, b))


def jacobi_check(params: Params, a: BasisSymbol, b: BasisSymbol, c: BasisSymbol) -> bool:
    ea = ToroidalElement.from_symbol(params, a)
    eb = ToroidalElement.from_symbol(params, b)
    ec = ToroidalElement.from_symbol(params, c)
    total = bracket(ea, bracket(eb, ec)) \
        + bracket(eb, bracket(ec, ea)) \
        + bracket(ec, bracket(ea, eb))
    return total.is_zero()


def random_symbol(params: Params, rng: random.Random, jmax=3, rmax=2,
                  tags=("g", "k", "d")) -> BasisSymbol:
    tag = rng.choice(tags)
    j = rng.randint(-jmax, jmax)
    r = tuple(rng.randint(-rmax, rmax) for _ in range(params.N))
    if tag == "g":
        idx = rng.randrange(params.g_dot.dim)
    else:
        idx = rng.randrange(params.N + 1)
    return BasisSymbol(tag, j, r, idx)
