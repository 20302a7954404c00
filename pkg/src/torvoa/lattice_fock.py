"""Rank-2N hyperbolic lattice, its oscillator algebra, coset Fock modules,
exponential vertex operators, and exact normally ordered field modes.

Lattice vectors are tuples of 2N rationals: the first N coordinates are
along the isotropic generators u_1..u_N, the last N along v_1..v_N, with
(u_i|v_j) = delta_ij and (u|u) = (v|v) = 0.  A Fock vector is a dict
{(osc, lat): coefficient} where osc is a sorted tuple of (generator, mode)
pairs with negative modes, and lat is the lattice point of the coset
e^{(alpha+m)u + beta v}.

Fields are handled by z-exponent: the coefficient of z^e in a field F(z) is
written F[e]; for an oscillator field x(z) = sum x(j) z^(-j-1) the creation
part is e >= 0 and the annihilation part e < 0, and normal ordering of a
product splits the left factor accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional

Q = Fraction


def falling(a, k):
    out = 1
    for s in range(k):
        out *= (a - s)
    return out


def binom(a, k):
    if k < 0:
        return 0
    return Q(falling(a, k), factorial(k))


class HypLattice:
    """Hyperbolic lattice data: bilinear form and the sign two-cocycle."""

    def __init__(self, N: int):
        if N < 1:
            raise ValueError("N must be >= 1")
        self.N = N
        self._exp_cache = {}
        self._field_cache = {}

    def gen(self, g):
        """Coordinate vector of the g-th generator (0..N-1 are u, N..2N-1 are v)."""
        return tuple(Q(1) if i == g else Q(0) for i in range(2 * self.N))

    def form(self, x, y):
        N = self.N
        return sum(x[p] * y[N + p] + x[N + p] * y[p] for p in range(N))

    def epsilon(self, x, y):
        """Sign cocycle: epsilon(v_i, u_j) = (-1)^delta_ij on generators,
        extended bimultiplicatively.  Arguments need integer coordinates on
        the contributing directions."""
        N = self.N
        expo = Q(0)
        for p in range(N):
            expo += x[N + p] * y[p]
        if expo.denominator != 1:
            raise ValueError("sign cocycle undefined on non-integral overlap")
        return -1 if int(expo) % 2 else 1

    def zero(self):
        return tuple(Q(0) for _ in range(2 * self.N))


def coset_point(L: HypLattice, alpha, m=None, beta=None):
    """Lattice point (alpha + m) u + beta v as a coordinate tuple."""
    N = L.N
    m = (0,) * N if m is None else m
    beta = (0,) * N if beta is None else beta
    return tuple(Q(alpha[p]) + Q(m[p]) for p in range(N)) + tuple(Q(b) for b in beta)


def vacuum_vector(L: HypLattice, alpha=None, m=None, beta=None):
    alpha = (0,) * L.N if alpha is None else alpha
    return {((), coset_point(L, alpha, m, beta)): Q(1)}


def fock_depth(osc):
    return -sum(mode for _g, mode in osc)


def vector_fock_depth(vec):
    return max((fock_depth(osc) for (osc, _lat) in vec), default=0)


def _merge(out, key, cf):
    if cf:
        v = out.get(key, Q(0)) + cf
        if v:
            out[key] = v
        else:
            del out[key]


def _insert_osc(osc, g, mode):
    entry = (g, mode)
    lst = list(osc)
    lo = 0
    key = (-mode, g)
    while lo < len(lst) and (-lst[lo][1], lst[lo][0]) <= key:
        lo += 1
    lst.insert(lo, entry)
    return tuple(lst)


def heis_act_gen(L: HypLattice, g: int, n: int, vec):
    """Action of the mode n of the g-th oscillator generator."""
    N = L.N
    out = {}
    if n < 0:
        for (osc, lat), cf in vec.items():
            _merge(out, (_insert_osc(osc, g, n), lat), cf)
        return out
    if n == 0:
        for (osc, lat), cf in vec.items():
            reading = lat[N + g] if g < N else lat[g - N]
            _merge(out, (osc, lat), cf * reading)
        return out
    partner = g + N if g < N else g - N
    for (osc, lat), cf in vec.items():
        for pos, (g2, m2) in enumerate(osc):
            if g2 == partner and m2 == -n:
                _merge(out, (osc[:pos] + osc[pos + 1:], lat), cf * n)
    return out


def heis_act(L: HypLattice, x, n: int, vec):
    """Oscillator action for x either a generator index or a coordinate vector."""
    if isinstance(x, int):
        return heis_act_gen(L, x, n, vec)
    out = {}
    for g, comp in enumerate(x):
        if comp:
            for key, cf in heis_act_gen(L, g, n, vec).items():
                _merge(out, key, comp * cf)
    return out


# ---------------------------------------------------------------------------
# exponential vertex operators
# ---------------------------------------------------------------------------

def _creation_terms(ycomps, ec):
    """Expansion of exp(sum_{j>=1} y(-j) z^j / j) at order z^ec.

    Yields (coefficient, tuple of (g, -j) oscillator insertions).
    """
    parts = [(g, comp, j) for j in range(1, ec + 1) for (g, comp) in ycomps]

    def rec(i, left, coeff, acc):
        if left == 0:
            yield coeff, tuple(acc)
            return
        if i >= len(parts):
            return
        g, comp, j = parts[i]
        count = 0
        unit = comp / j
        c = coeff
        while True:
            yield from rec(i + 1, left - count * j, c, acc + [(g, -j)] * count)
            count += 1
            if count * j > left:
                break
            c = c * unit / count

    if ec == 0:
        yield Q(1), ()
    else:
        yield from rec(0, ec, Q(1), [])


def _exp_term(L: HypLattice, y, e, osc, lat):
    """Coefficient of z^e in Y(e^y, z) applied to one basis monomial."""
    key = (y, e, osc, lat)
    hit = L._exp_cache.get(key)
    if hit is not None:
        return hit
    xi = L.form(y, lat)
    k = Q(e) - xi
    out = {}
    if k.denominator == 1:
        sign = Q(L.epsilon(y, lat))
        new_lat = tuple(a + b for a, b in zip(lat, y))
        pairables = [(pos, L.form(y, L.gen(osc[pos][0]))) for pos in range(len(osc))]
        pairables = [(pos, pr) for pos, pr in pairables if pr != 0]
        ycomps = [(g, comp) for g, comp in enumerate(y) if comp]

        def rec(i, chosen, coeff, zshift):
            if i == len(pairables):
                ec = int(k) - zshift
                if ec < 0:
                    return
                core = tuple(entry for pos, entry in enumerate(osc) if pos not in chosen)
                for ccf, created in _creation_terms(ycomps, ec):
                    newosc = core
                    for g, mode in created:
                        newosc = _insert_osc(newosc, g, mode)
                    _merge(out, (newosc, new_lat), sign * coeff * ccf)
                return
            pos, pr = pairables[i]
            rec(i + 1, chosen, coeff, zshift)
            mode = osc[pos][1]
            rec(i + 1, chosen | {pos}, coeff * (-pr), zshift + mode)

        rec(0, frozenset(), Q(1), 0)
    L._exp_cache[key] = out
    return out


def exp_vertex_mode(L: HypLattice, y, exponent, vec):
    """Coefficient of z^exponent of Y(e^y, z) applied to a Fock vector.

    Terms whose z-support misses the requested exponent's coset contribute
    nothing.
    """
    y = tuple(Q(t) for t in y)
    out = {}
    for (osc, lat), cf in vec.items():
        for key, c in _exp_term(L, y, Q(exponent), osc, lat).items():
            _merge(out, key, cf * c)
    return out


# ---------------------------------------------------------------------------
# normally ordered products of fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldHandle:
    """A normally ordered product of derivative-decorated oscillator fields
    with one optional exponential factor (kept innermost).

    A ('vir',) factor stands for the lattice Virasoro field itself, so
    quadratic products like :omega(z) Y(e^y, z): are expressible too.
    """

    factors: tuple          # entries ('osc', g, nderiv) or ('vir',)
    exp: Optional[tuple]    # lattice vector of the exponential, or None


def osc_field(g, nderiv=0):
    return FieldHandle((("osc", g, nderiv),), None)


def exp_field(y):
    return FieldHandle((), tuple(Q(t) for t in y))


def hyp_virasoro_mode(L: HypLattice, m: int, vec):
    """Mode m (Virasoro indexing) of sum_p :u_p(z) v_p(z):."""
    out = {}
    dmax = vector_fock_depth(vec)
    for p in range(L.N):
        up, vp = p, L.N + p
        for k in range(m - dmax, 0):
            w = heis_act_gen(L, vp, m - k, vec)
            if w:
                for key, cf in heis_act_gen(L, up, k, w).items():
                    _merge(out, key, cf)
        for k in range(0, dmax + 1):
            w = heis_act_gen(L, up, k, vec)
            if w:
                for key, cf in heis_act_gen(L, vp, m - k, w).items():
                    _merge(out, key, cf)
    return out


def _factor_min_exponent(L, factors, expy, vec):
    """Lower bound for the z-support of the product on the vector."""
    wsum = 0
    for f in factors:
        wsum += 2 if f[0] == "vir" else 1 + f[2]
    best = None
    for (osc, lat), _cf in vec.items():
        xi = L.form(expy, lat) if expy is not None else Q(0)
        cand = xi - fock_depth(osc) - wsum
        if best is None or cand < best:
            best = cand
    return Q(0) if best is None else best


def _factor_ann_exponents(L, factor, vec):
    dmax = vector_fock_depth(vec)
    if factor[0] == "osc":
        nd = factor[2]
        return [-j - 1 - nd for j in range(-nd, dmax + 1)]
    return [-m - 2 for m in range(-1, dmax + 1)]


def _factor_at(L, factor, e, vec):
    if factor[0] == "osc":
        _, g, nd = factor
        j = -e - 1 - nd
        cf = binom(-j - 1, nd)
        if cf == 0:
            return {}
        res = heis_act_gen(L, g, j, vec)
        if cf == 1:
            return res
        return {k: cf * v for k, v in res.items()}
    return hyp_virasoro_mode(L, -e - 2, vec)


def _term_min_exponent(L, factors, expy, osc, lat):
    wsum = 0
    for f in factors:
        wsum += 2 if f[0] == "vir" else 1 + f[2]
    xi = L.form(expy, lat) if expy is not None else Q(0)
    return xi - fock_depth(osc) - wsum


def _term_apply(L, factors, expy, osc, lat, e):
    """One basis monomial through the suffix product at one exponent; cached
    on the lattice object, so sweeps share all repeated work."""
    key = (factors, expy, osc, lat, e)
    hit = L._field_cache.get(key)
    if hit is not None:
        return hit
    if not factors:
        if expy is None:
            out = {(osc, lat): Q(1)} if e == 0 else {}
        else:
            out = _exp_term(L, expy, e, osc, lat)
        L._field_cache[key] = out
        return out
    F, rest = factors[0], factors[1:]
    term = {(osc, lat): Q(1)}
    out = {}
    for e1 in _factor_ann_exponents(L, F, term):
        w = _factor_at(L, F, e1, term)
        for (osc2, lat2), cf in w.items():
            for key2, c2 in _term_apply(L, rest, expy, osc2, lat2, e - e1).items():
                _merge(out, key2, cf * c2)
    lo = _term_min_exponent(L, rest, expy, osc, lat)
    e1 = 0
    while Q(e) - e1 >= lo:
        inner = _term_apply(L, rest, expy, osc, lat, e - e1)
        if inner:
            for key2, cf in _factor_at(L, F, e1, inner).items():
                _merge(out, key2, cf)
        e1 += 1
    L._field_cache[key] = out
    return out


def _apply_factors(L, factors, expy, e, vec):
    out = {}
    ee = Q(e)
    for (osc, lat), cf in vec.items():
        for key, c in _term_apply(L, factors, expy, osc, lat, ee).items():
            _merge(out, key, cf * c)
    return out


def _apply_profile(L, factors, expy, vec, exps):
    return {e: _apply_factors(L, factors, expy, e, vec) for e in exps}


def field_mode(L: HypLattice, fh: FieldHandle, exponent, vec):
    """Coefficient of z^exponent of the normally ordered product."""
    return _apply_factors(L, fh.factors, fh.exp, Q(exponent), vec)


# ---------------------------------------------------------------------------
# states as fields, degrees, and axiom checks
# ---------------------------------------------------------------------------

def state_degree(vec):
    """Conformal degree of a homogeneous vector (oscillator depth plus half
    the lattice norm)."""
    degs = set()
    for (osc, lat), _cf in vec.items():
        degs.add(fock_depth(osc) + Q(1, 2) * (
            2 * sum(lat[p] * lat[len(lat) // 2 + p] for p in range(len(lat) // 2))))
    if len(degs) != 1:
        raise ValueError("vector is not homogeneous")
    return degs.pop()


def state_profile(L: HypLattice, state, modes, vec):
    """VOA modes of the field of ``state`` on ``vec`` for every index in
    ``modes`` at once; returns {mode: vector}."""
    exps = [Q(-n - 1) for n in modes]
    out = {n: {} for n in modes}
    for (osc, lat), cf in state.items():
        if any(x.denominator != 1 for x in lat):
            raise ValueError("state fields need integral lattice points")
        factors = tuple(("osc", g, -m - 1) for (g, m) in osc)
        prof = _apply_profile(L, factors, lat, vec, exps)
        for n in modes:
            for key, c in prof[Q(-n - 1)].items():
                _merge(out[n], key, cf * c)
    return out


def state_mode(L: HypLattice, state, n, vec):
    """VOA mode: coefficient of z^(-n-1) of the field of ``state`` applied
    to ``vec``.  The state must have integral lattice points."""
    return state_profile(L, state, [n], vec)[n]


def translate(L: HypLattice, vec):
    """The translation operator D = mode -1 of the lattice Virasoro field."""
    return hyp_virasoro_mode(L, -1, vec)


def _vec_sub(a, b):
    out = dict(a)
    for k, v in b.items():
        _merge(out, k, -v)
    return out


def voa_axiom_check(L: HypLattice, a, b, c, window=3, borcherds_window=2):
    """Exact check of the commutator formula, the mode identity of iterated
    products, and skew-symmetry, on the triple (a, b, c).

    Returns a list of failure records; empty means all identities hold.
    All mode applications are cached, so the sweeps stay table driven.
    """
    failures = []
    da = int(state_degree(a))
    db = int(state_degree(b))
    dc = int(state_degree(c))
    kmax = da + db + 1

    a_on_c, b_on_c, products = {}, {}, {}
    b_after_a, a_after_b, prod_on_c = {}, {}, {}

    def ac(i):
        if i not in a_on_c:
            a_on_c[i] = state_mode(L, a, i, c)
        return a_on_c[i]

    def bc(i):
        if i not in b_on_c:
            b_on_c[i] = state_mode(L, b, i, c)
        return b_on_c[i]

    def prod(q):
        if q not in products:
            products[q] = state_mode(L, a, q, b)
        return products[q]

    def ba(l, i):
        if (l, i) not in b_after_a:
            b_after_a[(l, i)] = state_mode(L, b, l, ac(i)) if ac(i) else {}
        return b_after_a[(l, i)]

    def ab(l, i):
        if (l, i) not in a_after_b:
            a_after_b[(l, i)] = state_mode(L, a, l, bc(i)) if bc(i) else {}
        return a_after_b[(l, i)]

    def pc(q, l):
        if (q, l) not in prod_on_c:
            prod_on_c[(q, l)] = state_mode(L, prod(q), l, c) if prod(q) else {}
        return prod_on_c[(q, l)]

    for m in range(-window, window + 1):
        for n in range(-window, window + 1):
            lhs = _vec_sub(ab(m, n), ba(n, m))
            rhs = {}
            for k in range(0, kmax + 1):
                cf = binom(m, k)
                if cf:
                    for key, v in pc(k, m + n - k).items():
                        _merge(rhs, key, cf * v)
            if _vec_sub(lhs, rhs):
                failures.append(("commutator", m, n))

    w = borcherds_window
    for k in range(-w, w + 1):
        for m in range(-w, w + 1):
            for n in range(-w, w + 1):
                lhs = {}
                for j in range(0, kmax + 1 - min(k, 0)):
                    if k + j > kmax:
                        break
                    cf = binom(m, j)
                    if cf:
                        for key, v in pc(k + j, m + n - j).items():
                            _merge(lhs, key, cf * v)
                rhs = {}
                for j in range(0, da + dc - m + 2):
                    cf = binom(k, j)
                    if cf:
                        sgn = Q(-1) if (k + j + 1) % 2 else Q(1)
                        for key, v in ba(n + k - j, m + j).items():
                            _merge(rhs, key, sgn * cf * v)
                for j in range(0, db + dc - n + 2):
                    cf = binom(k, j)
                    if cf:
                        sgn = Q(-1) if j % 2 else Q(1)
                        for key, v in ab(m + k - j, n + j).items():
                            _merge(rhs, key, sgn * cf * v)
                if _vec_sub(lhs, rhs):
                    failures.append(("borcherds", k, m, n))

    ba_states = {}
    for n in range(-window, window + 1):
        lhs = prod(n)
        rhs = {}
        for j in range(0, da + db - n + 2):
            if n + j not in ba_states:
                ba_states[n + j] = state_mode(L, b, n + j, a)
            base = ba_states[n + j]
            if not base:
                continue
            for _ in range(j):
                base = translate(L, base)
            sgn = Q(-1) if (n + j + 1) % 2 else Q(1)
            cf = sgn / factorial(j)
            for key, v in base.items():
                _merge(rhs, key, cf * v)
        if _vec_sub(lhs, rhs):
            failures.append(("skew", n))
    return failures
