"""The twisted Virasoro-current algebra on g + gl_N and its bounded modules.

Mode symbols are ('L', n), ('f', i, n) with i indexing the g + gl_N basis,
and central symbols ('C', name) with name in {'c_g', 'c_sl', 'c_hei',
'c_vh', 'c_vir'}.  Brackets:

    [L(n), L(m)] = (n - m) L(n+m) + (n^3 - n)/12 delta_{n,-m} C_vir
    [L(n), f(m)] = -m f(n+m) - (n^2 + n) delta_{n,-m} psi(f)
    [f(n), g(m)] = [f, g](n+m) + n delta_{n,-m} phi(f, g)

Modules are induced from a finite top V (x) W on which L(0) acts by h_vir,
the identity current by h_hei, positive modes by zero, and the centers by a
fixed character.  The ``vacuum`` flavor additionally kills L(-1) on the top,
which realizes the enveloping-vertex-algebra quotient for the trivial top.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .finite_lie_data import FiniteModule, GLModule, ReductiveF, ValidationError
from .linalg import nullspace

Q = Fraction


@dataclass(frozen=True)
class CentralCharacter:
    c_g: Fraction
    c_sl: Fraction
    c_hei: Fraction
    c_vh: Fraction
    c_vir: Fraction

    @classmethod
    def from_params(cls, params):
        """The character carried by the standard bounded realization."""
        N, mu, nu, c = params.N, params.mu, params.nu, params.c
        return cls(
            c_g=c,
            c_sl=1 - mu * c,
            c_hei=N * (1 - mu * c) - N * N * nu * c,
            c_vh=N * (Q(1, 2) - nu * c),
            c_vir=12 * c * (mu + nu) - 2 * N,
        )

    def as_dict(self):
        return {"c_g": self.c_g, "c_sl": self.c_sl, "c_hei": self.c_hei,
                "c_vh": self.c_vh, "c_vir": self.c_vir}


class CriticalLevelError(ValueError):
    """Raised when a normalization denominator of the corrected Virasoro
    field vanishes; the message names the failing inequality."""


def mode_of(sym):
    return sym[1] if sym[0] == "L" else sym[2]


def _key(sym):
    # PBW order: ascending depth, ties L before currents, then basis index
    if sym[0] == "L":
        return (-sym[1], 0, 0)
    return (-sym[2], 1, sym[1])


def f_bracket(fd: ReductiveF, a, b) -> dict:
    """Bracket of two mode symbols as dict symbol -> coefficient.

    Central symbols appear as ('C', name).
    """
    if a[0] == "C" or b[0] == "C":
        return {}
    out = {}
    if a[0] == "L" and b[0] == "L":
        n, m = a[1], b[1]
        if n != m:
            out[("L", n + m)] = Q(n - m)
        if n == -m and n != 0:
            out[("C", "c_vir")] = Q(n ** 3 - n, 12)
        return {k: v for k, v in out.items() if v}
    if a[0] == "L" and b[0] == "f":
        n, i, m = a[1], b[1], b[2]
        if m:
            out[("f", i, n + m)] = Q(-m)
        if n == -m:
            ps = fd.psi(i)
            if ps and (n * n + n):
                out[("C", "c_vh")] = -Q(n * n + n) * ps
        return out
    if a[0] == "f" and b[0] == "L":
        return {k: -v for k, v in f_bracket(fd, b, a).items()}
    # current-current
    i, n = a[1], a[2]
    j, m = b[1], b[2]
    for k, cf in fd.bracket(i, j).items():
        out[("f", k, n + m)] = out.get(("f", k, n + m), Q(0)) + cf
    if n == -m and n != 0:
        for name, cf in fd.phi(i, j).items():
            out[("C", name)] = out.get(("C", name), Q(0)) + Q(n) * cf
    return {k: v for k, v in out.items() if v}


class FModule:
    """Induced bounded module for the twisted Virasoro-current algebra.

    Vectors are dicts {(mono, top): coefficient} with mono a tuple of
    negative-mode symbols in PBW order and top = (iv, iw).
    """

    def __init__(self, fd: ReductiveF, gamma: CentralCharacter,
                 V: FiniteModule, W: GLModule,
                 h_hei: Fraction, h_vir: Fraction, vacuum: bool = False):
        self.fd = fd
        self.gamma = gamma.as_dict()
        self.V = V
        self.W = W
        self.h_hei = Q(h_hei)
        self.h_vir = Q(h_vir)
        self.vacuum = vacuum
        if vacuum and not (V.dim == 1 and W.dim == 1
                           and self.h_hei == 0 and self.h_vir == 0):
            raise ValidationError(
                "vacuum flavor requires a one-dimensional top with "
                "h_hei = h_vir = 0")
        self.top_dim = V.dim * W.dim
        self.tops = [(iv, iw) for iv in range(V.dim) for iw in range(W.dim)]
        self._zero_action = self._build_zero_modes()
        self._cache = {}

    # -- static structure ---------------------------------------------------

    def _build_zero_modes(self):
        """Per basis current, the top action as sparse {(src_top, dst_top): cf}."""
        N = self.fd.N
        table = []
        for sym in self.fd.basis:
            entries = {}
            if sym[0] == "g":
                mat = self.V.mats[sym[1]]
                for iv in range(self.V.dim):
                    for iv2 in range(self.V.dim):
                        cf = mat[iv2][iv]
                        if cf:
                            for iw in range(self.W.dim):
                                entries[((iv, iw), (iv2, iw))] = cf
            else:
                _, a, b = sym
                mat = self.W.traceless_part_action(a, b)
                for iw in range(self.W.dim):
                    for iw2 in range(self.W.dim):
                        cf = mat[iw2][iw]
                        if cf:
                            for iv in range(self.V.dim):
                                entries[((iv, iw), (iv, iw2))] = cf
                if a == b and self.h_hei:
                    hh = self.h_hei / N
                    for t in self.tops:
                        entries[(t, t)] = entries.get((t, t), Q(0)) + hh
            table.append(entries)
        return table

    def top_vector(self, iv=0, iw=0):
        return {((), (iv, iw)): Q(1)}

    # -- straightening ------------------------------------------------------

    def _top_apply(self, sym, top):
        if sym[0] == "L":
            return {((), top): self.h_vir} if self.h_vir else {}
        out = {}
        for (src, dst), cf in self._zero_action[sym[1]].items():
            if src == top:
                out[((), dst)] = out.get(((), dst), Q(0)) + cf
        return out

    def apply_sym(self, sym, mono, top):
        """sym * (mono acting on top); returns a cached dict, do not mutate."""
        if sym[0] == "C":
            return {(mono, top): self.gamma[sym[1]]}
        key = (sym, mono, top)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        n = mode_of(sym)
        reducible = self.vacuum and sym == ("L", -1)
        if not mono:
            if n > 0:
                out = {}
            elif n == 0:
                out = self._top_apply(sym, top)
            elif reducible:
                out = {}
            else:
                out = {((sym,), top): Q(1)}
        elif n < 0 and not reducible and _key(sym) <= _key(mono[0]):
            out = {((sym,) + mono, top): Q(1)}
        else:
            head, rest = mono[0], mono[1:]
            out = {}
            inner = self.apply_sym(sym, rest, top)
            for (m2, t2), c2 in inner.items():
                for k3, c3 in self.apply_sym(head, m2, t2).items():
                    out[k3] = out.get(k3, Q(0)) + c2 * c3
            for bsym, bc in f_bracket(self.fd, sym, head).items():
                for k3, c3 in self.apply_sym(bsym, rest, top).items():
                    out[k3] = out.get(k3, Q(0)) + bc * c3
            out = {k: v for k, v in out.items() if v}
        self._cache[key] = out
        return out

    def act(self, sym, vec):
        """Apply one mode or central symbol to a vector."""
        out = {}
        for (mono, top), cf in vec.items():
            for k, c in self.apply_sym(sym, mono, top).items():
                out[k] = out.get(k, Q(0)) + cf * c
        return {k: v for k, v in out.items() if v}

    def act_current(self, combo, n, vec):
        """Apply sum_i combo[i] x_i(n)."""
        out = {}
        for i, cf in combo.items():
            for k, c in self.act(("f", i, n), vec).items():
                out[k] = out.get(k, Q(0)) + cf * c
        return {k: v for k, v in out.items() if v}

    # -- bases ----------------------------------------------------------------

    def negative_symbols(self, max_depth):
        """Negative-mode generators of depth <= max_depth, PBW sorted."""
        syms = []
        for dd in range(1, max_depth + 1):
            if not (self.vacuum and dd == 1):
                syms.append(("L", -dd))
            for i in range(self.fd.dim):
                syms.append(("f", i, -dd))
        syms.sort(key=_key)
        return syms

    def monomials_at(self, depth):
        """All PBW monomials of the given total depth."""
        if depth == 0:
            return [()]
        syms = self.negative_symbols(depth)
        out = []

        def rec(start, left, acc):
            if left == 0:
                out.append(tuple(acc))
                return
            for pos in range(start, len(syms)):
                d = -mode_of(syms[pos])
                if d > left:
                    continue
                acc.append(syms[pos])
                rec(pos, left - d, acc)
                acc.pop()

        rec(0, depth, [])
        return out

    def basis_at(self, depth):
        return [(mono, top) for mono in self.monomials_at(depth) for top in self.tops]


def vector_depth(vec):
    if not vec:
        return 0
    return max(sum(-mode_of(s) for s in mono) for (mono, _top) in vec)


def depths_of(vec):
    return {sum(-mode_of(s) for s in mono) for (mono, _t) in vec}


def raising_symbols(fd: ReductiveF):
    """Degree-1 and degree-2 raising generators."""
    syms = [("L", 1), ("L", 2)]
    for i in range(fd.dim):
        syms.append(("f", i, 1))
        syms.append(("f", i, 2))
    return syms


def singular_vectors(module: FModule, depth: int):
    """Exact basis of the space of depth-homogeneous vectors annihilated by
    every degree-1 and degree-2 raising generator.  Empty for depth = 0."""
    if depth <= 0:
        return []
    basis = module.basis_at(depth)
    if not basis:
        return []
    index = {key: i for i, key in enumerate(basis)}
    targets = {}
    for d2 in (depth - 1, depth - 2):
        if d2 >= 0:
            targets[d2] = {key: i for i, key in enumerate(module.basis_at(d2))}
    rows = {}
    for col, (mono, top) in enumerate(basis):
        for rsym in raising_symbols(module.fd):
            img = module.apply_sym(rsym, mono, top)
            d2 = depth - mode_of(rsym)
            tidx = targets.get(d2)
            if tidx is None:
                continue
            for key, cf in img.items():
                row_id = (rsym, tidx[key])
                rows.setdefault(row_id, {})[col] = cf
    null = nullspace(list(rows.values()), len(basis))
    out = []
    for vec in null:
        out.append({basis[i]: cf for i, cf in enumerate(vec) if cf != 0})
    return out


# ---------------------------------------------------------------------------
# corrected Virasoro field
# ---------------------------------------------------------------------------

def check_generic(fd: ReductiveF, gamma: CentralCharacter):
    if gamma.c_g == -fd.g.h_vee:
        raise CriticalLevelError(
            f"critical level: c_g = -h_vee = {gamma.c_g} for {fd.g.name}")
    if fd.N >= 2 and gamma.c_sl == -fd.N:
        raise CriticalLevelError(f"critical level: c_sl = -N = {gamma.c_sl}")
    if gamma.c_hei == 0:
        raise CriticalLevelError("critical level: c_hei = 0")


def sugawara_constants(fd: ReductiveF, gamma: CentralCharacter,
                       omega_v: Fraction, omega_w: Fraction,
                       h_hei: Fraction, h_vir: Fraction):
    """Central charge and top conformal weight of the corrected Virasoro
    field, after splitting off the current sectors."""
    check_generic(fd, gamma)
    N = fd.N
    c_prime = gamma.c_vir \
        - gamma.c_g * fd.g.dim / (gamma.c_g + fd.g.h_vee) \
        - 1 + 12 * gamma.c_vh ** 2 / gamma.c_hei
    h_prime = h_vir \
        - omega_v / (2 * (gamma.c_g + fd.g.h_vee)) \
        - (h_hei ** 2 - 2 * gamma.c_vh * h_hei) / (2 * gamma.c_hei)
    if N >= 2:
        c_prime -= gamma.c_sl * (N * N - 1) / (gamma.c_sl + N)
        h_prime -= omega_w / (2 * (gamma.c_sl + N))
    return c_prime, h_prime


def _pair_mode(module: FModule, xcombo, ycombo, m, vec):
    """Mode m of the normally ordered product :x(z) y(z): applied to vec."""
    out = {}
    dmax = vector_depth(vec)
    for k in range(m - dmax, 0):
        w = module.act_current(ycombo, m - k, vec)
        if w:
            for key, cf in module.act_current(xcombo, k, w).items():
                out[key] = out.get(key, Q(0)) + cf
    for k in range(0, dmax + 1):
        w = module.act_current(xcombo, k, vec)
        if w:
            for key, cf in module.act_current(ycombo, m - k, w).items():
                out[key] = out.get(key, Q(0)) + cf
    return {k: v for k, v in out.items() if v}


def sugawara_mode(module: FModule, m: int, vec):
    """Mode m (Virasoro indexing) of the corrected Virasoro field."""
    gamma = CentralCharacter(**module.gamma)
    check_generic(module.fd, gamma)
    fd = module.fd
    out = dict(module.act(("L", m), vec))

    def accumulate(pairs, denom):
        scale = Q(-1) / denom
        for xc, yc, cf in pairs:
            for key, v in _pair_mode(module, xc, yc, m, vec).items():
                out[key] = out.get(key, Q(0)) + scale * cf * v

    accumulate(fd.quadratic_pairs("g"), 2 * (gamma.c_g + fd.g.h_vee))
    if fd.N >= 2:
        accumulate(fd.quadratic_pairs("sl"), 2 * (gamma.c_sl + fd.N))
    accumulate(fd.quadratic_pairs("hei"), 2 * gamma.c_hei)
    # derivative correction: -(c_vh/c_hei) dI(z) contributes
    # (c_vh/c_hei) (m+1) I(m) at Virasoro mode m
    cf = gamma.c_vh / gamma.c_hei * (m + 1)
    if cf:
        for key, v in module.act_current(fd.identity_combo(), m, vec).items():
            out[key] = out.get(key, Q(0)) + cf * v
    return {k: v for k, v in out.items() if v}


def vec_add(a, b, scale=Q(1)):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Q(0)) + scale * v
    return {k: v for k, v in out.items() if v}


def vec_eq(a, b):
    return vec_add(a, b, Q(-1)) == {}
