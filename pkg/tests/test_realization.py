import random
from fractions import Fraction as Q

import pytest

from torvoa import ConfigError, RealizationModule, random_symbol
from torvoa.algebra_core import bracket_symbols, d_sym, dt_sym, g_sym, k_sym
from torvoa.toroidal_realization import (RELATION_IDS, _index_box,
                                         default_identity_pairs,
                                         field_commutator_window_check,
                                         field_symbol, relation_check,
                                         rhs_mode_element, top_action_check,
                                         unit_r, vec_add, vec_eq, vec_scale)


def _osc_monomials(N, depth):
    """All oscillator monomials of the given depth over 2N generators."""
    from torvoa.lattice_fock import _insert_osc
    if depth == 0:
        return [()]
    out = set()

    def rec(osc, left, min_part, min_gen):
        if left == 0:
            out.add(osc)
            return
        for part in range(min_part, left + 1):
            for g in range(2 * N):
                if part == min_part and g < min_gen:
                    continue
                rec(_insert_osc(osc, g, -part), left - part, part, g)

    rec((), depth, 1, 0)
    return sorted(out)


class TestGeneratorAction:
    def test_lattice_shift_on_top(self, module_n1, params_n1):
        top = module_n1.top_vector()
        got = module_n1.g_act_symbol(k_sym(params_n1, 0, (1,), 0), top)
        assert vec_eq(got, vec_scale(module_n1.top_vector((1,)), params_n1.c))

    def test_positive_modes_annihilate_top(self, module_n1, params_n1):
        top = module_n1.top_vector()
        assert module_n1.g_act_symbol(k_sym(params_n1, 1, (1,), 1), top) == {}
        assert module_n1.g_act_symbol(g_sym(params_n1, 1, (0,), 0), top) == {}

    def test_top_scalar_of_time_field(self, module_n1, params_n1):
        top = module_n1.top_vector()
        got = module_n1.g_act_symbol(d_sym(params_n1, 0, (0,), 0), top)
        assert vec_eq(got, vec_scale(top, module_n1.d))

    def test_center_acts_by_character(self, module_n2, params_n2):
        rng = random.Random(5)
        for _ in range(5):
            v = module_n2.random_vector(rng, 2)
            got = module_n2.g_act_symbol(k_sym(params_n2, 0, (0, 0), 0), v)
            assert vec_eq(got, vec_scale(v, params_n2.c))
            for p in (1, 2):
                assert module_n2.g_act_symbol(
                    k_sym(params_n2, 0, (0, 0), p), v) == {}

    def test_translation_mode_on_vacuum_companion(self, module_n1, params_n1):
        # D(top) = 0 at alpha = 0 after the translation-null reduction, and
        # picks up alpha-dependent oscillator terms at alpha != 0
        vac = module_n1.vacuum_companion()
        got = vac.g_act_symbol(dt_sym(params_n1, -1, (0,), 0), vac.top_vector())
        assert got == {}
        shifted = RealizationModule(params_n1, alpha=(Q(2, 5),), vacuum=True)
        got = shifted.g_act_symbol(dt_sym(params_n1, -1, (0,), 0),
                                   shifted.top_vector())
        want = vec_scale(shifted.osc_vector([(0, -1)]), Q(2, 5))
        assert vec_eq(got, want)

    def test_translation_mode_keeps_induced_tail(self, module_n1, params_n1):
        # without the reduction the same mode carries the depth-one tail of
        # the induced factor
        got = module_n1.g_act_symbol(dt_sym(params_n1, -1, (0,), 0),
                                     module_n1.top_vector())
        fv = module_n1.fmod.act(("L", -1), module_n1.fmod.top_vector())
        assert vec_eq(got, module_n1.q_vector(None, fv))

    def test_canonical_center_consistency(self, module_n1, params_n1):
        # the field of an eliminated one-form symbol equals the field of its
        # canonical rewriting (derivative property of the shift operators)
        rng = random.Random(31)
        from torvoa import ToroidalElement
        for j in (-2, -1, 1, 2):
            sym = k_sym(params_n1, j, (1,), 0)
            elem = ToroidalElement.from_symbol(params_n1, sym)
            for _ in range(3):
                v = module_n1.random_vector(rng, 2)
                assert vec_eq(module_n1.g_act_symbol(sym, v),
                              module_n1.g_act(elem, v))


class TestWeights:
    def test_top_weights(self, module_n1):
        got = module_n1.weight_of(module_n1.top_vector((3,)))
        assert got == (module_n1.d, Q(3))

    def test_oscillator_lowers_time_weight(self, module_n1):
        got = module_n1.weight_of(module_n1.osc_vector([(0, -1)]))
        assert got == (module_n1.d - 1, Q(0))

    def test_deep_mode_lowers_by_mode(self, module_n1):
        fv = module_n1.fmod.act(("f", module_n1.fd.e_index(1, 1), -2),
                                module_n1.fmod.top_vector())
        got = module_n1.weight_of(module_n1.q_vector(None, fv))
        assert got == (module_n1.d - 2, Q(0))

    def test_alpha_enters_space_weights(self, module_n2_natural):
        got = module_n2_natural.weight_of(module_n2_natural.top_vector((0, 1)))
        assert got[1] == Q(1, 2) and got[2] == Q(1)

    def test_boundedness(self, module_n1):
        # eigenvalues of the time grading are bounded by d, with equality
        # exactly on the top component
        rng = random.Random(3)
        for _ in range(10):
            v = module_n1.random_vector(rng, 3)
            ((osc, _lat), (mono, _t)), = v.keys()
            depth = sum(-m for _g, m in osc) \
                + sum(-s[-1] for s in mono)
            w = module_n1.weight_of(v)
            assert w[0] == module_n1.d - depth
            assert (w[0] == module_n1.d) == (depth == 0)

    def test_basis_weight_audit(self, module_n1):
        # every depth <= 2 basis monomial is a weight vector whose labels
        # match the (depth, lattice weight) bookkeeping of the tables
        M = module_n1
        from torvoa.lattice_fock import _insert_osc
        from torvoa.characters import enumerate_weight_spaces
        for m in ((0,), (2,)):
            counted = {0: 0, 1: 0, 2: 0}
            for total in range(3):
                for df in range(total + 1):
                    oscs = _osc_monomials(1, df)
                    fmonos = M.fmod.monomials_at(total - df)
                    for osc in oscs:
                        for mono in fmonos:
                            vec = {((osc, M.lattice_point(m)),
                                    (mono, (0, 0))): Q(1)}
                            w = M.weight_of(vec)
                            assert w == (M.d - total, Q(m[0]))
                            counted[total] += 1
            table = enumerate_weight_spaces(M, 2)
            for n in range(3):
                assert counted[n] == table.dim(n, m)

    def test_non_weight_vector_rejected(self, module_n1):
        v = vec_add(module_n1.top_vector(), module_n1.osc_vector([(0, -1)]))
        with pytest.raises(ConfigError):
            module_n1.weight_of(v)


class TestCommutators:
    def test_trivial_pair(self, module_n2, params_n2):
        top = module_n2.top_vector()
        assert module_n2.verify_commutator(
            d_sym(params_n2, 0, (0, 0), 1), d_sym(params_n2, 0, (0, 0), 2), top)

    def test_cocycle_pair_on_top(self, module_n1, params_n1):
        assert module_n1.verify_commutator(
            d_sym(params_n1, 1, (1,), 1), d_sym(params_n1, -1, (-1,), 1),
            module_n1.top_vector())

    @pytest.mark.parametrize("fixture", ["module_n1", "module_n2_natural"])
    def test_seeded_sweep(self, fixture, request):
        module = request.getfixturevalue(fixture)
        params = module.params
        rng = random.Random(20240608)
        for _ in range(40):
            a = random_symbol(params, rng, jmax=2, rmax=1,
                              tags=("g", "k", "d", "dt"))
            b = random_symbol(params, rng, jmax=2, rmax=1,
                              tags=("g", "k", "d", "dt"))
            v = module.random_vector(rng, max_depth=2)
            assert module.verify_commutator(a, b, v)

    def test_higher_rank_coefficients(self):
        # rank-two coefficient algebra with a natural top and negative nu
        from torvoa import Params, RealizationModule, build_module, simple_algebra
        sl3 = simple_algebra("A2")
        params = Params(N=1, mu=Q(2, 7), nu=Q(-1, 4), c=Q(3, 2), g_dot=sl3)
        module = RealizationModule(params, V=build_module(sl3, "natural"),
                                   h=Q(1, 2), d=Q(0))
        rng = random.Random(5150)
        for _ in range(25):
            a = random_symbol(params, rng, jmax=2, rmax=1,
                              tags=("g", "k", "d", "dt"))
            b = random_symbol(params, rng, jmax=2, rmax=1,
                              tags=("g", "k", "d", "dt"))
            v = module.random_vector(rng, max_depth=2)
            assert module.verify_commutator(a, b, v)


class TestDisplayedIdentities:
    @pytest.mark.parametrize("fixture", ["params_n1", "params_n2"])
    def test_delta_expansions_match_brackets(self, fixture, request):
        params = request.getfixturevalue(fixture)
        box = _index_box(params.N, 1)
        rng = random.Random(6)
        samples = [(box[rng.randrange(len(box))], box[rng.randrange(len(box))])
                   for _ in range(10)]
        for name, akind, bkind in default_identity_pairs(params):
            for r, m in samples:
                for i in range(-3, 4):
                    for jj in range(-3, 4):
                        lhs = bracket_symbols(
                            params, field_symbol(params, akind, i, r),
                            field_symbol(params, bkind, jj, m))
                        assert lhs == rhs_mode_element(
                            params, akind, r, bkind, m, i, jj), (name, r, m, i, jj)

    def test_on_module_window(self, module_n1):
        checked, failures = field_commutator_window_check(
            module_n1, window=2, rbound=1,
            vectors=module_n1.sample_vectors(1)[:2])
        assert checked > 0 and failures == []

    def test_center_identities_include_eliminated_modes(self, module_n1, params_n1):
        checked, failures = field_commutator_window_check(
            module_n1, window=2, names=["k-k", "g-k"],
            vectors=[module_n1.top_vector()])
        assert failures == []


class TestTopAction:
    def test_standard_top(self, module_n1):
        checked, failures = top_action_check(module_n1, window=2)
        assert failures == []

    def test_tensor_top(self, module_n2_natural):
        checked, failures = top_action_check(module_n2_natural, window=1)
        assert failures == []

    def test_matrix_unit_shift_explicit(self, module_n2_natural, params_n2):
        # (t^{e1} d_2) on q^0 (x) v (x) w picks up alpha_2 shift and E_12 w
        M = module_n2_natural
        got = M.g_act_symbol(d_sym(params_n2, 0, (1, 0), 2), M.top_vector())
        want = vec_scale(M.top_vector((1, 0), 0, 0), M.alpha[1])
        mat = M.W.gl_action(1, 2)
        for iw2 in range(M.W.dim):
            if mat[iw2][0]:
                want = vec_add(want, M.top_vector((1, 0), 0, iw2), mat[iw2][0])
        assert vec_eq(got, want)


class TestRelations:
    @pytest.mark.parametrize("rid", RELATION_IDS)
    def test_relations_n1(self, module_n1, rid):
        checked, failures = relation_check(module_n1, rid, window=1)
        assert checked > 0 and failures == []

    @pytest.mark.parametrize("rid", ["glcurrent-ope", "vir-lowering", "vir-depth2"])
    def test_relations_n2(self, module_n2, rid):
        checked, failures = relation_check(module_n2, rid, window=1)
        assert checked > 0 and failures == []

    def test_ope_coefficients_reference(self, module_n2, params_n2):
        # level-one products: (1 - mu c) = 1/3 and nu c = 2/5 at the
        # reference parameters
        M = module_n2
        c = params_n2.c
        assert (1 - params_n2.mu * c) == Q(1, 3)
        assert params_n2.nu * c == Q(2, 5)
        state = M.gl_current_state(2, 1)
        combo = ("cur", ((M.fd.e_index(1, 2), Q(1)),))
        got = M._apply_ordered((combo,), -2, state)
        assert vec_eq(got, vec_scale(M.top_vector(), Q(1, 3)))
        state = M.gl_current_state(2, 2)
        combo = ("cur", ((M.fd.e_index(1, 1), Q(1)),))
        got = M._apply_ordered((combo,), -2, state)
        assert vec_eq(got, vec_scale(M.top_vector(), Q(-2, 5)))

    def test_unknown_relation_id(self, module_n1):
        with pytest.raises(ConfigError):
            relation_check(module_n1, "nonsense")

    def test_requires_standard_top(self, module_n2_natural):
        with pytest.raises(ConfigError):
            relation_check(module_n2_natural, "vir-depth2")


class TestVirasoroStructure:
    @pytest.mark.parametrize("fixture", ["module_n1", "module_n2"])
    def test_rank(self, fixture, request):
        M = request.getfixturevalue(fixture)
        p = M.params
        zr = p.zero_r()
        rank = 12 * (p.mu + p.nu) * p.c
        for m in (zr, unit_r(p.N, 1)):
            v = M.top_vector(m)
            lhs = vec_add(
                M.g_act_symbol(dt_sym(p, 2, zr, 0),
                               M.g_act_symbol(dt_sym(p, -2, zr, 0), v)),
                M.g_act_symbol(dt_sym(p, -2, zr, 0),
                               M.g_act_symbol(dt_sym(p, 2, zr, 0), v)), Q(-1))
            lhs = vec_add(lhs, M.g_act_symbol(dt_sym(p, 0, zr, 0), v), Q(-4))
            assert vec_eq(lhs, vec_scale(v, rank / 2))

    def test_mode_additivity(self, module_n1):
        M = module_n1
        p = M.params
        zr = p.zero_r()
        rng = random.Random(13)
        ex = ("exp", M._exp_vec(zr))
        for _ in range(6):
            v = M.random_vector(rng, 2)
            for j in range(-2, 3):
                got = M.g_act_symbol(dt_sym(p, j, zr, 0), v)
                hyp = M._apply_ordered((("hypvir",), ex), -j - 2, v)
                fv = M._apply_ordered((("fvir",), ex), -j - 2, v)
                assert vec_eq(got, vec_add(hyp, fv))
