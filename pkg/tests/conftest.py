from fractions import Fraction as Q

import pytest

from torvoa import (Params, RealizationModule, build_gl_module, build_module,
                    simple_algebra)


@pytest.fixture(scope="session")
def sl2():
    return simple_algebra("A1")


@pytest.fixture(scope="session")
def params_n1(sl2):
    return Params(N=1, mu=Q(1, 3), nu=Q(1, 5), c=Q(2), g_dot=sl2)


@pytest.fixture(scope="session")
def params_n2(sl2):
    return Params(N=2, mu=Q(1, 3), nu=Q(1, 5), c=Q(2), g_dot=sl2)


@pytest.fixture(scope="session")
def module_n1(params_n1):
    return RealizationModule(params_n1)


@pytest.fixture(scope="session")
def module_n2(params_n2):
    return RealizationModule(params_n2)


@pytest.fixture(scope="session")
def module_n2_natural(params_n2, sl2):
    V = build_module(sl2, "natural")
    W = build_gl_module(2, "natural")
    return RealizationModule(params_n2, alpha=(Q(1, 2), 0), V=V, W=W, d=0)
