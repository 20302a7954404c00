"""Tour of the lattice Fock layer: oscillators, exponential vertex operators,
the lattice Virasoro field, and the exact axiom checks.

Run:  python demos/02_fock_fields.py
"""

import random
from fractions import Fraction as Q

from torvoa import (HypLattice, exp_vertex_mode, heis_act, hyp_virasoro_mode,
                    vacuum_vector, voa_axiom_check)
from torvoa.lattice_fock import _insert_osc


def show(label, value):
    print(f"  {label:<42} {value}")


def main():
    lat = HypLattice(1)
    alpha = (Q(2, 5),)
    point = vacuum_vector(lat, alpha)
    print("Rank-2 hyperbolic lattice, coset point e^{(2/5) u}")

    print("\nOscillators:")
    show("u_1(3) annihilates the point", heis_act(lat, 0, 3, point))
    show("v_1(0) reads the pairing 2/5", heis_act(lat, 1, 0, point))
    lowered = heis_act(lat, 1, -1, point)
    show("u_1(1) contracts v_1(-1)", heis_act(lat, 0, 1, lowered))

    print("\nExponential vertex operator along u_1:")
    for e in (0, 1, 2, -1):
        show(f"coefficient of z^{e}", exp_vertex_mode(lat, (1, 0), e, point))

    print("\nThe lattice Virasoro field grades by oscillator depth:")
    show("zero mode on the point", hyp_virasoro_mode(lat, 0, point))
    show("zero mode on u_1(-1) point", hyp_virasoro_mode(lat, 0, lowered and heis_act(lat, 0, -1, point)))

    print("\nExact axiom sweep (commutator formula, iterated products,")
    print("skew-symmetry) on seeded degree <= 2 triples:")
    rng = random.Random(4)

    def rand_state(maxdeg):
        depth = rng.randint(0, maxdeg)
        osc = ()
        left = depth
        while left:
            s = rng.randint(1, left)
            osc = _insert_osc(osc, rng.randrange(2), -s)
            left -= s
        return {(osc, (Q(rng.randint(-1, 1)), Q(0))): Q(1)}

    bad = 0
    for _ in range(8):
        fails = voa_axiom_check(lat, rand_state(2), rand_state(2),
                                rand_state(2), window=2)
        bad += bool(fails)
    print(f"  failures: {bad}/8")


if __name__ == "__main__":
    main()
