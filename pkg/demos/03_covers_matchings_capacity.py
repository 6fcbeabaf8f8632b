#!/usr/bin/env python3
"""Cell sets: band covers, sub-coupling mass, capacity, and the dichotomy.

For a set L of cells, four quantities interlock:

* m(L): cheapest cover of L by full rows A and full columns B, weighted by
  the marginals;
* the largest mass a partial coupling can place inside L (max-flow dual to
  the cover: the values agree exactly);
* gamma(L): the one-function capacity on a square grid, sandwiching m(L)
  between gamma and 4*gamma;
* the zero level: L carries no coupling mass at all precisely when it is
  covered by weightless rows and columns.
"""

from fractions import Fraction as F

import kantgap as kg


def show(L):
    return sorted(L.cells())


def main():
    mu = kg.uniform_marginal(3)
    c, _, _ = kg.example_diagonal(3)
    forbidden = kg.cellset_from_pairs(3, 3, [(0, 1), (0, 2), (1, 2)])

    print("L = the forbidden (upper) cells of the staircase:", show(forbidden))
    m_val, cert = kg.cover_value(forbidden, mu, mu)
    print("  m(L) =", m_val, " cover: rows", sorted(cert.rows), "cols", sorted(cert.cols))
    mass, witness = kg.max_mass_on(forbidden, mu, mu)
    print("  max sub-coupling mass on L =", mass, " (equals m(L): strong duality)")
    print("  witness plan:", dict(witness.items()))
    print("  exhaustive cover search agrees:", kg.brute_cover(forbidden, mu, mu))
    gamma, f = kg.capacity_value(forbidden, mu)
    print("  gamma(L) =", gamma, " via f =", [str(v) for v in f])
    print("  sandwich:", gamma, "<=", m_val, "<=", 4 * gamma)
    print()

    diag = kg.cellset_from_pairs(3, 3, [(i, i) for i in range(3)])
    print("L = the diagonal:", show(diag))
    print("  m(L) =", kg.cover_value(diag, mu, mu)[0])
    print("  gamma(L) =", kg.capacity_value(diag, mu)[0], "(the fractional f = 1/2 everywhere)")
    dec = kg.kellerer_decompose(diag, mu, mu)
    print("  some coupling charges L:", not dec.is_null)
    print()

    print("the dichotomy at mass zero needs weightless atoms:")
    lop = kg.make_marginal(kg.DiscreteSpace(3), [F(1, 2), F(1, 2), 0])
    L = kg.cellset_from_pairs(3, 3, [(2, 0), (2, 1)])
    print("  mu =", lop.weights, " L =", show(L), "(inside the weightless row)")
    print("  null for every full coupling:", kg.null_for_all_couplings(L, lop, mu))
    dec = kg.kellerer_decompose(L, lop, mu)
    print("  weightless cover: rows", sorted(dec.null_rows), "cols", sorted(dec.null_cols))
    print()

    print("randomized strong-duality spot check (exact equality each time):")
    import random

    rng = random.Random(1)
    for k in range(5):
        n = rng.randint(2, 4)
        _, mm, _ = kg.random_instance(n, n, 0, "random", seed=100 + k)
        pairs = [(i, j) for i in range(n) for j in range(n) if rng.random() < 0.45]
        L = kg.cellset_from_pairs(n, n, pairs)
        v, _ = kg.cover_value(L, mm, mm)
        w, _ = kg.max_mass_on(L, mm, mm)
        print(f"  n={n} |L|={len(pairs):>2}  m(L) = {str(v):>6} = max mass = {str(w):>6}")


if __name__ == "__main__":
    main()
