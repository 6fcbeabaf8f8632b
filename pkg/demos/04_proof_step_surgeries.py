#!/usr/bin/env python3
"""The two coupling surgeries, with their bounds executed live.

Shrink: a plan whose marginals are only close to the targets is multiplied
by the density 1/((1+|f-1|)(1+|g-1|)); the result fits under the targets and
Jensen's inequality guarantees how much mass survives.  Every call to
``shrink_to_partial`` re-verifies domination, sub-marginality and the mass
bound, so running this script *is* running those proof steps.

Complete: a partial plan is topped up with the product of its two deficit
marginals, scaled by one over the deficit mass.  The result is an exact full
coupling, and under a cost cap M the completed cost exceeds the partial cost
by at most deficit * M.
"""

from fractions import Fraction as F

import kantgap as kg


def main():
    mu = kg.uniform_marginal(3)
    c, _, nu = kg.example_diagonal(3)

    print("shrink: start from a plan whose marginals overshoot unevenly")
    f = [F(3, 2), F(1, 2), 1]
    g = [1, 1, 1]
    fm = sum(a * w for a, w in zip(f, mu.weights))
    g = [a * fm / sum(b * w for b, w in zip(g, nu.weights)) for a in g]
    fmu = kg.make_marginal(mu.space, [a * w for a, w in zip(f, mu.weights)])
    gnu = kg.make_marginal(nu.space, [a * w for a, w in zip(g, nu.weights)])
    pi = kg.product_coupling(fmu, gnu, 1 / fmu.mass)
    print("  densities f =", [str(x) for x in f], " g =", [str(x) for x in g])
    print("  plan mass:", pi.mass)
    sh = kg.shrink_to_partial(pi, mu, nu)
    print("  shrunk mass:", sh.mass, "(bounds verified inside the call)")
    rows, cols = kg.coupling_marginals(sh)
    print("  shrunk row sums:", [str(w) for w in rows.weights], " vs mu:", [str(w) for w in mu.weights])
    print()

    print("complete: drop a third of the mass, then fill the deficit")
    c2 = kg.truncate_at(c, 2)  # cap the forbidden cells at 2
    part = kg.optimal_coupling_at(c2, mu, nu, F(2, 3))
    print("  partial plan:", dict(part.items()), " cost:", kg.cost_of(c2, part))
    full = kg.complete_partial(part, mu, nu, cost=c2, bound=2)
    print("  completed plan:", dict(full.items()))
    print("  completed cost:", kg.cost_of(c2, full),
          " <= partial + eps*M =", kg.cost_of(c2, part) + F(1, 3) * 2)
    print("  full coupling of (mu, nu):", kg.is_full_coupling(full, mu, nu))
    print()

    print("the bridge P <= P_eps + eps*M on a bounded random instance:")
    c3, mu3, nu3 = kg.random_instance(4, 4, 0, "uniform", seed=2)
    bound = c3.max_finite()
    p = kg.primal_value(c3, mu3, nu3)
    prof = kg.solve_profile(c3, mu3, nu3)
    print("  P =", p, "  max cell =", bound)
    for eps in (F(1, 8), F(1, 4), F(1, 2)):
        pe = kg.evaluate_profile(prof, 1 - eps)
        print(f"  eps={eps}:  P_eps = {pe}   P_eps + eps*M = {pe + eps * bound}   (>= P: {pe + eps * bound >= p})")


if __name__ == "__main__":
    main()
