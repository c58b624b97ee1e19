#!/usr/bin/env python3
"""Discrete Bayesian-network engine on the rain/sprinkler/wet-grass example:
joint probabilities, enumeration vs variable elimination, Markov blankets."""

from cachelab.bayes import (
    CPT,
    BayesNet,
    Variable,
    infer_enumeration,
    infer_variable_elimination,
    joint_probability,
    markov_blanket,
)

# binary values use T=0, F=1 throughout
net = BayesNet(
    [Variable("Rain", 2), Variable("Sprinkler", 2), Variable("WetGrass", 2)],
    [
        CPT("Rain", [], [[0.2, 0.8]]),
        CPT("Sprinkler", ["Rain"], [[0.01, 0.99], [0.4, 0.6]]),
        CPT("WetGrass", ["Sprinkler", "Rain"],
            [[0.99, 0.01], [0.9, 0.1], [0.8, 0.2], [0.0, 1.0]]),
    ],
)

p = joint_probability(net, {"Rain": 0, "Sprinkler": 0, "WetGrass": 0})
print(f"P(Rain=T, Sprinkler=T, WetGrass=T) = 0.2 x 0.01 x 0.99 = {p:.5f}")

prior = infer_enumeration(net, "Rain", {})
print(f"P(Rain=T) = {prior[0]:.6f}")

for name, infer in (("enumeration", infer_enumeration),
                    ("variable elimination", infer_variable_elimination)):
    post = infer(net, "Rain", {"WetGrass": 0})
    print(f"P(Rain=T | WetGrass=T) by {name}: {post[0]:.6f}")

print()
print("chain W -> X -> Y -> Z: eliminating W, X, Z leaves the Y marginal")
chain = BayesNet(
    [Variable(n, 2) for n in "WXYZ"],
    [
        CPT("W", [], [[0.6, 0.4]]),
        CPT("X", ["W"], [[0.7, 0.3], [0.2, 0.8]]),
        CPT("Y", ["X"], [[0.9, 0.1], [0.35, 0.65]]),
        CPT("Z", ["Y"], [[0.5, 0.5], [0.1, 0.9]]),
    ],
)
print(f"P(Y) = {infer_variable_elimination(chain, 'Y', {})}")
print(f"blanket(X) in the chain: {sorted(markov_blanket(chain, 'X'))}")

print()
print("diamond A -> C, B -> D, C -> E, D -> E:")
diamond = BayesNet(
    [Variable(n, 2) for n in "ABCDE"],
    [
        CPT("A", [], [[0.3, 0.7]]),
        CPT("B", [], [[0.6, 0.4]]),
        CPT("C", ["A"], [[0.8, 0.2], [0.1, 0.9]]),
        CPT("D", ["B"], [[0.55, 0.45], [0.25, 0.75]]),
        CPT("E", ["C", "D"], [[0.9, 0.1], [0.6, 0.4], [0.3, 0.7], [0.05, 0.95]]),
    ],
)
blanket = sorted(markov_blanket(diamond, "C"))
print(f"blanket(C) = {blanket}")
with_b = infer_enumeration(diamond, "C", {"A": 0, "D": 1, "E": 0, "B": 0})
without = infer_enumeration(diamond, "C", {"A": 0, "D": 1, "E": 0})
print(f"P(C | blanket, B) = {with_b[0]:.9f}")
print(f"P(C | blanket)    = {without[0]:.9f}   (B is screened off)")
