"""
Nodes land on each path independently with probability lambda.
Compare the closed-form separability product with simulation.
"""

import numpy as np

from bnt.random_model import chi, chi2, mle, montecarlo_sep, prob_bad, prob_sep, sample

lam = [0.5, 0.5, 0.5]
print("bad pair:", prob_bad(0, [1], 2, lam))
print("product formula:", prob_sep(0, 1, 3, 2, lam))

freq, se = montecarlo_sep(3, 2, lam, k=1, trials=100_000, seed=1)
print("simulated:", freq[0], "+/-", se[0])
# The simulation lands near 17/64 = 0.2656, not on the product.  The two
# pair events share the column of node 0, so they are not independent.

P, redraws = sample(10, 8, 0.3, seed=4)
print(P.bits.astype(int), "redraws:", redraws)
print("fitted lambdas:", np.round(mle(P), 3))
print("chi  :", chi(P, 1).total)
print("chi2 :", chi2(P, 1).total)
