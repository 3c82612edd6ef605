"""
Seven nodes, four measurement paths.

Which nodes can we tell apart from end-to-end outcomes alone, and how many
simultaneous failures can we localize?
"""

from bnt import oracle
from bnt.pathmatrix import indicator
from bnt.toy import TOY_MEASUREMENT, toy_matrix

P = toy_matrix()
print(P.bits.astype(int))

for k in (1, 2):
    r = oracle.report(P, k)
    print(f"k={k}  SEP={r.sep_nodes}  ID={r.id_nodes}  DIS={r.dis_nodes}")

th = oracle.mu_sigma_delta(P)
print("mu, sigma, delta =", th.mu, th.sigma, th.delta)

# Paths 0, 2 and 3 failed.  With at most one failure there is a single culprit.
print("k=1:", oracle.localize(P, TOY_MEASUREMENT, k=1))
# Allowing two failures, several explanations fit the same outcome.
print("k=2:", oracle.localize(P, TOY_MEASUREMENT, k=2))

# mu = 1 means every single failure is recovered exactly
for u in range(P.n):
    assert oracle.localize(P, indicator(P, [u]), th.mu) == [(u,)]
