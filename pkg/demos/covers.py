"""
Why is node 4 not separable?  Heuristic and exact covers of its paths.
"""

from bnt.toy import toy_matrix
from bnt.transversal import Hypergraph, decr_sep, exact_mhs, ht, mhs_to_mns_instance, mns, simple_sep

P = toy_matrix()
u = 4

print("paths of u:", P.paths(u))
print("simple sweep:", simple_sep(P, u).cover)
print("decreasing, largest first:", decr_sep(P, u, "largest_first").cover)
print("decreasing, smallest first:", decr_sep(P, u, "smallest_first").cover)
print("minimum cover size:", mns(P, u))

# The same solver answers plain hitting-set questions.
H = Hypergraph.of("abcde", ["ab", "bc", "cd", "de"])
print("sweep a..e:", ht(H, "abcde"), " exact:", exact_mhs(H))

# ...and any hitting-set instance can be posed as a separability question.
Q, target = mhs_to_mns_instance(H)
print(Q.bits.astype(int))
print("mns on the encoded instance:", mns(Q, target))
