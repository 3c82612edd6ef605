"""
How many paths are needed before unique localization is even possible?
"""

from bnt.counting import BoundParams, all_bounds, id1_upper, mu_lt_1, union_free_sum

# With m paths there are only 2**m - 1 distinct nonempty columns.
for m in range(1, 8):
    forced = "yes" if mu_lt_1(40, m) else "no"
    print(f"m={m}: at most {id1_upper(1000, m)} of 1000 nodes 1-identifiable; 40 nodes force a collision: {forced}")

# The union-free bound uses a constant nobody knows, so treat it as a sketch.
print(union_free_sum(3, 2))
print(all_bounds(40, 3, 2, BoundParams(C=1.0)))
