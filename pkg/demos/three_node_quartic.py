"""A rational quartic with a Galois-conjugate pair of nodes.

The special fibre is (x^2 + z^2)^2 = y^2 (x^2 + 2 z^2).  Its singular points
are the closed point {(+-i : 0 : 1)} with residue field Q(i) and the node at
(0 : 1 : 0), whose tangents are defined over Q(sqrt(-2)).  The local terms
have to be transferred down to Q before they can be compared.
"""

from gwc import conductor_check, curve_formula_check, load_scenario
from gwc.scenario import builtin_path

s = load_scenario(builtin_path("three_node_quartic"))
rep = curve_formula_check(s)
for pt in rep.points:
    print(f"{pt.name}: [k(p):Q]={pt.field_degree} mu={pt.mu} r={pt.r} delta={pt.delta}")
    print("   local term  ", pt.local_term.to_text())
    print("   branch term ", pt.branch_term.to_text())
print("genus of the generic fibre:", rep.g_generic, " of the normalization:", rep.g_normalization)
print("variant (i)  equal:", rep.equal_i, " ", rep.lhs_i.to_text(), "vs", rep.rhs_i.to_text())
print("variant (ii) equal:", rep.equal_ii, " ", rep.lhs_ii.to_text(), "vs", rep.rhs_ii.to_text())
print("two variants differ by chi(normalization) - chi(C):", rep.two_variant_consistent)

c = conductor_check(s)
print("rank check (classical Milnor formula):", c.rank_lhs, c.rank_rhs, c.milnor_rank, c.rank_check)
