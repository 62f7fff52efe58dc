"""Walk through the cuspidal cubic by hand, one layer at a time.

Run with ``python3 demos/cusp_walkthrough.py``.
"""

from gwc import (
    GWClass,
    SingularPoint,
    curve_formula_check,
    decompose_partials,
    delta_t_closed_form,
    delta_t_strata_homog,
    hyperbolic,
    invariant_profile,
    jacobian_ring,
    load_scenario,
    parse_poly,
    scheja_storch_element,
    scheja_storch_form,
)
from gwc.fields import QQ
from gwc.gw import gw_equal
from gwc.scenario import builtin_path

f = parse_poly("x^3 - y^2")

# Jacobian ring: (3x^2, -2y) has standard monomials 1, x
r = jacobian_ring(f)
print("mu =", r.milnor_number, " basis =", r.basis)

A = decompose_partials(r)
print("decomposition:", [[str(a) for a in row] for row in A])
print("Scheja-Storch element in the basis:", [str(c) for c in scheja_storch_element(r, A)])

ss = scheja_storch_form(r)
print("Gram matrix:", [[str(c) for c in row] for row in ss.gram])
mu_q = ss.gw_class()
print("mu^q =", mu_q.to_text(), " hyperbolic?", gw_equal(mu_q, hyperbolic(1)))
print("invariants:", invariant_profile(mu_q).as_dict())

# the local term, two ways
p = SingularPoint(QQ, f, (2, 3), 6, [QQ], name="cusp")
closed = delta_t_closed_form(p)
strata = delta_t_strata_homog(f, 6, (2, 3))
print("Delta closed form:", closed.to_text())
print("Delta from strata:", strata.to_text())
print("agree:", gw_equal(closed, strata))

# the global identity for smooth cubics degenerating to the cuspidal cubic
rep = curve_formula_check(load_scenario(builtin_path("cuspidal_cubic")))
print("LHS(i)  =", rep.lhs_i.to_text(), "  RHS(i)  =", rep.rhs_i.to_text(), "  equal:", rep.equal_i)
print("LHS(ii) =", rep.lhs_ii.to_text(), "  RHS(ii) =", rep.rhs_ii.to_text(), "  equal:", rep.equal_ii)

# Witt-vanishing: the sum with the branch term subtracted is -h, which dies in W(Q);
# adding the branch term instead gives 2<1> - h, of signature 2
print("RHS(ii) Witt-zero:", rep.witt_zero_rhs)
print("sum with +branches:", rep.witt_sum_stated.to_text(), " Witt-zero:", rep.witt_zero_stated)
