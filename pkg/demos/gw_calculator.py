"""Small tour of the GW(Q) calculator."""

from fractions import Fraction

from gwc import GWClass, hilbert_symbol, hyperbolic, invariant_profile, nf_new, specialize_sp_t, transfer_scharlau
from gwc.gw import INF, gw_equal, is_witt_zero

a = GWClass.from_entries([2, -1])
b = GWClass.from_entries([1, -2])
print(a.to_text(), "==", b.to_text(), ":", gw_equal(a, b))

# same rank, signature and discriminant; the Hasse invariant at 3 differs
c = GWClass.from_entries([1, 1, 1])
d = GWClass.from_entries([3, 3, 1])
print(invariant_profile(c).as_dict())
print(invariant_profile(d).as_dict())
print("equal:", gw_equal(c, d))

print("(2, 5)_5 =", hilbert_symbol(2, 5, 5), " (-1, -1)_inf =", hilbert_symbol(-1, -1, INF))

for mp in ([1, 0, 1], [-2, 0, 1], [1, 1, 1], [-2, 0, 0, 1]):
    K = nf_new(mp)
    t = transfer_scharlau(K, [1])
    print(f"Tr<1> for minimal polynomial {mp}:", t.to_text(), " Witt-zero:", is_witt_zero(t))

print("sp_t<t, 1+t, 2t^3(1+t)> =", specialize_sp_t(["t", "1+t", "2t^3(1+t)"]).to_text())
print("<1/3> = <3>:", gw_equal(GWClass.angle(Fraction(1, 3)), GWClass.angle(3)))
print("2h - (<5> + <-5>) = h:", gw_equal(hyperbolic(2) - GWClass.from_entries([5, -5]), hyperbolic(1)))
