"""PBW straightening, symbols, symmetrization, and semi-invariants.

Shows the enveloping-algebra arithmetic on small examples: how products
straighten to normal form, why the bracket drops filtration degree, how
the symmetrization map sections the principal symbol, and what a
semi-invariant weight is.
"""

from kw1 import (
    SymPoly,
    base_change_mod_p,
    get_example,
    pbw_bracket,
    pbw_multiply,
    principal_symbol,
    semi_invariant_weight,
    symmetrize,
    ue_gen,
    ue_monomial,
    with_p_map,
)

heis = with_p_map(base_change_mod_p(get_example("heisenberg"), 5))
x, y, z = (ue_gen(heis, i) for i in range(3))

print("== straightening in the Heisenberg algebra mod 5 ==")
print("y * x        =", pbw_multiply(y, x).render())
print("x * y        =", pbw_multiply(x, y).render())
print("[x, y]       =", pbw_bracket(x, y).render())
print("(x y) * x    =", pbw_multiply(pbw_multiply(x, y), x).render())

g = with_p_map(base_change_mod_p(get_example("remark:1:1"), 7))
h, gx, gy = (ue_gen(g, i) for i in range(3))
m = ue_monomial(g, (0, 2, 1))
print()
print("== weights in the three-dimensional weighted family, p = 7 ==")
print("x^2 y        has [h, x^2 y] =", pbw_bracket(h, m).render(), " (weight 3)")
print("weight of x  =", [int(c) for c in semi_invariant_weight(gx)])
print("weight of y  =", [int(c) for c in semi_invariant_weight(gy)])
print("weight of h  =", semi_invariant_weight(h))

print()
print("== symmetrization sections the principal symbol ==")
f = SymPoly.monomial(heis.field, 3, (1, 1, 0))
sym = symmetrize(f, heis)
print("symmetrize(xy)          =", sym.render())
print("principal symbol of it  =", principal_symbol(sym).render(heis.labels))
print("bracket degree drop: deg[x y, y z] <= 3:",
      pbw_bracket(pbw_multiply(x, y), pbw_multiply(y, z)).degree)
