"""Presentations, validation, reduction mod p, p-maps, and the index.

Walks the smallest interesting inputs through the liealg layer: what a
structure-constant presentation looks like, how Jacobi violations are
reported, what reduction mod p does to the constants, and how the
restricted p-power map and the index come out.
"""

from fractions import Fraction

from kw1 import (
    LieAlgebraPresentation,
    base_change_mod_p,
    compute_p_map,
    get_example,
    index_generic,
    validate_presentation,
    with_p_map,
)

print("== a valid presentation: sl2 ==")
sl2 = get_example("sl2")
print("basis:", sl2.labels)
print("Jacobi violations:", validate_presentation(sl2))

print()
print("== an invalid presentation is reported triple by triple ==")
bad = LieAlgebraPresentation(
    "bad", ("x", "y", "z"), {(0, 1): {2: 1}, (0, 2): {0: 1}}
)
for i, j, l, defect in validate_presentation(bad):
    labels = bad.labels
    pretty = " + ".join(f"{c}*{labels[k]}" for k, c in sorted(defect.items()))
    print(f"  triple ({labels[i]}, {labels[j]}, {labels[l]}): defect {pretty}")

print()
print("== reduction mod p ==")
alg5 = base_change_mod_p(sl2, 5)
print("sl2 mod 5 constants: [h,e] ->", {k: int(v) for k, v in alg5.bracket(0, 1).items()},
      " [h,f] ->", {k: int(v) for k, v in alg5.bracket(0, 2).items()})

half = LieAlgebraPresentation("half", ("a", "b"), {(0, 1): {1: Fraction(1, 2)}})
try:
    base_change_mod_p(half, 2)
except Exception as exc:
    print("constant 1/2 at p = 2:", exc)

print()
print("== the p-power map, solved from ad(y) = (ad x)^p ==")
alg5 = with_p_map(alg5)
for i, lbl in enumerate(alg5.labels):
    row = alg5.restricted.vector(i)
    image = " + ".join(
        f"{int(c)}*{alg5.labels[k]}" for k, c in enumerate(row) if c
    )
    print(f"  {lbl}^[5] = {image or '0'}")

print()
print("== the index: dim g minus the generic rank of chi([x_i, x_j]) ==")
for name in ("abelian:4", "nonabelian2", "heisenberg", "sl2", "gl2", "remark:1:1"):
    pres = get_example(name)
    ind_q = index_generic(pres, trials=3, seed=0)
    ind_5 = index_generic(with_p_map(base_change_mod_p(pres, 5)), trials=3, seed=0)
    print(f"  {name:12s} dim {pres.n}  ind/QQ {ind_q}  ind/F5 {ind_5}")
