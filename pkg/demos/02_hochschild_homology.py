"""
Hochschild homology of presented algebras
=========================================

The normalized complex, its homology with representatives, the shuffle
product and chain-level coproduct, and the two special shapes: the
square-zero extension (cyclic invariants/coinvariants) and the
degree-zero idempotent algebra.
"""

from thhforge.gca import AlgebraPresentation, GeneratorSpec
from thhforge import hochschild as hh

# a polynomial generator contributes an exterior suspension class
P = AlgebraPresentation(2, [GeneratorSpec("x", 2, "polynomial")], 24)
H = hh.hh_homology(P, 12)
print("HH of P(x), |x| = 2, as (homological, internal) -> dim:")
print({k: len(v) for k, v in sorted(H.items())})

# an exterior generator contributes a divided power tower: the class
# gamma_i is represented by the cycle 1 (x) x (x) ... (x) x
E = AlgebraPresentation(3, [GeneratorSpec("x", 1, "exterior")], 12)
cx = hh.HochschildComplex(E)
x = E.gen_monomial("x")
print("\nboundary of 1(x)x(x)x(x)x at p = 3:", cx.boundary_chain(((), x, x, x)))

# shuffle product: the suspension squares to 2 gamma_2, so it vanishes
# at p = 2 and not at p = 3
sx = {((), x): 1}
print("sigma x * sigma x at p = 3:", hh.shuffle_product(E, sx, sx))

# chain-level coproduct of gamma_2 = 1 (x) x (x) x
for (left, right), c in hh.chain_coproduct(E, {((), x, x): 1}).items():
    print("psi term:", left, "(x)", right, "coeff", c)

# square-zero extensions: homology from the signed cyclic action.
# For two odd generators the first homology has rank five.
sq = hh.hh_squarezero([("x", 1), ("y", 1)], qmax=3, p=2)
print("\nsquare-zero HH_1 total:", sum(v for (q, t), v in sq.items() if q == 1))

# the idempotent algebra F_2[u]/(u^2 = u) is homologically trivial above
# degree zero: the unit map is an isomorphism on homology
U = AlgebraPresentation(
    2, [GeneratorSpec("u", 0, "truncated", height=2, idempotent=True)], 0
)
print("idempotent algebra HH:", {k: len(v) for k, v in hh.hh_homology(U, 0, qmax=6).items()})

# the closed forms match the raw complex degreewise
cf, hopf = hh.closed_form_hh(P, 24)
raw = {k: len(v) for k, v in H.items()}
closed = hh.presentation_dims_internal(cf, 12)
print("\nclosed form agrees with the raw complex:",
      {k: v for k, v in closed.items() if v} == {k: v for k, v in raw.items() if v})
