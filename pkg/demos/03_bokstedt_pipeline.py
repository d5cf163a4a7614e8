"""
The Bokstedt spectral sequence pipeline
=======================================

From a catalog homology presentation to the homology of its topological
Hochschild homology: initial term, odd-primary differentials, collapse
certificates (generator filtrations or an obstruction scan over
simultaneous primitives), and multiplicative extensions resolved through
suspension-compatible Dyer-Lashof operations.
"""

from thhforge import bokstedt as bk

# connective complex K-theory at p = 2: the initial term collapses
# because every algebra generator sits in filtration <= 1, and the
# suspension squares assemble a polynomial generator
res = bk.thh_homology("ku", 2, 40)
print("ku abutment generators:")
for g in res.abutment.gens:
    if g.filtration:
        print(f"  {g.name:14s} degree {g.degree:2d}  {g.kind}")
print("relations:", res.relations)
print("collapse:", res.collapse)
print("series through 16:", res.series[:17])

# the coaction on the polynomial generator picks up one extra term
idx = res.abutment.index["s(xibar3)"]
print("\ncoaction of s(xibar3):")
for a, m in res.coaction.entries[idx]:
    for mm, c in a.items():
        print("  ", mm, "(x)", res.abutment.monomial_str(m))

# the complex image-of-J at p = 2 carries a divided power tower whose
# generators sit in high filtration, so collapse needs the obstruction
# scan: no candidate target bidegree contains a simultaneous coalgebra
# and comodule primitive
res = bk.thh_homology("ju", 2, 60)
print("\nju collapse:", res.collapse)
print("ju divided tower:",
      [g.name for g in res.abutment.gens if g.sigma_of == "b"])

# at odd primes the divided towers support differentials; the Adams
# summand at p = 3 passes through one page of honest homology
res = bk.thh_homology("ell", 3, 60)
print("\nell pages:", res.pages)
print("ell relations:", res.relations)

# the Nishida-relation instance checks that certify the image-of-J
# Dyer-Lashof entries
print("\nNishida certificates:")
for cert in bk.nishida_certificates():
    print("  ", "ok " if cert["ok"] else "FAIL", cert["name"])
