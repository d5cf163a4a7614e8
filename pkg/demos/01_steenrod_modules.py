"""
Steenrod algebra arithmetic and the rank-17 kernel module
=========================================================

Mod-2 Adem reduction, finite subalgebra ranks, and the quotient/kernel
computation that produces a 24-dimensional cyclic module, a rank-17
kernel with a one-dimensional cokernel, and the three-generator
annihilator ideal certifying the kernel as a cyclic module.
"""

# admissible form: products of Squares rewrite into the admissible basis
from thhforge import steenrod as st

print("Sq2 Sq2        =", st.element_str(st.adem_reduce((2, 2))))
print("Sq1 Sq7        =", st.element_str(st.adem_reduce((1, 7))))
lhs = st.steenrod_add(st.adem_reduce((4, 6)), st.adem_reduce((6, 4)))
print("Sq4Sq6 + Sq6Sq4 =", st.element_str(lhs))

# the finite subalgebras A_n are generated by Sq^1 ... Sq^{2^n}; their
# degreewise spans close up by multiplying lower-degree bases by the
# generators, and some basis vectors are genuine sums of admissibles
A1 = st.SubalgebraSpec.A(1)
A2 = st.SubalgebraSpec.A(2)
print("\nrank A_1 =", st.total_rank(A1))
print("rank A_2 =", st.total_rank(A2))
print("A_1 degreewise:", [len(st.steenrod_basis(A1, d)) for d in range(7)])
print("A_1 in degree 5:", [st.element_str(e) for e in st.steenrod_basis(A1, 5)])

# quotients by left ideals, with the induced generator actions
M = st.quotient_module(A2, [st.parse_element("Sq1"), st.parse_element("Sq2Sq3")])
N = st.quotient_module(A2, [st.parse_element("Sq1"), st.parse_element("Sq2")])
print("\nrank A_2/A_2{Sq1, Sq2Sq3} =", M.total_rank())
print("rank A_2/A_2{Sq1, Sq2}    =", N.total_rank())

# right multiplication by Sq4 is a module map; its kernel is the
# seventeen-dimensional module behind the real image-of-J homology
K, cokernel = st.module_map_kernel(st.parse_element("Sq4"), M, N)
print("\nkernel rank =", K.total_rank(), " cokernel rank =", cokernel)
print("kernel degreewise:", K.poincare())

# the kernel is cyclic on the class of Sq4 and its annihilator ideal is
# generated by Sq1, Sq7 and Sq4Sq6 + Sq6Sq4
ann = [st.parse_element(s) for s in ("Sq1", "Sq7", "Sq4Sq6+Sq6Sq4")]
print("cyclic with that annihilator:",
      st.cyclic_and_annihilator_check(K, st.parse_element("Sq4"), 4, ann))

# the dual side pairs admissible monomials against Milnor monomials
from thhforge.steenrod import MilnorMonomial

print("\n<Sq2, xi1^2>   =", st.pairing(st.parse_element("Sq2"), MilnorMonomial((2,), (), False)))
print("<Sq2Sq1, xi2>  =", st.pairing(st.parse_element("Sq2Sq1"), MilnorMonomial((0, 1), (), False)))
print("chi(xi2)       =",
      {str(m): c for m, c in st.conjugate(MilnorMonomial((0, 1)), 2).items()})
