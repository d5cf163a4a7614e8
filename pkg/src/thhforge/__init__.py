"""thhforge: exact computer algebra for mod-p homology of ring spectra.

Subpackages cover sparse F_p linear algebra (fplin), the Steenrod
algebra and its dual (steenrod), presented graded-commutative algebras
(gca), Hochschild homology (hochschild), the Bokstedt spectral sequence
engine (bokstedt) and the v1-periodic Adams charts (adams).
"""

__version__ = "0.1.0"
