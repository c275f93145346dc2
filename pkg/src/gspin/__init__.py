"""Exact-arithmetic toolkit for the discrete-parameter calculus of
GSp4 = dual of GSpin5 and its companion groups (Sp4 x GL1, GSpin4^alpha,
GL4 x GL1 twisted by theta).

Subpackages:

- exactlin:    rational matrices, kernels, commutants, quadratic spaces
- dualgroups:  explicit matrix realizations of the dual groups and theta
- characters:  symbolic Hecke-character algebra and square classes
- params:      formal global parameters, six-type classification, multiplicity
- endoscopy:   elliptic endoscopic data with exact centralizer verification
- weyl:        Levi bookkeeping and regular twisted Weyl elements
- restriction: packet restriction calculus GSp4 -> Sp4 and GSO4 -> SO4
- involutions: product-of-two-involutions factorization in GSO(V,q)
- cli:         scenario runner and selftest front end
"""

__version__ = "0.1.0"
