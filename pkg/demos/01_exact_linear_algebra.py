#!/usr/bin/env python3
"""A tour of the exact linear algebra substrate.

Everything in the toolkit runs on dense matrices over Fraction: kernels,
commutants, rational spectral splits, and quadratic-space reflections.
"""

from gspin.exactlin import (
    ExactMatrix,
    QuadraticSpace,
    commutant_dimension,
    kernel,
    rational_eigensplit,
)

print("== kernels ==")
m = ExactMatrix([[1, 1], [2, 2]])
print("matrix:", m)
print("kernel basis:", kernel(m), "(the line through (1, -1))")

print()
print("== commutants ==")
print("commutant of the 4x4 identity:", commutant_dimension([ExactMatrix.identity(4)]))
print(
    "commutant of diag(1,2,3,4):",
    commutant_dimension([ExactMatrix.diagonal([1, 2, 3, 4])]),
    "(the diagonal torus)",
)

print()
print("== rational spectral splits ==")
g = ExactMatrix([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
parts, irrational = rational_eigensplit(g)
for lam, basis in parts:
    print(f"eigenvalue {lam}: generalized eigenspace of dimension {len(basis)}")
print(f"irrational part: dimension {len(irrational)} (a rotation block, x^2 + 1)")

print()
print("== quadratic spaces ==")
space = QuadraticSpace(4, ExactMatrix.antidiagonal([1, 1, 1, 1]))
r = space.reflection((1, 0, 0, 1))
print("reflection in (1,0,0,1): det =", r.det(), ", squares to identity:", r * r == ExactMatrix.identity(4))
print("preserves the form:", r.transpose() * space.gram * r == space.gram)
