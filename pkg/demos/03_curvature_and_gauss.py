"""Curvature tensors, the Gauss map and its rank.

Shows the dimension of the space of algebraic curvature tensors, the
submersion property of the Gauss map on H, and the numerical preimage used
when a curvature tensor is supplied without h.
"""

from cartan_eds.curvature import (RiemannTensor, SecondFundamentalForm, dim_Km, dim_Km_by_rank,
                                  gauss_jacobian_rank, gauss_map, preimage_newton, random_h_in_H)

for m in range(2, 6):
    print("m = %d: curvature tensors form a space of dimension %d (rank count %d)"
          % (m, dim_Km(m), dim_Km_by_rank(m)))
print()

h = random_h_in_H(3, 6, seed=8)
print("Jacobian rank of the Gauss map at a random h in H:", gauss_jacobian_rank(h))
print("Jacobian rank at h = 0:", gauss_jacobian_rank(SecondFundamentalForm.zeros(3, 6)))

R = RiemannTensor.from_entries(3, [(1, 2, 1, 2, 1), (1, 3, 1, 3, 2), (2, 3, 2, 3, -1)])
approx = preimage_newton(R, random_h_in_H(3, 6, 0))
print("Newton preimage residual for a diagonal R:", float((gauss_map(approx) - R).max_abs()))
