"""Walk through the isometric embedding system for surfaces and 3-manifolds.

For each (m, N) a random second fundamental form h is drawn, R is set to
its Gauss image, and the point of the embedding system is tested.
"""

from cartan_eds.embedding import (build, certify, dims_report, gauge_invariance_check,
                                  gauss_residual, recover_h, step6_table)
from cartan_eds.curvature import gauss_map, random_h_in_H

for m, N in [(2, 3), (3, 6)]:
    h = random_h_in_H(m, N, seed=3)
    sys = build(m, N, gauss_map(h), h)
    print("m = %d, N = %d: ambient dimension %d, %d generators after closure"
          % (m, N, sys.ambient_dim, len(sys.ideal.generators)))
    print("  Gauss residual zero:", gauss_residual(sys).is_zero())

    report, dims = certify(sys)
    print("  characters", report.c, "sum", report.sum_c, "verdict", report.verdict)
    print("  dim Z = %d, codimension in the Grassmannian = %d" % (dims.dim_Z,
                                                               dims.grassmannian_codim))

    print("  one-form ranks along the flag (eta, w_a, w_ij, d w_a, d w_ij):")
    for row in step6_table(sys):
        print("    p = %d  %s  total %d" % (row.p, row.counts, row.total))

    back = recover_h(sys)
    print("  Cartan's lemma returns h:", back == [
        [[h.component(a, i, j) for j in range(1, m + 1)] for i in range(1, m + 1)]
        for a in range(m + 1, N + 1)])
    print("  report unchanged under a random normal gauge:", bool(gauge_invariance_check(sys, 1)))
    print()

d = dims_report(4, 10)
print("bookkeeping at m = 4, N = 10:", d.to_dict())
