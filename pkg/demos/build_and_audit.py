"""Build Gamma^(n) for a few small n and run the structural audits on each."""

import sys

from gridlocus import (build_gamma, clique_distance_audit, context_for_n, detect_locally_grid,
                       intersection_numbers, structural_census)

for n in [int(a) for a in sys.argv[1:]] or [3, 5, 7]:
    g = build_gamma(context_for_n(n))
    m, _ = detect_locally_grid(g)
    census = structural_census(g)
    arr = intersection_numbers(g)
    print(f"n={n}: {g.n_vertices} vertices, degree {g.degree(0)}, locally {m}x{m}")
    print(f"  intersection array {arr.b} ; {arr.c}")
    print(f"  {census.n_cliques} maximal cliques, {census.n_triangles} triangles, census ok={census.ok}")
    print(f"  clique distance audit ok={clique_distance_audit(g).ok}")
