"""First and second difference profiles of a few potentials.

The commutator [q, iA] is small far out when q varies slowly between
neighbouring spheres; [[q, iA], iA] is bounded when its second differences
decay like r**-2.  The verdicts are finite-depth heuristics only.
"""
import numpy as np

from mourre_tree import TreeGeometry
from mourre_tree.potentials import (
    alternating, first_difference_profile, first_difference_verdict, log_radial, power_radial,
    root_defect, second_difference_profile, second_difference_verdict,
)

g = TreeGeometry(10)
for q in (power_radial(g, 1, 1), log_radial(g, 1), alternating(g, 1, 0.5), root_defect(g)):
    s = first_difference_profile(g, q)
    t = second_difference_profile(g, q)
    r = np.arange(g.depth + 1)
    print(f"{q.family} {q.params}")
    print("  r s(r)    ", np.round(r[:-1] * s, 4))
    print("  r^2 t(r)  ", np.round(r ** 2 * t, 4))
    print(f"  verdicts: first {first_difference_verdict(s)}, second {second_difference_verdict(t)}")
