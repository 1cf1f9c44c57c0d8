"""Localised commutator positivity E [H, iA] E >= alpha E^2 on finite trees.

For q = 0 and alpha = 8 - max(a^2, b^2) the inequality holds with no
remainder.  For a decaying potential, halving alpha leaves a number of
negative directions that should not grow with the depth.
"""
from mourre_tree import SpectralWindow, TreeGeometry, mourre_experiment
from mourre_tree.potentials import power_radial, zero

win = SpectralWindow(-1.5, 1.5, 0.25)
for depth in (4, 6, 8):
    g = TreeGeometry(depth)
    free = mourre_experiment(g, zero(g), win, "sharp", diagnostics=False)
    raw = mourre_experiment(g, zero(g), win, "sharp", commutator_policy="raw", diagnostics=False)
    pert = mourre_experiment(g, power_radial(g, 1, 1), win, "margin:0.5")
    print(f"D={depth}: free min eig {free.min_eigenvalue:+.2e} (raw truncated commutator "
          f"{raw.min_eigenvalue:+.2f}); perturbed counts {pert.to_dict()['negative_counts']}, "
          f"||[[q,iA],iA]|| = {pert.double_comm_norm:.4f}")
