"""Parameter regions, node families and the nodal-polynomial asymptote.

A sampling region K (disk or segment) carries two potential-theory numbers
that govern how fast rational surrogates built on it converge: its
logarithmic capacity capac(K), and its Green potential Phi_K(z), which
equals the capacity on K itself and grows with distance from K.  For a
good node family the nodal polynomial omega(z) = prod_j (z - mu_j) obeys

    |omega(z)|^(1/S)  ->  Phi_K(z)   as the node count S grows,

so Phi_K is the computable stand-in for "how much leverage S samples have
at the point z".  This script checks that convergence numerically for both
region types and all three node families.

Run with:  python3 demos/01_nodes_and_potential.py
"""

import numpy as np

from mrinterp import (
    Disk,
    Segment,
    capacity,
    fejer_nodes,
    green_potential,
    nodal_poly_eval,
    quasi_random_nodes,
)

# ---------------------------------------------------------------------------
# 1. Capacity of the two region types.
# ---------------------------------------------------------------------------

disk = Disk(0.0, 1.0)
segment = Segment(0.0, 4.0)

print("capacity unit disk      :", capacity(disk))
print("capacity segment [0, 4] :", capacity(segment), "(a segment of length L has capacity L/4)")
print()

# ---------------------------------------------------------------------------
# 2. The nodal-polynomial root converges to the Green potential.
#
# Evaluate |omega(z)|^(1/S) at a ring of probe points outside the unit disk
# and watch the relative deviation from Phi_K shrink as S grows.
# ---------------------------------------------------------------------------

probes = np.array([1.3 * np.exp(0.4j), 2.0 * np.exp(2.1j), 3.5 * np.exp(4.9j)])
phi = green_potential(disk, probes)

print("unit disk, boundary nodes (roots of unity):")
print(f"  {'S':>5}  " + "  ".join(f"dev at |z|={abs(z):.1f}" for z in probes))
for S in (10, 25, 50, 100, 200, 400):
    samples = fejer_nodes(disk, S)
    root = np.abs(nodal_poly_eval(samples, probes)) ** (1.0 / S)
    dev = np.abs(root - phi) / phi
    print(f"  {S:>5}  " + "  ".join(f"{d:13.2e}" for d in dev))
print()

# For boundary nodes on the disk the convergence is fast because omega has
# the closed form z^S - 1 (centered disk of radius 1), so the deviation is
# O(1/(S*|z|^S)).  Quasi-random interior nodes converge too, just slower.

print("unit disk, quasi-random interior nodes:")
for S in (50, 200, 800):
    samples = quasi_random_nodes(disk, S)
    root = np.abs(nodal_poly_eval(samples, probes)) ** (1.0 / S)
    dev = np.abs(root - phi) / phi
    print(f"  {S:>5}  " + "  ".join(f"{d:13.2e}" for d in dev))
print()

# ---------------------------------------------------------------------------
# 3. Same story on a segment with Chebyshev nodes.
# ---------------------------------------------------------------------------

seg_probes = np.array([5.0, 2.0 + 1.5j, -1.0 - 0.5j])
phi_seg = green_potential(segment, seg_probes)

print("segment [0, 4], Chebyshev nodes:")
print(f"  {'S':>5}  " + "  ".join(f"dev at z={z:<9}" for z in seg_probes))
for S in (10, 40, 160):
    samples = fejer_nodes(segment, S)
    root = np.abs(nodal_poly_eval(samples, seg_probes)) ** (1.0 / S)
    dev = np.abs(root - phi_seg) / phi_seg
    print(f"  {S:>5}  " + "  ".join(f"{d:16.2e}" for d in dev))
print()

# ---------------------------------------------------------------------------
# 4. Optional picture: Phi_K level lines and a node family.
# ---------------------------------------------------------------------------

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed, skipping the figure")
else:
    xs = np.linspace(-2.5, 2.5, 301)
    X, Y = np.meshgrid(xs, xs)
    Z = green_potential(disk, X + 1j * Y)

    fig, ax = plt.subplots(figsize=(5.2, 5.0))
    cs = ax.contour(X, Y, Z, levels=[1.0, 1.25, 1.5, 1.75, 2.0], colors="tab:blue")
    ax.clabel(cs, fmt="%.2f", fontsize=8)
    nodes = fejer_nodes(disk, 24).nodes
    ax.plot(nodes.real, nodes.imag, "k.", ms=5, label="24 boundary nodes")
    ax.set_aspect("equal")
    ax.set_title("Green potential of the unit disk")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    out = __file__.replace(".py", ".png")
    fig.savefig(out, dpi=120)
    print("figure written to", out)
