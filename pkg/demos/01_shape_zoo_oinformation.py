"""The shape zoo: which clouds carry intrinsic higher-order information?

Eight synthetic 3-D point clouds, each scored by its O-information before
and after PCA rotation.  The sign of O separates redundancy-dominated
structure (positive: lines, knots) from synergy-dominated structure
(negative: hollow sphere, hollow torus).  What survives PCA is "intrinsic":
the sphere's synergy and the knots' redundancy persist, while the line's
and tilted plane's apparent structure evaporates once the cloud sits in its
natural axes.

Defaults run at n=4000 so the whole script takes well under a minute; bump
N_POINTS to 10000 to match the published table exactly.
"""

import numpy as np

from topoinfo import build_shape_cloud, info_summary, pca_rotate
from topoinfo.experiments import SHAPE_NAMES

N_POINTS = 4000
K = 4
SEED = 7

print(f"{'shape':<16}{'O raw':>9}{'O pca':>9}{'pc1 var':>9}   reading")
for name in SHAPE_NAMES:
    cloud = build_shape_cloud(name, N_POINTS, SEED)
    o_raw = info_summary(cloud, K, jitter_seed=SEED).o
    pca = pca_rotate(cloud)
    o_pca = info_summary(pca.rotated, K, jitter_seed=SEED).o
    if o_pca > 0.5:
        reading = "intrinsically redundant"
    elif o_pca < -0.5:
        reading = "intrinsically synergistic"
    elif abs(o_raw) > 0.5:
        reading = "contextual only (PCA removes it)"
    else:
        reading = "no higher-order structure"
    print(
        f"{name:<16}{o_raw:>+9.3f}{o_pca:>+9.3f}"
        f"{pca.explained_variance_ratio[0]:>9.3f}   {reading}"
    )

print()
print("The hollow torus keeps most of its negative O-information after PCA;")
print("the solid torus loses it: the cavity, not the tube, carries the synergy.")
