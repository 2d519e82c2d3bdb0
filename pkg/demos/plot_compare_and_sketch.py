"""
Comparing graphs and sketching rows
===================================

Two random graphs on the same vertices are compared through their distance
tensors. Then one slice is summarised with MinHash and the estimated
Hamming distances are checked against the exact ones.
"""

import numpy as np

from hgm import build_reach_tensor
from hgm.compare import edge_flip_bound, tensor_distance
from hgm.generators import erdos_renyi, watts_strogatz
from hgm.hamming import pairwise_hamming
from hgm.sketch import estimate_hamming, sketch_rows

g = watts_strogatz(40, 4, 0.1, seed=1)
h = watts_strogatz(40, 4, 0.3, seed=1)
res = tensor_distance(g, h)
print(f"tensor distance {res.d_ten}, normalised {res.d_ten_normalized:.4f}")

# %%
# Flipping one edge moves the tensor by at most a ball-size bound.
observed, bound, degree_bound = edge_flip_bound(g, (0, 20))
print(f"one flip: observed {observed}, bound {bound}, degree-only bound {degree_bound}")

# %%
# Sketch the distance-2 slice of a sparse random graph.
t = build_reach_tensor(erdos_renyi(200, 0.03, seed=4), allow_disconnected=True)
sigs = sketch_rows(t.slice_words(2), 256, 7, t.n)
exact = pairwise_hamming(t, 2)
est = np.array([[estimate_hamming(sigs[i], sigs[j]) for j in range(20)] for i in range(20)])
err = np.abs(est - exact[:20, :20])
print(f"mean abs error {err.mean():.2f} on rows of mean weight {t.weights(2).mean():.1f}")
