"""
Periodic normalization
======================

Every sample is standardized against the other samples at the same position
within the window, which removes the repeating shape and leaves deviations.
"""
# %%
import numpy as np

from wvcgraph import normalize_periodic
from wvcgraph.synthetic import default_config, gen_sine

x = gen_sine(default_config())
z = normalize_periodic(x, 150)
print("beta:", z.beta, "z mean/std:", round(float(z.z.mean()), 12), round(float(z.z.std()), 6))

# %%
# Per position, the normalized values have mean 0 and standard deviation 1.
block = z.z[: z.beta * 150].reshape(z.beta, 150)
print("worst per-position mean:", np.abs(block.mean(axis=0)).max())
print("worst per-position std error:", np.abs(block.std(axis=0) - 1).max())

# %%
# A deterministic repeating signal has zero variance at every position; that
# is reported instead of silently dividing by zero.
from wvcgraph import DegeneratePositionError

try:
    normalize_periodic(np.tile([0.0, 1.0, 2.0], 10), 3)
except DegeneratePositionError as exc:
    print("rejected:", exc)
