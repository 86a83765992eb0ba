"""Pure-numpy fallback for the compiled de Casteljau kernel.

Same contract as bernint._decasteljau.decasteljau_batch, but runs the
triangle layer by layer with vectorized array ops: each pass shortens the
coefficient table by one row while combining against the whole batch of
evaluation points at once.  Roughly 4x slower than the C version at
degree 512 but has no build-time requirements.
"""

import numpy as np


def decasteljau_batch(coeffs, xs):
    """Evaluate the Bernstein-form polynomial ``coeffs`` at every point of ``xs``."""
    c = np.asarray(coeffs, dtype=np.float64)
    x = np.asarray(xs, dtype=np.float64)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("need at least one coefficient")
    if x.size == 0:
        return np.empty(0, dtype=np.float64)
    # b has shape (rows remaining, number of points); one convex-combination
    # pass per degree.
    b = np.broadcast_to(c[:, None], (c.size, x.size)).copy()
    omx = 1.0 - x
    while b.shape[0] > 1:
        b = b[:-1] * omx + b[1:] * x
    return b[0]
