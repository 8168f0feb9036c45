"""Seeded gamma variates for the demo mode.

The generator is pinned so that a seed always yields the same sample:

* uniforms: PCG64 raw 64-bit outputs, top 53 bits scaled by 2**-53;
* normals: Box-Muller, cosine branch only (two uniforms per normal);
* gamma(shape >= 1): Marsaglia & Tsang (2000) squeeze/rejection;
* gamma(shape < 1): ``G(shape + 1) * U ** (1 / shape)``.

Nothing here depends on numpy's ``Generator`` distribution code, which is
free to change between numpy releases.
"""
import math

import numpy as np

from .errors import DomainError
from .stats import make_sample

_TWO_PI = 2.0 * math.pi
_BATCH = 1024


class PinnedGamma:
    def __init__(self, seed):
        self._bits = np.random.PCG64(int(seed))
        self._buf = []

    def uniform(self):
        """Uniform on ``[0, 1)`` with 53 random bits."""
        if not self._buf:
            raw = self._bits.random_raw(_BATCH)
            self._buf = [float(r >> 11) * 2.0 ** -53 for r in raw.tolist()][::-1]
        return self._buf.pop()

    def normal(self):
        u1 = 1.0 - self.uniform()  # (0, 1]
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(_TWO_PI * u2)

    def _gamma_ge1(self, shape):
        d = shape - 1.0 / 3.0
        c = 1.0 / math.sqrt(9.0 * d)
        while True:
            x = self.normal()
            v = 1.0 + c * x
            if v <= 0.0:
                continue
            v = v * v * v
            u = 1.0 - self.uniform()
            x2 = x * x
            if u < 1.0 - 0.0331 * x2 * x2:
                return d * v
            if math.log(u) < 0.5 * x2 + d * (1.0 - v + math.log(v)):
                return d * v

    def gamma(self, shape):
        if shape >= 1.0:
            return self._gamma_ge1(shape)
        g = self._gamma_ge1(shape + 1.0)
        return g * (1.0 - self.uniform()) ** (1.0 / shape)


def gamma_variates(shape, n, seed):
    if not (shape > 0 and math.isfinite(shape)):
        raise DomainError(f"gamma shape must be positive, got {shape!r}")
    if int(n) != n or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    gen = PinnedGamma(seed)
    return np.array([gen.gamma(float(shape)) for _ in range(int(n))])


def demo_sample(shape=0.5, n=100, seed=42):
    """``n`` gamma(shape, scale=1) draws as a sorted sample."""
    return make_sample(gamma_variates(shape, n, seed))
