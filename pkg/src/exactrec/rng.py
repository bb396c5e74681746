"""Deterministic 64-bit SplitMix generator.

Every randomized routine in the package draws from this generator so that a
seed reproduces an instance bit-exactly, independent of numpy's bit generators.
"""

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_INV_2_53 = 1.0 / (1 << 53)


def mix64(z):
    """SplitMix64 output finalizer; a bijective avalanche hash on 64-bit ints."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed, *keys):
    """Hash ``seed`` together with integer ``keys`` into a new 64-bit seed."""
    h = mix64(seed & MASK64)
    for k in keys:
        h = mix64(h ^ mix64((k + _GAMMA) & MASK64))
    return h


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed):
        self.state = int(seed) & MASK64

    def next_u64(self):
        self.state = (self.state + _GAMMA) & MASK64
        return mix64(self.state)

    def uniform(self):
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * _INV_2_53

    def bernoulli(self, prob):
        """True with probability ``prob`` (threshold on a 53-bit uniform)."""
        return self.uniform() < prob

    def below(self, bound):
        """Unbiased integer in [0, bound) by rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = MASK64 - (MASK64 + 1) % bound
        while True:
            r = self.next_u64()
            if r <= limit:
                return r % bound

    def shuffle(self, items):
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def signs(self, n):
        """n independent uniform +-1 values."""
        return [1 if self.next_u64() >> 63 == 0 else -1 for _ in range(n)]

    def numpy_seed(self):
        return self.next_u64()
