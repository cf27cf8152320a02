"""Seeded random generation with a fixed, portable algorithm.

The stream generator is splitmix64 (Steele, Lea and Flood's 64-bit mixer with
the golden-ratio increment). Bounded draws use rejection sampling so they are
exactly uniform, and permutations are produced by a Fisher-Yates shuffle.
Everything here is pinned so that a seed yields the same output on every
platform and Python version.
"""

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """splitmix64 generator over 64-bit state."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_uint64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound), bias-free via rejection."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        threshold = (1 << 64) - (1 << 64) % bound
        while True:
            x = self.next_uint64()
            if x < threshold:
                return x % bound

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle, descending index order."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def permutation(self, n: int) -> tuple[int, ...]:
        """Uniform random permutation of 1..n."""
        items = list(range(1, n + 1))
        self.shuffle(items)
        return tuple(items)
