"""SplitMix64 generator used for every seeded draw in the package.

Reports must be reproducible across implementations, so the generator is
spelled out here rather than borrowed from :mod:`random`:

    state <- state + 0x9E3779B97F4A7C15            (mod 2**64)
    z <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      (mod 2**64)
    z <- (z ^ (z >> 27)) * 0x94D049BB133111EB      (mod 2**64)
    output z ^ (z >> 31)

``randint(lo, hi)`` is ``lo + next() % (hi - lo + 1)``.
"""

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed=0):
        self.state = seed & _MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo, hi):
        """Integer in the closed range [lo, hi]."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next() % (hi - lo + 1)

    def nonzero(self, bound):
        while True:
            x = self.randint(-bound, bound)
            if x:
                return x

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def uniform(self):
        """Float in [0, 1) built from the top 53 bits."""
        return (self.next() >> 11) / float(1 << 53)
