"""Random inputs shared by the property and acceptance suites."""

import random

from equibundle.exactla import SubspaceQ


def random_chain(rng: random.Random, n: int) -> list[SubspaceQ]:
    """Nested spans of prefixes of a few small integer vectors."""
    length = rng.randint(1, n)
    vecs = [[rng.choice((-1, 0, 0, 1, 1, 2)) for _ in range(n)] for _ in range(length)]
    chain = []
    for k in range(1, length + 1):
        s = SubspaceQ.span(n, vecs[:k])
        if not chain or s != chain[-1]:
            chain.append(s)
    return chain


def random_family(rng: random.Random, max_dim: int = 4, max_chains: int = 3) -> list[SubspaceQ]:
    n = rng.randint(1, max_dim)
    family = []
    for _ in range(rng.randint(1, max_chains)):
        family.extend(random_chain(rng, n))
    return family
