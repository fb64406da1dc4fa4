import random

from solgenus import IntMat2


def mat(a, b, c, d) -> IntMat2:
    return IntMat2(a, b, c, d)


GENERATORS = (
    IntMat2(1, 1, 0, 1),
    IntMat2(1, -1, 0, 1),
    IntMat2(1, 0, 1, 1),
    IntMat2(1, 0, -1, 1),
    IntMat2(0, -1, 1, 0),
    IntMat2(1, 0, 0, -1),
)


def random_unimodular(rng: random.Random, max_factors: int = 6) -> IntMat2:
    """Random element of GL2(Z) as a short word in standard generators."""
    m = IntMat2.identity()
    for _ in range(rng.randrange(1, max_factors + 1)):
        m = m * rng.choice(GENERATORS)
    return m


def unimodular_box(bound: int):
    """All matrices with entries in [-bound, bound] and determinant +-1."""
    span = range(-bound, bound + 1)
    out = []
    for a in span:
        for b in span:
            for c in span:
                for d in span:
                    if a * d - b * c in (1, -1):
                        out.append(IntMat2(a, b, c, d))
    return out
