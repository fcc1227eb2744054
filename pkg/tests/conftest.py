import random

import pytest

from obstructa import catalog
from obstructa.forms import AForm, ExteriorContext


@pytest.fixture(scope="session")
def so3():
    return catalog("so", 3)


@pytest.fixture(scope="session")
def gl2():
    return catalog("gl", 2)


@pytest.fixture(scope="session")
def heis():
    return catalog("heisenberg", 1)


def random_form(rng: random.Random, ctx: ExteriorContext, alg, degree: int,
                span=3) -> AForm:
    """Random integer form of the given degree: small coords, a few masks."""
    masks = [m for m in range(1, ctx.full_mask() + 1)
             if m.bit_count() == degree]
    rng.shuffle(masks)
    terms = {}
    for mask in masks[:span]:
        v = tuple(rng.randint(-2, 2) for _ in range(alg.dim))
        if any(v):
            terms[mask] = v
    return AForm(ctx, alg, terms)
