import random

import pytest


@pytest.fixture
def rng():
    return random.Random(20240817)


def random_fe(ctx, rng):
    return ctx.from_index(rng.randrange(ctx.q))
