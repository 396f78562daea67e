import pytest
from hypothesis import settings

import globflow as gf

settings.register_profile("suite", deadline=None, derandomize=True, max_examples=50)
settings.load_profile("suite")


@pytest.fixture
def segment():
    return gf.glob({"u"})


@pytest.fixture
def two_step():
    # v then w through a middle state: the canonical subdivided segment
    return gf.validate(gf.presentation(["s", "m", "t"], [("v", "s", "m"), ("w", "m", "t")]))


@pytest.fixture
def wedge():
    # immediate branching: two atoms out of a shared source
    return gf.validate(
        gf.presentation(["a", "b", "c"], [("u", "a", "b"), ("v", "a", "c")])
    )


@pytest.fixture
def fork_after_step():
    # one computation, then a branching: x before the fork onto y and z
    return gf.validate(
        gf.presentation(
            ["A", "m", "B", "C"],
            [("x", "A", "m"), ("y", "m", "B"), ("z", "m", "C")],
        )
    )


@pytest.fixture
def chain4():
    # g then e then k across four states; attachments usually target (0, 1)
    return gf.validate(
        gf.presentation(
            ["a", "0", "1", "b"], [("g", "a", "0"), ("e", "0", "1"), ("k", "1", "b")]
        )
    )
