from __future__ import annotations

import pytest

from claimkit.claims import ClaimSet, segment_claims

# The WIPO drafting-manual example pair: one independent claim with two
# body elements, one dependent claim referencing it.
PENCIL_CLAIMS = (
    "1. A lighted pencil, comprising: a pencil shaft; and a light attached "
    "to the pencil shaft.\n"
    "2. The lighted pencil of claim 1, wherein the light is removably "
    "attached to the pencil shaft."
)

# A three-claim device set that passes every detector, used as lint/score
# context.
DEVICE_CLAIMS = (
    "1. A device, comprising: a lever; and a cam attached to the lever.\n"
    "2. The device of claim 1, wherein the cam is round.\n"
    "3. The device of claim 1, wherein the lever is curved."
)

# The repeated-phrase tail that hallucinating models produce.
LOOP_PHRASE = "based on the information about the device"
HALLUCINATED_ABSTRACT = (
    "In an approach for selecting a version of a webpage to present to a "
    "user, a processor receives a request to access a webpage from a "
    "device. A processor determines a version of the webpage to present, "
    + LOOP_PHRASE + (" " + LOOP_PHRASE) * 3
)


@pytest.fixture
def pencil_set() -> ClaimSet:
    return segment_claims(PENCIL_CLAIMS)


@pytest.fixture
def device_set() -> ClaimSet:
    return segment_claims(DEVICE_CLAIMS)
