import numpy as np
import pytest

from ris_scma.channel import ChannelRealization, FadingConfig, Geometry


@pytest.fixture
def geom():
    return Geometry(bs_user_distance=40.0, ris_perpendicular_offset=1.5,
                    ris_horizontal_offset=2.0, carrier_frequency=2.4e9)


@pytest.fixture
def fading():
    return FadingConfig()


def make_channels(direct, ris_to_bs, user_to_ris):
    """Hand-built realization from plain nested lists (single ORE or batch)."""
    direct = np.atleast_2d(np.asarray(direct, dtype=np.complex128))
    ris_to_bs = np.atleast_2d(np.asarray(ris_to_bs, dtype=np.complex128))
    user_to_ris = np.asarray(user_to_ris, dtype=np.complex128)
    if user_to_ris.ndim == 2:
        user_to_ris = user_to_ris[None, :, :]
    return ChannelRealization(direct=direct, ris_to_bs=ris_to_bs,
                              user_to_ris=user_to_ris)
