"""
Channel state model, statistics and sampling for the layered erasure broadcast channel.
"""

from .channel_model import MASS_TOLERANCE, ChannelModel, load_channel
from .exceptions import ChannelDocumentError, ChannelError, ChannelValidationError
from .sampling import sample_state, sample_states
from .stats import ChannelStats, compute_stats, nonempty_subsets

__all__ = [
    "MASS_TOLERANCE",
    "ChannelModel",
    "ChannelStats",
    "load_channel",
    "compute_stats",
    "nonempty_subsets",
    "sample_state",
    "sample_states",
    "ChannelError",
    "ChannelDocumentError",
    "ChannelValidationError",
]
