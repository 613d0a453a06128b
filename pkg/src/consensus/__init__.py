from .ordering import (Ordering, OrderingState, OrderingVariant, CommitObservation,
                       SkippedAnchor, OrderedAnchor, commit_log_lines)
from .round_engine import PartyConfig, RoundState, RoundEngine, Broadcast, ArmTimer, Command

__all__ = ['Ordering', 'OrderingState', 'OrderingVariant', 'CommitObservation', 'SkippedAnchor',
           'OrderedAnchor', 'commit_log_lines', 'PartyConfig', 'RoundState', 'RoundEngine',
           'Broadcast', 'ArmTimer', 'Command']
