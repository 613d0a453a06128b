from .delay import DelayKind, DelayModel, TICKS_PER_UNIT, to_ticks, from_ticks, format_time, delivery_rng
from .channel import BroadcastChannel, Delivery, EquivocationAttempt

__all__ = ['DelayKind', 'DelayModel', 'TICKS_PER_UNIT', 'to_ticks', 'from_ticks', 'format_time',
           'delivery_rng', 'BroadcastChannel', 'Delivery', 'EquivocationAttempt']
