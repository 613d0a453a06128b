from .base import ByzantineBehavior, ByzantineMode, ByzantineSpec
from .crash import CrashBehavior
from .silent import SilentBehavior
from .avoid_anchor import AvoidAnchorEdgesBehavior
from .delayed import DelayOwnBroadcastBehavior
from .equivocator import AttemptEquivocationBehavior

BEHAVIORS = {
    ByzantineMode.CRASH: CrashBehavior,
    ByzantineMode.SILENT: SilentBehavior,
    ByzantineMode.AVOID_ANCHOR_EDGES: AvoidAnchorEdgesBehavior,
    ByzantineMode.DELAY_OWN_BROADCAST: DelayOwnBroadcastBehavior,
    ByzantineMode.ATTEMPT_EQUIVOCATION: AttemptEquivocationBehavior,
}


def create_behavior(spec: ByzantineSpec) -> ByzantineBehavior:
    return BEHAVIORS[spec.mode](spec)


__all__ = ['ByzantineBehavior', 'ByzantineMode', 'ByzantineSpec', 'CrashBehavior', 'SilentBehavior',
           'AvoidAnchorEdgesBehavior', 'DelayOwnBroadcastBehavior', 'AttemptEquivocationBehavior',
           'BEHAVIORS', 'create_behavior']
