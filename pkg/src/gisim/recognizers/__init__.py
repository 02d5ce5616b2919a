"""Class-recognition protocols, honest provers and the adversary battery."""

from .adversary import STRATEGIES, StrategyInapplicable, adversary, battery
from .common import ModelNotProper
from .registry import PROTOCOL_NAMES, Recognizer, for_class, get

__all__ = [
    "PROTOCOL_NAMES",
    "STRATEGIES",
    "ModelNotProper",
    "Recognizer",
    "StrategyInapplicable",
    "adversary",
    "battery",
    "for_class",
    "get",
]
