"""Simulate fully connected agents sharing compressed classifiers."""

from hololink.simulation.agents import (
    AgentState,
    aggregate,
    broadcast_round,
    train_local,
)
from hololink.simulation.config import RoundConfig
from hololink.simulation.rounds import (
    RoundResult,
    run_round,
    small_hidden_size,
    small_model_baseline,
    train_centralized,
)

__all__ = [
    "AgentState",
    "RoundConfig",
    "RoundResult",
    "aggregate",
    "broadcast_round",
    "run_round",
    "small_hidden_size",
    "small_model_baseline",
    "train_centralized",
    "train_local",
]
