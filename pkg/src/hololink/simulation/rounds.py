"""Run complete rounds of the distributed scenario and its reference pipelines."""

import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict

from hololink._utils import spawn_rng
from hololink.codecs import NoCodec
from hololink.data import Dataset, split_among_agents
from hololink.model import (
    ClassifierMatrix,
    accuracy,
    encode,
    evaluate,
    train,
)
from hololink.simulation.agents import (
    AgentState,
    aggregate,
    broadcast_round,
    train_local,
)
from hololink.simulation.config import RoundConfig

logger = logging.getLogger(__name__)


class RoundResult(BaseModel):
    """Per-agent outcome of a round.

    Attributes
    ----------
    accuracies : tuple[float, ...]
        Test accuracy of each agent's aggregated classifier.
    payload_values : tuple[int, ...]
        Number of values transmitted by each agent.
    payload_bytes : tuple[int, ...]
        Wire bytes transmitted by each agent.
    achieved_ratios : tuple[float, ...]
        Compression ratio achieved by each agent.

    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    accuracies: tuple[float, ...]
    payload_values: tuple[int, ...]
    payload_bytes: tuple[int, ...]
    achieved_ratios: tuple[float, ...]

    @property
    def mean_accuracy(self) -> float:
        return float(np.mean(self.accuracies))

    @property
    def min_accuracy(self) -> float:
        return min(self.accuracies)

    @property
    def max_accuracy(self) -> float:
        return max(self.accuracies)

    @property
    def mean_payload_values(self) -> float:
        return float(np.mean(self.payload_values))

    @property
    def mean_payload_bytes(self) -> float:
        return float(np.mean(self.payload_bytes))

    @property
    def mean_achieved_ratio(self) -> float:
        return float(np.mean(self.achieved_ratios))


def train_centralized(ds: Dataset, cfg: RoundConfig) -> tuple[ClassifierMatrix, float]:
    """Train one classifier on the whole train split and evaluate it.

    Uses the encoder of the round, so it is the N = 1 reference of a distributed
    run with the same seeds.

    Returns
    -------
    tuple[ClassifierMatrix, float]
        The classifier and its test accuracy.

    """
    encoder = cfg.encoder(ds.n_features)
    hidden = encode(ds.train_features, encoder)
    classifier = train(
        cfg.classifier, hidden, ds.train_labels, ds.num_classes, cfg.lam
    )
    return classifier, evaluate(classifier, encoder, ds.test_features, ds.test_labels)


def run_round(ds: Dataset, cfg: RoundConfig) -> RoundResult:
    """Simulate one round of the distributed scenario.

    The train split is shared among the agents, each agent trains locally,
    broadcasts its classifier through the codec and aggregates what it receives.
    Every aggregated classifier is evaluated on the full test split.

    Parameters
    ----------
    ds : Dataset
        A normalized dataset.
    cfg : RoundConfig
        Settings of the round.

    Returns
    -------
    RoundResult
        Per-agent accuracies and payload sizes.

    Raises
    ------
    EmptyTestSetError
        If the test split is empty.

    """
    encoder = cfg.encoder(ds.n_features)
    shards = split_among_agents(
        ds, cfg.n_agents, spawn_rng(cfg.seed, "shard", cfg.repetition)
    )
    agents = [AgentState(agent_id=shard.agent_id, shard=shard) for shard in shards]

    for agent in agents:
        agent.local_model = train_local(agent, ds, encoder, cfg)

    broadcast_round(agents, cfg.codec, cfg.key_seed, cfg.classifier)

    test_hidden = encode(ds.test_features, encoder)
    accuracies = []
    for agent in agents:
        assert agent.local_model is not None
        agent.aggregated = aggregate(agent.local_model, agent.received)
        accuracies.append(accuracy(agent.aggregated, test_hidden, ds.test_labels))

    logger.debug(
        "Round N=%d %s/%s rep=%d: mean accuracy %.4f",
        cfg.n_agents,
        cfg.classifier,
        cfg.codec.name,
        cfg.repetition,
        np.mean(accuracies),
    )

    return RoundResult(
        accuracies=tuple(accuracies),
        payload_values=tuple(agent.payload_values for agent in agents),
        payload_bytes=tuple(agent.payload_bytes for agent in agents),
        achieved_ratios=tuple(agent.achieved_ratio for agent in agents),
    )


def small_hidden_size(hidden_size: int, ratio: int) -> int:
    """Hidden size H' = max(1, ⌈H/R⌉) of the small model matching ratio R."""
    return max(1, math.ceil(hidden_size / ratio))


def small_model_baseline(ds: Dataset, cfg: RoundConfig, ratio: int) -> RoundResult:
    """Run the uncompressed round with a hidden layer shrunk by the ratio.

    The small model's classifier has H'·L values, about as many as the
    hypervector of the full model compressed with ratio R.
    """
    if ratio < 1:
        raise ValueError("The compression ratio must be >= 1.")

    small = cfg.model_copy(
        update={
            "hidden_size": small_hidden_size(cfg.hidden_size, ratio),
            "codec": NoCodec(),
        }
    )
    return run_round(ds, small)
