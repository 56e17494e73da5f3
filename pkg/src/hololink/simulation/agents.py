"""Defines the agents of the distributed scenario and what they do in a round.

Each agent trains a local classifier on its own shard, broadcasts it through a
codec to every other agent, and averages what it receives with its own classifier.
Training data never leave an agent: the only thing crossing between agents is a
codec payload.
"""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt

from hololink.codecs import Codec
from hololink.data import AgentShard, Dataset
from hololink.model import (
    ClassifierKind,
    ClassifierMatrix,
    EncoderConfig,
    encode,
    train,
)
from hololink.simulation._exceptions import (
    AgentCodecError,
    AggregationError,
    EmptyShardError,
)
from hololink.simulation.config import RoundConfig

logger = logging.getLogger(__name__)


class AgentState(BaseModel):
    """What an agent holds during a round.

    Attributes
    ----------
    agent_id : int
        Identifier of the agent.
    shard : AgentShard
        The agent's private training samples.
    local_model : ClassifierMatrix | None
        Classifier trained on the shard only.
    received : list[ClassifierMatrix]
        Decoded classifiers of the other agents, one per peer after a round.
    aggregated : ClassifierMatrix | None
        Mean of the local classifier and the received ones.
    payload_values : int
        Number of values the agent's payload transmits.
    payload_bytes : int
        Wire size of the agent's payload.
    achieved_ratio : float
        Uncompressed bytes over payload bytes.

    """

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    agent_id: NonNegativeInt
    shard: AgentShard
    local_model: ClassifierMatrix | None = None
    received: list[ClassifierMatrix] = Field(default_factory=list)
    aggregated: ClassifierMatrix | None = None
    payload_values: int = 0
    payload_bytes: int = 0
    achieved_ratio: float = 1.0


def train_local(
    agent: AgentState, ds: Dataset, encoder: EncoderConfig, cfg: RoundConfig
) -> ClassifierMatrix:
    """Train the local classifier of an agent on its own shard.

    Raises
    ------
    EmptyShardError
        If the agent has no training sample.

    """
    if len(agent.shard) == 0:
        raise EmptyShardError(f"Agent {agent.agent_id} has an empty shard.")

    indices = agent.shard.sample_indices
    hidden = encode(ds.features[indices], encoder)
    return train(cfg.classifier, hidden, ds.labels[indices], ds.num_classes, cfg.lam)


def broadcast_round(
    agents: list[AgentState], codec: Codec, seed: int, kind: ClassifierKind
) -> list[AgentState]:
    """Share every local classifier with every other agent through a codec.

    Each classifier is encoded once by its sender. A decoded payload is immutable,
    so it is decoded once and the same classifier is delivered to all N-1 peers.
    Payload sizes are recorded on the sender.

    Parameters
    ----------
    agents : list[AgentState]
        Trained agents. Updated in place.
    codec : Codec
        The codec every agent uses.
    seed : int
        Seed from which senders and receivers derive codec keys.
    kind : ClassifierKind
        Kind of the shared classifiers.

    Returns
    -------
    list[AgentState]
        The same agents, each holding the N-1 classifiers of its peers.

    Raises
    ------
    AgentCodecError
        If the codec fails on the classifier of an agent.

    """
    delivered: dict[int, ClassifierMatrix] = {}

    for sender in agents:
        if sender.local_model is None:
            raise ValueError(f"Agent {sender.agent_id} has not been trained.")

        try:
            payload = codec.encode(
                sender.local_model, agent_id=sender.agent_id, seed=seed
            )
            delivered[sender.agent_id] = codec.decode(
                payload, agent_id=sender.agent_id, seed=seed, kind=kind
            )
        except (ValueError, ArithmeticError) as e:
            raise AgentCodecError(sender.agent_id, e) from e

        sender.payload_values = codec.payload_values(payload)
        sender.payload_bytes = codec.payload_bytes(payload)
        sender.achieved_ratio = codec.achieved_ratio(sender.local_model, payload)

    for receiver in agents:
        receiver.received = [
            delivered[peer.agent_id]
            for peer in agents
            if peer.agent_id != receiver.agent_id
        ]

    logger.debug("Broadcast %d classifiers with codec '%s'", len(agents), codec.name)
    return agents


def aggregate(
    own: ClassifierMatrix, received: list[ClassifierMatrix]
) -> ClassifierMatrix:
    """Average an agent's own classifier with the classifiers it received.

    The mean is unweighted and includes the agent's own uncompressed classifier.

    Raises
    ------
    AggregationError
        If the classifiers differ in shape or kind.

    """
    for other in received:
        if other.weights.shape != own.weights.shape or other.kind != own.kind:
            raise AggregationError(
                f"Cannot aggregate a {other.kind} classifier of shape "
                f"{other.weights.shape} with a {own.kind} one of shape "
                f"{own.weights.shape}."
            )

    if not received:
        return own

    stacked = np.stack([own.weights, *(other.weights for other in received)])
    return ClassifierMatrix(weights=stacked.mean(axis=0), kind=own.kind)
