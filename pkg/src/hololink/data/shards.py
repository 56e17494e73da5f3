"""Partition the train split of a dataset among agents."""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, NonNegativeInt, field_validator

from hololink._utils import readonly_array
from hololink.data._exceptions import TooManyAgentsError
from hololink.data.dataset import Dataset


class AgentShard(BaseModel):
    """The rows of the train split owned by one agent.

    Attributes
    ----------
    agent_id : int
        Identifier of the owning agent.
    sample_indices : np.ndarray
        Sorted dataset row indices of the agent's training samples.

    """

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    agent_id: NonNegativeInt
    sample_indices: np.ndarray

    @field_validator("sample_indices", mode="before")
    @classmethod
    def _check_indices(cls, value: Any) -> np.ndarray:
        return readonly_array(np.sort(np.asarray(value).reshape(-1)), np.int64)

    def __len__(self) -> int:
        return self.sample_indices.size


def split_among_agents(
    ds: Dataset, n_agents: int, rng: np.random.Generator
) -> list[AgentShard]:
    """Split the train samples of a dataset equally among agents.

    The train indices are permuted uniformly at random and cut into contiguous
    blocks. When the train size is q·N + r, the first r agents receive q + 1
    samples and the others q. Samples are not replaced, so shards are disjoint and
    together cover the train split.

    Parameters
    ----------
    ds : Dataset
        The dataset whose train split is shared.
    n_agents : int
        The number of agents N.
    rng : np.random.Generator
        Seeded generator.

    Returns
    -------
    list[AgentShard]
        One shard per agent, ordered by agent id.

    Raises
    ------
    TooManyAgentsError
        If N is larger than the number of train samples.

    """
    if n_agents < 1:
        raise ValueError("There must be at least one agent.")
    if n_agents > ds.train_indices.size:
        raise TooManyAgentsError(
            f"Cannot split {ds.train_indices.size} train samples among "
            f"{n_agents} agents."
        )

    blocks = np.array_split(rng.permutation(ds.train_indices), n_agents)

    return [
        AgentShard(agent_id=agent_id, sample_indices=block)
        for agent_id, block in enumerate(blocks)
    ]
