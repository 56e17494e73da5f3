class EmptyShardError(ValueError):
    """Raise when an agent has no training sample."""


class AgentCodecError(RuntimeError):
    """Raise when the codec fails on the classifier of an agent."""

    def __init__(self, agent_id: int, cause: Exception):
        self.agent_id = agent_id
        self.cause = cause
        super().__init__(f"The codec failed for agent {agent_id}: {cause}")


class AggregationError(ValueError):
    """Raise when classifiers of different shapes or kinds are aggregated."""
