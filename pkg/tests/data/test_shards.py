import unittest

import numpy as np

from hololink.data import AgentShard, Dataset, split_among_agents
from hololink.data._exceptions import TooManyAgentsError


def _train_only(n: int) -> Dataset:
    return Dataset(
        name="toy",
        features=np.zeros((n, 1)),
        labels=np.zeros(n, dtype=int),
        num_classes=1,
        train_indices=np.arange(n),
        test_indices=[],
    )


class TestAgentShard(unittest.TestCase):
    def test_sorted(self):
        shard = AgentShard(agent_id=0, sample_indices=[5, 1, 3])

        np.testing.assert_array_equal(shard.sample_indices, [1, 3, 5])
        self.assertEqual(len(shard), 3)


class TestSplitAmongAgents(unittest.TestCase):
    def test_exact_division(self):
        shards = split_among_agents(_train_only(1000), 10, np.random.default_rng(0))

        self.assertEqual([len(s) for s in shards], [100] * 10)
        self.assertEqual([s.agent_id for s in shards], list(range(10)))

    def test_remainder(self):
        shards = split_among_agents(_train_only(1001), 10, np.random.default_rng(0))

        self.assertEqual([len(s) for s in shards], [101] + [100] * 9)

    def test_disjoint_and_covering(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n = int(rng.integers(1, 200))
            n_agents = int(rng.integers(1, n + 1))
            ds = _train_only(n)

            shards = split_among_agents(ds, n_agents, rng)
            joined = np.concatenate([s.sample_indices for s in shards])

            np.testing.assert_array_equal(np.sort(joined), ds.train_indices)
            sizes = [len(s) for s in shards]
            self.assertLessEqual(max(sizes) - min(sizes), 1)

    def test_only_train_rows(self):
        ds = Dataset(
            name="toy",
            features=np.zeros((6, 1)),
            labels=np.zeros(6, dtype=int),
            num_classes=1,
            train_indices=[0, 2, 4],
            test_indices=[1, 3, 5],
        )

        shards = split_among_agents(ds, 3, np.random.default_rng(0))
        joined = np.concatenate([s.sample_indices for s in shards])
        np.testing.assert_array_equal(np.sort(joined), [0, 2, 4])

    def test_deterministic(self):
        a = split_among_agents(_train_only(50), 4, np.random.default_rng(3))
        b = split_among_agents(_train_only(50), 4, np.random.default_rng(3))

        for shard_a, shard_b in zip(a, b, strict=True):
            np.testing.assert_array_equal(
                shard_a.sample_indices, shard_b.sample_indices
            )

    def test_single_agent_holds_the_train_split(self):
        ds = _train_only(30)
        (shard,) = split_among_agents(ds, 1, np.random.default_rng(3))

        np.testing.assert_array_equal(shard.sample_indices, ds.train_indices)

    def test_too_many_agents(self):
        with self.assertRaises(TooManyAgentsError):
            split_among_agents(_train_only(5), 6, np.random.default_rng(0))

    def test_no_agent(self):
        with self.assertRaises(ValueError):
            split_among_agents(_train_only(5), 0, np.random.default_rng(0))
