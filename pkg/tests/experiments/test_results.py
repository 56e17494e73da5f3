import math
import tempfile
import unittest
from pathlib import Path

from hololink.experiments import (
    ResultRow,
    ResultsSink,
    read_results,
    to_frame,
    write_results,
)
from hololink.experiments.results import COLUMNS


def _row(codec="hdc", ratio_param=4.0, accuracy=0.9, **changes):
    fields = dict(
        dataset="iris",
        n_agents=10,
        classifier_kind="rls",
        codec=codec,
        ratio_param=ratio_param,
        seed=7,
        repetition=0,
        mean_accuracy=accuracy,
        per_agent_min=accuracy - 0.1,
        per_agent_max=accuracy + 0.05,
        payload_values_per_agent=75.0,
        payload_bytes_per_agent=650.0,
    )
    return ResultRow(**(fields | changes))


class TestResultRow(unittest.TestCase):
    def test_failed(self):
        row = ResultRow.failed(
            ValueError("bad ratio"),
            dataset="iris",
            n_agents=10,
            classifier_kind="rls",
            codec="svd",
            ratio_param=1.0,
            seed=7,
            repetition=2,
        )

        self.assertFalse(row.ok)
        self.assertEqual(row.error, "ValueError: bad ratio")
        self.assertTrue(math.isnan(row.mean_accuracy))
        self.assertTrue(math.isnan(row.payload_bytes_per_agent))

    def test_ok(self):
        self.assertTrue(_row().ok)

    def test_columns(self):
        self.assertEqual(
            COLUMNS[:4], ("dataset", "n_agents", "classifier_kind", "codec")
        )
        self.assertEqual(COLUMNS[-1], "error")
        self.assertEqual(list(to_frame([_row()]).columns), list(COLUMNS))


class TestResultsFile(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.path = Path(self.tmp.name) / "out" / "results.csv"

    def tearDown(self):
        self.tmp.cleanup()

    def test_sink_appends(self):
        rows = [_row(ratio_param=r, accuracy=1 / r) for r in (2.0, 3.0, 7.0)]
        sink = ResultsSink(self.path)

        sink.append(rows[0])
        sink.extend(rows[1:])

        lines = self.path.read_text().splitlines()
        self.assertEqual(len(lines), 4)
        self.assertEqual(lines[0], ",".join(COLUMNS))
        self.assertEqual(read_results(self.path), rows)

    def test_exact_floats(self):
        row = _row(accuracy=0.1 + 0.2, ratio_param=1 / 3)

        write_results([row], self.path)
        (read,) = read_results(self.path)

        self.assertEqual(read.mean_accuracy, 0.1 + 0.2)
        self.assertEqual(read.ratio_param, 1 / 3)

    def test_failed_rows(self):
        failed = ResultRow.failed(
            ValueError("rank, too low"),
            dataset="iris",
            n_agents=10,
            classifier_kind="centroid",
            codec="svd",
            ratio_param=1.0,
            seed=7,
            repetition=0,
        )

        write_results([_row(), failed], self.path)
        ok, read = read_results(self.path)

        self.assertEqual(ok, _row())
        self.assertEqual(read.error, "ValueError: rank, too low")
        self.assertEqual(read.codec, "svd")
        self.assertTrue(math.isnan(read.mean_accuracy))

    def test_none_codec_is_text(self):
        row = _row(codec="none", ratio_param=1.0)

        write_results([row], self.path)

        self.assertEqual(read_results(self.path), [row])

    def test_write_replaces(self):
        write_results([_row(), _row()], self.path)
        write_results([_row(codec="svd")], self.path)

        self.assertEqual(read_results(self.path), [_row(codec="svd")])

    def test_missing_columns(self):
        self.path.parent.mkdir(parents=True)
        self.path.write_text("dataset,n_agents\niris,10\n")

        with self.assertRaisesRegex(ValueError, "lacks the columns"):
            read_results(self.path)
