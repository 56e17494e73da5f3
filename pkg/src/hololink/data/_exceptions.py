class MissingLabelColumnError(ValueError):
    """Raise when the label column named by the schema is not in the header."""


class NoFeatureColumnsError(ValueError):
    """Raise when a dataset file has no feature column."""


class NonNumericFeatureError(ValueError):
    """Raise when a feature cell cannot be parsed as a number."""

    def __init__(self, row: int, col: str):
        self.row = row
        self.col = col
        super().__init__(f"Non-numeric feature value at row {row}, column '{col}'.")


class EmptyDatasetError(ValueError):
    """Raise when a dataset (or the split an operation needs) has no rows."""


class TooManyAgentsError(ValueError):
    """Raise when there are more agents than training samples to share."""


class MissingClassError(ValueError):
    """Raise when a class does not appear in the train split."""
