from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveFloat,
    PositiveInt,
)

from hololink._utils import derive_seed
from hololink.codecs import AnyCodec, NoCodec
from hololink.model import ClassifierKind, EncoderConfig


class RoundConfig(BaseModel):
    """Settings of one simulated round of the distributed scenario.

    Attributes
    ----------
    n_agents : int
        Number of fully connected agents N.
    codec : AnyCodec
        How agents share their classifiers. By default uncompressed.
    classifier : ClassifierKind
        Kind of classifier every agent trains. By default "rls".
    hidden_size : int
        Size of the hidden layer H.
    lam : float
        RLS regularization coefficient λ. Ignored by centroids.
    kappa : int
        Clipping threshold κ of the encoder.
    seed : int
        Master seed of the run.
    repetition : int
        Index of the repetition; each repetition draws a new encoder, new shards
        and new keys.

    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_agents: PositiveInt
    codec: AnyCodec = Field(default_factory=NoCodec)
    classifier: ClassifierKind = "rls"
    hidden_size: PositiveInt
    lam: PositiveFloat = 1.0
    kappa: PositiveInt = 3
    seed: NonNegativeInt = 0
    repetition: NonNegativeInt = 0

    @property
    def encoder_seed(self) -> int:
        return derive_seed(self.seed, "encoder", self.repetition)

    @property
    def key_seed(self) -> int:
        return derive_seed(self.seed, "keys", self.repetition)

    def encoder(self, n_features: int) -> EncoderConfig:
        """Create the encoder every agent of the round shares."""
        return EncoderConfig.create(
            n_features, self.hidden_size, self.kappa, self.encoder_seed
        )
