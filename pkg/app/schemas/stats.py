from typing import Optional

from pydantic import ConfigDict, NonNegativeInt, computed_field

from schemas.common_schemas import FrozenModel


class CorpusStats(FrozenModel):
    # n_clusters_total is derived; tolerate it when stats records are read back
    model_config = ConfigDict(frozen=True, extra="ignore")

    n_sents: NonNegativeInt = 0
    n_mentions: NonNegativeInt = 0
    n_clusters_multi: NonNegativeInt = 0
    n_singletons: NonNegativeInt = 0
    n_split_antecedents: NonNegativeInt = 0
    n_docs: NonNegativeInt = 0

    @computed_field
    @property
    def n_clusters_total(self) -> int:
        return self.n_clusters_multi + self.n_singletons

    def __add__(self, other: "CorpusStats") -> "CorpusStats":
        return CorpusStats(**{
            name: getattr(self, name) + getattr(other, name)
            for name in CorpusStats.model_fields
        })


class StatsRow(FrozenModel):
    group: str
    split: Optional[str] = None
    stats: CorpusStats
