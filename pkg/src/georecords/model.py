"""Model parameters and queries shared by every computation path."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .numeric import ExactScalar, exact


class Mode(str, enum.Enum):
    """Record convention: strict (``>``) or weak (``>=``)."""

    STRICT = "strict"
    WEAK = "weak"

    @classmethod
    def parse(cls, s) -> "Mode":
        if isinstance(s, Mode):
            return s
        try:
            return cls(str(s).lower())
        except ValueError:
            raise ValueError(f"mode must be 'strict' or 'weak', got {s!r}") from None


@dataclass(frozen=True)
class ModelParams:
    """Geometric letter law P{X = k} = p q^(k-1), k >= 1, with exact p."""

    p: ExactScalar

    def __post_init__(self):
        p = exact(self.p)
        if not 0 < p < 1:
            raise ValueError(f"p must lie strictly between 0 and 1, got {p}")
        object.__setattr__(self, "p", p)

    @property
    def q(self) -> ExactScalar:
        return 1 - self.p

    @property
    def Q(self) -> ExactScalar:
        return 1 / self.q

    def letter_prob(self, k: int) -> ExactScalar:
        return self.p * self.q ** (k - 1)

    def __str__(self):
        return str(self.p)


@dataclass(frozen=True)
class RecordQuery:
    n: int
    r: int
    mode: Mode = Mode.STRICT

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode.parse(self.mode))
        if self.n < 1:
            raise ValueError(f"word length must be >= 1, got {self.n}")
        if not 1 <= self.r <= self.n:
            raise ValueError(f"need 1 <= r <= n, got r={self.r}, n={self.n}")
