"""The generalized Jacobi weight (1-x)^alpha (1+x)^beta |x|^gamma."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class WeightParams:
    alpha: float
    beta: float
    gamma: float = 0.0

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1 and self.gamma > -1):
            raise DomainError(
                "weight requires alpha > -1, beta > -1, gamma > -1, "
                f"got ({self.alpha}, {self.beta}, {self.gamma})"
            )

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return (1.0 - x) ** self.alpha * (1.0 + x) ** self.beta * np.abs(x) ** self.gamma

    @property
    def singular(self) -> dict[float, float]:
        """Exponent of |x - c| at each singular point c."""
        return {-1.0: self.beta, 0.0: self.gamma, 1.0: self.alpha}

    @property
    def symmetric(self) -> bool:
        return self.alpha == self.beta

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)
