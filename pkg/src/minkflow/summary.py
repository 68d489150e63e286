"""The three scalars tracked along a flow: area, total mean curvature, volume."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["GeometricSummary"]


@dataclass(frozen=True)
class GeometricSummary:
    """Surface area, integrated mean curvature, and enclosed volume.

    Mean curvature uses the sum-of-principal-curvatures convention, so a unit
    Euclidean sphere has total mean curvature 8*pi, not 4*pi.
    """

    area: float
    total_mean_curvature: float
    volume: float

    def __post_init__(self) -> None:
        if not (self.area >= 0.0):
            raise ValueError(f"area must be nonnegative, got {self.area}")
        if not (self.volume >= 0.0):
            raise ValueError(f"volume must be nonnegative, got {self.volume}")

    def as_dict(self) -> dict[str, float]:
        return {
            "area": self.area,
            "total_mean_curvature": self.total_mean_curvature,
            "volume": self.volume,
        }
