"""Vietoris-Rips persistent homology, barcode Wasserstein distances and
normalised partition comparison."""

from ._core import (
    Barcode,
    CapacityError,
    IncomparableError,
    TdakitError,
    WassersteinReport,
    SweepRow,
    betti_numbers_at,
    compute_persistence,
    pairwise_distances,
    pairwise_report,
    partition_records,
    partition_size_sweep,
    rank_partitions,
    sample,
    split_random_halves,
    wasserstein,
    wasserstein_distance,
)

__all__ = [
    "Barcode",
    "CapacityError",
    "IncomparableError",
    "TdakitError",
    "WassersteinReport",
    "SweepRow",
    "betti_numbers_at",
    "compute_persistence",
    "pairwise_distances",
    "pairwise_report",
    "partition_records",
    "partition_size_sweep",
    "rank_partitions",
    "sample",
    "split_random_halves",
    "wasserstein",
    "wasserstein_distance",
]
