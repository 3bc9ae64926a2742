"""Power iteration clustering with interchangeable backends.

The serial module is the plain numpy reference; the parallel module runs
the same pipeline as six deterministic data-parallel kernels. Both share
the similarity, k-means, dataset, and validity-index building blocks.
"""

from . import errors
from .affinity import (
    Cosine,
    GaussianRbf,
    SimilarityKind,
    build_affinity,
    degree,
    normalize,
    similarity,
)
from .data import DataSet, load_csv, validate_dataset, write_csv
from .datasets import GeneratorSpec, SubsampleSpec, generate, subsample_balanced
from .kmeans import KMeansParams, kmeans_1d
from .parallel import (
    KernelConfig,
    PartitionPlan,
    k_affinity,
    k_multiply,
    k_norm,
    k_normalize,
    k_reduce,
    k_rowsum,
    plan_rows,
)
from .serial import PicParams, PicTrace, initial_vector, power_iterate
from .validation import ContingencyTable, adjusted_rand_index, contingency, jaccard_index
from . import parallel, serial

__version__ = "0.1.0"


def cluster(dataset, kind, params, backend="serial", config=None, seed=0):
    """Cluster a dataset with either backend; returns (labels, embedding, trace)."""
    if backend == "serial":
        return serial.cluster(dataset, kind, params, seed=seed)
    if backend == "parallel":
        return parallel.cluster(dataset, kind, params, config or KernelConfig(), seed=seed)
    raise errors.InvalidSpec(f"unknown backend {backend!r}")


__all__ = [
    "Cosine",
    "GaussianRbf",
    "SimilarityKind",
    "DataSet",
    "GeneratorSpec",
    "SubsampleSpec",
    "KMeansParams",
    "KernelConfig",
    "PartitionPlan",
    "PicParams",
    "PicTrace",
    "ContingencyTable",
    "adjusted_rand_index",
    "build_affinity",
    "cluster",
    "contingency",
    "degree",
    "errors",
    "generate",
    "initial_vector",
    "jaccard_index",
    "k_affinity",
    "k_multiply",
    "k_norm",
    "k_normalize",
    "k_reduce",
    "k_rowsum",
    "kmeans_1d",
    "load_csv",
    "normalize",
    "parallel",
    "plan_rows",
    "power_iterate",
    "serial",
    "similarity",
    "subsample_balanced",
    "validate_dataset",
    "write_csv",
]
