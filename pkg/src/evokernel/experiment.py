"""End-to-end experiment harness: episodes, kernel, stratified CV, reports.

A run generates one episode per graph on a shared time grid, builds the full
distance and kernel matrices once, then trains and evaluates a fold-restricted
SVM per cross-validation fold. One seed drives both augmentation and fold
shuffling through independent substreams.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .augment import BoltzmannConfig, generate_episode
from .embedding import MetricConfig
from .errors import ConfigError, EvoKernelError, StageError
from .heat import METHOD_AUTO, METHOD_EXACT, METHOD_FIEDLER, METHOD_TAYLOR2
from .kernel import distance_matrix, evolution_kernel
from .svm import svm_predict, svm_train
from .tu_io import GraphDataset, load_tu_dataset

HEAT_METHODS = (METHOD_EXACT, METHOD_TAYLOR2, METHOD_FIEDLER, METHOD_AUTO)

# Substream tag separating fold shuffling from per-snapshot augmentation
# streams (which use 2-element spawn keys).
_FOLD_STREAM = 0xF01D


@dataclass
class ExperimentConfig:
    dataset_dir: str = ""
    dataset_name: str = ""
    time_length: float = 1.0
    time_interval: float = 0.1
    a: float = -2.0
    b: float = -2.0
    u0: float = 1.0
    wl_iterations: int = 3
    embedding_dim: int = 1024
    gamma_scale: float = 1.0
    psd_repair: str = "clip"
    c: float = 10.0
    folds: int = 10
    seed: int = 0
    cumulative: bool = False
    heat_method: str = METHOD_EXACT
    workers: int = 1

    def validate(self) -> None:
        if self.time_interval <= 0:
            raise ConfigError(f"time interval must be positive, got {self.time_interval}")
        if self.time_length < 0:
            raise ConfigError(f"time length must be non-negative, got {self.time_length}")
        if self.folds < 2:
            raise ConfigError(f"need at least 2 folds, got {self.folds}")
        if self.psd_repair not in ("none", "clip"):
            raise ConfigError(f"psd repair must be 'none' or 'clip', got {self.psd_repair!r}")
        if self.heat_method not in HEAT_METHODS:
            raise ConfigError(f"heat method must be one of {HEAT_METHODS}, got {self.heat_method!r}")
        if self.gamma_scale <= 0:
            raise ConfigError(f"gamma scale must be positive, got {self.gamma_scale}")
        if self.c <= 0:
            raise ConfigError(f"regularization c must be positive, got {self.c}")
        if self.u0 <= 0:
            raise ConfigError(f"initial heat must be positive, got {self.u0}")
        MetricConfig(wl_iterations=self.wl_iterations, dim=self.embedding_dim).validate()

    def time_grid(self) -> np.ndarray:
        """Grid {0, dt, 2*dt, ...} up to time_length; always contains 0."""
        steps = int(np.floor(self.time_length / self.time_interval + 1e-9))
        return np.array([k * self.time_interval for k in range(steps + 1)])

    def metric_config(self) -> MetricConfig:
        return MetricConfig(wl_iterations=self.wl_iterations, dim=self.embedding_dim)

    def boltzmann_config(self) -> BoltzmannConfig:
        return BoltzmannConfig(a=self.a, b=self.b)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class CvReport:
    """Cross-validation outcome plus the resolved configuration echo.

    The standard deviation is the population std over the fold accuracies.
    ``canonical_json`` drops the (nondeterministic) timings block, so it is
    byte-identical across reruns of the same config and seed.
    """

    fold_accuracies: list[float]
    mean_accuracy: float
    std_accuracy: float
    confusion: list[list[int]]
    timings: dict[str, float] = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def to_dict(self, include_timings: bool = True) -> dict:
        payload = {
            "fold_accuracies": self.fold_accuracies,
            "mean_accuracy": self.mean_accuracy,
            "std_accuracy": self.std_accuracy,
            "std_definition": "population std over fold accuracies",
            "confusion": self.confusion,
            "config": self.config,
        }
        if include_timings:
            payload["timings"] = self.timings
        return payload

    def to_json(self, include_timings: bool = True) -> str:
        return json.dumps(self.to_dict(include_timings), sort_keys=True, indent=2)

    def canonical_json(self) -> str:
        return self.to_json(include_timings=False)


@contextmanager
def _stage(name: str):
    try:
        yield
    except StageError:
        raise
    except (EvoKernelError, ValueError, OSError) as exc:
        raise StageError(name, exc) from exc


def stratified_folds(labels, folds: int, seed: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Deterministic stratified k-fold split.

    Each class is shuffled under a seed substream and dealt round-robin, with
    the starting fold rotating between classes so remainders spread evenly.
    Per-class counts across folds differ by at most one.
    """
    labels = np.asarray(labels, dtype=np.int64)
    n = len(labels)
    classes, counts = np.unique(labels, return_counts=True)
    for cls, count in zip(classes, counts):
        if count < folds:
            raise ConfigError(
                f"class {cls} has only {count} members; reduce folds to at most {count}"
            )
    rng = np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=(_FOLD_STREAM,)))
    fold_of = np.empty(n, dtype=np.int64)
    offset = 0
    for cls in classes:
        members = np.flatnonzero(labels == cls)
        members = members[rng.permutation(len(members))]
        for pos, idx in enumerate(members):
            fold_of[idx] = (offset + pos) % folds
        offset = (offset + len(members)) % folds
    out = []
    everything = np.arange(n)
    for f in range(folds):
        test = everything[fold_of == f]
        train = everything[fold_of != f]
        out.append((train, test))
    return out


def run_experiment(cfg: ExperimentConfig, dataset: GraphDataset | None = None) -> CvReport:
    """Full pipeline for one configuration; ``dataset`` overrides disk loading."""
    timings: dict[str, float] = {}

    with _stage("config"):
        cfg.validate()

    tic = time.perf_counter()
    with _stage("load"):
        if dataset is None:
            dataset = load_tu_dataset(cfg.dataset_dir, cfg.dataset_name)
    timings["load"] = time.perf_counter() - tic

    times = cfg.time_grid()
    boltzmann = cfg.boltzmann_config()
    tic = time.perf_counter()
    with _stage("episodes"):
        episodes = [
            generate_episode(
                g,
                times,
                boltzmann,
                cfg.u0,
                cfg.seed,
                graph_index=i,
                method=cfg.heat_method,
                cumulative=cfg.cumulative,
            )
            for i, g in enumerate(dataset.graphs)
        ]
    timings["episodes"] = time.perf_counter() - tic

    tic = time.perf_counter()
    with _stage("distances"):
        d = distance_matrix(episodes, cfg.metric_config(), workers=cfg.workers)
    timings["distances"] = time.perf_counter() - tic

    tic = time.perf_counter()
    with _stage("kernel"):
        ek = evolution_kernel(d, cfg.gamma_scale, cfg.psd_repair)
    timings["kernel"] = time.perf_counter() - tic

    tic = time.perf_counter()
    with _stage("cv"):
        labels = dataset.labels
        n_classes = int(labels.max()) + 1 if len(labels) else 0
        confusion = np.zeros((n_classes, n_classes), dtype=np.int64)
        fold_accuracies = []
        for train, test in stratified_folds(labels, cfg.folds, cfg.seed):
            model = svm_train(ek, labels, train, cfg.c)
            hits = 0
            for t in test:
                pred = svm_predict(model, ek.k[t, train])
                confusion[labels[t], pred] += 1
                hits += int(pred == labels[t])
            fold_accuracies.append(hits / len(test))
    timings["cv"] = time.perf_counter() - tic

    config_echo = cfg.to_dict()
    config_echo.update(
        {
            "times": [float(t) for t in times],
            "sigma": ek.sigma,
            "dataset_graphs": len(dataset.graphs),
            "dataset_classes": int(dataset.class_count),
        }
    )
    return CvReport(
        fold_accuracies=[float(a) for a in fold_accuracies],
        mean_accuracy=float(np.mean(fold_accuracies)),
        std_accuracy=float(np.std(fold_accuracies)),
        confusion=confusion.tolist(),
        timings=timings,
        config=config_echo,
    )


def sweep_time_length(
    cfg: ExperimentConfig, lengths, dataset: GraphDataset | None = None
) -> list[CvReport]:
    """One full run per time length; lengths must be ascending."""
    lengths = list(lengths)
    with _stage("config"):
        if any(b <= a for a, b in zip(lengths, lengths[1:])):
            raise ConfigError("sweep lengths must be strictly ascending")
    return [run_experiment(replace(cfg, time_length=float(t)), dataset=dataset) for t in lengths]


def write_sweep_csv(reports: list[CvReport], path) -> None:
    """CSV of (time_length, mean, std), one row per report; fully deterministic."""
    lines = ["time_length,mean_accuracy,std_accuracy"]
    for report in reports:
        lines.append(
            f"{report.config['time_length']!r},{report.mean_accuracy!r},{report.std_accuracy!r}"
        )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
