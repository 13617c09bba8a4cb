"""Exception taxonomy shared across the package."""


class EvoKernelError(Exception):
    """Base class for all evokernel errors."""


class GraphConstructionError(EvoKernelError):
    """Invalid graph input: out-of-range endpoint, self-loop or duplicate edge in strict mode."""


class DatasetError(EvoKernelError):
    """Benchmark ingestion failure: missing file or malformed record (message carries the line number)."""


class NumericalError(EvoKernelError):
    """Numerical routine failed or violated its tolerance (message carries the residual)."""


class ConfigError(EvoKernelError):
    """Invalid run configuration (time grid, fold count, option values)."""


class ContractError(EvoKernelError):
    """Inputs violate an inter-module contract, e.g. episodes on different time grids."""


class TrainingError(EvoKernelError):
    """SVM training is infeasible, e.g. a single-class training set."""


class StageError(EvoKernelError):
    """Failure wrapped with the pipeline stage that raised it."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause
