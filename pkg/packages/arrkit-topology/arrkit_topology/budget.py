"""Budget - resource limits passed to every expensive entry point."""

from dataclasses import dataclass, replace

from arrkit_topology.errors import BudgetExceededError

DEFAULT_POINTS = 1 << 25
DEFAULT_SNF_ENTRIES = 10**7
DEFAULT_SLICE_RETRIES = 64


@dataclass(frozen=True)
class Budget:
    """
    Resource limits.

    Args:
        points: Maximum number of characters / resonance points enumerated
        snf_entries: Maximum stored entries of an integer matrix sent to SNF,
            and of the dense block left after its unit pivots
        slice_retries: Attempts at a generic slice before giving up
        jobs: Worker threads for chunked enumerations
        chunk: Characters evaluated per numpy batch
        progress: Show tqdm progress bars
    """

    points: int = DEFAULT_POINTS
    snf_entries: int = DEFAULT_SNF_ENTRIES
    slice_retries: int = DEFAULT_SLICE_RETRIES
    jobs: int = 1
    chunk: int = 4096
    progress: bool = False

    def check_points(self, requested: int, what: str = "characters") -> None:
        """
        Raises:
            BudgetExceededError: If requested > points
        """
        if requested > self.points:
            raise BudgetExceededError(what, requested, self.points)

    def check_entries(self, requested: int, what: str = "matrix entries") -> None:
        if requested > self.snf_entries:
            raise BudgetExceededError(what, requested, self.snf_entries)

    def with_jobs(self, jobs: int) -> "Budget":
        return replace(self, jobs=max(1, jobs))
