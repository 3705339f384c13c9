"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Raised when a parameter or configuration value is out of range."""


class GraphGenerationError(RuntimeError):
    """No connected graph was produced within the allowed number of attempts."""

    def __init__(self, n: int, p_link: float, max_attempts: int, trial: int | None = None):
        self.n = n
        self.p_link = p_link
        self.max_attempts = max_attempts
        self.trial = trial
        where = f" (trial {trial})" if trial is not None else ""
        super().__init__(
            f"no connected graph for n={n}, p_link={p_link} "
            f"after {max_attempts} attempts{where}"
        )
