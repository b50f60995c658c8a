"""Error types shared across modules."""


class CapabilityError(RuntimeError):
    """Problem size exceeds what an exact component is configured to handle."""
