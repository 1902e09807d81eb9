"""Resource caps for scene evaluation.

Scenes are untrusted input to the service, so runaway programs must fail
with a diagnostic instead of eating the machine.  Two caps bound total work
(primitives emitted, recursion steps across all lanes); two bound depth
(steps inside a single tail-recursive application, literal nested calls).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class EvalLimits:
    max_primitives: int = 100_000_000
    max_steps_total: int = 1_000_000_000
    max_tail_steps: int = 1_000_000
    max_call_depth: int = 10_000

    def __post_init__(self):
        for name in ("max_primitives", "max_steps_total", "max_tail_steps", "max_call_depth"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


DEFAULT_LIMITS = EvalLimits()

# The service trims the primitive budget: a request should fail fast rather
# than pin a worker while it allocates tens of gigabytes of geometry.
SERVICE_LIMITS = EvalLimits(
    max_primitives=20_000_000,
    max_steps_total=1_000_000_000,
    max_tail_steps=1_000_000,
    max_call_depth=10_000,
)
