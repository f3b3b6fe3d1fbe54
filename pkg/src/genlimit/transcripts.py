"""Transcript records shared by the game harness, dimensions and strategies.

A plain transcript interleaves adversary inputs x_t with generated strings
z_t.  A feedback transcript adds a generator query y_t and an adversary
answer a_t between them, in the fixed order x_t, y_t, a_t, z_t.

`SENTINEL` marks a round where the generator declined to produce a string
(no consistent language); validity checks treat it as a mistake.
"""

from __future__ import annotations

from dataclasses import dataclass

SENTINEL: int | None = None

YES = "yes"
NO = "no"


@dataclass(frozen=True)
class Transcript:
    """Rounds of (x_t, z_t), 1-based in the accessors."""

    rounds: tuple[tuple[int, int | None], ...] = ()

    def __len__(self) -> int:
        return len(self.rounds)

    def inputs_through(self, r: int) -> frozenset[int]:
        """S_r: the distinct inputs over rounds 1..r."""
        return frozenset(x for x, _ in self.rounds[:r])

    def outputs_before(self, r: int) -> frozenset[int]:
        """Z_{<r}: the distinct non-sentinel outputs over rounds 1..r-1."""
        return frozenset(z for _, z in self.rounds[:r - 1]
                         if z is not SENTINEL)

    def extended(self, x: int, z: int | None) -> "Transcript":
        return Transcript(self.rounds + ((x, z),))


@dataclass(frozen=True)
class FeedbackTranscript:
    """Rounds of (x_t, y_t, a_t, z_t) with a_t in {"yes", "no"}."""

    rounds: tuple[tuple[int, int, str, int | None], ...] = ()

    def __len__(self) -> int:
        return len(self.rounds)

    def inputs_through(self, r: int) -> frozenset[int]:
        return frozenset(x for x, _, _, _ in self.rounds[:r])

    def outputs_before(self, r: int) -> frozenset[int]:
        return frozenset(z for _, _, _, z in self.rounds[:r - 1]
                         if z is not SENTINEL)

    def answers_through(self, r: int) -> tuple[frozenset[int],
                                               frozenset[int]]:
        """(yes-answered queries, no-answered queries) over rounds 1..r."""
        yes = frozenset(y for _, y, a, _ in self.rounds[:r] if a == YES)
        no = frozenset(y for _, y, a, _ in self.rounds[:r] if a == NO)
        return yes, no

    def extended(self, x: int, y: int, a: str,
                 z: int | None) -> "FeedbackTranscript":
        if a not in (YES, NO):
            raise ValueError(f"answer must be yes/no, got {a!r}")
        return FeedbackTranscript(self.rounds + ((x, y, a, z),))
