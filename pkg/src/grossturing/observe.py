"""Observability of sequences and machine outputs through grossone numerals.

Sequential processes have at most ``G`` elements.  What an observer can
see of a sequence is the part expressible in their numeral system; counts of
positional numerals and of complete machine outputs are gross-numbers such
as ``10^G`` or ``6^G``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .grossnum import G, ONE, ZERO, GrossNumber, UnsupportedResult, format_gross, parse_gross
from .tmcore import MultiTapeMachine

__all__ = [
    "GrossSequence",
    "NumeralSystem",
    "ObservabilityReport",
    "P_HAT",
    "P_HAT_EXT",
    "PIRAHA",
    "sequence_length_ok",
    "is_complete",
    "last_element",
    "counting_span",
    "observable_elements",
    "count_positional",
    "complete_output_size",
    "count_complete_outputs",
    "observation_budget",
    "observable_simulation_steps",
    "machine_observability_report",
]

Gross = Union[int, Fraction, GrossNumber]


def _g(x: Gross) -> GrossNumber:
    return x if isinstance(x, GrossNumber) else GrossNumber(x)


def sequence_length_ok(count: Gross) -> bool:
    """A sequential process can have at most ``G`` elements."""
    count = _g(count)
    if count <= 0:
        raise ValueError("a sequence length must be positive")
    return count <= G


@dataclass(frozen=True)
class GrossSequence:
    """The record ``{a_n : count}`` for an arithmetic ``a_n = first + (n - 1) * step``."""

    first: GrossNumber
    step: GrossNumber
    count: GrossNumber

    def __post_init__(self):
        for attr in ("first", "step", "count"):
            object.__setattr__(self, attr, _g(getattr(self, attr)))
        if self.step.is_zero():
            raise ValueError("sequence step must be nonzero")
        if not sequence_length_ok(self.count):
            raise ValueError(f"a sequence cannot have {format_gross(self.count)} > G elements")

    @classmethod
    def affine(cls, slope: Gross, offset: Gross, count: Gross) -> GrossSequence:
        """``{slope*n + offset : count}``, e.g. ``affine(4, 0, G)`` for ``{4n : G}``."""
        slope = _g(slope)
        return cls(slope + offset, slope, count)

    def element(self, n: Gross) -> GrossNumber:
        return self.first + (_g(n) - 1) * self.step

    def index_of(self, value: Gross) -> GrossNumber | None:
        """The position ``n`` of ``value`` in the sequence, or None."""
        n = (_g(value) - self.first) / self.step + 1
        if n.is_integer() and ONE <= n <= self.count:
            return n
        return None


def is_complete(s: GrossSequence) -> bool:
    return s.count == G


def last_element(s: GrossSequence) -> GrossNumber:
    return s.element(s.count)


def counting_span(start: Gross, stride: Gross) -> GrossNumber:
    """Where a complete counting sequence from ``start`` in steps of ``stride`` ends."""
    if _g(stride) <= 0:
        raise ValueError("stride must be positive")
    return last_element(GrossSequence(start, stride, G))


@dataclass(frozen=True)
class NumeralSystem:
    """A numeral system: either an explicit set of expressible numbers or radix ``u``."""

    name: str
    expressible: frozenset[GrossNumber] | None = None
    radix: int | None = None

    def __post_init__(self):
        if (self.expressible is None) == (self.radix is None):
            raise ValueError("give exactly one of expressible or radix")
        if self.expressible is not None:
            object.__setattr__(self, "expressible", frozenset(_g(x) for x in self.expressible))
        if self.radix is not None and self.radix < 2:
            raise ValueError("radix must be at least 2")

    @classmethod
    def of(cls, name: str, numerals: Iterable[Union[str, Gross]]) -> NumeralSystem:
        return cls(name, frozenset(parse_gross(x) if isinstance(x, str) else _g(x) for x in numerals))


PIRAHA = NumeralSystem.of("P", ["1", "2"])
# the ten numerals the extended system makes visible in {n : G}
P_HAT = NumeralSystem.of(
    "P^",
    ["1", "2", "G/2 - 2", "G/2 - 1", "G/2", "G/2 + 1", "G/2 + 2", "G - 2", "G - 1", "G"],
)
# the same system as used when counting with {2n - 1 : G}, where 2G - 1 is also seen
P_HAT_EXT = NumeralSystem("P^ext", P_HAT.expressible | {2 * G - 1})


def observable_elements(ns: NumeralSystem, s: GrossSequence) -> list[GrossNumber]:
    """Members of ``s`` that ``ns`` can express, in sequence order."""
    if ns.expressible is None:
        raise ValueError("observable_elements needs an explicit numeral set")
    hits = []
    for value in ns.expressible:
        try:
            n = s.index_of(value)
        except UnsupportedResult:
            raise UnsupportedResult(
                f"cannot decide whether {format_gross(value)} belongs to the sequence"
            ) from None
        if n is not None:
            hits.append((n, value))
    hits.sort(key=lambda pair: pair[0])
    return [value for _, value in hits]


def count_positional(b: int, kind: str = "half-open") -> GrossNumber:
    """Numerals with ``G`` radix-``b`` digits.

    ``half-open`` counts points of [0,1), ``integers`` the integers written
    with ``G`` digits, ``open`` the points of (0,1) -- one fewer, as the
    all-zero numeral is excluded.
    """
    if b < 2:
        raise ValueError("radix must be at least 2")
    full = GrossNumber(b) ** G
    if kind in ("half-open", "integers"):
        return full
    if kind == "open":
        return full - 1
    raise ValueError(f"unknown interval kind {kind!r}")


def complete_output_size(k: int) -> GrossNumber:
    """Symbols in a complete output of a k-tape machine: ``k*G``.

    ``k = 1`` is accepted as the degenerate single-tape case (one complete
    sequence of ``G`` symbols).
    """
    if k < 1:
        raise ValueError("k must be positive")
    return k * G


def count_complete_outputs(*sizes: int) -> GrossNumber:
    """``prod (b_i + 1)^G`` for tape alphabets of ``b_i`` symbols (plus blank)."""
    if not sizes:
        raise ValueError("need at least one tape")
    total = ONE
    for b in sizes:
        if b < 1:
            raise ValueError("each tape alphabet needs at least one symbol")
        total = total * GrossNumber(b + 1) ** G
    return total


def observation_budget(k: int, policy: str = "per-tape") -> tuple[GrossNumber, ...]:
    """Split the ``G`` sequential observations over ``k`` tapes."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if policy == "single-tape":
        return (G,) + (ZERO,) * (k - 1)
    if policy == "per-tape":
        return (G / k,) * k
    if policy == "two-tapes":
        return (G / 2, G / 2) + (ZERO,) * (k - 2)
    raise ValueError(f"unknown budget policy {policy!r}")


def observable_simulation_steps(t: Gross) -> bool:
    """Whether simulating ``t`` steps on one tape stays within ``G`` observations.

    ``t^2 + t <= G``, the radical-free form of ``t <= (sqrt(4G + 1) - 1) / 2``.
    """
    t = _g(t)
    if t < 0:
        raise ValueError("t must be non-negative")
    return t * t + t <= G


@dataclass(frozen=True)
class ObservabilityReport:
    machine: str
    k: int
    alphabet_sizes: tuple[int, ...]
    complete_output_size: GrossNumber
    complete_outputs: GrossNumber
    budget: tuple[GrossNumber, ...]
    user_radix: int
    max_radix: int
    decodable: bool
    max_observable_steps: str = "t^2 + t <= G"

    def lines(self) -> list[str]:
        return [
            f"machine: {self.machine}",
            f"tapes: {self.k}",
            "alphabet_sizes: " + " ".join(str(b) for b in self.alphabet_sizes),
            f"complete_output_size: {format_gross(self.complete_output_size)}",
            f"complete_outputs: {format_gross(self.complete_outputs)}",
            "budget_per_tape: " + ", ".join(format_gross(x) for x in self.budget),
            f"user_radix: {self.user_radix}",
            f"max_tape_radix: {self.max_radix}",
            f"decodable: {'yes' if self.decodable else 'no'}",
            f"max_observable_steps: {self.max_observable_steps}",
        ]

    def __str__(self) -> str:
        return "\n".join(self.lines())


def machine_observability_report(m: MultiTapeMachine, user_radix: int) -> ObservabilityReport:
    """Counting results for ``m`` as seen by a user who knows radix ``user_radix``.

    The output is decodable only when the user radix is at least the size of
    every tape alphabet.
    """
    if user_radix < 2:
        raise ValueError("user radix must be at least 2")
    sizes = tuple(len(s) for s in m.inputs)
    b = max(sizes)
    return ObservabilityReport(
        machine=m.name,
        k=m.k,
        alphabet_sizes=sizes,
        complete_output_size=complete_output_size(m.k),
        complete_outputs=count_complete_outputs(*sizes),
        budget=observation_budget(m.k, "per-tape"),
        user_radix=user_radix,
        max_radix=b,
        decodable=user_radix >= b,
    )
