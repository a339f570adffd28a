"""Deterministic single-tape and k-tape Turing machines.

Machines are frozen 7-tuples.  A configuration stores, per tape, the content
left of the head (``left``) and the head cell plus everything to its right
(``right``), trimmed of blanks, so two configurations compare equal exactly
when they render to the same ``q#a^b#...`` text.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

__all__ = [
    "MOVES",
    "Transition",
    "SingleTapeMachine",
    "MultiTapeMachine",
    "TapeView",
    "Configuration",
    "MultiConfiguration",
    "Outcome",
    "RunOutcome",
    "Diagnostic",
    "MachineError",
    "InputSymbolOutOfAlphabet",
    "BoundaryViolation",
    "ConfigurationSyntaxError",
    "Runner",
    "validate",
    "tokenize_word",
    "initial_configuration",
    "step",
    "run",
    "run_from",
    "render",
    "parse_configuration",
    "TRACE_LIMIT",
    "TRACE_CELL_LIMIT",
]

MOVES = ("L", "R", "N")
_SHIFT = {"L": -1, "R": 1, "N": 0}
# Characters that would make rendered configurations or rule lines ambiguous.
RESERVED_CHARS = frozenset("#^,")
TRACE_LIMIT = 100_000
TRACE_CELL_LIMIT = 5_000_000


class MachineError(Exception):
    pass


class InputSymbolOutOfAlphabet(MachineError, ValueError):
    pass


class BoundaryViolation(MachineError):
    """A semi-infinite tape was asked to move left of its first cell."""


class ConfigurationSyntaxError(MachineError, ValueError):
    pass


class Transition(NamedTuple):
    state: str
    writes: tuple[str, ...]
    moves: tuple[str, ...]


def _freeze_delta(delta: Mapping) -> Mapping:
    if isinstance(delta, MappingProxyType):
        return delta
    if isinstance(delta, dict):
        return MappingProxyType(
            {(q, tuple(reads)): Transition(t[0], tuple(t[1]), tuple(t[2])) for (q, reads), t in delta.items()}
        )
    return delta  # lazily computed mappings are trusted to be immutable


@dataclass(frozen=True)
class SingleTapeMachine:
    """``(Q, Gamma, blank, Sigma, q0, F, delta)`` with a one-tape delta.

    ``delta`` maps ``(state, (symbol,))`` to a :class:`Transition` with
    1-tuples of writes and moves, the same shape the k-tape machine uses.
    """

    states: frozenset[str]
    alphabet: frozenset[str]
    blank: str
    inputs: frozenset[str]
    start: str
    finals: frozenset[str]
    delta: Mapping[tuple[str, tuple[str, ...]], Transition]
    tape_mode: str = "two-way"
    name: str = "machine"

    def __post_init__(self):
        for attr in ("states", "alphabet", "inputs", "finals"):
            object.__setattr__(self, attr, frozenset(getattr(self, attr)))
        object.__setattr__(self, "delta", _freeze_delta(self.delta))
        if self.tape_mode not in ("two-way", "semi-infinite"):
            raise ValueError(f"unknown tape mode {self.tape_mode!r}")

    k = 1
    startmark = None

    def tape_alphabet(self, i: int = 0) -> frozenset[str]:
        return self.alphabet

    def input_alphabet(self, i: int = 0) -> frozenset[str]:
        return self.inputs


@dataclass(frozen=True)
class MultiTapeMachine:
    """k-tape machine; tape ``i`` works over ``Sigma_i + {blank}`` (+ ``Z0`` for i >= 2)."""

    states: frozenset[str]
    inputs: tuple[frozenset[str], ...]
    blank: str
    startmark: str
    start: str
    finals: frozenset[str]
    delta: Mapping[tuple[str, tuple[str, ...]], Transition]
    name: str = "machine"

    tape_mode = "two-way"

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "inputs", tuple(frozenset(s) for s in self.inputs))
        object.__setattr__(self, "delta", _freeze_delta(self.delta))

    @property
    def k(self) -> int:
        return len(self.inputs)

    def tape_alphabet(self, i: int) -> frozenset[str]:
        extra = {self.blank} if i == 0 else {self.blank, self.startmark}
        return self.inputs[i] | extra

    def input_alphabet(self, i: int = 0) -> frozenset[str]:
        return self.inputs[i]


Machine = Union[SingleTapeMachine, MultiTapeMachine]


# -- configurations ----------------------------------------------------------


@dataclass(frozen=True)
class TapeView:
    """One tape as ``left ^ right``; the head reads ``right[0]``.

    ``head`` is the absolute cell index of the head.  It is bookkeeping for
    track alignment only and takes no part in equality.
    """

    left: tuple[str, ...]
    right: tuple[str, ...]
    blank: str = field(default="_", compare=False)
    head: int = field(default=0, compare=False)

    def __post_init__(self):
        left, right = tuple(self.left), tuple(self.right)
        i = 0
        while i < len(left) and left[i] == self.blank:
            i += 1
        j = len(right)
        while j > 1 and right[j - 1] == self.blank:
            j -= 1
        object.__setattr__(self, "left", left[i:])
        object.__setattr__(self, "right", right[:j] if right else (self.blank,))

    @property
    def symbol(self) -> str:
        return self.right[0]

    @property
    def start(self) -> int:
        """Absolute index of ``left[0]`` (or of the head when ``left`` is empty)."""
        return self.head - len(self.left)

    def contents(self) -> tuple[str, ...]:
        """Non-blank span of the tape, head position ignored."""
        cells = self.left + self.right
        i, j = 0, len(cells)
        while i < j and cells[i] == self.blank:
            i += 1
        while j > i and cells[j - 1] == self.blank:
            j -= 1
        return cells[i:j]


@dataclass(frozen=True)
class Configuration:
    state: str
    tapes: tuple[TapeView, ...]

    def __post_init__(self):
        object.__setattr__(self, "tapes", tuple(self.tapes))

    @property
    def k(self) -> int:
        return len(self.tapes)

    def __str__(self) -> str:
        return render(self)


MultiConfiguration = Configuration


class Outcome(enum.Enum):
    HALTED_FINAL = "halted-final"
    HALTED_UNDEFINED = "halted-undefined-transition"
    BUDGET_EXHAUSTED = "budget-exhausted"

    def __str__(self) -> str:
        return self.value


class RunOutcome(NamedTuple):
    outcome: Outcome
    steps: int
    final: Configuration
    trace: tuple[Configuration, ...] | None = None

    @property
    def accepted(self) -> bool:
        return self.outcome is Outcome.HALTED_FINAL


class _Tape:
    __slots__ = ("cells", "head", "blank")

    def __init__(self, blank: str, cells: dict[int, str] | None = None, head: int = 0):
        self.blank = blank
        self.cells = cells if cells is not None else {}
        self.head = head

    @classmethod
    def from_view(cls, view: TapeView, blank: str) -> _Tape:
        origin = view.start
        cells = {origin + i: s for i, s in enumerate(view.left + view.right) if s != blank}
        return cls(blank, cells, view.head)

    def read(self) -> str:
        return self.cells.get(self.head, self.blank)

    def write(self, symbol: str) -> None:
        if symbol == self.blank:
            self.cells.pop(self.head, None)
        else:
            self.cells[self.head] = symbol

    def view(self) -> TapeView:
        positions = self.cells.keys()
        lo = min(min(positions, default=self.head), self.head)
        hi = max(max(positions, default=self.head), self.head)
        get = self.cells.get
        left = tuple(get(p, self.blank) for p in range(lo, self.head))
        right = tuple(get(p, self.blank) for p in range(self.head, hi + 1))
        return TapeView(left, right, self.blank, self.head)


class Runner:
    """Mutable stepping engine over a machine; one :meth:`step` is one delta application."""

    def __init__(self, machine, config: Configuration):
        if config.k != machine.k:
            raise ValueError(f"configuration has {config.k} tapes, machine has {machine.k}")
        self.machine = machine
        self.state = config.state
        self.tapes = [_Tape.from_view(v, machine.blank) for v in config.tapes]
        self.steps = 0
        self.halt: Outcome | None = Outcome.HALTED_FINAL if config.state in machine.finals else None
        self._semi = machine.tape_mode == "semi-infinite"

    def reads(self) -> tuple[str, ...]:
        return tuple(t.read() for t in self.tapes)

    def step(self) -> bool:
        """Apply delta once; return False (and set ``halt``) when no step is possible."""
        if self.halt is not None:
            return False
        t = self.machine.delta.get((self.state, self.reads()))
        if t is None:
            self.halt = Outcome.HALTED_UNDEFINED
            return False
        if self._semi:
            for tape, move in zip(self.tapes, t.moves):
                if move == "L" and tape.head == 0:
                    raise BoundaryViolation(f"move L at the left end of the tape in state {self.state}")
        for tape, symbol, move in zip(self.tapes, t.writes, t.moves):
            tape.write(symbol)
            tape.head += _SHIFT[move]
        self.state = t.state
        self.steps += 1
        if self.state in self.machine.finals:
            self.halt = Outcome.HALTED_FINAL
        return True

    def configuration(self) -> Configuration:
        return Configuration(self.state, tuple(t.view() for t in self.tapes))


# -- validation --------------------------------------------------------------


class Diagnostic(NamedTuple):
    location: str
    message: str

    def __str__(self) -> str:
        return f"{self.location}: {self.message}"


def _bad_token(s: str) -> bool:
    return not s or any(c.isspace() or c in RESERVED_CHARS for c in s)


def validate(machine: Machine) -> list[Diagnostic]:
    """Every violated structural invariant, with where it was found.

    An empty list means the machine is well formed.
    """
    out: list[Diagnostic] = []
    k = machine.k
    if machine.start not in machine.states:
        out.append(Diagnostic("start", f"start state {machine.start!r} is not a state"))
    for q in sorted(machine.finals - machine.states):
        out.append(Diagnostic("final", f"final state {q!r} is not a state"))
    for q in sorted(machine.states):
        if not q or any(c.isspace() or c == "#" for c in q):
            out.append(Diagnostic(f"state {q!r}", "state names must be non-empty and free of whitespace and '#'"))

    if isinstance(machine, MultiTapeMachine):
        if k < 2:
            out.append(Diagnostic("tapes", f"a multi-tape machine needs k >= 2, got {k}"))
        if machine.startmark == machine.blank:
            out.append(Diagnostic("startmark", "start marker coincides with the blank"))
        for i, sigma in enumerate(machine.inputs, 1):
            if machine.startmark in sigma:
                out.append(Diagnostic(f"input {i}", f"start marker {machine.startmark!r} is an io symbol"))
            if machine.blank in sigma:
                out.append(Diagnostic(f"input {i}", f"blank {machine.blank!r} is an io symbol"))
            for s in sorted(sigma):
                if _bad_token(s) or "|" in s:
                    out.append(Diagnostic(f"input {i}", f"symbol {s!r} uses a reserved character"))
        for q in sorted(machine.states):
            if "|" in q:
                out.append(Diagnostic(f"state {q!r}", "'|' is reserved in multi-tape state names"))
    else:
        if machine.blank not in machine.alphabet:
            out.append(Diagnostic("blank", "blank is not in the tape alphabet"))
        if machine.blank in machine.inputs:
            out.append(Diagnostic("input 1", f"blank {machine.blank!r} is an io symbol"))
        for s in sorted(machine.inputs - machine.alphabet):
            out.append(Diagnostic("input 1", f"io symbol {s!r} is not in the tape alphabet"))
        for s in sorted(machine.alphabet):
            if _bad_token(s):
                out.append(Diagnostic("alphabet", f"symbol {s!r} uses a reserved character"))

    gammas = [machine.tape_alphabet(i) for i in range(k)]
    for (q, reads), t in machine.delta.items():
        where = f"rule {q} {','.join(reads)}"
        if q not in machine.states:
            out.append(Diagnostic(where, f"source state {q!r} is not a state"))
        if q in machine.finals:
            out.append(Diagnostic(where, f"transition defined on final state {q!r}"))
        if t.state not in machine.states:
            out.append(Diagnostic(where, f"target state {t.state!r} is not a state"))
        if not (len(reads) == len(t.writes) == len(t.moves) == k):
            out.append(Diagnostic(where, f"arity mismatch: expected {k} reads, writes and moves"))
            continue
        for i in range(k):
            if reads[i] not in gammas[i]:
                out.append(Diagnostic(where, f"read symbol {reads[i]!r} not in the alphabet of tape {i + 1}"))
            if t.writes[i] not in gammas[i]:
                out.append(Diagnostic(where, f"written symbol {t.writes[i]!r} not in the alphabet of tape {i + 1}"))
            if t.moves[i] not in MOVES:
                out.append(Diagnostic(where, f"move {t.moves[i]!r} is not one of L, R, N"))
    return out


# -- running -----------------------------------------------------------------


def tokenize_word(text: str, alphabet: Iterable[str]) -> tuple[str, ...]:
    """Split ``text`` into alphabet symbols, longest match first.

    Whitespace-separated text is split on whitespace instead.
    """
    symbols = sorted(set(alphabet), key=len, reverse=True)
    if any(c.isspace() for c in text):
        return tuple(text.split())
    out = []
    pos = 0
    while pos < len(text):
        for s in symbols:
            if text.startswith(s, pos):
                out.append(s)
                pos += len(s)
                break
        else:
            raise InputSymbolOutOfAlphabet(f"no symbol of the alphabet matches {text[pos:]!r}")
    return tuple(out)


def _as_word(x: Union[str, Sequence[str]], alphabet: frozenset[str]) -> tuple[str, ...]:
    word = tokenize_word(x, alphabet) if isinstance(x, str) else tuple(x)
    for s in word:
        if s not in alphabet:
            raise InputSymbolOutOfAlphabet(f"input symbol {s!r} is not in the input alphabet")
    return word


def initial_configuration(machine: Machine, x: Union[str, Sequence[str]] = ()) -> Configuration:
    """Start state, head 1 on the first input symbol, heads 2..k on ``Z0``."""
    word = _as_word(x, machine.input_alphabet(0))
    tapes = [TapeView((), word or (machine.blank,), machine.blank, 0)]
    for _ in range(1, machine.k):
        tapes.append(TapeView((), (machine.startmark,), machine.blank, 0))
    return Configuration(machine.start, tuple(tapes))


def step(machine: Machine, config: Configuration) -> Union[Configuration, Outcome]:
    """The successor configuration, or the reason no step applies."""
    runner = Runner(machine, config)
    if runner.step():
        return runner.configuration()
    return runner.halt


def run_from(
    machine: Machine,
    config: Configuration,
    max_steps: int,
    record: bool | None = None,
) -> RunOutcome:
    """Iterate :func:`step` until halting or until ``max_steps`` applications.

    By default (``record=None``) the trace is kept while the run stays
    within ``TRACE_LIMIT`` steps and ``TRACE_CELL_LIMIT`` stored cells, and
    dropped once it goes past either; ``True`` and ``False`` force
    recording on or off.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    runner = Runner(machine, config)
    trace = [config] if record is not False else None
    cells = 0
    while runner.steps < max_steps and runner.step():
        if trace is not None:
            c = runner.configuration()
            cells += sum(len(v.left) + len(v.right) for v in c.tapes)
            if record is None and (runner.steps > TRACE_LIMIT or cells > TRACE_CELL_LIMIT):
                trace = None
            else:
                trace.append(c)
    outcome = runner.halt if runner.halt is not None else Outcome.BUDGET_EXHAUSTED
    final = trace[-1] if trace else runner.configuration()
    return RunOutcome(outcome, runner.steps, final, tuple(trace) if trace is not None else None)


def run(
    machine: Machine,
    x: Union[str, Sequence[str]] = (),
    max_steps: int = 1_000_000,
    record: bool | None = None,
) -> RunOutcome:
    return run_from(machine, initial_configuration(machine, x), max_steps, record)


# -- text rendering ----------------------------------------------------------


def render(config: Configuration) -> str:
    """``q#left^right#...``, ASCII ``^`` standing for the head arrow."""
    parts = [config.state]
    for view in config.tapes:
        parts.append("".join(view.left) + "^" + "".join(view.right))
    return "#".join(parts)


def parse_configuration(text: str, machine: Machine) -> Configuration:
    parts = text.strip().split("#")
    state, tape_texts = parts[0], parts[1:]
    if not state:
        raise ConfigurationSyntaxError("missing state")
    if len(tape_texts) != machine.k:
        raise ConfigurationSyntaxError(f"expected {machine.k} tapes, found {len(tape_texts)}")
    views = []
    for i, chunk in enumerate(tape_texts):
        if chunk.count("^") != 1:
            raise ConfigurationSyntaxError(f"tape {i + 1} must contain exactly one '^'")
        left_text, right_text = chunk.split("^")
        gamma = machine.tape_alphabet(i)
        try:
            left = tokenize_word(left_text, gamma)
            right = tokenize_word(right_text, gamma)
        except InputSymbolOutOfAlphabet as exc:
            raise ConfigurationSyntaxError(f"tape {i + 1}: {exc}") from None
        views.append(TapeView(left, right, machine.blank, len(left)))
    return Configuration(state, tuple(views))
