"""Compile a k-tape machine into a single-tape machine over a 2k-track tape.

Each cell of the compiled tape carries, for every simulated tape ``i``, the
symbol of that tape and a marker bit telling whether head ``i`` sits there.
A cell is one composite symbol; the all-blank, all-unmarked cell is the blank.

One simulated step is carried out in three sweeps:

1. *read*: starting on the leftmost marker, move right collecting the symbol
   under each marker until all ``k`` are known (the rightmost marker);
2. *write*: move left back to the leftmost marker, writing the new symbols.
   Markers that move left are carried one cell in the finite control; markers
   that move right are dropped on the right neighbour with a two-step detour;
3. *seek*: move right to the new leftmost marker.

A sweep covers at most the marker span ``D``, so a step costs at most
``3*D + 2*k + 4`` compiled transitions.  With ``D <= 2*(i - 1)`` before the
i-th step this totals ``3*(t^2 + t) + (2*k + 4)*t`` for ``t`` steps.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, NamedTuple, Sequence, Union

from .tmcore import (
    Configuration,
    MultiTapeMachine,
    Outcome,
    Runner,
    SingleTapeMachine,
    TapeView,
    Transition,
    _as_word,
    initial_configuration,
    validate,
)

__all__ = [
    "MARK",
    "NO_MARK",
    "SWEEP_PASSES",
    "CompileError",
    "UnknownCompositeSymbol",
    "MarkerError",
    "Encoding",
    "TrackTape",
    "Phase",
    "CompiledMachine",
    "Accounting",
    "alphabet_bound",
    "paper_bound",
    "encode_tapes",
    "decode_tape",
    "track_rows",
    "compile_machine",
    "simulate_and_account",
    "check_equivalence",
    "step_profile",
    "Provenance",
    "parse_provenance",
]

MARK = "↓"
NO_MARK = "·"
SWEEP_PASSES = 3

Cell = tuple[tuple[str, bool], ...]


class CompileError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class UnknownCompositeSymbol(KeyError):
    pass


class MarkerError(ValueError):
    """A compiled tape does not hold exactly one marker per simulated tape."""


def alphabet_bound(m: MultiTapeMachine) -> int:
    """``2^k (|S1|+1) prod_{i>=2} (|Si|+2)``: the number of possible composite cells."""
    n = 2**m.k * (len(m.inputs[0]) + 1)
    for sigma in m.inputs[1:]:
        n *= len(sigma) + 2
    return n


def paper_bound(t: int) -> int:
    """``2 * sum_{i=1..t} i = t^2 + t`` compiled steps for ``t`` simulated ones."""
    return t * t + t


# -- track encoding ----------------------------------------------------------


@dataclass(frozen=True)
class Encoding:
    """Injective map between 2k-track cells and composite symbol names."""

    k: int
    blank: str
    gammas: tuple[frozenset[str], ...]
    _names: dict = field(default_factory=dict, compare=False, repr=False)
    _cells: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def for_machine(cls, m: MultiTapeMachine) -> Encoding:
        return cls(m.k, m.blank, tuple(m.tape_alphabet(i) for i in range(m.k)))

    @property
    def blank_cell(self) -> Cell:
        return ((self.blank, False),) * self.k

    def name(self, cell: Cell) -> str:
        try:
            return self._names[cell]
        except KeyError:
            pass
        if len(cell) != self.k:
            raise ValueError(f"cell has {len(cell)} tracks pairs, expected {self.k}")
        for (sym, _), gamma in zip(cell, self.gammas):
            if sym not in gamma:
                raise ValueError(f"symbol {sym!r} is not in its tape alphabet")
        if cell == self.blank_cell:
            text = self.blank
        else:
            syms = "|".join(s for s, _ in cell)
            bits = "".join("1" if marked else "0" for _, marked in cell)
            text = f"[{syms}:{bits}]"
        self._names[cell] = text
        self._cells[text] = cell
        return text

    def cell(self, name: str) -> Cell:
        try:
            return self._cells[name]
        except KeyError:
            pass
        if name == self.blank:
            return self.blank_cell
        cell = None
        if name.startswith("[") and name.endswith("]") and ":" in name:
            syms, bits = name[1:-1].rsplit(":", 1)
            parts = syms.split("|")
            if len(parts) == len(bits) == self.k and set(bits) <= {"0", "1"}:
                cell = tuple(zip(parts, (b == "1" for b in bits)))
        try:
            known = cell is not None and self.name(cell) == name
        except ValueError:
            known = False
        if not known:
            raise UnknownCompositeSymbol(name)
        return cell

    def all_cells(self) -> Iterator[Cell]:
        per_track = [[(s, m) for s in sorted(g) for m in (False, True)] for g in self.gammas]
        return itertools.product(*per_track)


class TrackTape(NamedTuple):
    cells: tuple[str, ...]  # composite symbol names, left to right
    origin: int             # absolute position of cells[0]
    head: int               # index into cells of the leftmost marker


def encode_tapes(config: Configuration, encoding: Encoding) -> TrackTape:
    """Lay the k tapes of ``config`` side by side on a common origin."""
    if config.k != encoding.k:
        raise ValueError("configuration and encoding disagree on k")
    lo = min(v.start for v in config.tapes)
    hi = max(v.start + len(v.left) + len(v.right) - 1 for v in config.tapes)
    columns = []
    for p in range(lo, hi + 1):
        cell = []
        for v in config.tapes:
            j = p - v.start
            cells = v.left + v.right
            sym = cells[j] if 0 <= j < len(cells) else encoding.blank
            cell.append((sym, p == v.head))
        columns.append(encoding.name(tuple(cell)))
    # strip fully blank columns; heads are marked so they survive
    i, j = 0, len(columns)
    while columns[i] == encoding.blank:
        i += 1
    while columns[j - 1] == encoding.blank:
        j -= 1
    leftmost = min(v.head for v in config.tapes)
    return TrackTape(tuple(columns[i:j]), lo + i, leftmost - (lo + i))


def decode_tape(content: Union[TrackTape, TapeView], encoding: Encoding) -> tuple[TapeView, ...]:
    """Split a compiled tape back into k tape views, one head per marker."""
    if isinstance(content, TapeView):
        names = content.left + content.right
        origin = content.start
    else:
        names, origin = content.cells, content.origin
    return _decode_cells([encoding.cell(n) for n in names], origin, encoding, {})


def _decode_cells(cells: list[Cell], origin: int, encoding: Encoding, extra: dict[int, list[int]]) -> tuple[TapeView, ...]:
    views = []
    for i in range(encoding.k):
        heads = [origin + p for p, c in enumerate(cells) if c[i][1]] + extra.get(i, [])
        if len(heads) != 1:
            raise MarkerError(f"tape {i + 1} has {len(heads)} markers")
        head = heads[0]
        lo = min(origin, head)
        hi = max(origin + len(cells) - 1, head)
        syms = [
            cells[p - origin][i][0] if 0 <= p - origin < len(cells) else encoding.blank
            for p in range(lo, hi + 1)
        ]
        views.append(TapeView(tuple(syms[: head - lo]), tuple(syms[head - lo :]), encoding.blank, head))
    return tuple(views)


def track_rows(content: Union[TrackTape, Sequence[str]], encoding: Encoding) -> list[list[str]]:
    """The 2k rows of a compiled tape: symbol row, marker row, per tape."""
    names = content.cells if isinstance(content, TrackTape) else content
    cells = [encoding.cell(n) for n in names]
    rows = []
    for i in range(encoding.k):
        rows.append([c[i][0] for c in cells])
        rows.append([MARK if c[i][1] else NO_MARK for c in cells])
    return rows


# -- compiled control --------------------------------------------------------


class Phase(NamedTuple):
    """What a compiled state remembers.

    ``kind`` is one of ``read``, ``write``, ``wiggle-right``, ``wiggle-back``
    or ``seek``; ``q`` is the simulated state (the target state for ``seek``).
    ``carry`` holds markers travelling with the head and ``rplace`` the
    markers a right detour must drop.
    """

    kind: str
    q: str
    reads: tuple = ()
    done: tuple = ()
    carry: tuple = ()
    rplace: tuple = ()

    @property
    def name(self) -> str:
        tag = {"read": "R", "write": "W", "wiggle-right": "WR", "wiggle-back": "WB", "seek": "S"}[self.kind]
        parts = [tag, self.q, *(s or "" for s in self.reads)]
        for flags in (self.done, self.carry, self.rplace):
            if flags:
                parts.append("".join("1" if b else "0" for b in flags))
        return "|".join(parts)

    def describe(self) -> str:
        out = [self.kind, self.q]
        if self.reads:
            out.append("reads=(" + ",".join(s or "?" for s in self.reads) + ")")
        for label, flags in (("done", self.done), ("carry", self.carry), ("rplace", self.rplace)):
            if any(flags):
                out.append(f"{label}=" + ",".join(str(i + 1) for i, b in enumerate(flags) if b))
        return " ".join(out)


class _LazyDelta(Mapping):
    """Compiled transitions, generated on first use and cached."""

    def __init__(self, compiled: CompiledMachine):
        self._cm = compiled
        self._cache: dict = {}

    def __getitem__(self, key):
        try:
            hit = self._cache[key]
        except KeyError:
            hit = self._cache[key] = self._cm._transition(*key)
        if hit is None:
            raise KeyError(key)
        return hit

    def __iter__(self):
        return iter(self._cm.machine.delta)

    def __len__(self):
        return len(self._cm.machine.delta)


@dataclass(frozen=True, eq=False)
class LazyMachine:
    """Runnable view of a compiled machine whose delta is built on demand."""

    start: str
    finals: frozenset[str]
    blank: str
    delta: Mapping
    name: str = "machine"
    k = 1
    startmark = None
    tape_mode = "two-way"


class CompiledMachine:
    """A multi-tape machine compiled to one tape, with its provenance."""

    def __init__(self, source: MultiTapeMachine):
        self.source = source
        self.encoding = Encoding.for_machine(source)
        self._phases: dict[str, Phase] = {}
        k = source.k
        self._none = (None,) * k
        self._zeros = (False,) * k
        self.start_phase = self._read_phase(source.start)
        self.lazy = LazyMachine(
            start=self.start_phase.name,
            finals=frozenset(self._read_phase(q).name for q in source.finals),
            blank=source.blank,
            delta=_LazyDelta(self),
            name=f"{source.name}_1tape",
        )

    # construction constants of the sweep discipline
    @property
    def C(self) -> int:
        return SWEEP_PASSES

    @property
    def C0(self) -> int:
        return 2 * self.source.k + 4

    def _register(self, phase: Phase) -> str:
        name = phase.name
        known = self._phases.setdefault(name, phase)
        if known != phase:
            raise RuntimeError(f"compiled state name collision on {name!r}")
        return name

    def _read_phase(self, q: str) -> Phase:
        p = Phase("read", q, self._none)
        self._register(p)
        return p

    def phase(self, state: str) -> Phase:
        return self._phases[state]

    def _finish(self, target: str, cell: list) -> tuple[Phase, str]:
        if any(marked for _, marked in cell):
            return self._read_phase(target), "N"
        return Phase("seek", target), "R"

    def _transition(self, state: str, reads: tuple[str, ...]) -> Transition | None:
        phase = self._phases.get(state)
        if phase is None or len(reads) != 1:
            return None
        try:
            cell = list(self.encoding.cell(reads[0]))
        except UnknownCompositeSymbol:
            return None
        k = self.source.k
        kind = phase.kind
        if kind == "read":
            if phase.q in self.source.finals:
                return None
            got = list(phase.reads)
            for i, (sym, marked) in enumerate(cell):
                if marked:
                    if got[i] is not None:
                        return None
                    got[i] = sym
            got = tuple(got)
            if None in got:
                nxt, move = Phase("read", phase.q, got), "R"
            elif (phase.q, got) not in self.source.delta:
                return None
            else:
                nxt, move = Phase("write", phase.q, got, self._zeros, self._zeros), "N"
        elif kind == "write":
            t = self.source.delta[(phase.q, phase.reads)]
            done = list(phase.done)
            new_l = [False] * k
            new_r = [False] * k
            for i, (sym, marked) in enumerate(cell):
                if marked and done[i]:
                    return None
            for i in range(k):
                if phase.carry[i]:
                    cell[i] = (cell[i][0], True)
            for i in range(k):
                sym, marked = cell[i]
                if marked and not done[i] and not phase.carry[i]:
                    done[i] = True
                    move = t.moves[i]
                    cell[i] = (t.writes[i], move == "N")
                    if move == "L":
                        new_l[i] = True
                    elif move == "R":
                        new_r[i] = True
            done_t, new_l = tuple(done), tuple(new_l)
            if any(new_r):
                nxt, move = Phase("wiggle-right", phase.q, phase.reads, done_t, new_l, tuple(new_r)), "R"
            elif not all(done) or any(new_l):
                nxt, move = Phase("write", phase.q, phase.reads, done_t, new_l), "L"
            else:
                nxt, move = self._finish(t.state, cell)
        elif kind == "wiggle-right":
            for i in range(k):
                if phase.rplace[i]:
                    cell[i] = (cell[i][0], True)
            nxt, move = Phase("wiggle-back", phase.q, phase.reads, phase.done, phase.carry), "L"
        elif kind == "wiggle-back":
            if not all(phase.done) or any(phase.carry):
                nxt, move = Phase("write", phase.q, phase.reads, phase.done, phase.carry), "L"
            else:
                nxt, move = self._finish(self.source.delta[(phase.q, phase.reads)].state, cell)
        else:  # seek
            nxt, move = self._finish(phase.q, cell)
        return Transition(self._register(nxt), (self.encoding.name(tuple(cell)),), (move,))

    # -- materialization ----------------------------------------------------

    @cached_property
    def machine(self) -> SingleTapeMachine:
        """The full single-tape machine: every reachable state and transition."""
        cells = [self.encoding.name(c) for c in self.encoding.all_cells()]
        delta: dict = {}
        states = {self.start_phase.name, *self.lazy.finals}
        frontier = [self.start_phase.name]
        while frontier:
            q = frontier.pop()
            for sym in cells:
                t = self._transition(q, (sym,))
                if t is None:
                    continue
                delta[(q, (sym,))] = t
                if t.state not in states:
                    states.add(t.state)
                    frontier.append(t.state)
        used = {sym for (_, (sym,)) in delta} | {t.writes[0] for t in delta.values()}
        gamma = used | {self.source.blank}
        return SingleTapeMachine(
            states=frozenset(states),
            alphabet=frozenset(gamma),
            blank=self.source.blank,
            inputs=frozenset(gamma - {self.source.blank}),
            start=self.start_phase.name,
            finals=self.lazy.finals,
            delta=delta,
            name=self.lazy.name,
        )

    # -- running --------------------------------------------------------------

    def encode_configuration(self, config: Configuration) -> Configuration:
        """Compiled configuration at the start of a simulated step."""
        tape = encode_tapes(config, self.encoding)
        view = TapeView(tape.cells[: tape.head], tape.cells[tape.head :], self.source.blank, tape.origin + tape.head)
        return Configuration(self._read_phase(config.state).name, (view,))

    def initial(self, x: Union[str, Sequence[str]] = ()) -> Configuration:
        return self.encode_configuration(initial_configuration(self.source, x))

    def decode(self, config: Configuration) -> Configuration:
        """Simulated configuration behind a compiled one.

        Markers travelling in the finite control are put back where the
        sweep will drop them, so every reachable configuration decodes to
        exactly one marker per tape.
        """
        phase = self.phase(config.state)
        view = config.tapes[0]
        names = view.left + view.right
        cells = [self.encoding.cell(n) for n in names]
        extra: dict[int, list[int]] = {}
        h = view.head
        for i in range(self.source.k):
            if phase.kind == "write" and phase.carry[i]:
                extra.setdefault(i, []).append(h)
            elif phase.kind == "wiggle-right":
                if phase.rplace[i]:
                    extra.setdefault(i, []).append(h)
                if phase.carry[i]:
                    extra.setdefault(i, []).append(h - 2)
            elif phase.kind == "wiggle-back" and phase.carry[i]:
                extra.setdefault(i, []).append(h - 1)
        return Configuration(phase.q, _decode_cells(cells, view.start, self.encoding, extra))

    def is_step_boundary(self, state: str) -> bool:
        p = self._phases.get(state)
        return p is not None and p.kind == "read" and all(s is None for s in p.reads)

    def provenance_text(self) -> str:
        """Sidecar text: composite symbols to track tuples, states to phases."""
        m = self.machine
        lines = [
            f"# provenance of {m.name}, compiled from {self.source.name}",
            f"source {self.source.name}",
            f"tracks {self.source.k}",
            f"blank {self.source.blank}",
            f"startmark {self.source.startmark}",
            f"constants C={self.C} C0={self.C0}",
        ]
        for sym in sorted(m.alphabet):
            values = []
            for s, marked in self.encoding.cell(sym):
                values += [s, MARK if marked else NO_MARK]
            lines.append(f"{sym} = ({','.join(values)})")
        for q in sorted(m.states):
            lines.append(f"{q} = {self.phase(q).describe()}")
        return "\n".join(lines) + "\n"


def compile_machine(m: MultiTapeMachine) -> CompiledMachine:
    diagnostics = validate(m)
    if diagnostics:
        raise CompileError(diagnostics)
    return CompiledMachine(m)


# -- comparison and accounting -------------------------------------------------


class Accounting(NamedTuple):
    multi_steps: int
    single_steps: int
    paper_bound: int
    scaled_bound: int
    C: int
    C0: int
    multi_outcome: Outcome
    single_outcome: Outcome | None
    agrees: bool

    @property
    def paper_bound_holds_scaled(self) -> bool:
        return self.single_steps <= self.scaled_bound


def _step_until(runner: Runner, cm: CompiledMachine, boundaries: int, to_halt: bool, cap: int) -> int:
    seen = 0
    while (to_halt or seen < boundaries) and runner.step():
        if cm.is_step_boundary(runner.state):
            seen += 1
        if runner.steps > cap:
            raise RuntimeError("compiled run exceeded its step bound")
    return seen


def simulate_and_account(
    m: MultiTapeMachine,
    x: Union[str, Sequence[str]],
    t: int,
    compiled: CompiledMachine | None = None,
) -> Accounting:
    """Run ``m`` for up to ``t`` steps and the compiled machine for the same work.

    ``single_steps`` counts compiled transitions until ``t'`` simulated steps
    have completed; if ``m`` halts on an undefined transition the compiled
    read sweep that discovers it is counted too.
    """
    cm = compiled or compile_machine(m)
    start = initial_configuration(m, x)
    multi = Runner(m, start)
    while multi.steps < t and multi.step():
        pass
    tp = multi.steps
    scaled = cm.C * paper_bound(tp) + cm.C0 * tp
    single = Runner(cm.lazy, cm.encode_configuration(start))
    to_halt = multi.halt is Outcome.HALTED_UNDEFINED
    _step_until(single, cm, tp, to_halt, cap=scaled + 2 * tp + 16)
    agrees = cm.decode(single.configuration()) == multi.configuration() and (
        not to_halt or single.halt is Outcome.HALTED_UNDEFINED
    )
    return Accounting(
        multi_steps=tp,
        single_steps=single.steps,
        paper_bound=paper_bound(tp),
        scaled_bound=scaled,
        C=cm.C,
        C0=cm.C0,
        multi_outcome=multi.halt or Outcome.BUDGET_EXHAUSTED,
        single_outcome=single.halt,
        agrees=agrees,
    )


def step_profile(
    m: MultiTapeMachine,
    x: Union[str, Sequence[str]],
    t_max: int,
    compiled: CompiledMachine | None = None,
) -> list[int]:
    """Compiled steps needed for each prefix of the run, in one pass.

    ``profile[t]`` is the number of compiled transitions after which ``t``
    simulated steps are complete; the list is shorter than ``t_max + 1``
    when ``m`` halts first.
    """
    cm = compiled or compile_machine(m)
    runner = Runner(cm.lazy, cm.encode_configuration(initial_configuration(m, x)))
    profile = [0]
    while len(profile) <= t_max and runner.step():
        if cm.is_step_boundary(runner.state):
            profile.append(runner.steps)
    return profile


class Equivalence(NamedTuple):
    word: tuple[str, ...]
    multi: Outcome
    single: Outcome
    multi_final: Configuration
    decoded_final: Configuration

    @property
    def agrees(self) -> bool:
        return self.multi is self.single and self.multi_final == self.decoded_final


def check_equivalence(
    m: MultiTapeMachine,
    x: Union[str, Sequence[str]],
    max_steps: int = 10_000,
    compiled: CompiledMachine | None = None,
) -> Equivalence:
    """Run both machines to halting (or budget) and compare what they leave behind."""
    cm = compiled or compile_machine(m)
    word = _as_word(x, m.input_alphabet(0))
    start = initial_configuration(m, word)
    multi = Runner(m, start)
    while multi.steps < max_steps and multi.step():
        pass
    tp = multi.steps
    single = Runner(cm.lazy, cm.encode_configuration(start))
    cap = cm.C * paper_bound(tp) + cm.C0 * tp + 2 * tp + 16
    if multi.halt is None:
        _step_until(single, cm, tp, False, cap)
        single_outcome = Outcome.BUDGET_EXHAUSTED
    else:
        while single.step():
            if single.steps > cap:
                break
        single_outcome = single.halt or Outcome.BUDGET_EXHAUSTED
    return Equivalence(
        word,
        multi.halt or Outcome.BUDGET_EXHAUSTED,
        single_outcome,
        multi.configuration(),
        cm.decode(single.configuration()),
    )


# -- provenance sidecar ---------------------------------------------------------


@dataclass(frozen=True)
class Provenance:
    """What a sidecar file records about a compiled machine file."""

    source: str
    k: int
    blank: str
    startmark: str
    encoding: Encoding
    phases: dict = field(compare=False)  # compiled state -> (kind, simulated state)

    @property
    def input_alphabet(self) -> frozenset[str]:
        return self.encoding.gammas[0] - {self.blank, self.startmark}

    def encode_input(self, x: Union[str, Sequence[str]], start: str) -> Configuration:
        word = _as_word(x, self.input_alphabet)
        views = [TapeView((), word or (self.blank,), self.blank, 0)]
        views += [TapeView((), (self.startmark,), self.blank, 0) for _ in range(1, self.k)]
        tape = encode_tapes(Configuration(start, tuple(views)), self.encoding)
        view = TapeView(tape.cells[: tape.head], tape.cells[tape.head :], self.blank, tape.origin + tape.head)
        return Configuration(start, (view,))

    def decode(self, config: Configuration) -> Configuration:
        kind, q = self.phases[config.state]
        if kind not in ("read", "seek"):
            raise MarkerError(f"state {config.state!r} is in the middle of a sweep")
        return Configuration(q, decode_tape(config.tapes[0], self.encoding))


def parse_provenance(text: str) -> Provenance:
    header: dict[str, str] = {}
    cells: dict[str, tuple[str, ...]] = {}
    phases: dict[str, tuple[str, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if " = " in line:
            name, rhs = line.split(" = ", 1)
            if rhs.startswith("("):
                if not rhs.endswith(")"):
                    raise ValueError(f"line {lineno}: unterminated track tuple")
                cells[name] = tuple(rhs[1:-1].split(","))
            else:
                kind, q, *_ = rhs.split()
                phases[name] = (kind, q)
        else:
            key, _, value = line.partition(" ")
            header[key] = value.strip()
    try:
        k = int(header["tracks"])
        blank, startmark = header["blank"], header["startmark"]
    except (KeyError, ValueError):
        raise ValueError("provenance needs 'tracks', 'blank' and 'startmark' lines") from None
    gammas = [set() for _ in range(k)]
    for values in cells.values():
        if len(values) != 2 * k:
            raise ValueError(f"track tuple {values} does not have {2 * k} entries")
        for i in range(k):
            gammas[i].add(values[2 * i])
    encoding = Encoding(k, blank, tuple(frozenset(g | {blank}) for g in gammas))
    for name, values in cells.items():
        cell = tuple((values[2 * i], values[2 * i + 1] == MARK) for i in range(k))
        if encoding.name(cell) != name:
            raise ValueError(f"composite symbol {name!r} does not match its tracks")
    return Provenance(header.get("source", "?"), k, blank, startmark, encoding, phases)
