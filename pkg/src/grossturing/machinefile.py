"""Line-oriented machine files.

::

    machine pal2
    tapes 2
    blank _
    startmark >
    start q0
    final acc
    input 1 a b
    input 2 a b
    rule q0 a,> -> q1 a,> N,R

``#`` starts a comment.  Single-tape files (``tapes 1``) may also carry
``work SYM...`` (extra tape symbols) and ``mode semi-infinite``.
States are whatever ``start``, ``final`` and ``rule`` lines mention.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .tmcore import MultiTapeMachine, SingleTapeMachine, Transition

__all__ = ["MachineSyntaxError", "parse_machine", "format_machine", "load_machine", "save_machine"]

Machine = Union[SingleTapeMachine, MultiTapeMachine]


class MachineSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _split_list(token: str, k: int, what: str, lineno: int) -> tuple[str, ...]:
    items = (token,) if k == 1 else tuple(token.split(","))
    if len(items) != k or any(not s for s in items):
        raise MachineSyntaxError(f"expected {k} comma-separated {what}, got {token!r}", lineno)
    return items


def parse_machine(text: str) -> Machine:
    name = "machine"
    k = None
    blank = "_"
    startmark = ">"
    start = None
    finals: list[str] = []
    inputs: dict[int, list[str]] = {}
    work: list[str] = []
    mode = "two-way"
    rules: list[tuple[int, list[str]]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, *args = line.split()
        if word == "machine":
            if len(args) != 1:
                raise MachineSyntaxError("usage: machine NAME", lineno)
            name = args[0]
        elif word == "tapes":
            if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
                raise MachineSyntaxError("usage: tapes K with K >= 1", lineno)
            k = int(args[0])
        elif word == "blank":
            if len(args) != 1:
                raise MachineSyntaxError("usage: blank SYM", lineno)
            blank = args[0]
        elif word == "startmark":
            if len(args) != 1:
                raise MachineSyntaxError("usage: startmark SYM", lineno)
            startmark = args[0]
        elif word == "start":
            if len(args) != 1:
                raise MachineSyntaxError("usage: start STATE", lineno)
            start = args[0]
        elif word == "final":
            finals.extend(args)
        elif word == "input":
            if not args or not args[0].isdigit() or int(args[0]) < 1:
                raise MachineSyntaxError("usage: input I SYM...", lineno)
            inputs.setdefault(int(args[0]), []).extend(args[1:])
        elif word == "work":
            work.extend(args)
        elif word == "mode":
            if args not in (["two-way"], ["semi-infinite"]):
                raise MachineSyntaxError("usage: mode two-way|semi-infinite", lineno)
            mode = args[0]
        elif word == "rule":
            rules.append((lineno, args))
        else:
            raise MachineSyntaxError(f"unknown directive {word!r}", lineno)

    if k is None:
        raise MachineSyntaxError("missing 'tapes' line", 0)
    if start is None:
        raise MachineSyntaxError("missing 'start' line", 0)
    for i in inputs:
        if i > k:
            raise MachineSyntaxError(f"input alphabet for tape {i} but only {k} tapes", 0)

    delta: dict[tuple[str, tuple[str, ...]], Transition] = {}
    states = {start, *finals}
    for lineno, args in rules:
        if len(args) != 6 or args[2] != "->":
            raise MachineSyntaxError("usage: rule STATE READS -> STATE WRITES MOVES", lineno)
        q, reads_tok, _, target, writes_tok, moves_tok = args
        reads = _split_list(reads_tok, k, "reads", lineno)
        writes = _split_list(writes_tok, k, "writes", lineno)
        moves = _split_list(moves_tok, k, "moves", lineno)
        if (q, reads) in delta:
            raise MachineSyntaxError(f"duplicate rule for {q} {reads_tok}", lineno)
        delta[(q, reads)] = Transition(target, writes, moves)
        states.update((q, target))

    if k == 1:
        sigma = frozenset(inputs.get(1, ()))
        return SingleTapeMachine(
            states=frozenset(states),
            alphabet=sigma | set(work) | {blank},
            blank=blank,
            inputs=sigma,
            start=start,
            finals=frozenset(finals),
            delta=delta,
            tape_mode=mode,
            name=name,
        )
    if work or mode != "two-way":
        raise MachineSyntaxError("'work' and 'mode' apply to single-tape machines only", 0)
    return MultiTapeMachine(
        states=frozenset(states),
        inputs=tuple(frozenset(inputs.get(i, ())) for i in range(1, k + 1)),
        blank=blank,
        startmark=startmark,
        start=start,
        finals=frozenset(finals),
        delta=delta,
        name=name,
    )


def format_machine(m: Machine, header: str = "") -> str:
    """Serialize to the machine-file format; rules are sorted for stable output."""
    lines = [f"# {row}".rstrip() for row in header.splitlines()] if header else []
    lines += [f"machine {m.name}", f"tapes {m.k}", f"blank {m.blank}"]
    if m.k > 1:
        lines.append(f"startmark {m.startmark}")
    lines.append(f"start {m.start}")
    if m.finals:
        lines.append("final " + " ".join(sorted(m.finals)))
    for i in range(m.k):
        lines.append(f"input {i + 1} " + " ".join(sorted(m.input_alphabet(i))))
    if m.k == 1:
        extra = sorted(m.alphabet - m.inputs - {m.blank})
        if extra:
            lines.append("work " + " ".join(extra))
        if m.tape_mode != "two-way":
            lines.append(f"mode {m.tape_mode}")
    for (q, reads), t in sorted(m.delta.items()):
        lines.append(f"rule {q} {','.join(reads)} -> {t.state} {','.join(t.writes)} {','.join(t.moves)}")
    return "\n".join(lines) + "\n"


def load_machine(path: Union[str, Path]) -> Machine:
    return parse_machine(Path(path).read_text(encoding="utf-8"))


def save_machine(m: Machine, path: Union[str, Path], header: str = "") -> None:
    Path(path).write_text(format_machine(m, header), encoding="utf-8")
