"""Bundled machine files used by the tests, demos and CLI examples."""

from __future__ import annotations

from importlib import resources

from ..machinefile import parse_machine

MULTI_TAPE = ("pal2", "succ2", "copy3")
STRESS = ("spread2",)
SINGLE_TAPE = ("unary_succ",)

# A representative input for each machine; used by the step-accounting checks.
SAMPLE_INPUTS = {"pal2": "abba", "succ2": "1011", "copy3": "ab", "spread2": "", "unary_succ": "111"}


def path(name: str):
    return resources.files(__name__).joinpath(f"{name}.tm")


def load(name: str):
    return parse_machine(path(name).read_text(encoding="utf-8"))
