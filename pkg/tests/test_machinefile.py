import pytest

from grossturing import corpus
from grossturing.machinefile import MachineSyntaxError, format_machine, load_machine, parse_machine, save_machine
from grossturing.tmcore import MultiTapeMachine, SingleTapeMachine, run

SMALL = """\
machine tiny   # a comment
tapes 2
blank _
startmark >
start q0
final acc
input 1 a
input 2 a
rule q0 a,> -> acc a,> N,N
"""


def test_parse_small():
    m = parse_machine(SMALL)
    assert isinstance(m, MultiTapeMachine)
    assert m.name == "tiny" and m.k == 2 and m.finals == {"acc"}
    assert m.states == {"q0", "acc"}
    assert m.tape_alphabet(1) == {"a", "_", ">"}
    assert m.tape_alphabet(0) == {"a", "_"}
    assert run(m, "a").accepted


@pytest.mark.parametrize("name", corpus.MULTI_TAPE + corpus.STRESS + corpus.SINGLE_TAPE)
def test_format_round_trip(name):
    m = corpus.load(name)
    again = parse_machine(format_machine(m, header="regenerated"))
    assert again == m
    assert format_machine(again) == format_machine(m)


def test_save_and_load(tmp_path):
    m = corpus.load("unary_succ")
    assert isinstance(m, SingleTapeMachine)
    target = tmp_path / "u.tm"
    save_machine(m, target)
    assert load_machine(target) == m


def test_single_tape_directives():
    m = parse_machine("tapes 1\nstart q\ninput 1 1\nwork x\nmode semi-infinite\nrule q 1 -> q x R\n")
    assert m.alphabet == {"1", "x", "_"} and m.tape_mode == "semi-infinite"
    assert "work x" in format_machine(m) and "mode semi-infinite" in format_machine(m)


@pytest.mark.parametrize(
    "text,line",
    [
        ("tapes 2\nstart q\nbogus 1\n", 3),
        ("tapes two\n", 1),
        ("tapes 2\nstart q\nrule q a -> q a,a R,R\n", 3),
        ("tapes 2\nstart q\nrule q a,a q a,a R,R\n", 3),
        ("tapes 2\nstart q\nrule q a,a -> q a,a R,R\nrule q a,a -> q a,a L,L\n", 4),
        ("start q\n", 0),
        ("tapes 2\n", 0),
        ("tapes 2\nstart q\nwork x\n", 0),
        ("tapes 2\nstart q\ninput 3 a\n", 0),
    ],
)
def test_syntax_errors(text, line):
    with pytest.raises(MachineSyntaxError) as info:
        parse_machine(text)
    assert info.value.line == line
