"""Exact grossone arithmetic, Turing machines and a multi-tape to single-tape compiler."""

from .grossnum import (
    G,
    ONE,
    ZERO,
    Classification,
    DivisionByZero,
    GrossError,
    GrossNumber,
    GrossSyntaxError,
    Ordering,
    UnsupportedExponent,
    UnsupportedResult,
    add,
    classify,
    compare,
    div,
    format_gross,
    mul,
    parse_gross,
    pow,
    sub,
)
from .machinefile import MachineSyntaxError, format_machine, load_machine, parse_machine, save_machine
from .mtcompile import (
    CompiledMachine,
    Encoding,
    alphabet_bound,
    check_equivalence,
    compile_machine,
    decode_tape,
    encode_tapes,
    paper_bound,
    simulate_and_account,
)
from .observe import (
    P_HAT,
    GrossSequence,
    NumeralSystem,
    complete_output_size,
    count_complete_outputs,
    count_positional,
    counting_span,
    is_complete,
    last_element,
    machine_observability_report,
    observable_elements,
    observable_simulation_steps,
    observation_budget,
)
from .tmcore import (
    Configuration,
    MultiTapeMachine,
    Outcome,
    RunOutcome,
    SingleTapeMachine,
    TapeView,
    Transition,
    initial_configuration,
    parse_configuration,
    render,
    run,
    step,
    validate,
)

__version__ = "0.1.0"
