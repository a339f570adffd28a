"""Compile a multi-tape machine to one tape and compare step counts."""

from grossturing import corpus
from grossturing.mtcompile import alphabet_bound, check_equivalence, compile_machine, paper_bound, step_profile

m = corpus.load("succ2")
cm = compile_machine(m)
print(f"succ2: {m.k} tapes, {len(cm.machine.alphabet)} single-tape symbols (bound {alphabet_bound(m)})")

eq = check_equivalence(m, "1011", compiled=cm)
print("input 1011 agrees:", eq.agrees, "| output tape:", "".join(eq.decoded_final.tapes[1].contents()))

profile = step_profile(m, "1" * 40, 40, cm)
print("\n  t   s(t)   t^2+t   3(t^2+t)+C0*t")
for t in (1, 5, 10, 20, 40):
    if t < len(profile):
        print(f"{t:>3} {profile[t]:>6} {paper_bound(t):>7} {cm.C * paper_bound(t) + cm.C0 * t:>15}")
