"""What an observer with a finite numeral system can count."""

from grossturing import G, corpus
from grossturing.observe import (
    P_HAT,
    GrossSequence,
    count_positional,
    machine_observability_report,
    observable_elements,
    observable_simulation_steps,
)

print("numerals visible in 1, 2, ..., G:")
print("  ", ", ".join(str(x) for x in observable_elements(P_HAT, GrossSequence(1, 1, G))))

print("\nbinary words of G digits:", count_positional(2, "integers"))
print("decimal numbers in [0, 1) with G digits:", count_positional(10, "half-open"))

for t in (10, 10**6, G / 2, G):
    print(f"can the simulation of {t} steps be observed? {observable_simulation_steps(t)}")

print()
print(machine_observability_report(corpus.load("copy3"), user_radix=10))
