"""Run the bundled two-tape palindrome checker and print its trace."""

from grossturing import corpus
from grossturing.tmcore import render, run

pal = corpus.load("pal2")
for word in ("abba", "abca"):
    res = run(pal, word, record=True)
    print(f"{word!r}: {res.outcome.value} after {res.steps} steps")
    for c in res.trace[:6]:
        print("   ", render(c))
    print("    ...")
    print("   ", render(res.final))
