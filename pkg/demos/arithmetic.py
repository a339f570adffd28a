"""A short walk through exact grossone arithmetic."""

from grossturing import G, classify, compare, div, format_gross, parse_gross, pow

print("G - G =", G - G)
print("G / G =", G / G)
print("G * G^-2 =", pow(G, -2) * G)

chain = ["G/2", "G - 1", "G", "2*G^2 + 1", "2^G", "10^G", "G^G - 1", "G^G"]
values = [parse_gross(s) for s in chain]
print("\nan increasing chain:")
for a, b in zip(values, values[1:]):
    print(f"  {format_gross(a):>12} {compare(a, b).name:<7} {format_gross(b)}")

print("\n(G^2 - 1) / (G - 1) =", div(G * G - 1, G - 1))
print("2^G * 3^G =", pow(2, G) * pow(3, G))

x = 3 + 2 * pow(G, -1) + G
c = classify(x)
print(f"\n{x} is {c.kind}: infinite {c.infinite_part}, finite {c.finite_part}, infinitesimal {c.infinitesimal_part}")
