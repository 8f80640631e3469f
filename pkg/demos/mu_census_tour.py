"""mu-graph censuses of Gamma^(n): each mu-graph splits into d equal cycles, d an odd divisor of n-1."""

from gridlocus import build_gamma, context_for_n, mu_census
from gridlocus.mu import divisor_set
from gridlocus.symplectic import local_mu_crosscheck, mu_cycle_oracle, odd_divisors, realize_divisor

for n in (5, 7, 9, 11):
    census = mu_census(build_gamma(context_for_n(n), labels=False), jobs=2)
    shown = ", ".join(f"{'+'.join(map(str, p))}: {c}" for p, c in census.counts.items())
    print(f"n={n:2d}  {shown}   d-set {sorted(divisor_set(census))}, odd divisors of n-1 {odd_divisors(n - 1)}")

# Large n without building the graph: one mu-graph per odd divisor, checked against the formula.
ctx = context_for_n(27)
for d in odd_divisors(26):
    _, _, beta = realize_divisor(ctx, d)
    print(f"n=27 d={d:2d}: oracle {mu_cycle_oracle(ctx, beta)}, direct enumeration agrees: {local_mu_crosscheck(ctx, beta)}")
