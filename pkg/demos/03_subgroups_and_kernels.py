# Order-N subgroups of T(K)[N] and the isogenies that have them as kernels.
from collections import Counter

from tatesub.subgroups import (
    admissible_triples,
    classify,
    enumerate_subgroups,
    kernel_of_psi,
    verify_universal_bijection,
)

N = 6

# %% one subgroup per index-N sublattice; there are sigma(N) of them
subs = enumerate_subgroups(N)
print(len(subs), "subgroups of order", N)

# %% each subgroup gives (d, e, q') with q'^e = q^d
for r in subs[:4]:
    d, e, qp = classify(r.points)
    print(r.hermite, "->", (d, e, str(qp)))

print(Counter(classify(r.points)[:2] for r in subs))

# %% and each admissible triple gives back a subgroup as the kernel of [a, x] -> [a^d, e x]
d, e, qp = admissible_triples(N)[2]
K = kernel_of_psi(N, d, e, qp)
print((d, e, str(qp)), "kernel:", sorted(str(P) for P in K))
print("classify(kernel) recovers the triple:", classify(K) == (d, e, qp))

# %% both directions at once, for every subgroup and every triple
for n in range(1, 13):
    cert = verify_universal_bijection(n)
    print(n, cert.subgroup_count, "pass" if cert.passed else cert.failure)
