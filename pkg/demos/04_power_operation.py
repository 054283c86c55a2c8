# Pulling the coordinate functions x_k back along psi_{d,e}.
from tatesub.power_operation import (
    QPRIME_EXPONENT_SIGN,
    compare_formula_vs_pointwise,
    paper_formula_Pbar,
    pullback_xk_pointwise,
    verify_psi_star_hom,
)
from tatesub.rings import divisor_pairs

N = 4

# %% pointwise: evaluate x_k(psi(P)) on every geometric point and fit a monomial
for d, e in divisor_pairs(N):
    for k in range(N):
        entry = pullback_xk_pointwise(N, d, e, k)
        cells = {m: str(v) for m, v in enumerate(entry.entries) if v is not None}
        print(f"d={d} e={e} k={k}:", cells or 0)

# %% the closed product formula, with q' raised to the power sign * alpha
print("sign =", QPRIME_EXPONENT_SIGN)
print(paper_formula_Pbar(N, 2, 2, 2) == pullback_xk_pointwise(N, 2, 2, 2))

# %% the two routes agree for every N up to 8
for n in range(1, 9):
    print(n, compare_formula_vs_pointwise(n)["mismatches"], "mismatches")

# %% psi* respects every relation and makes both structural squares commute
print(verify_psi_star_hom(N).to_json())
