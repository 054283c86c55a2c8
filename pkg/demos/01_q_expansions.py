# Tate curve q-expansions with exact rational coefficients.
from tatesub.qseries import QSeries, discriminant, eta_product_24, j_invariant, tate_a4, tate_a6

# %% the two Weierstrass coefficients, known below q^8
a4 = tate_a4(8)
a6 = tate_a6(8)
print("a4 =", a4)
print("a6 =", a6)

# %% the discriminant from the b-invariants, checked against q * prod (1 - q^n)^24
delta = discriminant(12)
print("Delta =", delta)
print("matches the eta product:", delta == eta_product_24(12))

# %% j = c4^3 / Delta; the q^-1 pole comes from dividing by Delta = q + ...
j = j_invariant(5)
print("j =", j)
print("744 is the constant term:", j[0] == 744)

# %% series carry their truncation; asking beyond it is an error rather than a silent zero
s = QSeries.from_dict({0: 1, 1: -1}, 6)
print("1/(1 - q) =", s ** -1)
print("json:", (s ** -1).to_json())
