# Points of T(K)[N] over K* = mu_oo x q^Q, and the pairing e_N.
from tatesub.torsion import a_N, b_N, char_xk, enumerate_torsion, pairing_table, root_of_unity, weil_pairing

N = 3

# %% N^2 points [zeta * q^t, t], grouped by the component t = k/N
points = enumerate_torsion(N)
for P in points:
    k = b_N(P, N)
    print(P, " b_N =", k, " x_k =", char_xk(k, P, N))

# %% x_k only sees its own component
P = points[4]
print([str(char_xk(k, P, N)) for k in range(N)])

# %% e_N(a_N(zeta), y) = zeta^(b_N(y))
zeta = root_of_unity(1, N)
for R in points[::N]:
    print(R, weil_pairing(a_N(zeta), R, N), zeta ** b_N(R, N))

# %% the full table of pairing values, as exponents of roots of unity
for row in pairing_table(2):
    print(" ".join(f"{x:>4}" for x in row))
