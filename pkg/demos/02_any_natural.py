# %% [markdown]
# # Arbitrary naturals
#
# Factor n, decompose each prime by descent, fold with the four-square
# composition.  The greedy brute-force oracle gives an independent answer.

# %%
from foursq import canonicalize, count_representations, decompose, oracle_decompose
from foursq.euler import compose, norm

for n in (0, 1, 12, 360, 9999, 123456789):
    q, certs = decompose(n)
    print(f"{n:>10}: {tuple(q)}  canonical {tuple(canonicalize(q))}  primes {[c.p for c in certs]}")

# %%
# the composition multiplies norms
a, b = (1, 2, 3, 4), (5, 6, 7, 8)
print(compose(a, b), norm(compose(a, b)), norm(a) * norm(b))

# %%
for n in (7, 15, 4, 310):
    print(n, "oracle:", tuple(oracle_decompose(n)), "r4:", count_representations(n))
