# %% [markdown]
# # Leading-prime order
#
# key(w) = (index of the largest prime factor, its exponent).  Products
# take the larger index; equal indices add exponents.

# %%
from foursq.order import key, multiply, precedes

for w in (1, 12, 32, 9, 6, 1024, 3):
    print(w, key(w).astuple())

# %%
print("6 < 9:", precedes(6, 9), " 1024 < 3:", precedes(1024, 3))
print("6 vs 12 incomparable:", precedes(6, 12), precedes(12, 6))
print("3 * 3 ->", key(multiply(3, 3)).astuple(), " 4 * 3 ->", key(multiply(4, 3)).astuple())
