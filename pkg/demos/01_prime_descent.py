# %% [markdown]
# # Descent for a single prime
#
# Start from a solution of a^2 + b^2 + 1 = 0 (mod p), then walk the order
# keys of a5 down to (0, 0).  Every step is printed.

# %%
from foursq.descent import decompose_prime, descent_step, reduced_solution_from_witness
from foursq.euler import norm

p = 1049
q, cert = decompose_prime(p)
print(f"{p} = " + " + ".join(f"{x}^2" for x in q), "->", norm(q))

# %%
print("initial (a1..a4; a5):", cert.initial)
for s in cert.steps:
    print(
        f"step {s.step_index}: p'={s.p_prime:<4} companion={s.b}  c={tuple(s.c)}  d={s.d}"
        f"  a5 {s.a[4]} -> {s.a_next[4]}  key {s.key_before} -> {s.key_after}"
    )

# %% [markdown]
# The classic small example: p = 23 from the witness (8, 2).  One step,
# dividing the composed quadruple (-9, -6, 9, 3) by 3.

# %%
sol = reduced_solution_from_witness(23, 8, 2)
nxt, rec = descent_step(sol)
print(sol, "->", nxt)
print("composed:", tuple(rec.c), "gcd:", rec.d)

# %%
# a large prime near the input cap
q, cert = decompose_prime(2**61 - 1)
print(q, "steps:", len(cert.steps))
print("a5 chain:", cert.chain)
