# %% [markdown]
# # Certificates
#
# A certificate records every step.  The verifier recomputes each identity
# from scratch; flipping any single integer makes it fail.

# %%
import copy

from foursq.certificate import deserialize, serialize, verify
from foursq.descent import decompose_prime

_, cert = decompose_prime(23)
text = serialize(cert)
print(text)
print(verify(deserialize(text)))

# %%
bad = copy.deepcopy(cert)
c = bad.steps[0].c
bad.steps[0].c = (c[0], c[1] + 1, c[2], c[3])
print(verify(bad))
