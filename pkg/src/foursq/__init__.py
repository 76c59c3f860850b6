"""Four-square decompositions by leading-prime order descent, with certificates."""
from .arith import DEFAULT_SEED, MAX_INPUT, NotPrimeError, RangeError
from .certificate import Certificate, CertificateFormatError, DescentRecord, deserialize, serialize, verify
from .descent import ReducedSolution, decompose_prime, descent_step, initial_reduced_solution
from .euler import Quadruple, compose, norm
from .foursquares import canonicalize, count_representations, decompose, oracle_decompose
from .order import Factorization, OrderKey, PrimeInterval, precedes

__version__ = "0.1.0"
