"""Good primes, sign characters and invariant cyclic subgroups of the lattice.

For a good prime p, a Q-invariant cyclic subgroup C of order p in A/p^r A is
acted on through a character Q -> {+1, -1}. Averaging a lift a of a generator
with that sign gives an honest invariant vector

    a_hat = sum_f rho(f) alpha(f) a,

which is congruent to |Q| a mod p^r and hence nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from . import lattice as L
from .core import LatticeAction, VAPresentation
from .errors import LINE_CAP, BadPrimeError, CapacityError, ConsistencyError, HypothesisError, MalformedInputError, check_cap
from .finite import FiniteGroup, cyclic, is_prime, prime_factors, primes_upto


def good_prime_failures(p: int, qorder: int) -> list[str]:
    """Reasons p fails the congruence conditions for |Q| = qorder (empty when good)."""
    out = []
    if qorder % p == 0:
        out.append(f"{p} divides |Q| = {qorder}")
    for q in prime_factors(qorder):
        if q != 2 and p % q == 1:
            out.append(f"{p} = 1 mod {q}, an odd prime divisor of |Q|")
    if qorder % 2 == 0 and p % 4 != 3:
        out.append(f"|Q| = {qorder} is even but {p} is not 3 mod 4")
    return out


def is_good_prime(p: int, qorder: int) -> bool:
    return is_prime(p) and not good_prime_failures(p, qorder)


def good_primes(qorder: int, bound: int) -> list[int]:
    if bound < 2:
        raise MalformedInputError("bound must be at least 2")
    return [p for p in primes_upto(bound) if not good_prime_failures(p, qorder)]


def require_good_prime(p: int, qorder: int) -> None:
    if not is_prime(p):
        raise BadPrimeError(f"{p} is not prime")
    bad = good_prime_failures(p, qorder)
    if bad:
        raise BadPrimeError(
            f"p={p} is not a good prime for |Q|={qorder}: " + "; ".join(bad)
            + " (need p not dividing |Q|, p != 1 mod every odd prime divisor of |Q|, and p = 3 mod 4 when |Q| is even)"
        )


class AveragingCollapsed(HypothesisError):
    pass


@dataclass(frozen=True)
class SignChar:
    values: tuple[int, ...]

    def __call__(self, q: int) -> int:
        return self.values[q]

    def is_homomorphism(self, Q: FiniteGroup) -> bool:
        v = self.values
        return all(v[Q.mul[a][b]] == v[a] * v[b] for a in range(Q.order) for b in range(Q.order))

    @classmethod
    def trivial(cls, qorder: int) -> SignChar:
        return cls((1,) * qorder)


def sign_character(p: int, Q: FiniteGroup | int, action: Sequence[int]) -> SignChar:
    """The character rho with action(f) = rho(f) mod p.

    Raises HypothesisError if some value is not +-1 mod p.
    """
    if isinstance(Q, int):
        Q = cyclic(Q)
    if len(action) != Q.order:
        raise MalformedInputError("need one unit per element of Q")
    units = [u % p for u in action]
    if any(u == 0 for u in units):
        raise MalformedInputError("action values must be units mod p")
    if any(units[Q.mul[a][b]] != units[a] * units[b] % p for a in range(Q.order) for b in range(Q.order)):
        raise MalformedInputError("action is not a homomorphism into the units mod p")
    values = []
    for f, u in enumerate(units):
        if u == 1 % p:
            values.append(1)
        elif u == p - 1:
            values.append(-1)
        else:
            raise HypothesisError(f"action of element {f} is {u} mod {p}, not +-1")
    return SignChar(tuple(values))


def averaged_generator(P: VAPresentation, a: Sequence[int], rho: SignChar) -> L.Vec:
    a = tuple(a)
    if len(a) != P.rank:
        raise MalformedInputError("vector length does not match rank")
    if not any(a):
        raise MalformedInputError("a must be nonzero")
    total = [0] * P.rank
    for f in range(P.Q.order):
        s = rho(f)
        for i, x in enumerate(P.action(f, a)):
            total[i] += s * x
    ahat = tuple(total)
    if not any(ahat):
        raise AveragingCollapsed(f"averaging {a} against {rho.values} gives zero")
    for g in range(P.Q.order):
        if P.action(g, ahat) != L.vec_scale(rho(g), ahat):
            raise ConsistencyError(f"averaged vector does not transform by rho at {g}")
    return ahat


# ---------------------------------------------------------------- invariant lines


@dataclass(frozen=True)
class ReducibilityWitness:
    v: L.Vec
    rho: SignChar


def sign_homomorphisms(Q: FiniteGroup) -> list[SignChar]:
    """All homomorphisms Q -> {+1,-1}, ordered lexicographically with +1 before -1."""
    gens = Q.whole().gens
    out = set()
    for signs in product((1, -1), repeat=len(gens)):
        vals = {0: 1}
        stack = [0]
        while stack:
            x = stack.pop()
            for g, s in zip(gens, signs):
                y = Q.mul[x][g]
                if y not in vals:
                    vals[y] = vals[x] * s
                    stack.append(y)
        chi = SignChar(tuple(vals[x] for x in range(Q.order)))
        if chi.is_homomorphism(Q):
            out.add(chi)
    return sorted(out, key=lambda chi: tuple(v == -1 for v in chi.values))


def invariant_line_bruteforce(P: VAPresentation) -> ReducibilityWitness | None:
    """First rho (in sign_homomorphisms order) with a nonzero integer solution of
    alpha(q) v = rho(q) v for all q, and the first HNF basis vector of that kernel.
    """
    n = P.rank
    if n > 6:
        raise CapacityError("invariant-line oracle is limited to rank <= 6")
    if n == 0:
        return None
    for rho in sign_homomorphisms(P.Q):
        rows = []
        for q, M in enumerate(P.action.mats):
            s = rho(q)
            rows += [tuple(M[i][j] - s * int(i == j) for j in range(n)) for i in range(n)]
        ker = L.integer_kernel(rows, n)
        if ker:
            return ReducibilityWitness(L.primitive(ker[0]), rho)
    return None


def _projective_points(p: int, n: int):
    """Representatives of lines in F_p^n: first nonzero entry equal to 1, lexicographic."""
    for lead in range(n):
        for tail in product(range(p), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail


def _eigenvalue(M: L.Mat, v: Sequence[int], m: int) -> int | None:
    """lambda with M v = lambda v mod m, where v has a unit entry mod m; None otherwise."""
    Mv = [x % m for x in L.mat_vec(M, v)]
    i = next(i for i, x in enumerate(v) if x % m)
    lam = Mv[i] * pow(v[i], -1, m) % m
    return lam if all((lam * x - y) % m == 0 for x, y in zip(v, Mv)) else None


def _cyclic_subgroup_invariant(P: VAPresentation, x: Sequence[int], m: int) -> bool:
    """Is <x> in (Z/m)^n setwise invariant under every alpha(q)?"""
    span = set()
    cur = tuple(0 for _ in x)
    while True:
        span.add(cur)
        cur = tuple((a + b) % m for a, b in zip(cur, x))
        if cur in span:
            break
    return all(tuple(y % m for y in P.action(q, x)) in span for q in range(P.Q.order))


@dataclass(frozen=True)
class DetectionReport:
    p: int
    r: int
    found: bool  # some nontrivial Q-invariant cyclic subgroup of A / p^r A
    generator: L.Vec | None  # integer lift of a generator of the detected subgroup
    eigen: tuple[int, ...] | None  # action of Q on it, as units mod p
    rho: SignChar | None
    a_hat: L.Vec | None
    a_hat_nonzero_mod: bool | None
    oracle: ReducibilityWitness | None
    general_found: bool | None = None  # only when the general search ran


def detect_via_quotient(P: VAPresentation, p: int, r: int, general: bool = False, cap: int = LINE_CAP) -> DetectionReport:
    require_good_prime(p, P.Q.order)
    if r < 1:
        raise MalformedInputError("r must be >= 1")
    n, m = P.rank, p**r
    if n == 0:
        return DetectionReport(p, r, False, None, None, None, None, None, None)
    check_cap((p**n - 1) // (p - 1), cap, "projective points")
    found = None
    for v in _projective_points(p, n):
        lams = [_eigenvalue(M, v, p) for M in P.action.mats]
        if all(lam is not None for lam in lams):
            found = (v, tuple(lams))
            break
    general_found = None
    if general:
        check_cap(m**n, cap, "lattice quotient")
        general_found = any(
            _cyclic_subgroup_invariant(P, x, m) for x in product(range(m), repeat=n) if any(x)
        )
        if general_found != (found is not None):
            # A nontrivial invariant cyclic subgroup contains an invariant one of order p.
            raise ConsistencyError("general and order-p searches disagree")

    oracle = invariant_line_bruteforce(P)
    if found is None:
        return DetectionReport(p, r, False, None, None, None, None, None, oracle, general_found)
    v, lams = found
    a = tuple(p ** (r - 1) * x for x in v)
    rho = sign_character(p, P.Q, lams)
    ahat = averaged_generator(P, a, rho)
    nonzero = any(x % m for x in ahat)
    expected = tuple(P.Q.order * x % m for x in a)
    if tuple(x % m for x in ahat) != expected or not nonzero:
        raise ConsistencyError(f"a_hat {ahat} is not |Q| a = {expected} mod {m}")
    if oracle is None:
        raise ConsistencyError("invariant subgroup mod p^r detected but no invariant line exists")
    return DetectionReport(p, r, True, a, lams, rho, ahat, nonzero, oracle, general_found)
