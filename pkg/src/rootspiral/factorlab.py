"""Primality, factorization, and the factor-period structure of spiral arms.

A prime q divides some value of f(x) = ax^2+bx+c exactly when the
congruence f(t) = 0 (mod q) has a root; for q not dividing 2a that is the
quadratic-residue test on the discriminant b^2-4ac.  The roots mod q are
the positions (spiral winds) where q-divisible values recur, and their
spacings are the observed factor periods: one root gives gap q, two roots
give a gap pair summing to q.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import spiral
from .quad import QuadPoly

VALUE_LIMIT = 1 << 63

# Deterministic Miller-Rabin witness set: the first twelve primes decide
# primality for every n below 3.3e24, far past the 2^64 contract.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_PRIMES: tuple[int, ...] = ()


class ChainNotFoundError(ValueError):
    """No admissible first step found within the search window."""


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by a plain sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(sieve[p * p :: p])
    return [i for i, v in enumerate(sieve) if v]


def _trial_primes() -> tuple[int, ...]:
    global _TRIAL_PRIMES
    if not _TRIAL_PRIMES:
        _TRIAL_PRIMES = tuple(primes_up_to(1000))
    return _TRIAL_PRIMES


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for all 64-bit inputs."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """One nontrivial factor of composite odd n (Brent's cycle variant).

    The (y, c) start values walk a fixed schedule, so factorizations are
    reproducible run to run.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # pragma: no cover


@dataclass(frozen=True)
class Factorization:
    """n as a sorted tuple of (prime, exponent) pairs."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __str__(self) -> str:
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)

    @property
    def smallest(self) -> int:
        return self.factors[0][0]


def factorize(n: int) -> Factorization:
    """Complete prime factorization by trial division plus Pollard rho."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    remaining = n
    found: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > remaining:
            break
        while remaining % p == 0:
            found[p] = found.get(p, 0) + 1
            remaining //= p
    stack = [remaining] if remaining > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        d = _pollard_brent(m)
        stack.extend((d, m // d))
    return Factorization(n=n, factors=tuple(sorted(found.items())))


def mod_sqrt(a: int, p: int) -> int | None:
    """A square root of a mod prime p (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # write p-1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


@dataclass(frozen=True)
class RootClasses:
    """Residues t mod p with p | f(t), and the recurrence gap structure."""

    p: int
    roots: frozenset[int]
    gaps: tuple[int, ...]


def root_classes(p: QuadPoly, q: int) -> RootClasses:
    """Solve a*t^2 + b*t + c = 0 (mod q) for prime q.

    Small moduli are brute forced; large ones go through Tonelli-Shanks on
    the discriminant.  One root recurs with gap q; two roots r1 < r2 recur
    with alternating gaps (r2-r1, q-(r2-r1)).
    """
    if q < 2 or not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    if q < 10_000:
        roots = sorted(t for t in range(q) if p(t) % q == 0)
    elif p.a % q == 0:
        if p.b % q == 0:
            roots = list(range(q)) if p.c % q == 0 else []
        else:
            roots = [(-p.c * pow(p.b, -1, q)) % q]
    else:
        disc = p.discriminant % q
        s = mod_sqrt(disc, q)
        if s is None:
            roots = []
        else:
            inv2a = pow(2 * p.a, -1, q)
            roots = sorted({(-p.b + s) * inv2a % q, (-p.b - s) * inv2a % q})
    if len(roots) == q:  # degenerate: q divides all three coefficients
        gaps: tuple[int, ...] = (1,)
    elif not roots:
        gaps = ()
    elif len(roots) == 1:
        gaps = (q,)
    else:
        g = roots[1] - roots[0]
        gaps = tuple(sorted((g, q - g)))
    return RootClasses(p=q, roots=frozenset(roots), gaps=gaps)


@dataclass(frozen=True)
class AdmissiblePrimes:
    """Primes up to a bound that divide at least one value of the polynomial."""

    poly: QuadPoly
    bound: int
    primes: tuple[int, ...]
    discriminant: int


def admissible_primes(p: QuadPoly, bound: int) -> AdmissiblePrimes:
    """Every prime q <= bound with a root of f mod q.

    For q not dividing 2a this is the Legendre-symbol test on the
    discriminant; q = 2 and q | a fall back to the brute-force route
    inside root_classes.
    """
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")
    hits = []
    for q in primes_up_to(bound):
        if q > 2 and (2 * p.a) % q != 0:
            if pow(p.discriminant, (q - 1) // 2, q) in (0, 1):
                hits.append(q)
        elif root_classes(p, q).roots:
            hits.append(q)
    return AdmissiblePrimes(poly=p, bound=bound, primes=tuple(hits), discriminant=p.discriminant)


@dataclass(frozen=True)
class SplitComparison:
    equal: bool
    witness: int | None  # first prime whose root/gap structure differs


def same_splitting(pa: QuadPoly, pb: QuadPoly, bound: int) -> SplitComparison:
    """Do two polynomials admit the same primes with the same gap multisets?

    Compares, for every prime q <= bound, admissibility and the gap
    multiset of the root classes; phases (actual root positions) are not
    compared.
    """
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")
    for q in primes_up_to(bound):
        ra, rb = root_classes(pa, q), root_classes(pb, q)
        if (len(ra.roots) == 0) != (len(rb.roots) == 0) or ra.gaps != rb.gaps:
            return SplitComparison(equal=False, witness=q)
    return SplitComparison(equal=True, witness=None)


@dataclass(frozen=True)
class TermRecord:
    x: int
    value: int
    prime: bool
    factorization: Factorization | None  # set for composite values >= 2
    coprime30: bool


@dataclass(frozen=True)
class DensityReport:
    """Primality and factor structure over one index window of an arm."""

    poly: QuadPoly
    x0: int
    x1: int
    records: tuple[TermRecord, ...]

    @property
    def prime_count(self) -> int:
        return sum(r.prime for r in self.records)

    @property
    def prime_share(self) -> float:
        return self.prime_count / len(self.records) if self.records else 0.0

    @property
    def coprime_share(self) -> float:
        if not self.records:
            return 0.0
        return sum(r.coprime30 for r in self.records) / len(self.records)


def _scan_one(p: QuadPoly, x: int) -> TermRecord:
    v = p(x)
    prime = v >= 2 and is_prime(v)
    fac = factorize(v) if (v >= 2 and not prime) else None
    return TermRecord(x=x, value=v, prime=prime, factorization=fac, coprime30=math.gcd(v, 30) == 1)


def density_scan(p: QuadPoly, x0: int, x1: int, threads: int = 1) -> DensityReport:
    """Per-term primality/factorization report for x in [x0, x1).

    The window may be partitioned across threads; records are merged in
    index order, so the result is identical to a sequential scan.
    """
    if x1 > x0:
        extremes = [p(x0), p(x1 - 1)]
        if p.a != 0:
            vertex = -p.b // (2 * p.a)  # |f| can peak inside the window when a < 0
            if x0 <= vertex < x1:
                extremes.extend((p(vertex), p(vertex + 1)))
        if max(abs(v) for v in extremes) > VALUE_LIMIT:
            raise OverflowError(f"values exceed 2^63 in window [{x0}, {x1})")
    xs = range(x0, x1)
    if threads > 1 and len(xs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = tuple(pool.map(lambda x: _scan_one(p, x), xs))
    else:
        records = tuple(_scan_one(p, x) for x in xs)
    return DensityReport(poly=p, x0=x0, x1=x1, records=records)


@dataclass(frozen=True)
class ChainCandidate:
    delta1: int
    score: float  # max |per-step angle - 2*pi| over the scored prefix
    values: tuple[int, ...]


@dataclass(frozen=True)
class ArmChain:
    """A one-wind-per-step chain found on the spiral."""

    seed: int
    d2: int
    delta1: int
    values: tuple[int, ...]
    drifts: tuple[float, ...]  # per-step angle minus 2*pi
    candidates: tuple[ChainCandidate, ...]  # all scored windows, best first


_SCORE_STEPS = 10
_DELTA_WINDOW = 15.0


def _chain_values(seed: int, delta1: int, d2: int, count: int) -> list[int]:
    vals = [seed]
    step = delta1
    while len(vals) < count:
        vals.append(vals[-1] + step)
        step += d2
    return vals


def detect_arm_chain(seed: int, d2: int, length: int) -> ArmChain:
    """Find the arm chain of the given second difference starting at seed.

    Candidate first steps are the even integers within +-15 of
    2*pi*sqrt(seed) (one wind); each candidate is extended by the constant
    d2 recurrence and scored by its worst per-step angular drift over the
    first ten steps, measured with the direct-summation angle oracle.  The
    per-step angle tends to sqrt(2*d2) radians, so one-wind-per-step chains
    need sqrt(2*d2) near 2*pi, i.e. d2 near 2*pi^2 ~ 19.7; that is why the
    observed prime-rich chains carry d2 in {18, 20, 22}.  Candidates whose
    drift ever reaches a quarter wind are discarded.
    """
    if seed < 1:
        raise ValueError(f"seed must be >= 1, got {seed}")
    if length < 2:
        raise ValueError(f"length must be >= 2, got {length}")
    base = 2.0 * math.pi * math.sqrt(seed)
    lo = max(2, int(math.ceil(base - _DELTA_WINDOW)))
    lo += lo % 2
    hi = int(math.floor(base + _DELTA_WINDOW))
    steps = max(_SCORE_STEPS, length - 1)
    candidates = []
    for delta1 in range(lo, hi + 1, 2):
        vals = _chain_values(seed, delta1, d2, steps + 1)
        drifts = [
            spiral.angle_between(vals[i], vals[i + 1]) - spiral.TWO_PI for i in range(steps)
        ]
        score = max(abs(d) for d in drifts[:_SCORE_STEPS])
        if score < math.pi / 2.0:
            candidates.append((score, delta1, vals, drifts))
    if not candidates:
        raise ChainNotFoundError(f"no admissible first step near 2*pi*sqrt({seed})")
    candidates.sort(key=lambda item: (item[0], item[1]))
    best = candidates[0]
    return ArmChain(
        seed=seed,
        d2=d2,
        delta1=best[1],
        values=tuple(best[2][:length]),
        drifts=tuple(best[3][: length - 1]),
        candidates=tuple(
            ChainCandidate(delta1=d1, score=s, values=tuple(v[:length]))
            for s, d1, v, _ in candidates
        ),
    )
