"""Detection of repeated-ratio root structure: which k admit two distinct
roots alpha, beta of f with alpha/beta a primitive k-th root of unity.

The main scanner works modulo primes p = 1 + ks: whenever such a pair
exists over C it survives reduction, so a single trivial gcd between the
reduced image and one of its root-of-unity twists rules the order out.
Surviving orders are only probable and can be settled exactly afterwards
through a Moebius product of inflated Graeffe transforms.  Two classical
resultant-based detectors are included as slow reference oracles.
"""

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import factors
from . import poly as P
from .modpoly import (
    gcd_lists_mod,
    gcd_mod,
    inv_series_mod,
    mul_lists_mod,
    reduce_mod,
    rem_lists_fast,
    scale_arg_mod,
)
from .numtheory import (
    divisors,
    factorize,
    find_prime_in_progression,
    inverse_totient_max,
    moebius,
    primitive_kth_root,
    primitive_root,
    totient_sieve,
    trial_factor,
)

_MODES = ("all_orders", "first_order", "decision_only")
_STATUSES = ("probable", "verified", "refuted")

# fixed stream for the factor-index subcall inside the first oracle, so the
# oracle itself is a deterministic function of its input
_ORACLE_SEED = 271828


@dataclass(frozen=True)
class CandidateOrders:
    divisor_sieve: frozenset  # even products alpha*beta plus even squares
    orders: tuple  # ascending k >= 3 whose totient divides a sieve entry

    def __post_init__(self):
        assert list(self.orders) == sorted(set(self.orders))
        assert all(k >= 3 for k in self.orders)


@dataclass(frozen=True)
class OrderReport:
    orders: tuple  # ascending (k, status) pairs
    preprocessing_log: tuple
    mode: str
    conjecture_bound_used: bool
    implied_by_deflation: tuple = ()

    def __post_init__(self):
        assert self.mode in _MODES
        ks = [k for k, _ in self.orders]
        assert ks == sorted(ks) and all(k >= 2 for k in ks)
        assert all(s in _STATUSES for _, s in self.orders)

    def verified_orders(self):
        return [k for k, s in self.orders if s == "verified"]

    def probable_orders(self):
        return [k for k, s in self.orders if s != "refuted"]


@dataclass
class PreprocessLog:
    steps: list = field(default_factory=list)
    implied_orders: tuple = ()
    settled_order: int | None = None  # decision mode: order found early


def _negate_arg(f):
    return P.canonical([-a if j % 2 else a for j, a in enumerate(f)])


def _multiplicity(p, n):
    n = abs(n)
    m = 0
    while n and n % p == 0:
        n //= p
        m += 1
    return m


def lrs_order_candidates(d, conjecture_bound=False):
    """Orders worth testing for a square-free polynomial of degree d.

    Any admissible k needs phi(k) to divide a product of the degrees of
    two factors sharing the ratio pair, and that product is even; the
    equal-degree case contributes the even squares up to d/2.  With
    conjecture_bound the list is additionally cut at phi(k) <= d, which
    is safe for the minimal order only if the conjectured bound holds.
    """
    if d < 2:
        raise ValueError("degree must be >= 2")
    sieve = set()
    for a in range(1, d + 1):
        for b in range(1, a):
            if (a * b) % 2 == 0:
                sieve.add(a * b)
    for a in range(2, d // 2 + 1, 2):
        sieve.add(a * a)
    top = d * d - d
    divides_entry = bytearray(top + 1)
    for t in range(1, top + 1):
        for v in range(t, top + 1, t):
            if v in sieve:
                divides_entry[t] = 1
                break
    cap = d if conjecture_bound else top
    kmax = inverse_totient_max(top)
    phi = totient_sieve(kmax)
    orders = tuple(
        k
        for k in range(3, kmax + 1)
        if phi[k] <= cap and phi[k] <= top and divides_entry[phi[k]]
    )
    return CandidateOrders(divisor_sieve=frozenset(sieve), orders=orders)


def _reduce_once(f):
    # one scaling pass; a perfect power of x^r recurses on the inner factor
    core, r, _ = P.deflate(f)
    if r > 1:
        inner, lam = _reduce_once(core)
        return P.inflate(inner, r), lam
    g = 0
    for a in f[1:]:
        g = math.gcd(g, a)
    if g == 1:
        return list(f), Fraction(1)
    lam = Fraction(1)
    found, _ = trial_factor(g, 1_000_000)  # an unfactored cofactor is ignored
    for p in found:
        m = min(_multiplicity(p, a) // j for j, a in enumerate(f[1:], 1) if a)
        lam /= p**m
    if lam == 1:
        return list(f), Fraction(1)
    return P.scale_arg(f, lam), lam


def reduce_coefficients(f):
    """Shrink coefficients by a rational substitution x -> lam*x, keeping
    the set of degeneracy orders intact.

    The scaling pass runs once forward and once on the reversal, since
    each direction only ever divides primes out of one end.  A pure
    two-term polynomial collapses straight to x^d + 1: its root ratios
    are exactly the d-th roots of unity either way.
    """
    f = P.canonical(f)
    d = P.degree(f)
    if d < 1 or f[0] == 0:
        raise ValueError("input must be non-constant with nonzero trailing term")
    if P.content(f) != 1:
        raise ValueError("input must be content-free")
    if all(a == 0 for a in f[1:-1]):
        return [1] + [0] * (d - 1) + [1], Fraction(1)
    f1, lam1 = _reduce_once(f)
    f2, lam2 = _reduce_once(P.reverse(f1))
    return P.reverse(f2), lam1 / lam2


def _strip_rational_roots(f, budget=512):
    # budgeted: factoring the end coefficients must be cheap or we skip
    removed = []
    while P.degree(f) >= 2:
        a0, ad = abs(f[0]), abs(f[-1])
        if a0 > 10**12 or ad > 10**12:
            break
        nums, dens = divisors(a0), divisors(ad)
        if len(nums) * len(dens) > budget:
            break
        root = None
        for q in dens:
            for pnum in nums:
                if math.gcd(pnum, q) != 1:
                    continue
                for s in (1, -1):
                    if P.eval_rational_num(f, Fraction(s * pnum, q)) == 0:
                        root = (s * pnum, q)
                        break
                if root:
                    break
            if root:
                break
        if root is None:
            break
        pnum, q = root
        f = P.div_exact(f, [-pnum, q])
        removed.append(Fraction(pnum, q))
    return f, removed


def preprocess(f, decision_only=False, rng=None):
    """Normalize f before order detection: strip powers of x, content and
    repeated factors, shrink coefficients, and record (without applying)
    any x^r substructure, whose divisors > 1 are guaranteed orders.

    In decision mode three more reductions are allowed because only the
    existence of an order matters: a common factor with f(-x) settles
    the question at order 2, a cyclotomic factor of index above 2
    settles it via the orders every cyclotomic polynomial carries, and
    linear factors can no longer contribute once order 2 is excluded.
    """
    f = P.canonical(f)
    if P.degree(f) < 1:
        raise ValueError("input must be non-constant")
    log = PreprocessLog()
    d0 = 0
    while f[d0] == 0:
        d0 += 1
    if d0:
        f = f[d0:]
        log.steps.append(f"stripped x^{d0}")
    if P.degree(f) < 1:
        return P.primitive_part(f), log
    c = P.content(f)
    if c != 1 or f[-1] < 0:
        f = P.primitive_part(f)
        if c != 1:
            log.steps.append(f"content {c} removed")
    if not P.is_squarefree(f):
        f = P.radical_poly(f)
        log.steps.append("radical taken")
    g, lam = reduce_coefficients(f)
    if g != f:
        f = P.primitive_part(g)
        if lam == 1:
            log.steps.append(f"binomial reduced to x^{P.degree(f)}+1")
        else:
            log.steps.append(f"coefficients reduced, lambda {lam}")
    _, r, _ = P.deflate(f)
    if r > 1:
        implied = tuple(k for k in divisors(r) if k > 1)
        log.implied_orders = implied
        log.steps.append(f"composed in x^{r}: orders {list(implied)} implied")
        if decision_only:
            log.settled_order = implied[0]
            return f, log
    if decision_only and P.degree(f) >= 2:
        if P.degree(P.gcd_poly(f, _negate_arg(f))) >= 1:
            log.settled_order = 2
            log.steps.append("common factor with f(-x): order 2")
            return f, log
        rep = factors.find_cyclo_factor_indexes(f, rng=rng, verify=True)
        witness = None
        for k in rep.candidates:
            if rep.verified.get(k):
                witness = k
                break
        if witness is not None:
            # an odd index k is itself an order; an even survivor of the
            # f(-x) test has k = 2 mod 4, making k/2 an odd order
            w = witness if witness % 2 else witness // 2
            log.settled_order = w
            log.steps.append(f"cyclotomic factor of index {witness}: order {w}")
            return f, log
        f, removed = _strip_rational_roots(f)
        if removed:
            log.steps.append(f"linear factors removed at {removed}")
    return f, log


def verify_order(f, k):
    """Exact check that some pair of roots of f has ratio a primitive
    k-th root of unity.

    The product of f(x*zeta) over the primitive k-th roots zeta is
    assembled as a Moebius quotient of inflated Graeffe transforms; it
    vanishes at a root of f precisely when that root has a partner k
    steps of rotation away, so a nontrivial gcd with f is the verdict.
    Order 2 shortcuts to gcd(f(x), f(-x)).
    """
    f = P.canonical(f)
    if k < 2:
        raise ValueError("orders start at 2")
    if P.degree(f) < 2 or f[0] == 0:
        raise ValueError("input must have degree >= 2 and a nonzero trailing term")
    if not P.is_squarefree(f):
        raise ValueError("input must be square-free")
    if k == 2:
        return P.degree(P.gcd_poly(f, _negate_arg(f))) >= 1
    num = [1]
    den = [1]
    for d in divisors(k):
        mu = moebius(k // d)
        if mu == 0:
            continue
        rd = P.inflate(P.graeffe(f, d), d)
        if mu == 1:
            num = P.mul(num, rd)
        else:
            den = P.mul(den, rd)
    twisted = P.div_exact(num, den)  # exact up to sign normalization
    return P.degree(P.gcd_poly(f, twisted)) >= 1


# Candidate groups share one prime whenever their lcm stays below this, so
# a single gcd can reject the whole group; primes stay comfortably word-size.
_BATCH_LCM_LIMIT = 10**8


def _batch_partition(ks):
    """Split the ascending candidate list into groups with a small lcm.

    Greedy sweep: each group absorbs every pending k that keeps the
    running lcm under the limit.  An lcm only grows, so a k passed over
    can never divide the group's final modulus, and one sweep per group
    is complete.  Group minima strictly increase.
    """
    batches = []
    pending = list(ks)
    while pending:
        m = 1
        fac = {}
        group = []
        rest = []
        for k in pending:
            merged = math.lcm(m, k)
            if merged <= _BATCH_LCM_LIMIT:
                m = merged
                group.append(k)
                for q, e in factorize(k):
                    if fac.get(q, 0) < e:
                        fac[q] = e
            else:
                rest.append(k)
        batches.append((m, fac, group))
        pending = rest
    return batches


def _batch_survivors(core, batch, seed_key):
    """One shared-prime rejection round over a whole candidate group.

    Every group member divides the modulus, so one prime p = 1 (mod m)
    serves them all: the twists f(zeta_k x) are multiplied together mod
    f and a single trivial gcd rejects the entire group.  Rejection is
    sound (a genuine order keeps its witnessing factor at any degree-
    preserving prime); whatever survives is retested order by order.
    """
    m, fac, group = batch
    sub = random.Random(seed_key)
    d = P.degree(core)
    floor = 8 * d * d
    for _ in range(25):
        p = find_prime_in_progression(
            m, min_cofactor=64, min_value=floor + 1, rng=sub
        )
        if core[-1] % p:
            break
    else:
        return list(group)  # no usable prime: leave the group to per-k tests
    fbar = [a % p for a in core]
    pf = dict(fac)
    for q, e in factorize((p - 1) // m):
        pf[q] = pf.get(q, 0) + e
    g = primitive_root(p, tuple(sorted(pf.items())))
    if len(group) == 1:
        zeta = pow(g, (p - 1) // group[0], p)
        tw = _twist(fbar, zeta, p)
        return [] if len(gcd_lists_mod(fbar, tw, p)) == 1 else list(group)
    inv_rev = inv_series_mod(fbar[::-1], d + 1, p)
    acc = None
    for k in group:
        zeta = pow(g, (p - 1) // k, p)
        tw = _twist(fbar, zeta, p)
        if acc is None:
            acc = rem_lists_fast(tw, fbar, inv_rev, p)
        else:
            acc = rem_lists_fast(mul_lists_mod(acc, tw, p), fbar, inv_rev, p)
        if not acc:
            return list(group)  # product vanished mod f: gcd is certainly big
    return [] if len(gcd_lists_mod(fbar, acc, p)) == 1 else list(group)


def _twist(fbar, zeta, p):
    out = []
    power = 1
    for a in fbar:
        out.append(a * power % p)
        power = power * zeta % p
    return out


def _degree_preserving_prime(core, k, rng):
    d = P.degree(core)
    floor = 8 * d * d
    s_min = 64
    for _ in range(6):
        for _ in range(25):
            p = find_prime_in_progression(
                k, min_cofactor=s_min, min_value=floor + 1, rng=rng
            )
            if core[-1] % p:
                return p
        s_min *= 2  # same leading coefficient keeps blocking: go higher
    raise RuntimeError(f"no degree-preserving prime for order {k}")


def _modular_test(core, k, seed_key):
    """Three rounds of twisted-gcd tests for one candidate order.

    One-sided: a k that the input genuinely carries always survives,
    because the witnessing factor maps injectively whenever the degree
    is preserved; a trivial gcd therefore refutes k outright.
    """
    sub = random.Random(seed_key)
    for _ in range(3):
        p = _degree_preserving_prime(core, k, sub)
        fbar, _ = reduce_mod(core, p)
        zeta = primitive_kth_root(p, k)
        zj = 1
        for j in range(1, k // 2 + 1):
            zj = zj * zeta % p
            if math.gcd(j, k) != 1:
                continue
            if gcd_mod(fbar, scale_arg_mod(fbar, zj)).degree() == 0:
                return False
    return True


def _report(found, log, mode, conjecture_bound):
    return OrderReport(
        orders=tuple(sorted(found)),
        preprocessing_log=tuple(log.steps),
        mode=mode,
        conjecture_bound_used=conjecture_bound,
        implied_by_deflation=log.implied_orders,
    )


def lrs_degeneracy_orders(
    f,
    rng=None,
    verify=True,
    mode="all_orders",
    conjecture_bound=False,
    threads=None,
):
    """Detect every order k >= 2 for which two distinct roots of f differ
    by a primitive k-th root of unity.

    Candidates come from the totient sieve for the preprocessed degree;
    each is screened by three rounds of modular twisted-gcd tests and,
    when verify is set, settled exactly.  first_order stops at the
    smallest confirmed order, decision_only at the first survivor after
    the stronger decision preprocessing.  Results are deterministic for
    a fixed seed: every candidate draws its primes from an isolated
    substream, so the outcome is independent of scan order and thread
    count.
    """
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if isinstance(rng, random.Random):
        master = rng.getrandbits(64)
    elif rng is None:
        master = random.Random().getrandbits(64)
    else:
        master = int(rng)
    aux = random.Random(master)
    core, log = preprocess(f, decision_only=(mode == "decision_only"), rng=aux)
    if log.settled_order is not None:
        return _report([(log.settled_order, "verified")], log, mode, conjecture_bound)
    d = P.degree(core)
    found = []
    if mode == "all_orders":
        for k in log.implied_orders:
            if k == 2:
                found.append((2, "verified"))
    if d < 2:
        return _report(found, log, mode, conjecture_bound)

    if not found and mode != "decision_only":
        if P.degree(P.gcd_poly(core, _negate_arg(core))) >= 1:
            found.append((2, "verified"))
            if mode == "first_order":
                return _report(found, log, mode, conjecture_bound)

    ks = set(lrs_order_candidates(d, conjecture_bound=conjecture_bound).orders)
    ks.update(k for k in log.implied_orders if k >= 3)
    batches = _batch_partition(sorted(ks))

    def batch_job(batch):
        return _batch_survivors(core, batch, f"{master}:batch:{batch[2][0]}")

    def order_test(k):
        return _modular_test(core, k, f"{master}:{k}")

    if mode == "all_orders":
        if threads and threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                survived = [k for lst in pool.map(batch_job, batches) for k in lst]
                survived.sort()
                flags = list(pool.map(order_test, survived))
            probables = [k for k, ok in zip(survived, flags) if ok]
        else:
            survived = sorted(k for b in batches for k in batch_job(b))
            probables = [k for k in survived if order_test(k)]
        for k in probables:
            if verify:
                status = "verified" if verify_order(core, k) else "refuted"
            else:
                status = "probable"
            found.append((k, status))
        return _report(found, log, mode, conjecture_bound)

    # first_order / decision_only: stop at the smallest confirmed order.
    # Group minima increase, so once a group starts above the best order
    # in hand no later group can beat it.
    best = None
    for batch in batches:
        if best is not None and batch[2][0] > best:
            break
        for k in sorted(batch_job(batch)):
            if best is not None and k >= best:
                break
            if not order_test(k):
                continue
            if not verify:
                best = k
                break
            if verify_order(core, k):
                best = k
                break
            found.append((k, "refuted"))
    if best is not None:
        found = [(k, s) for k, s in found if k < best]
        found.append((best, "verified" if verify else "probable"))
    return _report(found, log, mode, conjecture_bound)


def cdm_algorithm1(f, cap=12):
    """Reference oracle: expand the full ratio resultant and read the
    complete order set off its cyclotomic factors.

    res_y(f(y), f(xy)) has the root ratios of f as roots; after the
    exact removal of (x-1)^deg(f) the orders are exactly the cyclotomic
    indexes >= 2 dividing what remains.  Quadratic degree growth makes
    this practical only for small inputs, hence the cap.
    """
    f = P.canonical(f)
    d = P.degree(f)
    if d < 2:
        raise ValueError("degree must be >= 2")
    if d > cap:
        raise ValueError(f"oracle capped at degree {cap}")
    if f[0] == 0 or P.content(f) != 1 or not P.is_squarefree(f):
        raise ValueError("input must be content-free, square-free, nonzero at 0")
    xs = []
    ys = []
    t = 1
    while len(xs) < d * d + 1:
        ft = P.canonical([a * t**j for j, a in enumerate(f)])
        xs.append(t)
        ys.append(P.resultant(ft, f))
        t = -t if t > 0 else -t + 1  # never 0: f(0*y) would drop degree
    ratio_poly = P._interpolate_int(xs, ys)
    step = [-1, 1]
    for _ in range(d):
        ratio_poly = P.div_exact(ratio_poly, step)
    ratio_poly = P.primitive_part(ratio_poly)
    rep = factors.find_cyclo_factor_indexes(
        ratio_poly, rng=random.Random(_ORACLE_SEED), verify=True
    )
    orders = [2] if 2 in rep.verified_low else []
    orders += [k for k in rep.candidates if rep.verified.get(k)]
    return sorted(orders)


def cdm_algorithm2_first_order(f, k_max=None):
    """Reference oracle for the smallest order: walk k = 3, 4, ... and
    return the first whose Graeffe transform is not square-free.

    G_k(f) collapses two roots exactly when some order divides k, so
    with order 2 excluded up front the first hit is the minimum order.
    Composite steps reuse the transform of k over its smallest prime.
    """
    f = P.canonical(f)
    d = P.degree(f)
    if d < 2 or not P.is_squarefree(f):
        raise ValueError("input must be square-free of degree >= 2")
    if P.degree(P.gcd_poly(f, _negate_arg(f))) >= 1:
        raise ValueError("order 2 must be excluded before this scan")
    top = 5 * d * d
    if k_max is not None:
        top = min(top, k_max)
    cache = {1: f}

    def transform(k):
        if k not in cache:
            spf = 2
            while k % spf:
                spf += 1
            cache[k] = P.graeffe(transform(k // spf), spf)
        return cache[k]

    for k in range(3, top + 1):
        if not P.is_squarefree(transform(k)):
            return k
    return None
