"""Dense polynomial arithmetic over a word-size prime field.

Same ascending-coefficient convention as the poly module; the zero
polynomial has an empty coefficient tuple.  Degrees stay small (at most
the degree of the integer input), so schoolbook arithmetic is the
default.  The list-level helpers at the bottom pack coefficients into
one big integer so that products ride on CPython's native multiply;
the order scanner leans on them where schoolbook would dominate.
"""

from dataclasses import dataclass

from .numtheory import is_prime


@dataclass(frozen=True)
class PrimeFieldPoly:
    p: int
    coeffs: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if any(not 0 <= c < self.p for c in self.coeffs):
            raise ValueError("coefficients must be reduced residues")
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs


def _strip(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def reduce_mod(f, p):
    """Coefficientwise image of an integer polynomial in F_p.

    Returns (image, degree_dropped); callers that need the degree
    preserved must check the flag.
    """
    c = _strip([a % p for a in f])
    return PrimeFieldPoly(p, tuple(c)), len(c) != len(f)


def _rem_lists(a, b, p):
    # a mod b in F_p[x], both ascending lists, b nonzero
    a = list(a)
    db = len(b) - 1
    if db == 0:
        return []
    inv = pow(b[-1], -1, p)
    bl = list(b[:db])
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q = c * inv % p
            off = i - db
            a[off:i] = [(x - q * y) % p for x, y in zip(a[off:i], bl)]
            a[i] = 0
    return _strip(a)


def monic_mod(f):
    """Scale by the inverse leading coefficient."""
    if f.is_zero():
        return f
    lc = f.coeffs[-1]
    if lc == 1:
        return f
    inv = pow(lc, -1, f.p)
    return PrimeFieldPoly(f.p, tuple(c * inv % f.p for c in f.coeffs))


def gcd_mod(f, g):
    """Monic gcd in F_p[x] by the Euclidean algorithm."""
    if f.p != g.p:
        raise ValueError("modulus mismatch")
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials")
    return PrimeFieldPoly(f.p, tuple(gcd_lists_mod(f.coeffs, g.coeffs, f.p)))


def mul_mod(f, g):
    if f.p != g.p:
        raise ValueError("modulus mismatch")
    if f.is_zero() or g.is_zero():
        return PrimeFieldPoly(f.p, ())
    p = f.p
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j, b in enumerate(g.coeffs):
                out[i + j] = (out[i + j] + a * b) % p
    return PrimeFieldPoly(p, tuple(out))


def scale_arg_mod(f, c):
    """f(c*x): coefficient j picks up the factor c^j."""
    c %= f.p
    if c == 0:
        raise ValueError("scaling residue must be nonzero")
    out = []
    power = 1
    for a in f.coeffs:
        out.append(a * power % f.p)
        power = power * c % f.p
    return PrimeFieldPoly(f.p, tuple(out))


def mul_lists_mod(a, b, p):
    """Product of two ascending coefficient lists in F_p[x].

    Kronecker substitution: both factors are packed into integers with
    enough room per slot that convolution entries cannot overlap, so a
    single native multiply does all the coefficient work.
    """
    if not a or not b:
        return []
    bound = min(len(a), len(b)) * (p - 1) * (p - 1)
    w = (bound.bit_length() + 7) // 8
    pa = int.from_bytes(b"".join(v.to_bytes(w, "little") for v in a), "little")
    pb = int.from_bytes(b"".join(v.to_bytes(w, "little") for v in b), "little")
    n = len(a) + len(b) - 1
    raw = (pa * pb).to_bytes(w * (n + 1), "little")
    out = [
        int.from_bytes(raw[i * w : (i + 1) * w], "little") % p for i in range(n)
    ]
    return _strip(out)


def inv_series_mod(f, e, p):
    """Inverse of f as a power series mod x^e, by Newton doubling."""
    if not f or f[0] == 0:
        raise ValueError("series inverse needs a unit constant term")
    g = [pow(f[0], -1, p)]
    t = 1
    while t < e:
        t = min(2 * t, e)
        fg = mul_lists_mod(f[:t], g, p)[:t]
        h = [(-v) % p for v in fg] + [0] * (t - len(fg))
        h[0] = (h[0] + 2) % p
        g = mul_lists_mod(g, h, p)[:t]
    return g + [0] * (e - len(g))  # top zeros are significant here


def rem_lists_fast(a, f, inv_rev_f, p):
    """a mod f given the series inverse of the reversal of f.

    Division by reversal: the quotient is read off rev(a)*inv_rev_f,
    so two packed multiplies replace the elimination loop.  The inverse
    must be precomputed to at least deg(a) - deg(f) + 1 terms.
    """
    a = _strip(list(a))
    df = len(f) - 1
    if len(a) <= df:
        return a
    e = len(a) - df
    if len(inv_rev_f) < e:
        raise ValueError("series inverse too short for this dividend")
    qr = mul_lists_mod(a[::-1][:e], inv_rev_f[:e], p)[:e]
    qr += [0] * (e - len(qr))
    fq = mul_lists_mod(f, qr[::-1], p)
    fq += [0] * (df - len(fq))
    return _strip([(x - y) % p for x, y in zip(a[:df], fq[:df])])


def gcd_lists_mod(a, b, p):
    """Monic gcd of two ascending coefficient lists in F_p[x]."""
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        a, b = b, _rem_lists(a, b, p)
    if a and a[-1] != 1:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a
