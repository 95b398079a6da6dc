"""Exact dense arithmetic for univariate integer polynomials.

A polynomial is a plain list of arbitrary-precision ints, index j holding the
coefficient of x^j.  Canonical form has no trailing zeros; the zero polynomial
is the empty list.  Python's integers already give the transparent
fixed-width-to-bignum promotion that dense coefficient work wants, so there is
no separate machine-word lane here.

Sign conventions, fixed once and tested:
  * gcd_poly, radical_poly, primitive_part, graeffe return positive leading
    coefficients.
  * resultant(f, g) is lc(g)^deg(f) times the product of f over the roots of
    g, so resultant(x - 2, x - 5) = 3.
"""

from __future__ import annotations

from fractions import Fraction

from .numtheory import factorize

import math


def canonical(f) -> list[int]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f) -> int:
    """Degree, with the zero polynomial at -1."""
    return len(f) - 1


def is_zero(f) -> bool:
    return not canonical(f)


def constant(c: int) -> list[int]:
    return [c] if c else []


def add(f, g) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] += c
    for i, c in enumerate(g):
        out[i] += c
    return canonical(out)


def neg(f) -> list[int]:
    return [-c for c in f]


def sub(f, g) -> list[int]:
    return add(f, neg(g))


def mul(f, g) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return canonical(out)


def mul_scalar(f, c: int) -> list[int]:
    if c == 0:
        return []
    return [c * a for a in f]


def eval_int(f, x: int) -> int:
    acc = 0
    for a in reversed(f):
        acc = acc * x + a
    return acc


def derivative(f) -> list[int]:
    return canonical([j * a for j, a in enumerate(f)][1:])


def content(f) -> int:
    g = 0
    for a in f:
        g = math.gcd(g, a)
    return g


def primitive_part(f) -> list[int]:
    f = canonical(f)
    if not f:
        raise ValueError("primitive part of the zero polynomial")
    c = content(f)
    if f[-1] < 0:
        c = -c
    return [a // c for a in f]


def height(f) -> int:
    return max((abs(a) for a in f), default=0)


def reverse(f) -> list[int]:
    f = canonical(f)
    if not f:
        raise ValueError("reverse of the zero polynomial")
    return canonical(f[::-1])


def is_palindromic(f) -> bool:
    f = canonical(f)
    if not f:
        raise ValueError("palindromicity of the zero polynomial")
    return f == canonical(f[::-1])


def deflate(f) -> tuple[list[int], int, int]:
    """Write f = x^d0 * g(x^r) with r maximal; returns (g, r, d0).

    Monomials (constants included) and zero are rejected since no maximal r
    exists for them.
    """
    f = canonical(f)
    exps = [j for j, c in enumerate(f) if c]
    if len(exps) < 2:
        raise ValueError("deflate needs at least two terms")
    d0 = exps[0]
    r = 0
    for e in exps[1:]:
        r = math.gcd(r, e - d0)
    g = f[d0::r]
    return canonical(g), r, d0


def inflate(f, r: int) -> list[int]:
    """Substitute x^r for x."""
    if r < 1:
        raise ValueError("inflation exponent must be >= 1")
    if r == 1 or not f:
        return canonical(f)
    out = [0] * ((len(f) - 1) * r + 1)
    for j, c in enumerate(f):
        out[j * r] = c
    return canonical(out)


def eval_rational_num(f, beta: Fraction) -> int:
    """The integer q^deg(f) * f(p/q) for beta = p/q in lowest terms.

    Integer Horner: accumulate a*p + coeff * q^(d-j).  The zero polynomial
    evaluates to 0.
    """
    f = canonical(f)
    if not f:
        return 0
    p, q = beta.numerator, beta.denominator
    acc = f[-1]
    qq = 1
    for a in reversed(f[:-1]):
        qq *= q
        acc = acc * p + a * qq
    return acc


def div_exact(f, g) -> list[int]:
    """Quotient f / g when g divides f in Z[x]; raises otherwise."""
    f = canonical(f)
    g = canonical(g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    if not f:
        return []
    if len(f) < len(g):
        raise ArithmeticError("division not exact: degree too small")
    rem = list(f)
    lb = g[-1]
    q = [0] * (len(f) - len(g) + 1)
    for i in reversed(range(len(q))):
        c = rem[i + len(g) - 1]
        if c % lb:
            raise ArithmeticError("division not exact")
        qi = c // lb
        q[i] = qi
        if qi:
            for j, bc in enumerate(g):
                rem[i + j] -= qi * bc
    if any(rem):
        raise ArithmeticError("division not exact: nonzero remainder")
    return canonical(q)


def _prem(A, B) -> list[int]:
    # pseudo-remainder: lc(B)^(deg A - deg B + 1) * A  mod  B, all over Z
    da, db = len(A) - 1, len(B) - 1
    lb = B[-1]
    e = da - db + 1
    R = list(A)
    while R and len(R) - 1 >= db:
        la = R[-1]
        r = len(R) - 1
        new = [lb * c for c in R]
        off = r - db
        for i in range(db + 1):
            new[off + i] -= la * B[i]
        new.pop()
        while new and new[-1] == 0:
            new.pop()
        R = new
        e -= 1
    if e > 0 and R:
        s = lb**e
        R = [s * c for c in R]
    return R


_FASTPATH_PRIMES = (2**61 - 1, 2**31 - 1, 4294967291, 2147483629)


def _gcd_mod_p(f, g, p):
    a = [c % p for c in f]
    b = [c % p for c in g]
    while b and b[-1] == 0:
        b.pop()
    while a and a[-1] == 0:
        a.pop()
    while b:
        # a mod b over F_p
        inv = pow(b[-1], p - 2, p)
        db = len(b) - 1
        r = list(a)
        while r and len(r) - 1 >= db:
            coef = r[-1] * inv % p
            off = len(r) - 1 - db
            for i in range(db + 1):
                r[off + i] = (r[off + i] - coef * b[i]) % p
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    return a


def _certainly_coprime(f, g) -> bool:
    # One-sided check: if both degrees survive reduction mod p and the gcd
    # mod p is constant, the gcd over Z is constant too.  Never claims a
    # common factor.
    for p in _FASTPATH_PRIMES:
        if f[-1] % p == 0 or g[-1] % p == 0:
            continue
        return len(_gcd_mod_p(f, g, p)) <= 1
    return False


def gcd_poly(f, g) -> list[int]:
    """Primitive positive-leading gcd in Z[x].

    A modular coprimality fast path settles the common case instantly; the
    exact answer otherwise comes from a primitive PRS.
    """
    f = canonical(f)
    g = canonical(g)
    if not f and not g:
        raise ValueError("gcd of two zero polynomials")
    if not f:
        return primitive_part(g)
    if not g:
        return primitive_part(f)
    if len(f) > 1 and len(g) > 1 and _certainly_coprime(f, g):
        return [1]
    A, B = primitive_part(f), primitive_part(g)
    if len(A) < len(B):
        A, B = B, A
    while B:
        R = _prem(A, B)
        A, B = B, (primitive_part(R) if R else [])
    if A[-1] < 0:
        A = neg(A)
    return A


def radical_poly(f) -> list[int]:
    """Square-free polynomial with the same distinct roots as f."""
    f = canonical(f)
    if not f:
        raise ValueError("radical of the zero polynomial")
    pp = primitive_part(f)
    if len(pp) == 1:
        return [1]
    g = gcd_poly(pp, derivative(pp))
    return div_exact(pp, g)


def is_squarefree(f) -> bool:
    f = canonical(f)
    if not f:
        raise ValueError("square-freeness of the zero polynomial")
    if len(f) <= 2:
        return True
    d = derivative(f)
    if _certainly_coprime(f, d):
        return True
    return len(gcd_poly(f, d)) == 1


def _res_standard(A, B) -> int:
    """res(A, B) = lc(A)^deg(B) * product of B over the roots of A.

    Subresultant PRS with content extraction, so intermediate growth stays
    polynomial in the input size.
    """
    A = canonical(A)
    B = canonical(B)
    if not A or not B:
        raise ValueError("resultant of a zero polynomial")
    s = 1
    if len(A) < len(B):
        if (len(A) - 1) * (len(B) - 1) % 2:
            s = -s
        A, B = B, A
    if len(B) == 1:
        return s * B[0] ** (len(A) - 1)
    ca, cb = abs(content(A)), abs(content(B))
    A = [c // ca for c in A]
    B = [c // cb for c in B]
    t = s * ca ** (len(B) - 1) * cb ** (len(A) - 1)
    g = h = 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            t = -t
        R = _prem(A, B)
        if not R:
            return 0
        A = B
        B = [c // (g * h**delta) for c in R]
        g = A[-1]
        if delta:
            h = g**delta // h ** (delta - 1)
        if len(B) == 1:
            da = len(A) - 1
            h = B[0] ** da // h ** (da - 1) if da else h
            return t * h


def resultant(f, g) -> int:
    """lc(g)^deg(f) times the product of f over the roots of g."""
    return _res_standard(g, f)


def _interpolate_int(xs, ys) -> list[int]:
    # Newton divided differences over Q, coerced back to Z at the end.
    n = len(xs)
    dd = [Fraction(y) for y in ys]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    poly = [dd[n - 1]]
    for i in range(n - 2, -1, -1):
        poly = [Fraction(0)] + poly
        for j in range(len(poly) - 1):
            poly[j] -= xs[i] * poly[j + 1]
        poly[0] += dd[i]
    out = []
    for c in poly:
        if c.denominator != 1:
            raise ArithmeticError("interpolation produced a non-integer")
        out.append(c.numerator)
    return canonical(out)


def resultant_y_scaled(f, m: int) -> list[int]:
    """res_y(f(xy), y^m - 1) as a polynomial in x.

    Equals the product of f(x*zeta) over all m-th roots of unity zeta.  Built
    by evaluation at deg(f)*m + 1 integer points and exact interpolation.
    """
    f = canonical(f)
    if not f:
        raise ValueError("resultant of a zero polynomial")
    if m < 1:
        raise ValueError("m must be >= 1")
    d = len(f) - 1
    A = [-1] + [0] * (m - 1) + [1]  # y^m - 1
    n = d * m + 1
    xs = []
    ys = []
    t = 0
    while len(xs) < n:
        ft = [a * t**j for j, a in enumerate(f)]
        ft = canonical(ft)
        if ft:
            val = _res_standard(A, ft)
        else:
            val = 0
        xs.append(t)
        ys.append(val)
        t = -t if t > 0 else -t + 1
    return _interpolate_int(xs, ys)


def _graeffe_prime2(f) -> list[int]:
    fe = f[0::2]
    fo = f[1::2]
    d = len(f) - 1
    out = sub(mul(fe, fe), [0] + mul(fo, fo))
    if d % 2:
        out = neg(out)
    return canonical(out)


def _graeffe_prime3(f) -> list[int]:
    f0 = f[0::3]
    f1 = f[1::3]
    f2 = f[2::3]
    cube = lambda g: mul(g, mul(g, g))
    out = add(cube(f0), [0] + cube(f1))
    out = add(out, [0, 0] + cube(f2))
    out = sub(out, [0] + mul_scalar(mul(f0, mul(f1, f2)), 3))
    return canonical(out)


def _graeffe_prime_generic(f, p) -> list[int]:
    # G_p(f)(t) = lc(f)^p * prod (t - alpha^p): evaluate the resultant of
    # f(y) and t - y^p at deg(f) + 1 points and interpolate.
    d = len(f) - 1
    xs = []
    ys = []
    t = 0
    while len(xs) < d + 1:
        B = [t] + [0] * (p - 1) + [-1]
        xs.append(t)
        ys.append(_res_standard(f, B))
        t = -t if t > 0 else -t + 1
    return _interpolate_int(xs, ys)


def graeffe(f, k: int) -> list[int]:
    """Maps each root to its k-th power; degree is preserved.

    Fast split formulas for the prime steps 2 and 3, a resultant fallback for
    larger primes, composite k by composing prime steps.  The result is
    normalized to a positive leading coefficient.
    """
    f = canonical(f)
    if not f:
        raise ValueError("graeffe of the zero polynomial")
    if k < 1:
        raise ValueError("k must be >= 1")
    out = f
    if k > 1:
        for p, e in factorize(k):
            for _ in range(e):
                if p == 2:
                    out = _graeffe_prime2(out)
                elif p == 3:
                    out = _graeffe_prime3(out)
                else:
                    out = _graeffe_prime_generic(out, p)
    if out and out[-1] < 0:
        out = neg(out)
    return out


def scale_arg(f, lam: Fraction, strict: bool = True) -> list[int]:
    """f(lam * x) with integer coefficients.

    In strict mode a lam that produces non-integer coefficients is an error.
    Otherwise the result is cleared by the minimal power of the denominator.
    """
    f = canonical(f)
    u, v = lam.numerator, lam.denominator
    fracs = [Fraction(a * u**j, v**j) for j, a in enumerate(f)]
    e = 0
    while any((c * v**e).denominator != 1 for c in fracs):
        e += 1
        if strict:
            raise ValueError("scaling does not preserve integrality")
    return canonical([int(c * v**e) for c in fracs])
