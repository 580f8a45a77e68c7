"""Arithmetic in the finite field F_q, q = p^s.

Elements are plain ints in range(q).  For s > 1 the int encodes the
coefficient vector of a polynomial in a generator x, base p, modulo a
primitive polynomial found by search; multiplication goes through
discrete log tables.
"""

from __future__ import annotations

from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, s) with q = p**s, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    s, r = 0, q
    while r % p == 0:
        r //= p
        s += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, s


def _digits(a: int, p: int, s: int) -> list[int]:
    out = []
    for _ in range(s):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds, p: int) -> int:
    a = 0
    for c in reversed(ds):
        a = a * p + c
    return a


def _find_primitive(p: int, s: int) -> tuple[list[int], list[int]]:
    """Search monic f of degree s whose root x has order p^s - 1.

    Returns (exp_table, log_table).  The order condition forces f to be
    irreducible, so the quotient ring is a field.
    """
    q = p ** s
    for tail in range(p ** s):
        low = _digits(tail, p, s)  # f = x^s + sum low[k] x^k
        if low[0] == 0:
            continue
        exp = [0] * (q - 1)
        cur = [1] + [0] * (s - 1)
        ok = True
        for k in range(q - 1):
            code = _undigits(cur, p)
            if k > 0 and code == 1:
                ok = False
                break
            exp[k] = code
            # multiply by x and reduce
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * l) % p for c, l in zip(cur, low)]
        if not ok or _undigits(cur, p) != 1:
            continue
        log = [0] * q
        for k, code in enumerate(exp):
            log[code] = k
        return exp, log
    raise RuntimeError(f"no primitive polynomial of degree {s} over F_{p}")


class GF:
    """The field with q = p**s elements."""

    def __init__(self, p: int, s: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if s < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.s = s
        self.q = p ** s
        if s > 1:
            self._exp, self._log = _find_primitive(p, s)

    @classmethod
    def of_order(cls, q: int) -> "GF":
        p, s = prime_power(q)
        return field(p, s)

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.s) == (other.p, other.s)

    def __hash__(self):
        return hash((self.p, self.s))

    def elements(self):
        return range(self.q)

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of {self!r}")
        return a

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        p = self.p
        out, place = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def neg(self, a: int) -> int:
        if self.s == 1:
            return (-a) % self.p
        p = self.p
        out, place = 0, 1
        while a:
            out += ((-(a % p)) % p) * place
            a //= p
            place *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.s == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k == 0:
            return 1
        if a == 0:
            return 0
        if k < 0:
            a, k = self.inv(a), -k
        if self.s == 1:
            return pow(a, k, self.p)
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def frob(self, a: int, times: int = 1) -> int:
        """a -> a^(p^times)."""
        if self.s == 1:
            return a
        return self.pow(a, self.p ** (times % self.s))

    def frob_inv(self, a: int, times: int = 1) -> int:
        """Inverse Frobenius, a -> a^(p^(s-1)) applied `times` times."""
        if self.s == 1:
            return a
        return self.frob(a, (-times) % self.s)


@lru_cache(maxsize=None)
def field(p: int, s: int = 1) -> GF:
    return GF(p, s)


def binom_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        out = out * _small_binom(a, b, p) % p
        n //= p
        k //= p
    return out


@lru_cache(maxsize=None)
def _small_binom(a: int, b: int, p: int) -> int:
    num = den = 1
    for t in range(b):
        num = num * (a - t) % p
        den = den * (t + 1) % p
    return num * pow(den, p - 2, p) % p
