"""Finite fields F_p and F_{p^d}.

Elements are plain ints.  For ``d > 1`` an element ``a`` is read through its
base-``p`` digits ``a = c_0 + c_1 p + ... + c_{d-1} p^{d-1}`` and stands for
``c_0 + c_1 w + ... + c_{d-1} w^{d-1}`` where ``w`` is the class of ``X`` in
``F_p[X]/(modulus)``.  Prime-field elements therefore keep the same integer
encoding in every extension, which makes ``F_p -> F_{p^d}`` the identity on
ints.

Fields are interned: ``make_field(5, 2)`` always returns the same object, so
the (eagerly built) log/antilog tables are shared and never mutated.
"""

from __future__ import annotations

import re
import threading

from .errors import NoIrreduciblePolynomialFound, NonPrimeModulus

TABLE_LIMIT = 1 << 17
GEN_NAME = "w"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- small dense helpers over F_p (coefficient lists, low degree first) ------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm] if len(a) > dm else a)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _ppowmod(a, e, m, p):
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def is_irreducible_mod_p(m: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    n = len(m) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p ** n, m, p) != _trim(list(x)):
        return False
    for ell in prime_factors(n):
        h = _ppowmod(x, p ** (n // ell), m, p)
        h = h + [0] * (2 - len(h)) if len(h) < 2 else list(h)
        h[1] = (h[1] - 1) % p
        if len(_pgcd(m, _trim(h), p)) != 1:
            return False
    return True


def _is_primitive_mod_p(m, p):
    n = len(m) - 1
    q1 = p ** n - 1
    for ell in prime_factors(q1):
        if _ppowmod([0, 1], q1 // ell, m, p) == [1]:
            return False
    return True


def default_modulus(p: int, d: int) -> tuple[int, ...]:
    """First primitive monic polynomial of degree ``d`` in counting order."""
    for n in range(p ** d):
        low = [(n // p ** k) % p for k in range(d)]
        m = low + [1]
        if m[0] == 0:
            continue
        if is_irreducible_mod_p(m, p) and _is_primitive_mod_p(m, p):
            return tuple(m)
    raise NoIrreduciblePolynomialFound(f"no primitive polynomial of degree {d} over F_{p}")


class FieldSpec:
    """The finite field F_{p^d}; use :func:`make_field` to obtain instances."""

    def __init__(self, p: int, d: int = 1, modulus=None):
        if not is_prime(p):
            raise NonPrimeModulus(f"{p} is not prime")
        if d < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.d = d
        self.q = p ** d
        if d == 1:
            self.modulus = None
        else:
            if modulus is None:
                modulus = default_modulus(p, d)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != d + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of the extension degree")
            if not is_irreducible_mod_p(list(modulus), p):
                raise NoIrreduciblePolynomialFound(f"modulus {modulus} is reducible over F_{p}")
            self.modulus = modulus
        self._exp = self._log = self._zech = None
        if d > 1 and self.q <= TABLE_LIMIT:
            self._build_tables()

    # -- identity ----------------------------------------------------------
    def key(self):
        return (self.p, self.d, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FieldSpec({self.p}, {self.d})"

    def __str__(self):
        return str(self.p) if self.d == 1 else f"{self.p}^{self.d}"

    def __reduce__(self):
        return (make_field, (self.p, self.d, self.modulus))

    # -- digit encoding ----------------------------------------------------
    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.d):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, ds) -> int:
        a = 0
        for c in reversed(list(ds)):
            a = a * self.p + c % self.p
        return a

    def _slow_mul(self, a, b):
        r = _pmod(_pmul(self.digits(a), self.digits(b), self.p), self.modulus, self.p)
        return self.from_digits(r)

    def _build_tables(self):
        q1 = self.q - 1
        g = self.p  # the class of w
        if not _is_primitive_mod_p(list(self.modulus), self.p):
            g = next(c for c in range(2, self.q) if self._order_is_full(c))
        exp = [0] * q1
        log = [0] * self.q
        x = 1
        for k in range(q1):
            exp[k] = x
            log[x] = k
            x = self._slow_mul(x, g)
        zech = [-1] * q1
        for n in range(q1):
            s = self._digit_add(1, exp[n])
            zech[n] = log[s] if s else -1
        self._exp, self._log, self._zech = exp, log, zech

    def _order_is_full(self, c):
        q1 = self.q - 1
        for ell in prime_factors(q1):
            if self._slow_pow(c, q1 // ell) == 1:
                return False
        return True

    def _slow_pow(self, a, e):
        r, b = 1, a
        while e:
            if e & 1:
                r = self._slow_mul(r, b)
            b = self._slow_mul(b, b)
            e >>= 1
        return r

    def _digit_add(self, a, b):
        if self.p == 2:
            return a ^ b
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    # -- arithmetic ----------------------------------------------------------
    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def elem(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return n % self.p

    def add(self, a, b):
        if self.d == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._exp is None:
            return self._digit_add(a, b)
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        q1 = self.q - 1
        z = self._zech[(self._log[b] - la) % q1]
        return 0 if z < 0 else self._exp[(la + z) % q1]

    def neg(self, a):
        if self.d == 1:
            return -a % self.p
        if self.p == 2 or a == 0:
            return a
        if self._exp is None:
            return self.from_digits([-c for c in self.digits(a)])
        q1 = self.q - 1
        return self._exp[(self._log[a] + q1 // 2) % q1]

    def sub(self, a, b):
        if self.d == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.d == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is None:
            return self._slow_mul(a, b)
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + str(self))
        if self.d == 1:
            return pow(a, -1, self.p)
        if self._exp is None:
            return self._slow_pow(a, self.q - 2)
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        if self.d == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is None:
            return self._slow_pow(a, e)
        return self._exp[self._log[a] * e % (self.q - 1)]

    def pth_root(self, a):
        """The unique ``b`` with ``b^p = a`` (Frobenius is bijective)."""
        return self.pow(a, self.q // self.p)

    def elements(self):
        return range(self.q)

    def in_prime_field(self, a) -> bool:
        return a < self.p

    def generator(self) -> int:
        """The adjoined root ``w`` (``0 < w``); only meaningful when ``d > 1``."""
        if self.d == 1:
            raise ValueError("prime field has no adjoined generator")
        return self.p

    # -- text --------------------------------------------------------------
    def elem_str(self, a) -> str:
        if self.d == 1 or a < self.p:
            return str(a)
        parts = []
        for k, c in reversed(list(enumerate(self.digits(a)))):
            if c == 0:
                continue
            w = GEN_NAME if k == 1 else f"{GEN_NAME}^{k}"
            if k == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(w)
            else:
                parts.append(f"{c}*{w}")
        return " + ".join(parts)

    def is_compound(self, a) -> bool:
        """True if :meth:`elem_str` is a sum and needs brackets inside a product."""
        return self.d > 1 and sum(1 for c in self.digits(a) if c) > 1


_FIELDS: dict = {}
_FIELDS_LOCK = threading.Lock()


def make_field(p: int, d: int = 1, modulus=None) -> FieldSpec:
    key = (p, d, None if modulus is None else tuple(modulus))
    with _FIELDS_LOCK:
        f = _FIELDS.get(key)
        if f is None:
            f = FieldSpec(p, d, modulus)
            _FIELDS[key] = f
            _FIELDS[f.key()] = f
        return f


_FIELD_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_field(text: str) -> FieldSpec:
    """Parse the field literal syntax ``p`` or ``p^d``."""
    m = _FIELD_RE.match(text)
    if not m:
        raise ValueError(f"bad field literal {text!r}; expected p or p^d")
    p = int(m.group(1))
    d = int(m.group(2) or 1)
    if not is_prime(p):
        raise NonPrimeModulus(f"{p} is not prime")
    return make_field(p, d)
