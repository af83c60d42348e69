"""Finite fields GF(p^e) with integer-encoded elements.

An element is a plain ``int`` in ``[0, q)``: the polynomial-basis coefficient
vector ``c_0 + c_1 x + ... + c_{e-1} x^{e-1}`` packed radix-p as
``c_0 + c_1 p + ... + c_{e-1} p^{e-1}``. So 0 and 1 are the additive and
multiplicative identities, and the prime subfield is encoded as ``0..p-1``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

MAX_ORDER = 1 << 16
# full q x q add/mul tables are only materialized up to this order
_DENSE_TABLE_ORDER = 256


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split a prime power ``q`` into ``(p, e)``; raise if ``q`` is not one."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, e


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p): coefficient lists, lowest degree first ---------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _poly_trim(a)
    return a


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def least_irreducible(p: int, e: int) -> list[int]:
    """Lexicographically least monic irreducible of degree ``e`` over GF(p).

    Order is on the tuple ``(c_{e-1}, ..., c_0)``; returned lowest degree first.
    """
    for high_first in itertools.product(range(p), repeat=e):
        poly = list(reversed(high_first)) + [1]
        if is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {e} over GF({p})")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(p^e) with a fixed modulus and primitive element.

    Build instances with :func:`make_field`; they are cached and immutable, so
    identity comparison is field equality.
    """

    p: int
    e: int
    modulus: tuple[int, ...]
    generator: int
    exp: tuple[int, ...] = field(repr=False)
    log: tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return self.p**self.e

    q = order

    def __post_init__(self) -> None:
        q = self.p**self.e
        object.__setattr__(self, "_neg", tuple(self._digit_neg(a) for a in range(q)))
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self.exp[(q - 1 - self.log[a]) % (q - 1)]
        object.__setattr__(self, "_inv", tuple(inv))
        object.__setattr__(self, "_add_rows", [None] * q)
        object.__setattr__(self, "_mul_rows", [None] * q)
        if q <= _DENSE_TABLE_ORDER:
            for a in range(q):
                self.add_row(a)
                self.mul_row(a)

    def __repr__(self) -> str:
        return f"GF({self.order})"

    # digit-level helpers; used to build tables
    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def _pack(self, digits) -> int:
        v = 0
        for d in reversed(list(digits)):
            v = v * self.p + d
        return v

    def _digit_add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self._pack((x + y) % self.p for x, y in zip(self._digits(a), self._digits(b)))

    def _digit_neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self._pack((-x) % self.p for x in self._digits(a))

    def add_row(self, a: int) -> list[int]:
        """Row ``b -> a + b`` of the addition table."""
        row = self._add_rows[a]
        if row is None:
            row = [self._digit_add(a, b) for b in range(self.order)]
            self._add_rows[a] = row
        return row

    def mul_row(self, a: int) -> list[int]:
        """Row ``b -> a * b`` of the multiplication table."""
        row = self._mul_rows[a]
        if row is None:
            q = self.order
            if a == 0:
                row = [0] * q
            else:
                la, exp, log = self.log[a], self.exp, self.log
                row = [0] + [exp[(la + log[b]) % (q - 1)] for b in range(1, q)]
            self._mul_rows[a] = row
        return row

    def add(self, a: int, b: int) -> int:
        return self.add_row(a)[b]

    def sub(self, a: int, b: int) -> int:
        return self.add_row(a)[self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if n == 0 else 0
        return self.exp[(self.log[a] * n) % (self.order - 1)]

    def elements(self) -> range:
        return range(self.order)

    def to_dict(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}


def _poly_mulmod_int(a: int, b: int, p: int, e: int, modulus: list[int]) -> int:
    """Multiply encoded elements by schoolbook polynomial arithmetic."""

    def digits(v):
        out = []
        for _ in range(e):
            v, d = divmod(v, p)
            out.append(d)
        return out

    da, db = digits(a), digits(b)
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    red = _poly_mod(prod, modulus, p) if e > 1 else [prod[0] % p]
    red = red + [0] * (e - len(red))
    v = 0
    for d in reversed(red[:e]):
        v = v * p + d
    return v


@functools.lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> FieldSpec:
    """Return GF(p^e) with the least irreducible modulus and least primitive element."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if e < 1:
        raise FieldError(f"extension degree must be positive, got {e}")
    q = p**e
    if q > MAX_ORDER:
        raise FieldError(f"GF({q}) exceeds the size cap {MAX_ORDER}")
    modulus = least_irreducible(p, e)
    mulmod = functools.partial(_poly_mulmod_int, p=p, e=e, modulus=modulus)

    def powmod(a, n):
        result = 1
        while n:
            if n & 1:
                result = mulmod(result, a)
            a = mulmod(a, a)
            n >>= 1
        return result

    factors = _prime_factors(q - 1)
    generator = next(
        g for g in range(1, q) if all(powmod(g, (q - 1) // r) != 1 for r in factors)
    ) if q > 2 else 1
    exp = [0] * (q - 1)
    log = [0] * q
    x = 1
    for i in range(q - 1):
        exp[i] = x
        log[x] = i
        x = mulmod(x, generator)
    return FieldSpec(p, e, tuple(modulus), generator, tuple(exp), tuple(log))


def field_of_order(q: int) -> FieldSpec:
    return make_field(*prime_power(q))


def _check_subfield_order(spec: FieldSpec, s: int) -> int:
    try:
        p, d = prime_power(s)
    except FieldError:
        raise FieldError(f"{s} is not a subfield order of {spec!r}") from None
    if p != spec.p or spec.e % d:
        raise FieldError(f"{s} is not a subfield order of {spec!r}")
    return d


def frobenius(spec: FieldSpec, a: int, s: int) -> int:
    """``a ** s`` for a subfield order ``s``."""
    _check_subfield_order(spec, s)
    return spec.pow(a, s)


def subfield_elements(spec: FieldSpec, s: int) -> frozenset[int]:
    """The fixed points of ``x -> x^s``: the unique subfield of order ``s``."""
    _check_subfield_order(spec, s)
    return _subfield(spec, s)


@functools.lru_cache(maxsize=None)
def _subfield(spec: FieldSpec, s: int) -> frozenset[int]:
    return frozenset(x for x in spec.elements() if spec.pow(x, s) == x)


@functools.lru_cache(maxsize=None)
def embed_subfield(big: FieldSpec, small: FieldSpec) -> tuple[int, ...]:
    """Encoding map GF(small) -> GF(big).

    Sends the polynomial generator of ``small`` to the least-encoded root of
    its modulus inside ``big``.
    """
    _check_subfield_order(big, small.order)
    mod = small.modulus

    def evaluate(coeffs, x):
        acc = 0
        for c in reversed(coeffs):
            acc = big.add(big.mul(acc, x), c)
        return acc

    root = next(x for x in big.elements() if evaluate(mod, x) == 0)
    out = []
    for a in small.elements():
        acc, power = 0, 1
        for c in small._digits(a):
            acc = big.add(acc, big.mul(c, power))
            power = big.mul(power, root)
        out.append(acc)
    return tuple(out)


def _half_order(spec_q2: FieldSpec, q: int | None) -> int:
    if q is None:
        if spec_q2.e % 2:
            raise FieldError(f"{spec_q2!r} has no subfield of index 2")
        q = spec_q2.p ** (spec_q2.e // 2)
    if q * q != spec_q2.order:
        raise FieldError(f"{spec_q2!r} does not have order {q}^2")
    return q


def pick_omega(spec_q2: FieldSpec, q: int | None = None) -> int:
    """Least-encoded element of GF(q^2) outside GF(q)."""
    q = _half_order(spec_q2, q)
    sub = _subfield(spec_q2, q)
    return next(x for x in spec_q2.elements() if x not in sub)


def decompose(spec_q2: FieldSpec, omega: int, x: int, q: int | None = None) -> tuple[int, int]:
    """Write ``x = v + omega * w`` with ``v, w`` in GF(q).

    Applying Frobenius gives ``x^q = v + omega^q w``, so
    ``w = (x - x^q) / (omega - omega^q)``.
    """
    q = _half_order(spec_q2, q)
    wq = spec_q2.pow(omega, q)
    denom = spec_q2.sub(omega, wq)
    if denom == 0:
        raise FieldError(f"omega={omega} lies in GF({q})")
    w = spec_q2.div(spec_q2.sub(x, spec_q2.pow(x, q)), denom)
    v = spec_q2.sub(x, spec_q2.mul(omega, w))
    return v, w
