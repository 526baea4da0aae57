"""Exact arithmetic tables for small finite fields F_p, p a prime power <= 32.

Elements are integer codes 0..p-1.  For prime p the code is the residue; for
p = ell^r the code is the base-ell digit encoding of a polynomial in the basis
1, x, .., x^(r-1) modulo the lexicographically least monic irreducible
polynomial of degree r over F_ell.  0 and 1 always encode the additive and
multiplicative identities, so all tables are reproducible.
"""

from __future__ import annotations

from functools import lru_cache

FIELD_ORDER_CAP = 32


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def prime_power_split(p: int):
    """Return (characteristic, degree) if p is a prime power, else None."""
    if p < 2:
        return None
    ell = min(f for f in range(2, p + 1) if p % f == 0)
    if not _is_prime(ell):
        return None
    m, r = p, 0
    while m % ell == 0:
        m //= ell
        r += 1
    return (ell, r) if m == 1 else None


def _poly_mulmod(a, b, modulus, ell):
    # little-endian coefficient tuples; modulus monic of degree r
    r = len(modulus) - 1
    prod = [0] * (2 * r - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % ell
    for i in range(len(prod) - 1, r - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(r):
                prod[i - r + j] = (prod[i - r + j] - c * modulus[j]) % ell
    return tuple(prod[:r])


def _poly_rem(a, b, ell):
    # remainder of a by monic b, both little-endian lists
    a = list(a)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % ell
    return a[:db]


def _is_irreducible(poly, ell):
    # monic, degree >= 1; trial division by all monic polys of degree <= r//2
    r = len(poly) - 1
    for s in range(1, r // 2 + 1):
        for m in range(ell**s):
            div, x = [], m
            for _ in range(s):
                div.append(x % ell)
                x //= ell
            div.append(1)
            if not any(_poly_rem(poly, div, ell)):
                return False
    return True


def _least_irreducible(ell: int, r: int):
    for m in range(ell**r):
        coeffs, x = [], m
        for _ in range(r):
            coeffs.append(x % ell)
            x //= ell
        poly = tuple(coeffs) + (1,)
        if _is_irreducible(poly, ell):
            return poly
    raise RuntimeError(f"no irreducible polynomial of degree {r} over F_{ell}")


def _digits(code: int, ell: int, r: int):
    out = []
    for _ in range(r):
        out.append(code % ell)
        code //= ell
    return tuple(out)


def _code(digits, ell: int) -> int:
    c = 0
    for d in reversed(digits):
        c = c * ell + d
    return c


class FieldTable:
    """Immutable lookup tables for one finite field; safe to share."""

    def __init__(self, p: int, char: int, degree: int, modulus, add, mul):
        self.order = p
        self.characteristic = char
        self.degree = degree
        self.modulus = modulus  # little-endian incl. leading 1; None for prime fields
        self.add_table = add  # bytes of length p*p, row-major
        self.mul_table = mul
        neg = bytearray(p)
        for a in range(p):
            for b in range(p):
                if add[a * p + b] == 0:
                    neg[a] = b
                    break
        self.neg_table = bytes(neg)
        inv = bytearray(p)
        for a in range(1, p):
            for b in range(1, p):
                if mul[a * p + b] == 1:
                    inv[a] = b
                    break
        self.inv_table = bytes(inv)
        if degree % 2 == 0:
            q = char ** (degree // 2)
            self.conj_table = bytes(self._pow(a, q) for a in range(p))
        else:
            self.conj_table = None

    def _pow(self, a: int, e: int) -> int:
        r, b = 1, a
        while e:
            if e & 1:
                r = self.mul_table[r * self.order + b]
            b = self.mul_table[b * self.order + b]
            e >>= 1
        return r

    def add(self, a: int, b: int) -> int:
        return self.add_table[a * self.order + b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a * self.order + self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a * self.order + b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self._pow(self.inv(a), -e)
        return self._pow(a, e)

    @property
    def has_conjugation(self) -> bool:
        return self.conj_table is not None

    @property
    def sqrt_order(self) -> int:
        """q with q^2 = p, for square-order fields."""
        if self.conj_table is None:
            raise ValueError(f"F_{self.order} has odd extension degree")
        return self.characteristic ** (self.degree // 2)

    def conjugate(self, a: int) -> int:
        if self.conj_table is None:
            raise ValueError(f"F_{self.order} has no conjugation (non-square order)")
        return self.conj_table[a]

    def elements(self):
        return range(self.order)

    def __eq__(self, other):
        return isinstance(other, FieldTable) and other.order == self.order

    def __hash__(self):
        return hash(("FieldTable", self.order))

    def __repr__(self):
        return f"FieldTable(order={self.order})"


@lru_cache(maxsize=None)
def make_field(p: int) -> FieldTable:
    """Build (and memoize) the arithmetic table for F_p, 2 <= p <= 32."""
    split = prime_power_split(p)
    if split is None:
        raise ValueError(f"{p} is not a prime power")
    if p > FIELD_ORDER_CAP:
        raise ValueError(f"field order {p} exceeds the desk-scale cap {FIELD_ORDER_CAP}")
    ell, r = split
    if r == 1:
        add = bytes((a + b) % p for a in range(p) for b in range(p))
        mul = bytes((a * b) % p for a in range(p) for b in range(p))
        table = FieldTable(p, ell, 1, None, add, mul)
    else:
        modulus = _least_irreducible(ell, r)
        reps = [_digits(c, ell, r) for c in range(p)]
        add = bytearray(p * p)
        mul = bytearray(p * p)
        for a in range(p):
            for b in range(p):
                s = tuple((x + y) % ell for x, y in zip(reps[a], reps[b]))
                add[a * p + b] = _code(s, ell)
                mul[a * p + b] = _code(_poly_mulmod(reps[a], reps[b], modulus, ell), ell)
        table = FieldTable(p, ell, r, modulus, bytes(add), bytes(mul))
    verify_field_axioms(table)
    return table


def conjugate(x: int, field: FieldTable) -> int:
    """The involution x -> x^q on a field of order q^2."""
    return field.conjugate(x)


def verify_field_axioms(field: FieldTable) -> None:
    """Exhaustive check of the field axioms; raises AssertionError on failure."""
    p = field.order
    els = range(p)
    for a in els:
        assert field.add(a, 0) == a and field.mul(a, 1) == a and field.mul(a, 0) == 0
        assert field.add(a, field.neg(a)) == 0
        if a:
            assert field.mul(a, field.inv(a)) == 1
    for a in els:
        for b in els:
            assert field.add(a, b) == field.add(b, a)
            assert field.mul(a, b) == field.mul(b, a)
    for a in els:
        for b in els:
            for c in els:
                assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
                assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
                assert field.mul(a, field.add(b, c)) == field.add(
                    field.mul(a, b), field.mul(a, c)
                )
