"""Arithmetic in finite fields GF(p^m) backed by log/antilog tables.

Field elements are plain ints in ``range(q)``.  The element
``c_0 + c_1*a + ... + c_{m-1}*a^(m-1)`` (``a`` the residue of x modulo the
field's irreducible polynomial) is encoded in base-p digits as
``c_0 + c_1*p + ... + c_{m-1}*p^(m-1)``.  For prime fields (m = 1) this is
ordinary arithmetic mod p.  Irreducible moduli use the same encoding with the
degree-m coefficient included, e.g. x^2+x+1 over GF(2) is 0b111 = 7.

Multiplication and inversion go through exponential/logarithm tables built
from a primitive element, so fields are limited to q <= 2**16.
"""

from __future__ import annotations

# Default irreducible moduli for the composite orders small enough to want
# one out of the box (base-p digit encoding, constant term first).
DEFAULT_MODULI = {
    4: 7,     # x^2 + x + 1
    8: 11,    # x^3 + x + 1
    9: 10,    # x^2 + 1
    16: 19,   # x^4 + x + 1
    25: 31,   # x^2 + x + 1
    27: 34,   # x^3 + 2x + 1
}

MAX_ORDER = 1 << 16


def _factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p**m, p prime; raise if q is not a prime power."""
    if q < 2:
        raise ValueError(f"field order must be >= 2, got {q}")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    m = 0
    rest = q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise ValueError(f"field order {q} is not a prime power")
    return p, m


def _poly_digits(enc: int, p: int) -> list[int]:
    digits = []
    while enc:
        enc, d = divmod(enc, p)
        digits.append(d)
    return digits


def _poly_encode(digits: list[int], p: int) -> int:
    enc = 0
    for d in reversed(digits):
        enc = enc * p + d
    return enc


def _poly_mul_mod(a: int, b: int, modulus: int, p: int) -> int:
    """Multiply two GF(p)[x] polynomials (digit-int encoded) modulo `modulus`."""
    da = _poly_digits(a, p)
    db = _poly_digits(b, p)
    if not da or not db:
        return 0
    prod = [0] * (len(da) + len(db) - 1)
    for i, ca in enumerate(da):
        if ca:
            for j, cb in enumerate(db):
                prod[i + j] = (prod[i + j] + ca * cb) % p
    dm = _poly_digits(modulus, p)
    deg_m = len(dm) - 1
    inv_lead = pow(dm[-1], p - 2, p)
    # reduce from the top
    for i in range(len(prod) - 1, deg_m - 1, -1):
        c = prod[i]
        if c:
            factor = (c * inv_lead) % p
            for j, cm in enumerate(dm):
                prod[i - deg_m + j] = (prod[i - deg_m + j] - factor * cm) % p
    return _poly_encode(prod[:deg_m], p)


def _is_irreducible(modulus: int, p: int, m: int) -> bool:
    """Trial-divide by all monic polynomials of degree 1..m//2."""
    dm = _poly_digits(modulus, p)
    if len(dm) != m + 1:
        return False
    for deg in range(1, m // 2 + 1):
        lead = p ** deg
        for low in range(lead):
            divisor = lead + low  # monic of degree `deg`
            if _poly_rem(modulus, divisor, p) == 0:
                return False
    return True


def _poly_rem(a: int, b: int, p: int) -> int:
    da = _poly_digits(a, p)
    db = _poly_digits(b, p)
    deg_b = len(db) - 1
    inv_lead = pow(db[-1], p - 2, p)
    rem = list(da)
    for i in range(len(rem) - 1, deg_b - 1, -1):
        c = rem[i]
        if c:
            factor = (c * inv_lead) % p
            for j, cb in enumerate(db):
                rem[i - deg_b + j] = (rem[i - deg_b + j] - factor * cb) % p
    return _poly_encode(rem[:deg_b], p)


class FieldSpec:
    """A concrete GF(p^m) with precomputed multiplication tables.

    Attributes
    ----------
    q, p, m : int
        Field order, characteristic, extension degree.
    modulus : int
        Digit-encoded irreducible polynomial (0 for prime fields).
    exp, log : list[int]
        ``exp[i]`` is g**i for a primitive element g (length q-1);
        ``log[a]`` inverts it for a != 0 (log[0] is unused, set to -1).
    """

    def __init__(self, q: int, modulus: int | None = None):
        if q > MAX_ORDER:
            raise ValueError(f"field order {q} exceeds table limit {MAX_ORDER}")
        p, m = _factor_prime_power(q)
        self.q = q
        self.p = p
        self.m = m
        if m == 1:
            if modulus not in (None, 0):
                raise ValueError("prime fields take no modulus")
            self.modulus = 0
        else:
            if modulus is None:
                modulus = DEFAULT_MODULI.get(q)
                if modulus is None:
                    raise ValueError(
                        f"no default modulus for q={q}; pass one explicitly")
            if not _is_irreducible(modulus, p, m):
                raise ValueError(
                    f"modulus {modulus} is not a monic irreducible of degree {m} over GF({p})")
            self.modulus = modulus
        self._init_tables()

    # -- construction -----------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        """Table-free product, used only while bootstrapping the tables."""
        if self.m == 1:
            return (a * b) % self.p
        return _poly_mul_mod(a, b, self.modulus, self.p)

    def _init_tables(self) -> None:
        q = self.q
        if q == 2:
            self.exp = [1]
            self.log = [-1, 0]
            return
        for g in range(2, q):
            seen = [False] * q
            x = 1
            order = 0
            exp = []
            while not seen[x]:
                seen[x] = True
                exp.append(x)
                x = self._mul_raw(x, g)
                order += 1
            if order == q - 1:
                break
        else:
            raise ValueError(f"no primitive element found for q={q}")
        log = [-1] * q
        for i, v in enumerate(exp):
            log[v] = i
        self.exp = exp
        self.log = log

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        shift = 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * shift
            shift *= p
        return out

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        shift = 1
        while a:
            a, da = divmod(a, p)
            out += ((-da) % p) * shift
            shift *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inversion of zero field element")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def frobenius(self, a: int, i: int = 1) -> int:
        """a ** (p**i), the i-th power of the Frobenius automorphism."""
        i %= self.m
        if a == 0 or i == 0:
            return a
        return self.exp[(self.log[a] * pow(self.p, i)) % (self.q - 1)]

    # -- helpers -----------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def dot(self, u, v) -> int:
        """Inner product of two equal-length vectors over the field."""
        acc = 0
        for a, b in zip(u, v):
            acc = self.add(acc, self.mul(a, b))
        return acc

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.q})"
        return f"GF({self.q}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldSpec)
                and self.q == other.q and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash((self.q, self.modulus))


_CACHE: dict[tuple[int, int], FieldSpec] = {}


def field(q: int, modulus: int | None = None) -> FieldSpec:
    """Return a cached FieldSpec for GF(q) (default modulus when m > 1)."""
    key = (q, modulus if modulus is not None else DEFAULT_MODULI.get(q, 0))
    spec = _CACHE.get(key)
    if spec is None:
        spec = FieldSpec(q, modulus)
        _CACHE[key] = spec
        _CACHE[(q, spec.modulus)] = spec
    return spec


def normalize_vector(spec: FieldSpec, vec) -> tuple[tuple[int, ...], int]:
    """Scale `vec` so its first nonzero coordinate is 1.

    Returns ``(unit, scalar)`` with ``vec = scalar * unit`` coordinatewise.
    Raises ValueError on the zero vector.
    """
    for c in vec:
        if c != 0:
            lam = c
            break
    else:
        raise ValueError("cannot normalize the zero vector")
    inv = spec.inv(lam)
    return tuple(spec.mul(inv, c) for c in vec), lam
