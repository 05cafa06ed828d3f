"""Exact arithmetic in small finite fields GF(p) and GF(p^n).

Elements are kept in a canonical little-endian coefficient encoding so that
equality is bytewise and enumeration order is reproducible across runs.
"""

from __future__ import annotations

from typing import Iterable, Sequence

PRIME_LIMIT = 1 << 31
ENUMERATION_LIMIT = 1 << 20
IRREDUCIBILITY_CHECK_LIMIT = 1 << 16
_TABLE_LIMIT = 256

# Monic irreducible moduli, little-endian (constant term first, leading 1 last),
# for the extension orders we can build without a user-supplied modulus.
DEFAULT_MODULI = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 0, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
    49: (1, 0, 1),
    64: (1, 1, 0, 0, 0, 0, 1),
}


class FieldError(ValueError):
    """Invalid field construction or misuse of field arithmetic."""


def is_prime(n: int) -> bool:
    """Trial-division primality test; adequate for p < 2^31."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _poly_mul_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Quotient and remainder in GF(p)[x]; b must be nonzero."""
    rem = list(a)
    _poly_trim(rem)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(0, len(rem) - db)
    while len(rem) - 1 >= db and rem:
        shift = len(rem) - 1 - db
        factor = (rem[-1] * inv_lead) % p
        quot[shift] = factor
        for i in range(db + 1):
            rem[shift + i] = (rem[shift + i] - factor * b[i]) % p
        _poly_trim(rem)
    return quot, rem


def _poly_inverse(a: Sequence[int], modulus: Sequence[int], p: int) -> list[int]:
    """Inverse of a modulo an irreducible polynomial, via extended Euclid."""
    r0, r1 = list(modulus), _poly_trim(list(a))
    if not r1:
        raise ZeroDivisionError("division by zero in extension field")
    s0, s1 = [0], [1]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        qs1 = _poly_mul_mod(q, s1, p)
        s = [(x - y) % p for x, y in _pad_pair(s0, qs1)]
        s0, s1 = s1, _poly_trim(s)
    scale = pow(r1[0], -1, p)
    return [(c * scale) % p for c in s1]


def _pad_pair(a: Sequence[int], b: Sequence[int]) -> Iterable[tuple[int, int]]:
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1..deg/2 divides the modulus."""
    n = len(modulus) - 1
    for deg in range(1, n // 2 + 1):
        for idx in range(p**deg):
            cand = _digits(idx, p, deg) + [1]
            _, rem = _poly_divmod(modulus, cand, p)
            if not rem:
                return False
    return True


def _digits(k: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(k % p)
        k //= p
    return out


class FieldSpec:
    """A finite field GF(p^n), given by p, n and a monic irreducible modulus."""

    __slots__ = ("p", "n", "modulus", "q", "_elements", "_tables")

    def __init__(self, p: int, n: int = 1, modulus: Sequence[int] | None = None):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"characteristic {p!r} is not prime")
        if p > PRIME_LIMIT:
            raise FieldError(f"characteristic {p} exceeds limit {PRIME_LIMIT}")
        if not isinstance(n, int) or n < 1:
            raise FieldError(f"extension degree {n!r} must be a positive integer")
        q = p**n
        if n == 1:
            if modulus:
                raise FieldError("prime fields take no modulus")
            mod: tuple[int, ...] = ()
        else:
            if modulus is None:
                if q in DEFAULT_MODULI:
                    mod = DEFAULT_MODULI[q]
                else:
                    raise FieldError(
                        f"no built-in modulus for GF({p}^{n}); supply one explicitly"
                    )
            else:
                mod = tuple(int(c) for c in modulus)
            if len(mod) != n + 1:
                raise FieldError(f"modulus must have {n + 1} coefficients, got {len(mod)}")
            if any(c < 0 or c >= p for c in mod):
                raise FieldError("modulus coefficients must lie in [0, p)")
            if mod[-1] != 1:
                raise FieldError("modulus must be monic")
            if q <= IRREDUCIBILITY_CHECK_LIMIT and not _is_irreducible(mod, p):
                raise FieldError(f"modulus {list(mod)} is reducible over GF({p})")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "_elements", None)
        object.__setattr__(self, "_tables", None)

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n})"

    # -- element construction ------------------------------------------------

    def element(self, value) -> FieldElement:
        """Coerce an integer (n = 1, reduced mod p) or coefficient sequence."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, int):
            coeffs = [value % self.p] + [0] * (self.n - 1)
            return FieldElement(self, tuple(coeffs))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.n:
            raise FieldError(f"expected {self.n} coefficients, got {len(coeffs)}")
        return FieldElement(self, coeffs)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.n)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.n - 1))

    def element_from_index(self, k: int) -> FieldElement:
        """The k-th element in canonical order (base-p digits of k, little-endian)."""
        if not 0 <= k < self.q:
            raise FieldError(f"index {k} outside [0, {self.q})")
        return FieldElement(self, tuple(_digits(k, self.p, self.n)))

    def index_of(self, elem: FieldElement) -> int:
        k = 0
        for c in reversed(elem.coeffs):
            k = k * self.p + c
        return k

    def elements(self) -> tuple[FieldElement, ...]:
        """All q elements in canonical order: 0, 1, then ascending encodings."""
        if self.q > ENUMERATION_LIMIT:
            raise FieldError(f"order {self.q} exceeds enumeration limit {ENUMERATION_LIMIT}")
        if self._elements is None:
            elems = tuple(self.element_from_index(k) for k in range(self.q))
            object.__setattr__(self, "_elements", elems)
        return self._elements

    def first_elements(self, count: int) -> list[FieldElement]:
        """The first `count` elements in canonical order, without a full sweep."""
        if count > self.q:
            raise FieldError(f"requested {count} elements from a field of order {self.q}")
        return [self.element_from_index(k) for k in range(count)]

    # -- internal integer-encoded arithmetic (hot paths) ----------------------

    def scalar_context(self):
        """(encode, decode, sub, mul, inv) over an internal scalar type.

        Scalars are plain ints for prime and small extension fields (zero is
        falsy either way), and FieldElements for large extensions.
        """
        p = self.p
        if self.n == 1:
            return (
                lambda e: e.coeffs[0],
                lambda v: FieldElement(self, (v,)),
                lambda a, b: (a - b) % p,
                lambda a, b: (a * b) % p,
                lambda a: pow(a, -1, p),
            )
        if self.q <= _TABLE_LIMIT:
            sub_t, mul_t, inv_t = self._int_tables()
            q = self.q
            return (
                self.index_of,
                self.element_from_index,
                lambda a, b: sub_t[a * q + b],
                lambda a, b: mul_t[a * q + b],
                lambda a: inv_t[a],
            )
        return (
            lambda e: e,
            lambda e: e,
            lambda a, b: a - b,
            lambda a, b: a * b,
            lambda a: a.inverse(),
        )

    def _int_tables(self):
        if self._tables is None:
            q = self.q
            elems = [self.element_from_index(k) for k in range(q)]
            sub_t = [0] * (q * q)
            mul_t = [0] * (q * q)
            inv_t = [0] * q
            for a in range(q):
                for b in range(q):
                    sub_t[a * q + b] = self.index_of(elems[a] - elems[b])
                    mul_t[a * q + b] = self.index_of(elems[a] * elems[b])
                if a:
                    inv_t[a] = self.index_of(elems[a].inverse())
            object.__setattr__(self, "_tables", (sub_t, mul_t, inv_t))
        return self._tables

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        modulus = obj.get("modulus") or None
        return cls(int(obj["p"]), int(obj["n"]), modulus)


class FieldElement:
    """An element of a FieldSpec, as a little-endian coefficient tuple."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: tuple[int, ...]):
        self.spec = spec
        self.coeffs = coeffs

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldError("elements belong to different fields")

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec.p, self.spec.n, self.coeffs))

    def __add__(self, other):
        self._check(other)
        p = self.spec.p
        return FieldElement(
            self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._check(other)
        p = self.spec.p
        return FieldElement(
            self.spec, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        spec = self.spec
        p = spec.p
        if spec.n == 1:
            return FieldElement(spec, ((self.coeffs[0] * other.coeffs[0]) % p,))
        prod = _poly_mul_mod(self.coeffs, other.coeffs, p)
        _, rem = _poly_divmod(prod, spec.modulus, p)
        rem += [0] * (spec.n - len(rem))
        return FieldElement(spec, tuple(rem))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("division by zero in finite field")
        spec = self.spec
        if spec.n == 1:
            return FieldElement(spec, (pow(self.coeffs[0], -1, spec.p),))
        inv = _poly_inverse(self.coeffs, spec.modulus, spec.p)
        inv += [0] * (spec.n - len(inv))
        return FieldElement(spec, tuple(inv))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.spec.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self):
        if self.spec.n == 1:
            return f"{self.coeffs[0]} (mod {self.spec.p})"
        return f"{list(self.coeffs)} in {self.spec!r}"

    def to_json(self):
        if self.spec.n == 1:
            return self.coeffs[0]
        return list(self.coeffs)


def field_make(p: int, n: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build GF(p^n); the modulus defaults to a built-in table for small orders."""
    return FieldSpec(p, n, modulus)


def field_enumerate(spec: FieldSpec) -> tuple[FieldElement, ...]:
    """All q elements in the deterministic canonical order (guarded at 2^20)."""
    return spec.elements()


def element_from_json(spec: FieldSpec, obj) -> FieldElement:
    return spec.element(obj)
