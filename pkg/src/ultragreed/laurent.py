"""Sparse Laurent polynomials over a finite field.

These are elements of the group algebra of the integers: finite sums of
monomials c·t^k with k ranging over all of Z.  The valuation (lowest exponent
with a nonzero coefficient) and the constant-term projection onto the
polynomial subring are what the embedding machinery runs on.
"""

from __future__ import annotations

from typing import Iterable

from .field import FieldElement, FieldError, FieldSpec


class Laurent:
    """Immutable sparse Laurent polynomial: ascending (exponent, coefficient) terms."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: FieldSpec, terms: tuple[tuple[int, FieldElement], ...]):
        # terms must be canonical: strictly increasing exponents, no zero coefficients
        self.spec = spec
        self.terms = terms

    def _check(self, other: "Laurent") -> None:
        if not isinstance(other, Laurent):
            raise TypeError(f"cannot combine Laurent with {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldError("Laurent elements over different fields")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Laurent)
            and self.spec == other.spec
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.spec, self.terms))

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for exp, c in other.terms:
            cur = acc.get(exp)
            s = c if cur is None else cur + c
            if s:
                acc[exp] = s
            elif cur is not None:
                del acc[exp]
        return _from_dict(self.spec, acc)

    def __sub__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for exp, c in other.terms:
            cur = acc.get(exp)
            s = -c if cur is None else cur - c
            if s:
                acc[exp] = s
            elif cur is not None:
                del acc[exp]
        return _from_dict(self.spec, acc)

    def __neg__(self):
        return Laurent(self.spec, tuple((exp, -c) for exp, c in self.terms))

    def __mul__(self, other):
        self._check(other)
        acc: dict[int, FieldElement] = {}
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                exp = ea + eb
                prod = ca * cb
                cur = acc.get(exp)
                s = prod if cur is None else cur + prod
                if s:
                    acc[exp] = s
                elif cur is not None:
                    del acc[exp]
        return _from_dict(self.spec, acc)

    def coefficient(self, exponent: int) -> FieldElement:
        """The coefficient of t^exponent (zero when absent)."""
        for exp, c in self.terms:
            if exp == exponent:
                return c
            if exp > exponent:
                break
        return self.spec.zero

    def valuation(self) -> int:
        """Smallest exponent carrying a nonzero coefficient; undefined for zero."""
        if not self.terms:
            raise ValueError("the zero element has no valuation")
        return self.terms[0][0]

    def is_polynomial(self) -> bool:
        """True iff no negative exponents occur (zero counts as a polynomial)."""
        return not self.terms or self.terms[0][0] >= 0

    def constant_term(self) -> FieldElement:
        """The constant-term projection; only defined on the polynomial subring."""
        if not self.is_polynomial():
            raise ValueError("constant-term projection needs a nonnegative valuation")
        return self.coefficient(0)

    def __repr__(self):
        if not self.terms:
            return "Laurent(0)"
        bits = []
        for exp, c in self.terms:
            cj = c.to_json()
            bits.append(f"{cj}*t^{exp}")
        return "Laurent(" + " + ".join(bits) + ")"

    def to_json(self) -> dict:
        return {"terms": [[exp, c.to_json()] for exp, c in self.terms]}

    @classmethod
    def from_json(cls, spec: FieldSpec, obj: dict) -> "Laurent":
        return from_terms(spec, ((int(exp), spec.element(c)) for exp, c in obj["terms"]))


def _from_dict(spec: FieldSpec, acc: dict[int, FieldElement]) -> Laurent:
    return Laurent(spec, tuple(sorted(acc.items())))


def zero(spec: FieldSpec) -> Laurent:
    return Laurent(spec, ())


def one(spec: FieldSpec) -> Laurent:
    return Laurent(spec, ((0, spec.one),))


def monomial(exponent: int, coeff: FieldElement) -> Laurent:
    """c·t^exponent; the zero element when c = 0."""
    if not coeff:
        return Laurent(coeff.spec, ())
    return Laurent(coeff.spec, ((exponent, coeff),))


def from_terms(spec: FieldSpec, pairs: Iterable[tuple[int, FieldElement]]) -> Laurent:
    """Canonicalize arbitrary (exponent, coefficient) pairs, merging duplicates."""
    acc: dict[int, FieldElement] = {}
    for exp, c in pairs:
        cur = acc.get(exp)
        s = c if cur is None else cur + c
        if s:
            acc[exp] = s
        elif cur is not None:
            del acc[exp]
    return _from_dict(spec, acc)
