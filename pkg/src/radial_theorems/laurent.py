"""Laurent polynomials in the radial coordinate.

These are the f(r) multipliers fed to the sum rules and boundary brackets.
Powers are integers (possibly negative); the type is closed under addition,
multiplication and differentiation so that f', f'', f''' used by the
theorems are exact.
"""

import numbers


class LaurentPoly:
    """sum_k c_k r^k with integer powers, canonical descending order."""

    def __init__(self, terms):
        acc = {}
        for coeff, power in terms:
            if power != int(power):
                raise ValueError(f"powers must be integers, got {power}")
            acc[int(power)] = acc.get(int(power), 0.0) + float(coeff)
        self.terms = tuple(
            (c, p) for p, c in sorted(acc.items(), reverse=True) if c != 0.0
        )

    @classmethod
    def monomial(cls, coeff, power):
        return cls([(coeff, power)])

    @classmethod
    def const(cls, value):
        return cls([(value, 0)])

    @property
    def is_zero(self):
        return not self.terms

    @property
    def min_power(self):
        return min(p for _, p in self.terms) if self.terms else 0

    @property
    def max_power(self):
        return max(p for _, p in self.terms) if self.terms else 0

    def __call__(self, r):
        return sum(c * r ** p for c, p in self.terms)

    def derivative(self):
        return LaurentPoly([(c * p, p - 1) for c, p in self.terms if p != 0])

    def __add__(self, other):
        other = _as_laurent(other)
        return LaurentPoly(list(self.terms) + list(other.terms))

    def __sub__(self, other):
        other = _as_laurent(other)
        return self + (-1.0) * other

    def __mul__(self, other):
        if isinstance(other, numbers.Real):
            return LaurentPoly([(c * other, p) for c, p in self.terms])
        other = _as_laurent(other)
        return LaurentPoly(
            [(c1 * c2, p1 + p2) for c1, p1 in self.terms for c2, p2 in other.terms]
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        if not self.terms:
            return "LaurentPoly(0)"
        body = " + ".join(f"{c:g}*r^{p}" for c, p in self.terms)
        return f"LaurentPoly({body})"


def _as_laurent(obj):
    if isinstance(obj, LaurentPoly):
        return obj
    if isinstance(obj, numbers.Real):
        return LaurentPoly.const(obj)
    raise TypeError(f"cannot interpret {obj!r} as a Laurent polynomial")
