"""Sparse multivariate Laurent polynomials with integer coefficients.

A ``LaurentPoly`` is immutable and canonical: zero coefficients are never
stored, so two polynomials over the same variables are equal iff their term
maps are equal.  Exponent tuples may contain negative entries.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from abhy.kernels import laurent_mul

Exponent = tuple[int, ...]


class NonExactDivision(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


class LaurentPoly:
    __slots__ = ("variables", "terms", "_key")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, int] | None = None):
        self.variables = tuple(variables)
        k = len(self.variables)
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != k:
                raise ValueError(f"exponent {e} has wrong length for {k} variables")
            if c:
                clean[tuple(e)] = int(c)
        self.terms = clean
        self._key = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, variables: Sequence[str], value: int) -> LaurentPoly:
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponent: Sequence[int], coeff: int = 1) -> LaurentPoly:
        return cls(variables, {tuple(exponent): coeff})

    @classmethod
    def gen(cls, variables: Sequence[str], index: int) -> LaurentPoly:
        e = [0] * len(variables)
        e[index] = 1
        return cls(variables, {tuple(e): 1})

    # -- canonical identity -----------------------------------------------

    def key(self) -> tuple:
        """Sorted term tuple; the canonical hashable identity of the polynomial."""
        if self._key is None:
            self._key = tuple(sorted(self.terms.items()))
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.variables, self.key()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: LaurentPoly) -> None:
        if self.variables != other.variables:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly.constant(self.variables, other)
        self._check(other)
        return other

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> LaurentPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        return LaurentPoly(self.variables, laurent_mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient is not a unit")
            return LaurentPoly(self.variables, {tuple(-x for x in e): c}) ** (-k)
        result = LaurentPoly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, divisor: LaurentPoly) -> LaurentPoly:
        """Return ``q`` with ``q * divisor == self``; raise ``NonExactDivision`` otherwise.

        Division by leading terms in lexicographic order.  Newton polytopes
        add under exact division, so every quotient exponent lies in a box
        fixed by coordinatewise extremes; leaving the box proves a remainder.
        """
        self._check(divisor)
        if not divisor.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return self
        d_lead = max(divisor.terms)
        d_lc = divisor.terms[d_lead]
        lo = tuple(a - b for a, b in zip(self.min_exponents(), divisor.min_exponents()))
        hi = tuple(a - b for a, b in zip(self.max_exponents(), divisor.max_exponents()))
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            lead = max(rem)
            q_e = tuple(a - b for a, b in zip(lead, d_lead))
            c = rem[lead]
            if c % d_lc or any(x < l or x > h for x, l, h in zip(q_e, lo, hi)):
                raise NonExactDivision(f"{self} is not divisible by {divisor}")
            q_c = c // d_lc
            quot[q_e] = q_c
            for e, dc in divisor.terms.items():
                t = tuple(a + b for a, b in zip(q_e, e))
                v = rem.get(t, 0) - q_c * dc
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return LaurentPoly(self.variables, quot)

    # -- structure --------------------------------------------------------

    def substitute_ones(self, indices: Iterable[int]) -> LaurentPoly:
        """Set the given variables to 1; they stay in the ring with exponent 0."""
        idx = set(indices)
        out: dict = {}
        for e, c in self.terms.items():
            e2 = tuple(0 if i in idx else x for i, x in enumerate(e))
            out[e2] = out.get(e2, 0) + c
        return LaurentPoly(self.variables, out)

    def restrict(self, indices: Sequence[int]) -> LaurentPoly:
        """Drop variables not in ``indices`` (they must have exponent 0 everywhere)."""
        keep = list(indices)
        dropped = [i for i in range(len(self.variables)) if i not in set(keep)]
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in dropped):
                raise ValueError("cannot drop a variable that occurs")
            out[tuple(e[i] for i in keep)] = c
        return LaurentPoly([self.variables[i] for i in keep], out)

    def min_exponents(self) -> Exponent:
        return tuple(min(col) for col in zip(*self.terms)) if self.terms else ()

    def max_exponents(self) -> Exponent:
        return tuple(max(col) for col in zip(*self.terms)) if self.terms else ()

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    def evaluate(self, values: Sequence):
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(values, e):
                t = t * x**k
            total += t
        return total

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def parse_laurent(text: str, variables: Sequence[str]) -> LaurentPoly:
    """Parse sums of terms ``c*v^k*w`` as printed by ``str(LaurentPoly)``.

    Negative powers are written ``x1^-1``; quotients are not accepted.
    """
    names = {v: i for i, v in enumerate(variables)}
    k = len(variables)
    text = text.replace(" ", "").replace("^-", "^~").replace("-", "+-").replace("~", "-")
    out: dict = {}
    for tok in text.split("+"):
        if not tok:
            continue
        coeff = 1
        if tok.startswith("-"):
            coeff = -1
            tok = tok[1:]
        e = [0] * k
        for factor in tok.split("*"):
            if factor.lstrip("-").isdigit():
                coeff *= int(factor)
                continue
            if "^" in factor:
                name, p = factor.split("^")
                power = int(p)
            else:
                name, power = factor, 1
            e[names[name]] += power
        t = tuple(e)
        out[t] = out.get(t, 0) + coeff
    return LaurentPoly(variables, out)
