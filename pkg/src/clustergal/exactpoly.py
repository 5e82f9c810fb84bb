"""Exact multivariate Laurent polynomials over the rationals.

A :class:`LaurentPoly` is stored as ``x^shift * num`` where ``num`` is a
python-flint ``fmpq_mpoly`` that no variable divides.  Because every
variable is prime in the polynomial ring, that split is unique, so structural
equality is mathematical equality and exact division by a non-monomial
reduces to polynomial exact division.

Exponent slots follow the ambient seed: exchange variables first, then frozen.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import flint
from flint.utils.flint_exceptions import DomainError

Exponents = tuple  # tuple[int, ...]


class NonLaurentResult(ArithmeticError):
    """A quotient or substitution left the Laurent ring."""


class ArityMismatch(ValueError):
    pass


@lru_cache(maxsize=None)
def _ctx(nvars: int):
    return flint.fmpq_mpoly_ctx.get(tuple(f"v{i}" for i in range(nvars)), "lex")


def _to_fmpq(c):
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    if isinstance(c, flint.fmpq):
        return c
    return flint.fmpq(int(c))


def _from_fmpq(c):
    q = int(c.q)
    return int(c.p) if q == 1 else Fraction(int(c.p), q)


def _add_exp(a, b):
    return tuple(int(x) + int(y) for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(int(x) - int(y) for x, y in zip(a, b))


class LaurentPoly:
    __slots__ = ("nvars", "_num", "_shift", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponents, object] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ArityMismatch(f"exponent {e} has arity {len(e)}, expected {nvars}")
                if c != 0:
                    clean[tuple(e)] = c
        if clean:
            low = tuple(min(col) for col in zip(*clean)) if nvars else ()
            num = _ctx(nvars).from_dict({_sub_exp(e, low): _to_fmpq(c) for e, c in clean.items()})
        else:
            low = (0,) * nvars
            num = _ctx(nvars).from_dict({})
        self._set(nvars, num, low)

    def _set(self, nvars, num, shift):
        self.nvars = nvars
        self._num = num
        self._shift = shift
        self._terms = None
        self._hash = None

    @classmethod
    def _make(cls, nvars, num, shift, normalized=True):
        p = cls.__new__(cls)
        if num.is_zero():
            shift = (0,) * nvars
        elif not normalized:
            content = num.term_content()
            if not content.is_constant():
                low = content.monoms()[0]
                num = num / content
                shift = _add_exp(shift, low)
        p._set(nvars, num, tuple(shift))
        return p

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c=1) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(nvars, 1)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def variable(cls, nvars: int, i: int, power: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): 1})

    # views ----------------------------------------------------------------
    @property
    def terms(self) -> dict:
        """Exponent tuple -> coefficient (int or Fraction)."""
        if self._terms is None:
            s = self._shift
            self._terms = {_add_exp(e, s): _from_fmpq(c) for e, c in self._num.to_dict().items()}
        return self._terms

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return (self.nvars == other.nvars and self._shift == other._shift
                    and self._num == other._num)
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self._shift, str(self._num)))
        return self._hash

    def __bool__(self):
        return not self._num.is_zero()

    def __len__(self):
        return len(self._num)

    def sort_key(self):
        """Deterministic total order key (lexicographic on sorted terms)."""
        return tuple(sorted((e, (Fraction(c).numerator, Fraction(c).denominator))
                            for e, c in self.terms.items()))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def _check(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(self.nvars, other)
        if other.nvars != self.nvars:
            raise ArityMismatch(f"arity {self.nvars} vs {other.nvars}")
        return other

    # arithmetic ---------------------------------------------------------
    def _mono(self, e):
        return _ctx(self.nvars).from_dict({tuple(e): 1})

    def __add__(self, other):
        other = self._check(other)
        if not other:
            return self
        if not self:
            return other
        low = tuple(min(a, b) for a, b in zip(self._shift, other._shift))
        a = self._num if self._shift == low else self._num * self._mono(_sub_exp(self._shift, low))
        b = other._num if other._shift == low else other._num * self._mono(_sub_exp(other._shift, low))
        return LaurentPoly._make(self.nvars, a + b, low, normalized=False)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._make(self.nvars, -self._num, self._shift)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        # product of polynomials without monomial factors has none
        return LaurentPoly._make(self.nvars, self._num * other._num,
                                 _add_exp(self._shift, other._shift))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise NonLaurentResult("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return LaurentPoly.monomial([x * k for x in e], Fraction(c) ** k)
        return LaurentPoly._make(self.nvars, self._num ** k, tuple(x * k for x in self._shift))

    def scale(self, c) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly.zero(self.nvars)
        return LaurentPoly._make(self.nvars, self._num * _to_fmpq(c), self._shift)

    # structure ----------------------------------------------------------
    def is_monomial(self) -> bool:
        return len(self._num) == 1

    def is_constant(self) -> bool:
        return self._num.is_zero() or (self._num.is_constant() and not any(self._shift))

    def min_exponents(self) -> tuple:
        return self._shift

    def max_exponents(self) -> tuple:
        if not self:
            return (0,) * self.nvars
        return _add_exp(self._shift, self._num.degrees())

    def shift(self, m: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector ``m``."""
        m = tuple(m)
        if len(m) != self.nvars:
            raise ArityMismatch(f"monomial arity {len(m)} vs {self.nvars}")
        return LaurentPoly._make(self.nvars, self._num, _add_exp(self._shift, m))

    def div_monomial(self, m: Sequence[int]) -> "LaurentPoly":
        return self.shift([-x for x in m])

    def is_positive(self) -> bool:
        return all(c > 0 for c in self._num.coeffs())

    def depends_on(self, i: int) -> bool:
        return bool(self) and (self._shift[i] != 0 or self._num.degrees()[i] > 0)

    def coefficient(self, e: Sequence[int]):
        return self.terms.get(tuple(e), 0)

    # division -----------------------------------------------------------
    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient in the Laurent ring; raises NonLaurentResult if inexact."""
        other = self._check(other)
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if other.is_monomial():
            c = other._num.leading_coefficient()
            return LaurentPoly._make(self.nvars, self._num / c, _sub_exp(self._shift, other._shift))
        try:
            q = self._num / other._num
        except DomainError as exc:
            raise NonLaurentResult("quotient is not a Laurent polynomial") from exc
        return LaurentPoly._make(self.nvars, q, _sub_exp(self._shift, other._shift))

    # evaluation ---------------------------------------------------------
    def substitute(self, images: Sequence["LaurentPoly"]) -> "LaurentPoly":
        return substitute(self, images)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = Fraction(c)
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def specialize(self, slots: Iterable[int], value=1) -> "LaurentPoly":
        """Set the given variable slots to a constant (their exponents become 0)."""
        slots = set(slots)
        out: dict = {}
        for e, c in self.terms.items():
            f = Fraction(c)
            ne = list(e)
            for i in slots:
                if ne[i]:
                    f *= Fraction(value) ** ne[i]
                    ne[i] = 0
            t = tuple(ne)
            out[t] = out.get(t, 0) + f
        return LaurentPoly(self.nvars, out)

    def project(self, slots: Sequence[int]) -> "LaurentPoly":
        """Restrict to a subset of slots; the other exponents must be zero."""
        keep = set(slots)
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in range(self.nvars) if i not in keep):
                raise ValueError("polynomial depends on a dropped slot")
            out[tuple(e[i] for i in slots)] = c
        return LaurentPoly(len(slots), out)

    def embed(self, nvars: int, slots: Sequence[int]) -> "LaurentPoly":
        """Re-home into arity ``nvars``; slot i of self goes to ``slots[i]``."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, k in zip(slots, e):
                ne[i] = k
            out[tuple(ne)] = c
        return LaurentPoly(nvars, out)

    # display ------------------------------------------------------------
    def to_string(self, names: Sequence[str] | None = None) -> str:
        if not self:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mon = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"LaurentPoly({self.to_string()})"


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def div_exact_by_monomial(a: LaurentPoly, m: Sequence[int]) -> LaurentPoly:
    return a.div_monomial(m)


def is_positive(p: LaurentPoly) -> bool:
    return p.is_positive()


def substitute(p: LaurentPoly, images: Sequence[LaurentPoly]) -> LaurentPoly:
    """Evaluate ``p`` at Laurent images of its variables, exactly.

    ``p`` is split as monomial times polynomial; the polynomial part is
    evaluated with nonnegative powers and the monomial part with negative
    powers is divided out exactly.  Raises NonLaurentResult when the value
    is not a Laurent polynomial (e.g. x1 -> x1 + 1 applied to 1/x1).
    """
    if len(images) != p.nvars:
        raise ArityMismatch(f"{len(images)} images for {p.nvars} variables")
    target = images[0].nvars if images else 0
    for im in images:
        if im.nvars != target:
            raise ArityMismatch("images of different arity")
    if not p:
        return LaurentPoly.zero(target)
    pow_cache: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in pow_cache:
            pow_cache[key] = images[i] ** k
        return pow_cache[key]

    body = LaurentPoly.zero(target)
    for e, c in p._num.to_dict().items():
        e = tuple(int(k) for k in e)
        term = LaurentPoly.constant(target, _from_fmpq(c))
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        body = body + term
    num = body
    den = LaurentPoly.one(target)
    for i, k in enumerate(p._shift):
        if k > 0:
            num = num * power(i, k)
        elif k < 0:
            den = den * power(i, -k)
    return num.exact_div(den)
